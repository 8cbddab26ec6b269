#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vcpot {

// Insertion-ordered JSON value with deterministic serialization: doubles are
// always rendered with 17 significant digits, keys keep insertion order, so
// equal inputs produce byte-identical documents.
class Json {
public:
    Json() : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(int i) : v_(static_cast<std::int64_t>(i)) {}
    Json(std::int64_t i) : v_(i) {}
    Json(std::uint64_t i) : v_(static_cast<std::int64_t>(i)) {}
    Json(double d) : v_(d) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}

    static Json object() {
        Json j;
        j.v_ = Members{};
        return j;
    }
    static Json array() {
        Json j;
        j.v_ = Elements{};
        return j;
    }

    Json& set(const std::string& key, Json value);
    Json& push(Json value);

    template <class It, class Fn>
    Json& push_all(It begin, It end, Fn&& fn) {
        for (; begin != end; ++begin) push(fn(*begin));
        return *this;
    }

    std::string dump(int indent = 2) const;

private:
    using Members = std::vector<std::pair<std::string, Json>>;
    using Elements = std::vector<Json>;
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Members, Elements> v_;

    void write(std::string& out, int indent, int depth) const;
};

Json to_json(const std::vector<double>& v);

// FNV-1a 64-bit content hash, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);

// Double with 17 significant digits (the project-wide float format).
std::string format_double(double v);

} // namespace vcpot
