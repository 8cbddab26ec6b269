#include "vcpot/jsonio.hpp"

#include "vcpot/errors.hpp"

#include <cmath>
#include <cstdio>

namespace vcpot {

Json& Json::set(const std::string& key, Json value) {
    if (!std::holds_alternative<Members>(v_)) throw config_error("Json::set on non-object");
    std::get<Members>(v_).emplace_back(key, std::move(value));
    return *this;
}

Json& Json::push(Json value) {
    if (!std::holds_alternative<Elements>(v_)) throw config_error("Json::push on non-array");
    std::get<Elements>(v_).push_back(std::move(value));
    return *this;
}

std::string format_double(double v) {
    if (!std::isfinite(v)) throw numeric_error("json: non-finite number");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

void Json::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<size_t>(indent) * depth, ' ');
    if (std::holds_alternative<std::nullptr_t>(v_)) {
        out += "null";
    } else if (std::holds_alternative<bool>(v_)) {
        out += std::get<bool>(v_) ? "true" : "false";
    } else if (std::holds_alternative<std::int64_t>(v_)) {
        out += std::to_string(std::get<std::int64_t>(v_));
    } else if (std::holds_alternative<double>(v_)) {
        out += format_double(std::get<double>(v_));
    } else if (std::holds_alternative<std::string>(v_)) {
        write_escaped(out, std::get<std::string>(v_));
    } else if (std::holds_alternative<Members>(v_)) {
        const auto& m = std::get<Members>(v_);
        if (m.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        for (size_t i = 0; i < m.size(); ++i) {
            out += pad;
            write_escaped(out, m[i].first);
            out += ": ";
            m[i].second.write(out, indent, depth + 1);
            if (i + 1 < m.size()) out += ',';
            out += '\n';
        }
        out += close_pad + "}";
    } else {
        const auto& a = std::get<Elements>(v_);
        if (a.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (size_t i = 0; i < a.size(); ++i) {
            out += pad;
            a[i].write(out, indent, depth + 1);
            if (i + 1 < a.size()) out += ',';
            out += '\n';
        }
        out += close_pad + "]";
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

Json to_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push(x);
    return a;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace vcpot
