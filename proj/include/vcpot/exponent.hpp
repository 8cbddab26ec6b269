#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcpot {

// Multi-exponent of a monomial x1^e1 * ... * xn^en.
struct ExponentVector {
    std::vector<int> exps;

    ExponentVector() = default;
    explicit ExponentVector(int n) : exps(static_cast<size_t>(n), 0) {
        if (n < 1) throw std::invalid_argument("ExponentVector: dimension must be >= 1");
    }
    ExponentVector(std::initializer_list<int> e) : exps(e) { validate(); }
    explicit ExponentVector(std::vector<int> e) : exps(std::move(e)) { validate(); }

    void validate() const {
        if (exps.empty()) throw std::invalid_argument("ExponentVector: empty");
        for (int e : exps)
            if (e < 0) throw std::invalid_argument("ExponentVector: negative exponent");
    }

    int dim() const { return static_cast<int>(exps.size()); }
    int total_degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }
    bool is_constant() const { return total_degree() == 0; }

    int operator[](int i) const { return exps[static_cast<size_t>(i)]; }
    int& operator[](int i) { return exps[static_cast<size_t>(i)]; }

    bool operator==(const ExponentVector& o) const { return exps == o.exps; }

    ExponentVector plus(const ExponentVector& o) const {
        ExponentVector r = *this;
        for (int i = 0; i < dim(); ++i) r.exps[static_cast<size_t>(i)] += o[i];
        return r;
    }
    // Subtract one from coordinate i; caller guarantees exps[i] >= 1.
    ExponentVector minus_unit(int i) const {
        ExponentVector r = *this;
        r.exps[static_cast<size_t>(i)] -= 1;
        return r;
    }
    bool divides(const ExponentVector& o) const {
        for (int i = 0; i < dim(); ++i)
            if (exps[static_cast<size_t>(i)] > o[i]) return false;
        return true;
    }
};

// Graded lexicographic order with x1 > x2 > ... > xn. Larger means: higher
// total degree, or equal degree and lexicographically greater. This is the
// fixed term order of the whole project; the constant monomial is minimal.
inline std::strong_ordering grlex_compare(const ExponentVector& a, const ExponentVector& b) {
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
    for (size_t i = 0; i < a.exps.size(); ++i)
        if (auto c = a.exps[i] <=> b.exps[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

// Comparator putting the leading (grlex-largest) monomial first.
struct GrlexDescending {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        return grlex_compare(a, b) == std::strong_ordering::greater;
    }
};

// Render as "x1^2*x3" (constant monomial renders as "1").
inline std::string monomial_to_string(const ExponentVector& e) {
    std::string s;
    for (int i = 0; i < e.dim(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

// All exponent vectors in n variables with total degree exactly d, sorted
// grlex-descending. Deterministic enumeration used by the Macaulay matrix
// and the relation span.
std::vector<ExponentVector> monomials_of_degree(int n, int d);

// Degrees 0..d inclusive, grlex-descending overall.
std::vector<ExponentVector> monomials_up_to_degree(int n, int d);

} // namespace vcpot
