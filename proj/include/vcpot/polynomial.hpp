#pragma once

#include "vcpot/errors.hpp"
#include "vcpot/exponent.hpp"
#include "vcpot/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace vcpot {

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in grlex-descending order (leading term first, constant
// last), zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, Rat, GrlexDescending>;

    explicit Polynomial(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("Polynomial: dimension must be >= 1");
    }

    static Polynomial constant(int n, const Rat& c) {
        Polynomial p(n);
        p.add_term(ExponentVector(n), c);
        return p;
    }
    static Polynomial monomial(int n, const ExponentVector& e, const Rat& c = 1) {
        Polynomial p(n);
        p.add_term(e, c);
        return p;
    }
    static Polynomial variable(int n, int i) {
        ExponentVector e(n);
        e[i] = 1;
        return monomial(n, e);
    }

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
        return d;
    }
    int min_degree() const {
        int d = is_zero() ? 0 : 1 << 30;
        for (const auto& [e, c] : terms_) d = std::min(d, e.total_degree());
        return d;
    }

    Rat coeff(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    // Leading (grlex-largest) term; polynomial must be nonzero.
    const std::pair<const ExponentVector, Rat>& leading_term() const {
        if (is_zero()) throw std::logic_error("leading_term of zero polynomial");
        return *terms_.begin();
    }

    void add_term(const ExponentVector& e, const Rat& c) {
        if (e.dim() != n_) throw std::invalid_argument("Polynomial: exponent dimension mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_dim(b);
        Polynomial r(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea.plus(eb), ca * cb);
        return r;
    }
    friend Polynomial operator*(const Rat& c, Polynomial p) {
        if (c == 0) return Polynomial(p.n_);
        for (auto& [e, v] : p.terms_) v *= c;
        return p;
    }
    friend Polynomial operator-(Polynomial p) { return Rat(-1) * std::move(p); }

    Polynomial pow(int k) const {
        if (k < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
        Polynomial r = constant(n_, 1);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    // d/dx_i, exact.
    Polynomial derivative(int i) const {
        Polynomial r(n_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            r.add_term(e.minus_unit(i), c * e[i]);
        }
        return r;
    }

    // Drop all terms of total degree > k.
    Polynomial truncate_jet(int k) const {
        if (k < 0) throw std::invalid_argument("truncate_jet: negative degree");
        Polynomial r(n_);
        for (const auto& [e, c] : terms_)
            if (e.total_degree() <= k) r.add_term(e, c);
        return r;
    }

    // Substitute x_i -> s * x_i for every variable.
    Polynomial scale_variables(const Rat& s) const {
        Polynomial r(n_);
        for (const auto& [e, c] : terms_) {
            Rat f = c;
            for (int i = 0; i < e.total_degree(); ++i) f *= s;
            r.add_term(e, f);
        }
        return r;
    }

    double evaluate(const std::vector<double>& x) const;
    Rat evaluate_exact(const std::vector<Rat>& x) const;

    // Terms in the fixed term order; round-trips through parse_polynomial.
    std::string to_string() const;

private:
    void check_dim(const Polynomial& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Polynomial: dimension mismatch");
    }

    int n_;
    TermMap terms_;
};

// Parse the expression grammar
//   expression := ['-'] term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := coefficient | variable ('^' integer)?
//   variable   := 'x' integer            (1-based, index <= n)
//   coefficient:= integer | decimal | integer '/' integer
// Whitespace is insignificant. Throws parse_error with the offending position.
Polynomial parse_polynomial(const std::string& text, int n);

} // namespace vcpot
