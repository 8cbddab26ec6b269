#include "vcpot/polynomial.hpp"

#include <cctype>
#include <cmath>

namespace vcpot {

std::vector<ExponentVector> monomials_of_degree(int n, int d) {
    std::vector<ExponentVector> out;
    ExponentVector cur(n);
    // Recursive lexicographic enumeration; sorted grlex-descending afterwards.
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
    };
    rec(rec, 0, d);
    return out; // already lex-descending within the fixed degree
}

std::vector<ExponentVector> monomials_up_to_degree(int n, int d) {
    std::vector<ExponentVector> out;
    for (int k = d; k >= 0; --k) {
        auto layer = monomials_of_degree(n, k);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("Polynomial::evaluate: point dimension mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = rat_to_double(c);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[static_cast<size_t>(i)];
        acc += t;
    }
    return acc;
}

Rat Polynomial::evaluate_exact(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("Polynomial::evaluate_exact: point dimension mismatch");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[static_cast<size_t>(i)];
        acc += t;
    }
    return acc;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
        } else {
            s += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        const std::string mono = monomial_to_string(e);
        if (mono == "1") {
            s += rat_to_string(a);
        } else if (a == 1) {
            s += mono;
        } else {
            s += rat_to_string(a) + "*" + mono;
        }
    }
    return s;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, int n) : s_(text), n_(n) {}

    Polynomial run() {
        Polynomial p(n_);
        skip_ws();
        int sign = 1;
        if (peek() == '-') {
            sign = -1;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        p += Rat(sign) * parse_term();
        skip_ws();
        while (pos_ < s_.size()) {
            char op = peek();
            if (op != '+' && op != '-') throw parse_error("expected '+' or '-'", pos_);
            ++pos_;
            Polynomial t = parse_term();
            p += (op == '-') ? Rat(-1) * t : t;
            skip_ws();
        }
        return p;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    Polynomial parse_term() {
        Polynomial t = parse_factor();
        skip_ws();
        while (peek() == '*') {
            ++pos_;
            t = t * parse_factor();
            skip_ws();
        }
        return t;
    }

    Polynomial parse_factor() {
        skip_ws();
        if (pos_ >= s_.size()) throw parse_error("unexpected end of input", pos_);
        char c = peek();
        if (c == 'x') return parse_variable();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_coefficient();
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    Polynomial parse_variable() {
        size_t at = pos_;
        ++pos_; // consume 'x'
        long idx = parse_integer("variable index");
        if (idx < 1) throw parse_error("variable index must be >= 1", at);
        if (idx > n_)
            throw parse_error("variable index " + std::to_string(idx) + " exceeds dimension " +
                                  std::to_string(n_),
                              at);
        int exp = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            exp = static_cast<int>(parse_integer("exponent"));
            if (exp < 0) throw parse_error("negative exponent", at);
        }
        ExponentVector e(n_);
        e[static_cast<int>(idx) - 1] = exp;
        return Polynomial::monomial(n_, e);
    }

    Polynomial parse_coefficient() {
        BigInt ipart = parse_bigint("coefficient");
        if (peek() == '.') {
            ++pos_;
            size_t at = pos_;
            BigInt frac = 0, scale = 1;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                frac = frac * 10 + (s_[pos_] - '0');
                scale *= 10;
                ++pos_;
            }
            if (pos_ == at) throw parse_error("expected digits after decimal point", at);
            return Polynomial::constant(n_, Rat(ipart * scale + frac, scale));
        }
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            BigInt den = parse_bigint("denominator");
            if (den == 0) throw parse_error("zero denominator", pos_);
            return Polynomial::constant(n_, Rat(ipart, den));
        }
        return Polynomial::constant(n_, Rat(ipart));
    }

    long parse_integer(const char* what) {
        BigInt v = parse_bigint(what);
        return static_cast<long>(v);
    }

    BigInt parse_bigint(const char* what) {
        skip_ws();
        size_t at = pos_;
        BigInt v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == at) throw parse_error(std::string("expected ") + what, at);
        return v;
    }

    const std::string& s_;
    int n_;
    size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(const std::string& text, int n) {
    if (n < 1) throw config_error("parse_polynomial: dimension must be >= 1");
    return Parser(text, n).run();
}

} // namespace vcpot
