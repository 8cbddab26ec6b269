#pragma once

#include "vcpot/polynomial.hpp"

#include <array>
#include <vector>

namespace vcpot {

// Double-precision compiled form of a polynomial, used by the grid and mesh
// kernels. Gradient polynomials are compiled eagerly.
class RealPoly {
public:
    RealPoly() = default;
    explicit RealPoly(const Polynomial& p, bool with_gradient = true);

    int dim() const { return n_; }

    double operator()(const double* x) const {
        double acc = 0.0;
        for (const auto& t : terms_) {
            double v = t.coeff;
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < t.exps[static_cast<size_t>(i)]; ++k) v *= x[i];
            acc += v;
        }
        return acc;
    }
    double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }

    // Analytic gradient; requires with_gradient at construction.
    void gradient(const double* x, double* g) const {
        for (int i = 0; i < n_; ++i) g[i] = grads_[static_cast<size_t>(i)](x);
    }
    const RealPoly& partial(int i) const { return grads_[static_cast<size_t>(i)]; }

private:
    struct Term {
        std::vector<int> exps;
        double coeff;
    };
    int n_ = 0;
    std::vector<Term> terms_;
    std::vector<RealPoly> grads_;
};

} // namespace vcpot
