#pragma once

#include "vcpot/local_algebra.hpp"
#include "vcpot/realpoly.hpp"

#include <string>
#include <vector>

namespace vcpot {

// Miniversal deformation F(x, lambda) = f(x) + sum_i lambda_i e_i(x) where
// e_1..e_mu is the local-algebra basis (e_mu = 1 by the basis ordering).
struct VersalDeformation {
    SingularityGerm f;
    LocalAlgebra algebra;

    int dim() const { return f.dim(); }
    int mu() const { return algebra.mu; }

    // f + sum lambda_i e_i with exact coefficients.
    Polynomial instantiate_exact(const std::vector<Rat>& lambda) const;

    // Compiled double-precision evaluator of F(., lambda).
    RealPoly instantiate(const std::vector<double>& lambda) const;

    double evaluate(const std::vector<double>& x, const std::vector<double>& lambda) const;
    Rat evaluate_exact(const std::vector<Rat>& x, const std::vector<Rat>& lambda) const;

    // "x1^3 + x2^3 + l1*x1*x2 + l2*x1 + l3*x2 + l4"
    std::string render() const;

    void check_lambda_size(size_t len) const;
};

VersalDeformation versal_deformation(const SingularityGerm& f);

// Lemma-3 style polynomial embedding of a germ into the Fermat family:
//   P(x) = f_{N+1}(delta * x) + sum_j (1 + eps_j) x_j^N
// with f_{N+1} the degree-(N+1) Taylor polynomial (here: jet truncation).
// Requires N >= mu + 2 and delta != 0; eps must have n entries (or be empty
// for all-zero).
Polynomial embed_singularity(const SingularityGerm& f, int N, const Rat& delta,
                             const std::vector<Rat>& eps);

} // namespace vcpot
