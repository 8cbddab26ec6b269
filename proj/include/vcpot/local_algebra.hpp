#pragma once

#include "vcpot/polynomial.hpp"

#include <string>
#include <vector>

namespace vcpot {

// Germ of a function with a critical point at the origin: f(0) = 0 and all
// first partials vanish at 0. Construction validates both conditions.
struct SingularityGerm {
    Polynomial poly;

    explicit SingularityGerm(Polynomial p);
    int dim() const { return poly.dim(); }
};

// [df/dx1, ..., df/dxn], exact.
std::vector<Polynomial> jacobian_generators(const SingularityGerm& f);

// Monomial basis e_1..e_mu of the local algebra Q_f = A/(df), ordered by
// descending total degree with ties broken lexicographically; the constant
// monomial is always last (e_mu = 1).
struct LocalAlgebra {
    std::vector<ExponentVector> basis;
    int mu = 0;

    std::vector<std::string> basis_strings() const {
        std::vector<std::string> out;
        out.reserve(basis.size());
        for (const auto& e : basis) out.push_back(monomial_to_string(e));
        return out;
    }
};

// Macaulay-matrix computation of the local algebra: rows are all monomial
// multiples of each partial derivative truncated at total degree
// degree_bound, row-reduced over exact rationals; the basis is the set of
// standard monomials (non-pivot columns) of degree <= degree_bound - 1.
// The result is accepted only if degree_bound + 1 reproduces it; otherwise
// a precondition_error("unstable basis ...") is thrown.
LocalAlgebra local_algebra(const SingularityGerm& f, int degree_bound);

// Single-bound run without the stability cross-check (used internally and
// by tests that pin a specific bound).
std::vector<ExponentVector> macaulay_standard_monomials(const SingularityGerm& f,
                                                        int degree_bound);

// Default bound policy: 2 * total degree of f (and at least 2).
int default_degree_bound(const SingularityGerm& f);

// local_algebra at the default bound, escalating the bound a few times if
// the basis has not stabilized; throws precondition_error("non-isolated
// singularity suspected ...") when escalation keeps changing the basis.
LocalAlgebra local_algebra_auto(const SingularityGerm& f);

// Milnor number via the Macaulay method; for Fermat germs x1^N+...+xn^N the
// closed form (N-1)^n is cross-checked against the matrix computation.
int milnor_number(const SingularityGerm& f);

// True if f = x1^N + ... + xn^N for some N >= 2; returns N.
bool is_fermat_germ(const SingularityGerm& f, int* N_out = nullptr);

} // namespace vcpot
