#pragma once

#include "vcpot/linear.hpp"
#include "vcpot/polynomial.hpp"
#include "vcpot/versal.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vcpot {

// Volume form g(x) dx1^...^dxn over the Fermat family x1^N+...+xn^N,
// represented by its coefficient polynomial g.
struct VolumeFormGerm {
    int N = 0;
    Polynomial poly;

    VolumeFormGerm(int N_, Polynomial p) : N(N_), poly(std::move(p)) {
        if (N < 2) throw config_error("VolumeFormGerm: N must be >= 2");
    }
    int dim() const { return poly.dim(); }
};

// Monomial slot of an (n-2)-form: coefficient x^beta in the component whose
// differentials omit dx_i and dx_k (1-based indices, i < k, beta_k >= 1).
struct RelationGenerator {
    int i = 0;
    int k = 0;
    ExponentVector beta;

    RelationGenerator(int i_, int k_, ExponentVector b) : i(i_), k(k_), beta(std::move(b)) {
        const int n = beta.dim();
        if (i < 1 || k > n || i >= k)
            throw config_error("RelationGenerator: need 1 <= i < k <= n");
        if (beta[k - 1] < 1) throw config_error("RelationGenerator: beta_k must be >= 1");
    }
};

// Zero-integral form of the slot (i,k,beta) for the pure Fermat germ:
//   beta_k * x_i^{N-1} * x^{beta - e_k}  -  beta_i * x_k^{N-1} * x^{beta - e_i}
// (the second term is absent when beta_i = 0). This is df ^ d(x^beta dX)
// up to the overall factor N, which is dropped.
VolumeFormGerm relation_polynomial(const RelationGenerator& g, int N, int n);

// Cohomology class over the vanishing-cohomology basis: coordinates on the
// monomials with all exponents in [0, N-2].
struct CohomologyClass {
    std::map<ExponentVector, Rat, GrlexDescending> coords;

    bool is_zero() const { return coords.empty(); }
    bool operator==(const CohomologyClass& o) const { return coords == o.coords; }
    CohomologyClass scaled(const Rat& c) const;
    std::string to_string() const;
};

// The reduction calculus for one Fermat family (n, N) at a fixed parameter
// value. The rewrite span combines the paper's two mechanisms:
//   (a) exterior-derivative relations dF ^ d(omega) for monomial (n-2)-form
//       slots (for n = 1: the forms F^j dF, whose Gelfand-Leray forms are
//       fiberwise constant), and
//   (b) level-set relations F * x^gamma, which realize the multiply-by-
//       (F/lambda_mu) operation: on {F = 0} these forms restrict to zero.
// Together they cut the forms of degree <= maxdeg down to the mu-dimensional
// vanishing cohomology with the [0,N-2]^n monomial basis.
//
// lambda defaults to the pure Fermat parameter (0,...,0, lambda_mu = 1).
class ReductionContext {
public:
    ReductionContext(int N, int n, int maxdeg,
                     std::optional<std::vector<Rat>> lambda = std::nullopt);

    int N() const { return N_; }
    int n() const { return n_; }
    int maxdeg() const { return maxdeg_; }
    int mu() const { return mu_; }
    // Largest degree d such that every monomial of degree <= d reduces into
    // the basis box; inputs beyond it are rejected.
    int complete_degree() const { return complete_degree_; }
    const std::vector<Rat>& lambda() const { return lambda_; }
    const VersalDeformation& family() const { return family_; }

    // Normal form modulo the rewrite span. Throws precondition_error when the
    // degree of g exceeds complete_degree().
    CohomologyClass reduce(const Polynomial& g) const;
    CohomologyClass reduce(const VolumeFormGerm& g) const { return reduce(g.poly); }
    // Same, counting the number of elimination steps applied.
    CohomologyClass reduce_counting(const Polynomial& g, int* steps) const;

    // Reduced spanning set of the zero-integral forms alone (family (a)),
    // one form per pivot, grlex order of pivots.
    std::vector<VolumeFormGerm> zero_integral_span() const;

    // Number of standard monomials of degree <= D under the full span.
    int quotient_dimension(int D) const;
    // Standard monomials of degree <= D (should equal the basis box once D
    // is large enough).
    std::vector<ExponentVector> standard_monomials(int D) const;

private:
    void build();
    void insert_relation(const Polynomial& p, RationalEchelon& ech);
    SparseRow to_row(const Polynomial& p) const;

    int N_, n_, maxdeg_, mu_;
    std::vector<Rat> lambda_;
    VersalDeformation family_;
    std::map<ExponentVector, int, GrlexDescending> col_of_;
    std::vector<ExponentVector> mono_of_col_;
    RationalEchelon echelon_;        // full span (a) + (b)
    RationalEchelon zero_integral_;  // span (a) only
    int complete_degree_ = -1;
};

// c * ((f + lambda_1 e_1 + ... + lambda_{mu-1} e_{mu-1}) / lambda_mu)^k,
// expanded exactly. On {F(., lambda) = 0} this multiplier equals (-1)^k.
VolumeFormGerm multiply_by_deformation_power(const VolumeFormGerm& c,
                                             const VersalDeformation& F,
                                             const std::vector<Rat>& lambda, int k);

// Rank certificate for the multiplication map g -> [g * x^e] over all
// monomials g of degree <= maxdeg (Theorem-1 surrogate: full rank means the
// directional derivative against e reaches every cohomology class).
struct SurjectivityCertificate {
    int N = 0, n = 0, maxdeg = 0;
    ExponentVector e;
    int rank = 0;
    int mu = 0;
    bool full_rank = false;
    std::vector<ExponentVector> witnesses;
};

SurjectivityCertificate surjectivity_certificate(const ExponentVector& e, int N, int n,
                                                 int maxdeg);

// Default working degree for the calculus: 2 n (N - 1).
inline int default_reduction_maxdeg(int N, int n) { return 2 * n * (N - 1); }

} // namespace vcpot
