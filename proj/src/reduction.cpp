#include "vcpot/reduction.hpp"

#include <algorithm>
#include <memory>

namespace vcpot {

namespace {

SingularityGerm fermat_germ(int N, int n) {
    Polynomial f(n);
    for (int i = 0; i < n; ++i) {
        ExponentVector e(n);
        e[i] = N;
        f += Polynomial::monomial(n, e);
    }
    return SingularityGerm(std::move(f));
}

bool in_box(const ExponentVector& e, int N) {
    for (int i = 0; i < e.dim(); ++i)
        if (e[i] > N - 2) return false;
    return true;
}

} // namespace

VolumeFormGerm relation_polynomial(const RelationGenerator& g, int N, int n) {
    if (g.beta.dim() != n) throw config_error("relation_polynomial: beta dimension mismatch");
    if (N < 2) throw config_error("relation_polynomial: N must be >= 2");
    const int i = g.i - 1, k = g.k - 1;
    Polynomial p(n);
    {
        ExponentVector e = g.beta.minus_unit(k);
        e[i] += N - 1;
        p.add_term(e, Rat(g.beta[k]));
    }
    if (g.beta[i] >= 1) {
        ExponentVector e = g.beta.minus_unit(i);
        e[k] += N - 1;
        p.add_term(e, Rat(-g.beta[i]));
    }
    return VolumeFormGerm(N, std::move(p));
}

CohomologyClass CohomologyClass::scaled(const Rat& c) const {
    CohomologyClass out;
    if (c == 0) return out;
    for (const auto& [e, v] : coords) out.coords.emplace(e, c * v);
    return out;
}

std::string CohomologyClass::to_string() const {
    if (coords.empty()) return "0";
    std::string s;
    for (const auto& [e, v] : coords) {
        if (!s.empty()) s += " ; ";
        s += monomial_to_string(e) + ": " + rat_to_string(v);
    }
    return s;
}

ReductionContext::ReductionContext(int N, int n, int maxdeg,
                                   std::optional<std::vector<Rat>> lambda)
    : N_(N), n_(n), maxdeg_(maxdeg), family_(versal_deformation(fermat_germ(N, n))) {
    if (maxdeg_ < N - 1) throw config_error("ReductionContext: maxdeg must be >= N-1");
    mu_ = family_.mu();
    if (lambda) {
        lambda_ = std::move(*lambda);
        family_.check_lambda_size(lambda_.size());
    } else {
        lambda_.assign(static_cast<size_t>(mu_), Rat(0));
        lambda_.back() = 1;
    }
    if (lambda_.back() == 0)
        throw precondition_error("ReductionContext: lambda_mu must be nonzero");
    build();
}

SparseRow ReductionContext::to_row(const Polynomial& p) const {
    SparseRow r;
    r.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) r.emplace_back(col_of_.at(e), c);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

void ReductionContext::insert_relation(const Polynomial& p, RationalEchelon& ech) {
    if (p.is_zero()) return;
    ech.insert(to_row(p));
}

void ReductionContext::build() {
    int next = 0;
    for (const auto& e : monomials_up_to_degree(n_, maxdeg_)) {
        col_of_.emplace(e, next++);
        mono_of_col_.push_back(e);
    }

    const Polynomial F = family_.instantiate_exact(lambda_);
    std::vector<Polynomial> dF;
    for (int j = 0; j < n_; ++j) dF.push_back(F.derivative(j));

    // (a) exterior-derivative relations.
    if (n_ == 1) {
        // F^j dF: the Gelfand-Leray form of F^j F' dx is constant on fibers.
        Polynomial pw = Polynomial::constant(1, 1);
        for (;;) {
            Polynomial rel = pw * dF[0];
            if (rel.total_degree() > maxdeg_) break;
            insert_relation(rel, zero_integral_);
            insert_relation(rel, echelon_);
            pw = pw * F;
        }
    } else {
        // Slot degree bound: the relation for |beta| = d has top degree
        // d + N - 2, which must stay within the column space.
        const int beta_max = maxdeg_ - N_ + 2;
        for (int i = 0; i < n_; ++i) {
            for (int k = i + 1; k < n_; ++k) {
                for (int d = 1; d <= beta_max; ++d) {
                    for (const auto& beta : monomials_of_degree(n_, d)) {
                        if (beta[i] == 0 && beta[k] == 0) continue;
                        Polynomial rel(n_);
                        if (beta[k] >= 1)
                            rel += dF[static_cast<size_t>(i)] *
                                   Polynomial::monomial(n_, beta.minus_unit(k), Rat(beta[k]));
                        if (beta[i] >= 1)
                            rel -= dF[static_cast<size_t>(k)] *
                                   Polynomial::monomial(n_, beta.minus_unit(i), Rat(beta[i]));
                        if (rel.is_zero() || rel.total_degree() > maxdeg_) continue;
                        insert_relation(rel, zero_integral_);
                        insert_relation(rel, echelon_);
                    }
                }
            }
        }
    }

    // (b) level-set relations F * x^gamma.
    for (int d = 0; d <= maxdeg_ - N_; ++d)
        for (const auto& gamma : monomials_of_degree(n_, d))
            insert_relation(F * Polynomial::monomial(n_, gamma), echelon_);

    // Completeness: degrees whose non-box monomials all have pivots.
    complete_degree_ = -1;
    for (int d = 0; d <= maxdeg_; ++d) {
        bool ok = true;
        for (const auto& e : monomials_of_degree(n_, d)) {
            if (in_box(e, N_)) continue;
            if (!echelon_.has_pivot(col_of_.at(e))) {
                ok = false;
                break;
            }
        }
        if (!ok) break;
        complete_degree_ = d;
    }
}

CohomologyClass ReductionContext::reduce(const Polynomial& g) const {
    return reduce_counting(g, nullptr);
}

CohomologyClass ReductionContext::reduce_counting(const Polynomial& g, int* steps) const {
    if (g.dim() != n_) throw config_error("reduce: dimension mismatch");
    if (g.total_degree() > complete_degree_)
        throw precondition_error("reduce: degree " + std::to_string(g.total_degree()) +
                                 " exceeds the complete degree " +
                                 std::to_string(complete_degree_) +
                                 " of the precomputed span; rebuild with larger maxdeg");
    SparseRow r = to_row(g);
    int count = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [col, val] : r) {
            auto it = echelon_.rows().find(col);
            if (it != echelon_.rows().end()) {
                row_axpy(r, val, it->second);
                ++count;
                changed = true;
                break;
            }
        }
    }
    if (steps) *steps = count;
    CohomologyClass out;
    for (const auto& [col, val] : r) {
        const ExponentVector& e = mono_of_col_[static_cast<size_t>(col)];
        if (!in_box(e, N_))
            throw numeric_error("reduce: normal form escaped the basis box at " +
                                monomial_to_string(e));
        out.coords.emplace(e, val);
    }
    return out;
}

std::vector<VolumeFormGerm> ReductionContext::zero_integral_span() const {
    std::vector<VolumeFormGerm> out;
    for (const auto& [pivot, row] : zero_integral_.rows()) {
        Polynomial p(n_);
        for (const auto& [col, val] : row)
            p.add_term(mono_of_col_[static_cast<size_t>(col)], val);
        out.emplace_back(N_, std::move(p));
    }
    return out;
}

int ReductionContext::quotient_dimension(int D) const {
    return static_cast<int>(standard_monomials(D).size());
}

std::vector<ExponentVector> ReductionContext::standard_monomials(int D) const {
    if (D > maxdeg_) throw config_error("standard_monomials: D exceeds maxdeg");
    std::vector<ExponentVector> out;
    for (const auto& [e, col] : col_of_) {
        if (e.total_degree() > D) continue;
        if (!echelon_.has_pivot(col)) out.push_back(e);
    }
    return out;
}

VolumeFormGerm multiply_by_deformation_power(const VolumeFormGerm& c,
                                             const VersalDeformation& F,
                                             const std::vector<Rat>& lambda, int k) {
    F.check_lambda_size(lambda.size());
    if (k < 0) throw config_error("multiply_by_deformation_power: k must be >= 0");
    const Rat lambda_mu = lambda.back();
    if (lambda_mu == 0)
        throw precondition_error("multiply_by_deformation_power: lambda_mu must be nonzero");
    Polynomial multiplier = F.instantiate_exact(lambda);
    multiplier -= Polynomial::constant(F.dim(), lambda_mu);
    multiplier = Rat(1) / lambda_mu * multiplier;
    return VolumeFormGerm(c.N, c.poly * multiplier.pow(k));
}

SurjectivityCertificate surjectivity_certificate(const ExponentVector& e, int N, int n,
                                                 int maxdeg) {
    if (e.dim() != n) throw config_error("surjectivity_certificate: e dimension mismatch");
    if (!in_box(e, N))
        throw config_error("surjectivity_certificate: e outside the box [0, N-2]^n");

    const int need = maxdeg + e.total_degree();
    std::unique_ptr<ReductionContext> ctx;
    for (int margin = N; margin <= 3 * N; margin += N) {
        ctx = std::make_unique<ReductionContext>(N, n, need + margin);
        if (ctx->complete_degree() >= need) break;
        ctx.reset();
    }
    if (!ctx)
        throw numeric_error("surjectivity_certificate: could not complete the span");

    // Box coordinates for the rank computation.
    std::map<ExponentVector, int, GrlexDescending> box_col;
    {
        int next = 0;
        for (const auto& m : monomials_up_to_degree(n, n * (N - 2)))
            if (in_box(m, N)) box_col.emplace(m, next++);
    }

    SurjectivityCertificate cert;
    cert.N = N;
    cert.n = n;
    cert.maxdeg = maxdeg;
    cert.e = e;
    cert.mu = ctx->mu();

    RationalEchelon rank_ech;
    auto all = monomials_up_to_degree(n, maxdeg);
    std::reverse(all.begin(), all.end()); // ascending: small monomials first
    for (const auto& g : all) {
        const CohomologyClass cls = ctx->reduce(Polynomial::monomial(n, g.plus(e)));
        if (cls.is_zero()) continue;
        SparseRow r;
        for (const auto& [m, v] : cls.coords) r.emplace_back(box_col.at(m), v);
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (rank_ech.insert(std::move(r))) {
            cert.witnesses.push_back(g);
            if (static_cast<int>(rank_ech.rank()) == cert.mu) break;
        }
    }
    cert.rank = static_cast<int>(rank_ech.rank());
    cert.full_rank = (cert.rank == cert.mu);
    return cert;
}

} // namespace vcpot
