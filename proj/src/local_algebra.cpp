#include "vcpot/local_algebra.hpp"

#include "vcpot/linear.hpp"

#include <algorithm>
#include <map>

namespace vcpot {

SingularityGerm::SingularityGerm(Polynomial p) : poly(std::move(p)) {
    if (poly.is_zero()) throw config_error("germ: zero polynomial");
    if (poly.coeff(ExponentVector(poly.dim())) != 0)
        throw config_error("germ: f(0) must be 0 (constant term present)");
    for (int i = 0; i < poly.dim(); ++i) {
        ExponentVector lin(poly.dim());
        lin[i] = 1;
        if (poly.coeff(lin) != 0)
            throw config_error("germ: critical point at origin required (linear term in x" +
                               std::to_string(i + 1) + ")");
    }
}

std::vector<Polynomial> jacobian_generators(const SingularityGerm& f) {
    std::vector<Polynomial> out;
    out.reserve(static_cast<size_t>(f.dim()));
    for (int i = 0; i < f.dim(); ++i) out.push_back(f.poly.derivative(i));
    return out;
}

namespace {

// Map grlex-descending monomials of degree <= d to column indices 0..K-1,
// column 0 being the largest monomial.
std::map<ExponentVector, int, GrlexDescending> column_index(int n, int d) {
    std::map<ExponentVector, int, GrlexDescending> idx;
    int next = 0;
    for (const auto& e : monomials_up_to_degree(n, d)) idx.emplace(e, next++);
    return idx;
}

SparseRow to_row(const Polynomial& p,
                 const std::map<ExponentVector, int, GrlexDescending>& idx) {
    SparseRow r;
    r.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) r.emplace_back(idx.at(e), c);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

} // namespace

std::vector<ExponentVector> macaulay_standard_monomials(const SingularityGerm& f,
                                                        int degree_bound) {
    const int n = f.dim();
    const auto idx = column_index(n, degree_bound);
    RationalEchelon ech;
    for (const auto& g : jacobian_generators(f)) {
        if (g.is_zero()) continue;
        const int room = degree_bound - g.min_degree();
        for (int d = 0; d <= room; ++d) {
            for (const auto& m : monomials_of_degree(n, d)) {
                Polynomial row = (Polynomial::monomial(n, m) * g).truncate_jet(degree_bound);
                if (row.is_zero()) continue;
                ech.insert(to_row(row, idx));
            }
        }
    }
    std::vector<ExponentVector> standard;
    for (const auto& [e, col] : idx) {
        if (e.total_degree() > degree_bound - 1) continue;
        if (!ech.has_pivot(col)) standard.push_back(e);
    }
    // idx iterates grlex-descending already; constant monomial comes last.
    return standard;
}

LocalAlgebra local_algebra(const SingularityGerm& f, int degree_bound) {
    if (degree_bound < 1) throw config_error("local_algebra: degree_bound must be >= 1");
    auto basis = macaulay_standard_monomials(f, degree_bound);
    auto check = macaulay_standard_monomials(f, degree_bound + 1);
    if (basis != check)
        throw precondition_error(
            "unstable basis: local algebra changed between degree bounds " +
            std::to_string(degree_bound) + " and " + std::to_string(degree_bound + 1) +
            "; rerun with a larger bound");
    if (basis.empty())
        throw precondition_error("local_algebra: empty basis (inconsistent germ)");
    LocalAlgebra out;
    out.mu = static_cast<int>(basis.size());
    out.basis = std::move(basis);
    return out;
}

int default_degree_bound(const SingularityGerm& f) {
    return std::max(2, 2 * f.poly.total_degree());
}

LocalAlgebra local_algebra_auto(const SingularityGerm& f) {
    constexpr int kEscalations = 4;
    constexpr int kBasisCap = 512;
    int bound = default_degree_bound(f);
    for (int attempt = 0; attempt < kEscalations; ++attempt, bound += 2) {
        auto basis = macaulay_standard_monomials(f, bound);
        if (static_cast<int>(basis.size()) > kBasisCap) break;
        auto check = macaulay_standard_monomials(f, bound + 1);
        if (basis == check) {
            LocalAlgebra out;
            out.mu = static_cast<int>(basis.size());
            out.basis = std::move(basis);
            return out;
        }
    }
    throw precondition_error(
        "non-isolated singularity suspected: local-algebra basis keeps growing with the "
        "degree bound");
}

bool is_fermat_germ(const SingularityGerm& f, int* N_out) {
    const int n = f.dim();
    if (f.poly.term_count() != static_cast<size_t>(n)) return false;
    int N = f.poly.total_degree();
    if (N < 2) return false;
    for (int i = 0; i < n; ++i) {
        ExponentVector e(n);
        e[i] = N;
        if (f.poly.coeff(e) != 1) return false;
    }
    if (N_out) *N_out = N;
    return true;
}

int milnor_number(const SingularityGerm& f) {
    const LocalAlgebra alg = local_algebra_auto(f);
    int N = 0;
    if (is_fermat_germ(f, &N)) {
        int closed = 1;
        for (int i = 0; i < f.dim(); ++i) closed *= (N - 1);
        if (closed != alg.mu)
            throw numeric_error("milnor_number: Macaulay result " + std::to_string(alg.mu) +
                                " disagrees with Fermat closed form " + std::to_string(closed));
    }
    return alg.mu;
}

} // namespace vcpot
