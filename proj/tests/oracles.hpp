#pragma once

// Test-side oracles, kept independent of the library implementation paths
// they check: an exterior-algebra expansion for the zero-integral forms, a
// fraction-free (Bareiss) rank, and closed-form sphere quantities.

#include "vcpot/polynomial.hpp"
#include "vcpot/reduction.hpp"

#include <numeric>
#include <vector>

namespace oracle {

using namespace vcpot;

// Signature of the permutation sending (i, k, J) to (1, ..., n), where J is
// the ascending complement of {i, k}; 1-based i < k.
inline int complement_sign(int i, int k, int n) {
    std::vector<int> perm = {i, k};
    for (int j = 1; j <= n; ++j)
        if (j != i && j != k) perm.push_back(j);
    int inversions = 0;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// df ^ d(x^beta dx_J) for f = x1^N + ... + xn^N, expanded from first
// principles including the overall factor N and the orientation sign of
// dx_i ^ dx_k ^ dx_J relative to dx_1 ^ ... ^ dx_n.
inline Polynomial df_wedge_d(int i, int k, const ExponentVector& beta, int N, int n) {
    Polynomial out(n);
    const int sign = complement_sign(i, k, n);
    // term from dx_i (of df) wedge dx_k (of da):
    if (beta[k - 1] >= 1) {
        ExponentVector e = beta.minus_unit(k - 1);
        e[i - 1] += N - 1;
        out.add_term(e, Rat(sign) * N * beta[k - 1]);
    }
    // term from dx_k (of df) wedge dx_i (of da), opposite orientation:
    if (beta[i - 1] >= 1) {
        ExponentVector e = beta.minus_unit(i - 1);
        e[k - 1] += N - 1;
        out.add_term(e, Rat(-sign) * N * beta[i - 1]);
    }
    return out;
}

// Fraction-free row reduction rank over exact integers (Bareiss-style
// elimination on rational rows cleared to a common denominator).
class DenseRank {
public:
    explicit DenseRank(int cols) : cols_(cols) {}

    void add_row(const std::vector<Rat>& row) {
        std::vector<BigInt> r(static_cast<size_t>(cols_));
        BigInt lcm = 1;
        for (const auto& v : row) {
            const BigInt d = denominator(v);
            lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
        }
        for (int j = 0; j < cols_; ++j) {
            const Rat scaled = row[static_cast<size_t>(j)] * Rat(lcm);
            r[static_cast<size_t>(j)] = numerator(scaled);
        }
        rows_.push_back(std::move(r));
    }

    int rank() const {
        auto m = rows_;
        int rank = 0;
        for (int col = 0; col < cols_ && rank < static_cast<int>(m.size()); ++col) {
            int pivot = -1;
            for (int r = rank; r < static_cast<int>(m.size()); ++r)
                if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(pivot)]);
            const BigInt p = m[static_cast<size_t>(rank)][static_cast<size_t>(col)];
            for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
                const BigInt q = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (q == 0) continue;
                for (int j = col; j < cols_; ++j)
                    m[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                        m[static_cast<size_t>(r)][static_cast<size_t>(j)] * p -
                        m[static_cast<size_t>(rank)][static_cast<size_t>(j)] * q;
            }
            ++rank;
        }
        return rank;
    }

private:
    int cols_;
    std::vector<std::vector<BigInt>> rows_;
};

// Rank of a family of forms over the monomials of degree <= maxdeg.
inline int form_rank(const std::vector<VolumeFormGerm>& forms, int n, int maxdeg) {
    const auto monos = monomials_up_to_degree(n, maxdeg);
    std::map<ExponentVector, int, GrlexDescending> col;
    int next = 0;
    for (const auto& m : monos) col.emplace(m, next++);
    DenseRank rk(static_cast<int>(monos.size()));
    for (const auto& f : forms) {
        std::vector<Rat> row(monos.size(), Rat(0));
        for (const auto& [e, c] : f.poly.terms()) row[static_cast<size_t>(col.at(e))] = c;
        rk.add_row(row);
    }
    return rk.rank();
}

constexpr double kPi = 3.14159265358979323846;

// Newton potential of the homogeneous ball of radius r at exterior distance d.
inline double ball_potential(double r, double d) { return 4.0 / 3.0 * kPi * r * r * r / d; }

// Moments of the homogeneous unit-density ball of radius r about its center.
inline double ball_volume(double r) { return 4.0 / 3.0 * kPi * r * r * r; }
inline double ball_second_moment(double r) { return 4.0 * kPi * std::pow(r, 5) / 15.0; }

} // namespace oracle
