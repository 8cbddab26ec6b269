#include "vcpot/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vcpot {

Mat Mat::transposed() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> Mat::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != c_) throw config_error("Mat::apply: size mismatch");
    std::vector<double> y(static_cast<size_t>(r_), 0.0);
    for (int i = 0; i < r_; ++i) {
        double s = 0;
        for (int j = 0; j < c_; ++j) s += (*this)(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
    return y;
}

std::vector<double> Mat::apply_transposed(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != r_)
        throw config_error("Mat::apply_transposed: size mismatch");
    std::vector<double> y(static_cast<size_t>(c_), 0.0);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) y[static_cast<size_t>(j)] += (*this)(i, j) * x[static_cast<size_t>(i)];
    return y;
}

Svd jacobi_svd(const Mat& a) {
    const int m = a.rows(), n = a.cols();
    if (m < n)
        throw config_error("jacobi_svd: expected rows >= cols (pad or transpose first)");
    Mat u = a;
    Mat v(n, n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    // One-sided Jacobi: orthogonalize column pairs of U, accumulating the
    // rotations in V, until every off-diagonal Gram entry is negligible.
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (int i = 0; i < m; ++i) {
                    app += u(i, p) * u(i, p);
                    aqq += u(i, q) * u(i, q);
                    apq += u(i, p) * u(i, q);
                }
                if (std::abs(apq) <= 1e-14 * std::sqrt(app * aqq) || apq == 0.0) continue;
                off = std::max(off, std::abs(apq) / std::sqrt(std::max(app * aqq, 1e-300)));
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int i = 0; i < m; ++i) {
                    const double up = u(i, p), uq = u(i, q);
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                }
                for (int i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (off == 0.0) break;
    }

    Svd out;
    out.sigma.assign(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double s2 = 0;
        for (int i = 0; i < m; ++i) s2 += u(i, j) * u(i, j);
        out.sigma[static_cast<size_t>(j)] = std::sqrt(s2);
    }
    // Sort descending, permuting U and V columns accordingly.
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) {
        return out.sigma[static_cast<size_t>(x)] > out.sigma[static_cast<size_t>(y)];
    });
    Mat us(m, n), vs(n, n);
    std::vector<double> ss(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int src = perm[static_cast<size_t>(j)];
        ss[static_cast<size_t>(j)] = out.sigma[static_cast<size_t>(src)];
        const double inv = ss[static_cast<size_t>(j)] > 0 ? 1.0 / ss[static_cast<size_t>(j)] : 0.0;
        for (int i = 0; i < m; ++i) us(i, j) = u(i, src) * inv;
        for (int i = 0; i < n; ++i) vs(i, j) = v(i, src);
    }
    out.u = std::move(us);
    out.v = std::move(vs);
    out.sigma = std::move(ss);
    return out;
}

std::vector<double> svd_solve(const Svd& svd, const std::vector<double>& b, double rcond) {
    const int n = svd.v.rows();
    const double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    std::vector<double> ub = svd.u.apply_transposed(b);
    for (int j = 0; j < n; ++j) {
        const double s = svd.sigma[static_cast<size_t>(j)];
        ub[static_cast<size_t>(j)] = (s > rcond * smax && s > 0) ? ub[static_cast<size_t>(j)] / s : 0.0;
    }
    return svd.v.apply(ub);
}

} // namespace vcpot
