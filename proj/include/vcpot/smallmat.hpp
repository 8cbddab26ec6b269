#pragma once

#include "vcpot/errors.hpp"

#include <vector>

namespace vcpot {

// Dense row-major matrix for the small Jacobians of this project.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
        if (rows < 0 || cols < 0) throw config_error("Mat: negative size");
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
    const std::vector<double>& data() const { return a_; }

    Mat transposed() const;
    std::vector<double> apply(const std::vector<double>& x) const;
    std::vector<double> apply_transposed(const std::vector<double>& x) const;

private:
    int r_ = 0, c_ = 0;
    std::vector<double> a_;
};

// Thin SVD A = U diag(sigma) V^T computed by one-sided Jacobi rotations
// (relative accuracy well below 1e-8 for these sizes). sigma is descending.
struct Svd {
    Mat u;                      // rows x cols
    std::vector<double> sigma;  // cols, descending
    Mat v;                      // cols x cols
};

Svd jacobi_svd(const Mat& a);

// Minimum-norm least-squares solution of A x ~= b via the SVD, truncating
// directions with sigma_i <= rcond * sigma_max.
std::vector<double> svd_solve(const Svd& svd, const std::vector<double>& b,
                              double rcond = 1e-13);

} // namespace vcpot
