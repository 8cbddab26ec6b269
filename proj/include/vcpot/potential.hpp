#pragma once

#include "vcpot/mesh.hpp"

#include <optional>
#include <vector>

namespace vcpot {

// Polynomial density psi(x). The nonzero-at-origin check matches the class
// of densities the uniqueness argument supports.
struct Density {
    Polynomial psi;
    RealPoly compiled;

    explicit Density(Polynomial p, bool require_nonzero_at_origin = false)
        : psi(std::move(p)), compiled(psi, false) {
        if (require_nonzero_at_origin && psi.coeff(ExponentVector(psi.dim())) == 0)
            throw config_error("density: psi(0) must be nonzero");
    }
    static Density one(int n) { return Density(Polynomial::constant(n, 1)); }
};

// |x - y|^{-(n-2)} for n >= 3; the n = 2 kernel is out of scope.
double newton_kernel(const double* x, const double* y, int n);
double newton_kernel(const std::vector<double>& x, const std::vector<double>& y, int n);

// Midpoint-rule Newton potential of D = {F <= 0} within the grid ball,
// evaluated at the exterior point y (|y| > radius required). Returns 0 and
// sets *cells_used = 0 for an empty domain.
double volume_potential(const RealPoly& F, const Density& psi, const std::vector<double>& y,
                        const GridSpec& grid, exec::Mode mode = exec::Mode::Parallel,
                        long* cells_used = nullptr);
double volume_potential(const VersalDeformation& F, const std::vector<double>& lambda,
                        const Density& psi, const std::vector<double>& y, const GridSpec& grid,
                        exec::Mode mode = exec::Mode::Parallel, long* cells_used = nullptr);

// All evaluation points in one grid pass.
std::vector<double> volume_potentials(const RealPoly& F, const Density& psi,
                                      const std::vector<std::vector<double>>& ys,
                                      const GridSpec& grid,
                                      exec::Mode mode = exec::Mode::Parallel,
                                      long* cells_used = nullptr);

// Single-layer potential of the Arnold cycle with the standard charge
// dS / |grad F|: sum over facets of sign * psi(c) K(c,y) area / |grad F(c)|.
// The mesh must be Arnold-oriented.
double surface_charge_potential(const LevelSetMesh& mesh, const Density& psi,
                                const std::vector<double>& y,
                                exec::Mode mode = exec::Mode::Parallel);

// Gelfand-Leray representation of d/d lambda_i of the volume potential of
// D = {F <= 0} within the ball:
//   - sum over all facets of e_i(c) psi(c) K(c,y) area / |grad F(c)|.
// The ball boundary does not move with lambda, so the formula holds for
// clipped domains as well; each boundary component enters with the plain
// (unsigned) surface measure.
double potential_lambda_derivative(const VersalDeformation& F, const LevelSetMesh& mesh,
                                   int param_index, const Density& psi,
                                   const std::vector<double>& y,
                                   exec::Mode mode = exec::Mode::Parallel);

// Moments m_alpha = int_D x^alpha psi dx for |alpha| <= order, midpoint rule.
struct MomentVector {
    int order = 0;
    int n = 0;
    double ball_radius = 0.0;
    std::vector<ExponentVector> alphas; // ascending grlex
    std::vector<double> values;

    int index_of(const ExponentVector& alpha) const;
};

std::vector<ExponentVector> moment_multi_indices(int n, int order);

MomentVector moments(const RealPoly& F, const Density& psi, int order, const GridSpec& grid,
                     exec::Mode mode = exec::Mode::Parallel);
MomentVector moments(const VersalDeformation& F, const std::vector<double>& lambda,
                     const Density& psi, int order, const GridSpec& grid,
                     exec::Mode mode = exec::Mode::Parallel);

// Taylor coefficient T_alpha(y) = (1/alpha!) d^alpha_x |x-y|^{-(n-2)} at
// x = 0, computed by exact symbolic differentiation of the kernel and
// evaluated at the given y.
double kernel_taylor_coefficient(const ExponentVector& alpha, const std::vector<double>& y,
                                 int n);

// Truncated multipole expansion sum_alpha T_alpha(y) m_alpha; requires
// |y| > 2 * ball radius of the moment vector.
double multipole_eval(const MomentVector& m, const std::vector<double>& y, int n);

} // namespace vcpot
