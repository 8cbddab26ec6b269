#pragma once

#include "vcpot/potential.hpp"
#include "vcpot/smallmat.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace vcpot {

enum class JacobianMethod { Surface, FiniteDifference };

// Derivative of the parameter-to-moments map at lambda: rows are moment
// multi-indices |alpha| <= order, columns the deformation parameters.
struct JacobianMatrix {
    std::vector<ExponentVector> row_alphas;
    int mu = 0;
    Mat entries;
    std::vector<double> singular_values; // of the raw matrix, descending
    JacobianMethod method = JacobianMethod::Surface;
};

// Surface method: entry(alpha, i) = -int over {F=0} within the ball of
// x^alpha psi e_i / |grad F| dS (the moving-boundary derivative of the
// moment integral; the ball boundary is lambda-independent). The finite-
// difference method central-differences moments() with step fd_delta.
JacobianMatrix moment_jacobian(const VersalDeformation& F, const std::vector<double>& lambda,
                               const Density& psi, int order, const LevelSetMesh& mesh,
                               JacobianMethod method, const GridSpec& grid,
                               double fd_delta = 1e-3,
                               exec::Mode mode = exec::Mode::Parallel);

// Same construction for the parameter-to-potential-samples map: rows are
// evaluation points y.
JacobianMatrix potential_jacobian(const VersalDeformation& F, const Density& psi,
                                  const std::vector<std::vector<double>>& y_samples,
                                  const LevelSetMesh& mesh,
                                  exec::Mode mode = exec::Mode::Parallel);

struct InjectivityCertificate {
    int rank = 0;
    int mu = 0;
    double sigma_min = 0.0; // of the column-scaled matrix
    double sigma_max = 0.0;
    double threshold = 1e-6;
    bool verdict = false;
    std::vector<double> singular_values; // column-scaled, descending
};

// Full-column-rank verdict after column scaling (each column divided by its
// norm): verdict = (rank == mu) = (sigma_min / sigma_max > threshold).
InjectivityCertificate injectivity_certificate(const JacobianMatrix& J, double threshold);

// Damped Gauss-Newton recovery of parameters from target data.
struct RecoveryOptions {
    int max_iterations = 50;
    double step_tol = 1e-10;
    double residual_tol = 0.0; // 0: rely on step criterion
    int max_halvings = 8;
};

struct RecoveryResult {
    std::vector<double> lambda_hat;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history; // accepted steps, monotone
};

// Generic residual model: r(lambda) = model(lambda) - target.
struct RecoveryProblem {
    std::function<std::vector<double>(const std::vector<double>&)> model;
    std::function<Mat(const std::vector<double>&)> jacobian;
};

RecoveryResult recover_parameters(const RecoveryProblem& problem,
                                  const std::vector<double>& target,
                                  const std::vector<double>& lambda0,
                                  const RecoveryOptions& opts = {});

// Quadrature-backed moment model for the standard pipeline.
RecoveryProblem moment_recovery_problem(const VersalDeformation& F, const Density& psi,
                                        int order, const GridSpec& grid,
                                        JacobianMethod method = JacobianMethod::Surface,
                                        exec::Mode mode = exec::Mode::Parallel);

struct SeparationPair {
    std::vector<double> lambda1;
    std::vector<double> lambda2;
    double separation = 0.0; // max_y |I1(y) - I2(y)| / |l1 - l2|
};

struct SeparationReport {
    std::vector<double> lambda;
    double radius = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> y_samples;
    std::vector<SeparationPair> pairs;
    double min_separation = 0.0;
    double sigma_min_prediction = 0.0; // sigma_min(J_potential) / sqrt(#y)
    double prediction_factor = 2.0;
    bool all_positive = false;
    bool prediction_met = false;
};

// Sample num_pairs random parameter pairs in the ball of the given radius
// around lambda and measure the normalized potential separation over the
// y samples. Deterministic for a fixed seed.
SeparationReport separation_experiment(const VersalDeformation& F, const Density& psi,
                                       const std::vector<double>& lambda, double radius,
                                       int num_pairs,
                                       const std::vector<std::vector<double>>& y_samples,
                                       const GridSpec& grid, std::uint64_t seed,
                                       double prediction_factor = 2.0,
                                       exec::Mode mode = exec::Mode::Parallel);

// Deterministic evaluation sphere: num_points directions scaled to radius.
// For num_points = 8 these are the cube-diagonal directions; otherwise a
// Fibonacci sphere (n = 3) or uniform angles (n = 2).
std::vector<std::vector<double>> evaluation_sphere(int n, double radius, int num_points);

// Smallest order L with C(L+n, n) >= mu + margin.
int default_moment_order(int n, int mu, int margin = 3);

} // namespace vcpot
