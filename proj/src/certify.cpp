#include "vcpot/certify.hpp"

#include <algorithm>
#include <cmath>

namespace vcpot {

namespace {

double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Facets flattened across components with precomputed quadrature weight
// psi(c) * area / |grad F|; gradient validity checked up front.
struct SurfaceQuadrature {
    std::vector<const MeshComponent*> comp;
    std::vector<size_t> facet;
    std::vector<double> weight;

    SurfaceQuadrature(const LevelSetMesh& mesh, const Density& psi, const char* who) {
        for (const auto& c : mesh.components) {
            for (size_t f = 0; f < c.facets.size(); ++f) {
                if (!(c.grad_norm[f] > 0))
                    throw precondition_error(std::string(who) + ": zero gradient facet");
                comp.push_back(&c);
                facet.push_back(f);
                weight.push_back(psi.compiled(c.centroid[f].data()) * c.area[f] / c.grad_norm[f]);
            }
        }
    }
    std::int64_t size() const { return static_cast<std::int64_t>(weight.size()); }
};

} // namespace

JacobianMatrix moment_jacobian(const VersalDeformation& F, const std::vector<double>& lambda,
                               const Density& psi, int order, const LevelSetMesh& mesh,
                               JacobianMethod method, const GridSpec& grid, double fd_delta,
                               exec::Mode mode) {
    F.check_lambda_size(lambda.size());
    const int mu = F.mu();
    JacobianMatrix J;
    J.mu = mu;
    J.method = method;
    J.row_alphas = moment_multi_indices(grid.n, order);
    const int rows = static_cast<int>(J.row_alphas.size());
    if (rows < mu)
        throw precondition_error(
            "moment_jacobian: need at least mu moment rows (C(L+n,n) >= mu)");
    J.entries = Mat(rows, mu);

    if (method == JacobianMethod::Surface) {
        if (mesh.empty()) throw precondition_error("moment_jacobian: empty level set mesh");
        SurfaceQuadrature quad(mesh, psi, "moment_jacobian");
        std::vector<RealPoly> basis;
        basis.reserve(static_cast<size_t>(mu));
        for (int i = 0; i < mu; ++i)
            basis.emplace_back(Polynomial::monomial(F.dim(), F.algebra.basis[static_cast<size_t>(i)]),
                               false);
        const int n_out = rows * mu;
        std::vector<double> acc(static_cast<size_t>(n_out), 0.0);
        exec::chunked_accumulate(mode, quad.size(), n_out, [&](std::int64_t q, double* a) {
            const auto& c = *quad.comp[static_cast<size_t>(q)];
            const double* x = c.centroid[quad.facet[static_cast<size_t>(q)]].data();
            const double w = quad.weight[static_cast<size_t>(q)];
            for (int r = 0; r < rows; ++r) {
                const ExponentVector& al = J.row_alphas[static_cast<size_t>(r)];
                double xa = 1.0;
                for (int i = 0; i < grid.n; ++i)
                    for (int k = 0; k < al[i]; ++k) xa *= x[i];
                const double base = -xa * w;
                for (int i = 0; i < mu; ++i) a[r * mu + i] += base * basis[static_cast<size_t>(i)](x);
            }
        }, acc.data());
        for (int r = 0; r < rows; ++r)
            for (int i = 0; i < mu; ++i) J.entries(r, i) = acc[static_cast<size_t>(r) * mu + i];
    } else {
        for (int i = 0; i < mu; ++i) {
            std::vector<double> lp = lambda, lm = lambda;
            lp[static_cast<size_t>(i)] += fd_delta;
            lm[static_cast<size_t>(i)] -= fd_delta;
            const MomentVector mp = moments(F, lp, psi, order, grid, mode);
            const MomentVector mm = moments(F, lm, psi, order, grid, mode);
            for (int r = 0; r < rows; ++r)
                J.entries(r, i) =
                    (mp.values[static_cast<size_t>(r)] - mm.values[static_cast<size_t>(r)]) /
                    (2.0 * fd_delta);
        }
    }
    J.singular_values = jacobi_svd(J.entries).sigma;
    return J;
}

JacobianMatrix potential_jacobian(const VersalDeformation& F, const Density& psi,
                                  const std::vector<std::vector<double>>& y_samples,
                                  const LevelSetMesh& mesh, exec::Mode mode) {
    const int mu = F.mu();
    const int rows = static_cast<int>(y_samples.size());
    if (rows < mu)
        throw precondition_error("potential_jacobian: need at least mu sample points");
    if (mesh.empty()) throw precondition_error("potential_jacobian: empty level set mesh");
    JacobianMatrix J;
    J.mu = mu;
    J.method = JacobianMethod::Surface;
    J.entries = Mat(rows, mu);

    SurfaceQuadrature quad(mesh, psi, "potential_jacobian");
    std::vector<RealPoly> basis;
    basis.reserve(static_cast<size_t>(mu));
    for (int i = 0; i < mu; ++i)
        basis.emplace_back(Polynomial::monomial(F.dim(), F.algebra.basis[static_cast<size_t>(i)]),
                           false);
    const int n_out = rows * mu;
    std::vector<double> acc(static_cast<size_t>(n_out), 0.0);
    exec::chunked_accumulate(mode, quad.size(), n_out, [&](std::int64_t q, double* a) {
        const auto& c = *quad.comp[static_cast<size_t>(q)];
        const double* x = c.centroid[quad.facet[static_cast<size_t>(q)]].data();
        const double w = quad.weight[static_cast<size_t>(q)];
        for (int r = 0; r < rows; ++r) {
            const double base = -newton_kernel(x, y_samples[static_cast<size_t>(r)].data(), 3) * w;
            for (int i = 0; i < mu; ++i) a[r * mu + i] += base * basis[static_cast<size_t>(i)](x);
        }
    }, acc.data());
    for (int r = 0; r < rows; ++r)
        for (int i = 0; i < mu; ++i) J.entries(r, i) = acc[static_cast<size_t>(r) * mu + i];
    J.singular_values = jacobi_svd(J.entries).sigma;
    return J;
}

InjectivityCertificate injectivity_certificate(const JacobianMatrix& J, double threshold) {
    InjectivityCertificate cert;
    cert.mu = J.mu;
    cert.threshold = threshold;
    const int rows = J.entries.rows(), cols = J.entries.cols();
    Mat scaled(rows, cols);
    for (int j = 0; j < cols; ++j) {
        double cn = 0;
        for (int i = 0; i < rows; ++i) cn += J.entries(i, j) * J.entries(i, j);
        cn = std::sqrt(cn);
        const double inv = cn > 0 ? 1.0 / cn : 0.0;
        for (int i = 0; i < rows; ++i) scaled(i, j) = J.entries(i, j) * inv;
    }
    cert.singular_values = jacobi_svd(scaled).sigma;
    cert.sigma_max = cert.singular_values.empty() ? 0.0 : cert.singular_values.front();
    cert.sigma_min = cert.singular_values.empty() ? 0.0 : cert.singular_values.back();
    int rank = 0;
    for (double s : cert.singular_values)
        if (cert.sigma_max > 0 && s > threshold * cert.sigma_max) ++rank;
    cert.rank = rank;
    cert.verdict = (rank == cert.mu);
    return cert;
}

RecoveryResult recover_parameters(const RecoveryProblem& problem,
                                  const std::vector<double>& target,
                                  const std::vector<double>& lambda0,
                                  const RecoveryOptions& opts) {
    RecoveryResult res;
    std::vector<double> lambda = lambda0;
    std::vector<double> r = problem.model(lambda);
    if (r.size() != target.size())
        throw config_error("recover_parameters: model/target size mismatch");
    for (size_t i = 0; i < r.size(); ++i) r[i] -= target[i];
    double rn = norm(r);
    res.residual_history.push_back(rn);

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if (opts.residual_tol > 0 && rn <= opts.residual_tol) {
            res.converged = true;
            break;
        }
        const Mat J = problem.jacobian(lambda);
        const Svd svd = jacobi_svd(J);
        std::vector<double> step = svd_solve(svd, r);
        for (double& s : step) s = -s;
        const double step_norm = norm(step);
        if (step_norm < opts.step_tol) {
            res.converged = true;
            break;
        }

        // Step damping: halve until the residual decreases.
        bool accepted = false;
        std::vector<double> cand(lambda.size()), rc;
        double alpha = 1.0;
        for (int h = 0; h <= opts.max_halvings && !accepted; ++h, alpha *= 0.5) {
            for (size_t i = 0; i < lambda.size(); ++i) cand[i] = lambda[i] + alpha * step[i];
            rc = problem.model(cand);
            for (size_t i = 0; i < rc.size(); ++i) rc[i] -= target[i];
            if (norm(rc) < rn) accepted = true;
        }
        if (!accepted) {
            // Levenberg fallback: (J^T J + nu diag(J^T J)) s = -J^T r.
            const int mu = J.cols();
            Mat jtj(mu, mu);
            for (int a = 0; a < mu; ++a)
                for (int b = 0; b < mu; ++b) {
                    double s = 0;
                    for (int i = 0; i < J.rows(); ++i) s += J(i, a) * J(i, b);
                    jtj(a, b) = s;
                }
            std::vector<double> jtr = J.apply_transposed(r);
            for (double nu = 1e-3; nu <= 1e6 && !accepted; nu *= 10.0) {
                Mat damped = jtj;
                for (int a = 0; a < mu; ++a)
                    damped(a, a) += nu * std::max(jtj(a, a), 1e-300);
                std::vector<double> s = svd_solve(jacobi_svd(damped), jtr);
                for (double& v : s) v = -v;
                for (size_t i = 0; i < lambda.size(); ++i) cand[i] = lambda[i] + s[i];
                rc = problem.model(cand);
                for (size_t i = 0; i < rc.size(); ++i) rc[i] -= target[i];
                if (norm(rc) < rn) {
                    accepted = true;
                    step = s;
                    alpha = 1.0;
                }
            }
        }
        if (!accepted) {
            // No decrease in any direction. After at least one accepted step
            // this is the floor of the discretized residual (the moment
            // staircase has no interior descent at its minimum cell); from a
            // cold start it means the iteration genuinely cannot progress.
            if (iter > 0 || rn == 0.0 || step_norm < 1e-6 * (1.0 + norm(lambda))) {
                res.converged = true;
                break;
            }
            throw numeric_error("recover_parameters: divergence (no residual decrease)");
        }
        double moved = 0;
        for (size_t i = 0; i < lambda.size(); ++i) {
            moved += (cand[i] - lambda[i]) * (cand[i] - lambda[i]);
            lambda[i] = cand[i];
        }
        r = rc;
        rn = norm(r);
        res.residual_history.push_back(rn);
        res.iterations = iter + 1;
        if (std::sqrt(moved) < opts.step_tol) {
            res.converged = true;
            break;
        }
    }
    res.lambda_hat = lambda;
    res.residual_norm = rn;
    return res;
}

RecoveryProblem moment_recovery_problem(const VersalDeformation& F, const Density& psi,
                                        int order, const GridSpec& grid, JacobianMethod method,
                                        exec::Mode mode) {
    RecoveryProblem p;
    p.model = [F, psi, order, grid, mode](const std::vector<double>& lambda) {
        return moments(F, lambda, psi, order, grid, mode).values;
    };
    p.jacobian = [F, psi, order, grid, method, mode](const std::vector<double>& lambda) {
        LevelSetMesh mesh;
        if (method == JacobianMethod::Surface) {
            mesh = extract_level_set(F, lambda, grid, mode);
            if (mesh.empty())
                throw precondition_error("recovery: empty level set at current lambda");
        }
        return moment_jacobian(F, lambda, psi, order, mesh, method, grid, 1e-3, mode).entries;
    };
    return p;
}

std::vector<std::vector<double>> evaluation_sphere(int n, double radius, int num_points) {
    if (num_points < 1) throw config_error("evaluation_sphere: need at least one point");
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<size_t>(num_points));
    if (n == 2) {
        for (int k = 0; k < num_points; ++k) {
            const double a = 2.0 * 3.14159265358979323846 * (k + 0.5) / num_points;
            pts.push_back({radius * std::cos(a), radius * std::sin(a)});
        }
        return pts;
    }
    if (n != 3) throw config_error("evaluation_sphere: n must be 2 or 3");
    if (num_points == 8) {
        const double s = radius / std::sqrt(3.0);
        for (int mask = 0; mask < 8; ++mask)
            pts.push_back({(mask & 1) ? s : -s, (mask & 2) ? s : -s, (mask & 4) ? s : -s});
        return pts;
    }
    // Fibonacci sphere.
    const double golden = 3.14159265358979323846 * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < num_points; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / num_points;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        pts.push_back({radius * r * std::cos(phi), radius * r * std::sin(phi), radius * z});
    }
    return pts;
}

int default_moment_order(int n, int mu, int margin) {
    auto count = [n](int L) {
        long c = 1;
        for (int i = 1; i <= n; ++i) c = c * (L + i) / i;
        return c;
    };
    for (int L = 0; L < 64; ++L)
        if (count(L) >= mu + margin) return L;
    throw config_error("default_moment_order: mu too large");
}

SeparationReport separation_experiment(const VersalDeformation& F, const Density& psi,
                                       const std::vector<double>& lambda, double radius,
                                       int num_pairs,
                                       const std::vector<std::vector<double>>& y_samples,
                                       const GridSpec& grid, std::uint64_t seed,
                                       double prediction_factor, exec::Mode mode) {
    F.check_lambda_size(lambda.size());
    if (!(radius > 0)) throw config_error("separation_experiment: radius must be positive");
    if (num_pairs < 1) throw config_error("separation_experiment: need at least one pair");
    const int mu = F.mu();

    SeparationReport rep;
    rep.lambda = lambda;
    rep.radius = radius;
    rep.seed = seed;
    rep.y_samples = y_samples;
    rep.prediction_factor = prediction_factor;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sample_point = [&]() {
        std::vector<double> p(lambda.size());
        double n2 = 0;
        for (auto& v : p) {
            v = gauss(rng);
            n2 += v * v;
        }
        const double scale =
            radius * std::pow(unif(rng), 1.0 / mu) / std::max(std::sqrt(n2), 1e-300);
        for (size_t i = 0; i < p.size(); ++i) p[i] = lambda[i] + scale * p[i];
        return p;
    };
    auto potentials = [&](const std::vector<double>& l, std::vector<double>& out) {
        long cells = 0;
        out = volume_potentials(F.instantiate(l), psi, y_samples, grid, mode, &cells);
        return cells != 0; // empty domain: resample
    };

    rep.min_separation = 1e300;
    for (int p = 0; p < num_pairs; ++p) {
        SeparationPair pair;
        bool ok = false;
        for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
            pair.lambda1 = sample_point();
            pair.lambda2 = sample_point();
            double d2 = 0;
            for (size_t i = 0; i < pair.lambda1.size(); ++i) {
                const double d = pair.lambda1[i] - pair.lambda2[i];
                d2 += d * d;
            }
            if (d2 == 0) continue; // lambda1 != lambda2 required
            std::vector<double> I1, I2;
            if (!potentials(pair.lambda1, I1) || !potentials(pair.lambda2, I2)) continue;
            double maxdiff = 0;
            for (size_t i = 0; i < I1.size(); ++i)
                maxdiff = std::max(maxdiff, std::abs(I1[i] - I2[i]));
            pair.separation = maxdiff / std::sqrt(d2);
            ok = true;
        }
        if (!ok)
            throw numeric_error(
                "separation_experiment: could not sample a regular pair after retries");
        rep.min_separation = std::min(rep.min_separation, pair.separation);
        rep.pairs.push_back(std::move(pair));
    }

    // sigma_min prediction from the potential-sample Jacobian at lambda.
    LevelSetMesh mesh = extract_level_set(F, lambda, grid, mode);
    if (!mesh.empty() && static_cast<int>(y_samples.size()) >= mu) {
        const JacobianMatrix J = potential_jacobian(F, psi, y_samples, mesh, mode);
        rep.sigma_min_prediction =
            J.singular_values.back() / std::sqrt(static_cast<double>(y_samples.size()));
    }
    rep.all_positive = rep.min_separation > 0;
    rep.prediction_met =
        rep.min_separation >= rep.sigma_min_prediction / std::max(prediction_factor, 1e-300);
    return rep;
}

} // namespace vcpot
