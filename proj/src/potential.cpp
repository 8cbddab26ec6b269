#include "vcpot/potential.hpp"

#include <algorithm>
#include <cmath>

namespace vcpot {

double newton_kernel(const double* x, const double* y, int n) {
    if (n < 3)
        throw config_error("newton_kernel: n must be >= 3 (the kernel degenerates for n = 2)");
    double r2 = 0;
    for (int i = 0; i < n; ++i) {
        const double d = x[i] - y[i];
        r2 += d * d;
    }
    if (r2 == 0) throw precondition_error("newton_kernel: singular point x = y");
    if (n == 3) return 1.0 / std::sqrt(r2);
    return std::pow(r2, -0.5 * (n - 2));
}

double newton_kernel(const std::vector<double>& x, const std::vector<double>& y, int n) {
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw config_error("newton_kernel: dimension mismatch");
    return newton_kernel(x.data(), y.data(), n);
}

namespace {

void require_exterior(const std::vector<double>& y, const GridSpec& grid) {
    double r2 = 0;
    for (int i = 0; i < grid.n; ++i) r2 += y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    if (r2 <= grid.radius * grid.radius)
        throw precondition_error("potential: evaluation point must lie outside the grid ball");
}

// Flattened facet view over all components, with per-facet sign weight.
// Validates gradients up front so the parallel kernels stay exception-free.
struct FacetSpan {
    struct Entry {
        const MeshComponent* comp;
        size_t facet;
        double sign;
    };
    std::vector<Entry> entries;

    FacetSpan(const LevelSetMesh& mesh, bool use_arnold_sign, const char* who) {
        for (const auto& comp : mesh.components) {
            const double s = use_arnold_sign ? comp.orientation_sign : 1.0;
            for (size_t f = 0; f < comp.facets.size(); ++f) {
                if (!(comp.grad_norm[f] > 0))
                    throw precondition_error(std::string(who) + ": zero gradient facet");
                entries.push_back({&comp, f, s});
            }
        }
    }
};

} // namespace

double volume_potential(const RealPoly& F, const Density& psi, const std::vector<double>& y,
                        const GridSpec& grid, exec::Mode mode, long* cells_used) {
    grid.validate();
    if (grid.n != 3)
        throw config_error("volume_potential: n = 3 required (Newton kernel needs n >= 3)");
    if (static_cast<int>(y.size()) != 3) throw config_error("volume_potential: y must be 3-d");
    require_exterior(y, grid);

    const double vol = grid.cell_volume();
    double out[2] = {0, 0};
    exec::chunked_accumulate(mode, grid.cell_count(), 2, [&](std::int64_t idx, double* acc) {
        double x[3];
        grid.cell_center(idx, x);
        if (!domain_indicator(F, x, 3, grid.radius)) return;
        acc[0] += psi.compiled(x) * newton_kernel(x, y.data(), 3) * vol;
        acc[1] += 1.0;
    }, out);
    if (cells_used) *cells_used = static_cast<long>(out[1]);
    return out[0];
}

double volume_potential(const VersalDeformation& F, const std::vector<double>& lambda,
                        const Density& psi, const std::vector<double>& y, const GridSpec& grid,
                        exec::Mode mode, long* cells_used) {
    return volume_potential(F.instantiate(lambda), psi, y, grid, mode, cells_used);
}

std::vector<double> volume_potentials(const RealPoly& F, const Density& psi,
                                      const std::vector<std::vector<double>>& ys,
                                      const GridSpec& grid, exec::Mode mode, long* cells_used) {
    grid.validate();
    if (grid.n != 3) throw config_error("volume_potentials: n = 3 required");
    for (const auto& y : ys) {
        if (y.size() != 3) throw config_error("volume_potentials: y must be 3-d");
        require_exterior(y, grid);
    }
    const int m = static_cast<int>(ys.size());
    const double vol = grid.cell_volume();
    std::vector<double> out(static_cast<size_t>(m) + 1, 0.0);
    exec::chunked_accumulate(mode, grid.cell_count(), m + 1, [&](std::int64_t idx, double* acc) {
        double x[3];
        grid.cell_center(idx, x);
        if (!domain_indicator(F, x, 3, grid.radius)) return;
        const double w = psi.compiled(x) * vol;
        for (int j = 0; j < m; ++j)
            acc[j] += w * newton_kernel(x, ys[static_cast<size_t>(j)].data(), 3);
        acc[m] += 1.0;
    }, out.data());
    if (cells_used) *cells_used = static_cast<long>(out.back());
    out.pop_back();
    return out;
}

double surface_charge_potential(const LevelSetMesh& mesh, const Density& psi,
                                const std::vector<double>& y, exec::Mode mode) {
    if (mesh.n != 3) throw config_error("surface_charge_potential: n = 3 required");
    if (!mesh.oriented)
        throw precondition_error("surface_charge_potential: mesh must be Arnold-oriented");
    FacetSpan span(mesh, /*use_arnold_sign=*/true, "surface_charge_potential");
    double out = 0;
    exec::chunked_accumulate(mode, static_cast<std::int64_t>(span.entries.size()), 1,
                             [&](std::int64_t i, double* acc) {
        const auto& e = span.entries[static_cast<size_t>(i)];
        const double* c = e.comp->centroid[e.facet].data();
        acc[0] += e.sign * psi.compiled(c) * newton_kernel(c, y.data(), 3) *
                  e.comp->area[e.facet] / e.comp->grad_norm[e.facet];
    }, &out);
    return out;
}

double potential_lambda_derivative(const VersalDeformation& F, const LevelSetMesh& mesh,
                                   int param_index, const Density& psi,
                                   const std::vector<double>& y, exec::Mode mode) {
    if (mesh.n != 3) throw config_error("potential_lambda_derivative: n = 3 required");
    if (param_index < 0 || param_index >= F.mu())
        throw config_error("potential_lambda_derivative: parameter index out of range");
    const RealPoly e_i(
        Polynomial::monomial(F.dim(), F.algebra.basis[static_cast<size_t>(param_index)]), false);
    FacetSpan span(mesh, /*use_arnold_sign=*/false, "potential_lambda_derivative");
    double out = 0;
    exec::chunked_accumulate(mode, static_cast<std::int64_t>(span.entries.size()), 1,
                             [&](std::int64_t i, double* acc) {
        const auto& e = span.entries[static_cast<size_t>(i)];
        const double* c = e.comp->centroid[e.facet].data();
        acc[0] -= e_i(c) * psi.compiled(c) * newton_kernel(c, y.data(), 3) *
                  e.comp->area[e.facet] / e.comp->grad_norm[e.facet];
    }, &out);
    return out;
}

std::vector<ExponentVector> moment_multi_indices(int n, int order) {
    auto all = monomials_up_to_degree(n, order);
    std::reverse(all.begin(), all.end()); // ascending grlex: constant first
    return all;
}

int MomentVector::index_of(const ExponentVector& alpha) const {
    for (size_t i = 0; i < alphas.size(); ++i)
        if (alphas[i] == alpha) return static_cast<int>(i);
    throw config_error("MomentVector: unknown multi-index " + monomial_to_string(alpha));
}

MomentVector moments(const RealPoly& F, const Density& psi, int order, const GridSpec& grid,
                     exec::Mode mode) {
    grid.validate();
    if (order < 0) throw config_error("moments: order must be >= 0");
    MomentVector mv;
    mv.order = order;
    mv.n = grid.n;
    mv.ball_radius = grid.radius;
    mv.alphas = moment_multi_indices(grid.n, order);
    mv.values.assign(mv.alphas.size(), 0.0);

    const int n_out = static_cast<int>(mv.alphas.size());
    const double vol = grid.cell_volume();
    exec::chunked_accumulate(mode, grid.cell_count(), n_out,
                             [&](std::int64_t idx, double* acc) {
        double x[3] = {0, 0, 0};
        grid.cell_center(idx, x);
        if (!domain_indicator(F, x, grid.n, grid.radius)) return;
        const double w = psi.compiled(x) * vol;
        for (int a = 0; a < n_out; ++a) {
            const ExponentVector& al = mv.alphas[static_cast<size_t>(a)];
            double m = w;
            for (int i = 0; i < grid.n; ++i)
                for (int k = 0; k < al[i]; ++k) m *= x[i];
            acc[a] += m;
        }
    }, mv.values.data());
    return mv;
}

MomentVector moments(const VersalDeformation& F, const std::vector<double>& lambda,
                     const Density& psi, int order, const GridSpec& grid, exec::Mode mode) {
    return moments(F.instantiate(lambda), psi, order, grid, mode);
}

namespace {

// Term c * (x1-y1)^b1 ... (xn-yn)^bn * u^{-p/2} with u = |x-y|^2; the family
// is closed under d/dx_i, which is all the multipole expansion needs.
struct KernelTermKey {
    ExponentVector beta;
    int p;
    bool operator<(const KernelTermKey& o) const {
        if (p != o.p) return p < o.p;
        return GrlexDescending{}(beta, o.beta);
    }
};

using KernelExpr = std::map<KernelTermKey, Rat>;

KernelExpr kernel_derivative(const KernelExpr& in, int i) {
    KernelExpr out;
    auto add = [&out](const KernelTermKey& k, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = out.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [k, c] : in) {
        if (k.beta[i] >= 1) add({k.beta.minus_unit(i), k.p}, c * k.beta[i]);
        ExponentVector up = k.beta;
        up[i] += 1;
        add({up, k.p + 2}, -c * k.p);
    }
    return out;
}

} // namespace

double kernel_taylor_coefficient(const ExponentVector& alpha, const std::vector<double>& y,
                                 int n) {
    if (n < 3) throw config_error("kernel_taylor_coefficient: n must be >= 3");
    if (alpha.dim() != n || static_cast<int>(y.size()) != n)
        throw config_error("kernel_taylor_coefficient: dimension mismatch");
    KernelExpr expr;
    expr.emplace(KernelTermKey{ExponentVector(n), n - 2}, Rat(1));
    Rat factorial = 1;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < alpha[i]; ++k) {
            expr = kernel_derivative(expr, i);
            factorial *= (k + 1);
        }
    double y2 = 0;
    for (double v : y) y2 += v * v;
    const double ynorm = std::sqrt(y2);
    double acc = 0;
    for (const auto& [k, c] : expr) {
        double t = rat_to_double(c);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k.beta[i]; ++j) t *= -y[static_cast<size_t>(i)];
        t *= std::pow(ynorm, -k.p);
        acc += t;
    }
    return acc / rat_to_double(factorial);
}

double multipole_eval(const MomentVector& m, const std::vector<double>& y, int n) {
    if (n != 3) throw config_error("multipole_eval: n = 3 required");
    if (m.n != n) throw config_error("multipole_eval: moment dimension mismatch");
    double y2 = 0;
    for (double v : y) y2 += v * v;
    if (std::sqrt(y2) <= 2.0 * m.ball_radius)
        throw precondition_error("multipole_eval: |y| must exceed twice the ball radius");
    double acc = 0;
    for (size_t a = 0; a < m.alphas.size(); ++a)
        acc += kernel_taylor_coefficient(m.alphas[a], y, n) * m.values[a];
    return acc;
}

} // namespace vcpot
