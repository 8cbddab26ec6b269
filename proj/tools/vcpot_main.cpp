#include "vcpot/certify.hpp"
#include "vcpot/config.hpp"
#include "vcpot/potential.hpp"
#include "vcpot/reduction.hpp"
#include "vcpot/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

namespace fs = std::filesystem;
using namespace vcpot;

namespace {

std::string manifest_timestamp() {
    // SOURCE_DATE_EPOCH keeps repeated runs byte-identical for reproducible
    // pipelines; otherwise wall clock.
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::stoll(sde));
    else
        t = std::time(nullptr);
    char buf[40];
    std::tm tmv{};
    gmtime_r(&t, &tmv);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tmv);
    return buf;
}

// Collects emitted files, then writes them plus a manifest listing every
// file with its content hash.
struct OutputSink {
    fs::path dir;
    std::vector<std::pair<std::string, std::string>> files;

    explicit OutputSink(const std::string& d) : dir(d) { fs::create_directories(dir); }

    void add(const std::string& name, std::string content) {
        files.emplace_back(name, std::move(content));
    }

    void finalize(const RunConfig& cfg, const std::string& command) {
        Json list = Json::array();
        for (const auto& [name, content] : files) {
            std::ofstream out(dir / name, std::ios::binary);
            out << content;
            Json f = Json::object();
            f.set("name", name)
                .set("bytes", static_cast<std::int64_t>(content.size()))
                .set("fnv1a64", fnv1a64_hex(content));
            list.push(std::move(f));
        }
        Json manifest = Json::object();
        manifest.set("tool", "vcpot")
            .set("version", kVersion)
            .set("command", command)
            .set("timestamp_utc", manifest_timestamp())
            .set("config", cfg.echo())
            .set("files", std::move(list));
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        out << manifest.dump();
    }
};

Json class_to_json(const CohomologyClass& cls) {
    Json j = Json::object();
    for (const auto& [e, v] : cls.coords) j.set(monomial_to_string(e), rat_to_string(v));
    return j;
}

Json certificate_to_json(const SurjectivityCertificate& c) {
    Json w = Json::array();
    for (const auto& m : c.witnesses) w.push(monomial_to_string(m));
    Json j = Json::object();
    j.set("N", c.N)
        .set("n", c.n)
        .set("maxdeg", c.maxdeg)
        .set("e", monomial_to_string(c.e))
        .set("rank", c.rank)
        .set("mu", c.mu)
        .set("full_rank", c.full_rank)
        .set("witnesses", std::move(w));
    return j;
}

std::vector<Rat> lambda_to_rat(const std::vector<double>& lambda) {
    std::vector<Rat> out;
    out.reserve(lambda.size());
    for (double v : lambda) out.emplace_back(v);
    return out;
}

std::string potentials_csv(const VersalDeformation& F, const std::vector<double>& lambda,
                           const Density& psi, const std::vector<std::vector<double>>& ys,
                           const GridSpec& grid) {
    std::string csv = "y1,y2,y3,I\n";
    for (const auto& y : ys) {
        const double I = volume_potential(F, lambda, psi, y, grid);
        csv += format_double(y[0]) + "," + format_double(y[1]) + "," + format_double(y[2]) +
               "," + format_double(I) + "\n";
    }
    return csv;
}

std::string surface_csv(const LevelSetMesh& mesh, const Density& psi,
                        const std::vector<std::vector<double>>& ys) {
    std::string csv = "y1,y2,y3,I\n";
    for (const auto& y : ys) {
        const double I = surface_charge_potential(mesh, psi, y);
        csv += format_double(y[0]) + "," + format_double(y[1]) + "," + format_double(y[2]) +
               "," + format_double(I) + "\n";
    }
    return csv;
}

Json moments_to_json(const MomentVector& mv) {
    Json entries = Json::array();
    for (size_t i = 0; i < mv.alphas.size(); ++i) {
        Json e = Json::object();
        Json alpha = Json::array();
        for (int d = 0; d < mv.n; ++d) alpha.push(mv.alphas[i][d]);
        e.set("alpha", std::move(alpha)).set("value", mv.values[i]);
        entries.push(std::move(e));
    }
    Json j = Json::object();
    j.set("order", mv.order)
        .set("n", mv.n)
        .set("ball_radius", mv.ball_radius)
        .set("entries", std::move(entries));
    return j;
}

int resolve_order(const RunConfig& cfg, int mu) {
    return cfg.moment_order >= 0 ? cfg.moment_order : default_moment_order(cfg.n, mu, 3);
}

// ---------------------------------------------------------------- commands

int cmd_algebra(const RunConfig& cfg, int degree_bound) {
    ResolvedGerm rg = resolve_germ(cfg.germ, cfg.n);
    LocalAlgebra alg =
        degree_bound > 0 ? local_algebra(rg.germ, degree_bound) : local_algebra_auto(rg.germ);
    VersalDeformation F{rg.germ, alg};

    Json basis = Json::array();
    for (const auto& s : alg.basis_strings()) basis.push(s);
    Json j = Json::object();
    j.set("germ", rg.germ.poly.to_string())
        .set("n", cfg.n)
        .set("mu", alg.mu)
        .set("basis", std::move(basis))
        .set("deformation", F.render());

    OutputSink sink(cfg.output_dir);
    sink.add("basis.json", j.dump());
    sink.finalize(cfg, "algebra");
    std::cout << "mu = " << alg.mu << "\nF = " << F.render() << "\n";
    return 0;
}

int cmd_reduce(const RunConfig& cfg, const std::string& form, int k, int maxdeg) {
    ResolvedGerm rg = resolve_germ(cfg.germ, cfg.n);
    int N = 0;
    if (!is_fermat_germ(rg.germ, &N))
        throw precondition_error("reduce: the reduction calculus requires a fermat germ");
    Instance inst = make_instance(cfg);
    if (maxdeg <= 0) maxdeg = default_reduction_maxdeg(N, cfg.n);

    ReductionContext ctx(N, cfg.n, maxdeg, lambda_to_rat(inst.lambda));
    Polynomial g = parse_polynomial(form, cfg.n);
    if (k > 0)
        g = multiply_by_deformation_power(VolumeFormGerm(N, g), inst.F,
                                          lambda_to_rat(inst.lambda), k)
                .poly;
    int steps = 0;
    const CohomologyClass cls = ctx.reduce_counting(g, &steps);

    Json certs = Json::array();
    for (const auto& e : inst.F.algebra.basis)
        certs.push(certificate_to_json(surjectivity_certificate(e, N, cfg.n, maxdeg)));

    Json j = Json::object();
    j.set("N", N)
        .set("n", cfg.n)
        .set("maxdeg", maxdeg)
        .set("lambda", to_json(inst.lambda))
        .set("form", form)
        .set("k", k)
        .set("normal_form", class_to_json(cls))
        .set("chain_length", steps)
        .set("certificates", std::move(certs));

    OutputSink sink(cfg.output_dir);
    sink.add("reduction.json", j.dump());
    sink.finalize(cfg, "reduce");
    std::cout << "normal form: " << cls.to_string() << " (chain length " << steps << ")\n";
    return 0;
}

int cmd_levelset(const RunConfig& cfg, exec::Mode mode) {
    Instance inst = make_instance(cfg);
    GridSpec grid(cfg.n, cfg.grid.radius, cfg.grid_h());
    LevelSetMesh mesh = extract_level_set(inst.F, inst.lambda, grid, mode);
    if (mesh.empty()) throw precondition_error("levelset: empty domain");
    orient_arnold(mesh);
    const RegularityReport rep = check_regularity(mesh, cfg.thresholds.regularity);

    OutputSink sink(cfg.output_dir);
    sink.add("mesh.obj", mesh_to_obj(mesh));
    sink.finalize(cfg, "levelset");
    std::cout << "components: " << mesh.components.size() << ", facets: " << mesh.facet_count()
              << "\nmin |grad F| = " << rep.min_grad << ", clipped = " << (rep.clipped ? 1 : 0)
              << ", verdict: " << (rep.regular ? "regular" : "irregular") << "\n";
    return 0;
}

int cmd_potential(const RunConfig& cfg, exec::Mode mode) {
    if (cfg.n != 3) throw config_error("potential: n = 3 required");
    Instance inst = make_instance(cfg);
    GridSpec grid(cfg.n, cfg.grid.radius, cfg.grid_h());
    LevelSetMesh mesh = extract_level_set(inst.F, inst.lambda, grid, mode);
    if (mesh.empty()) throw precondition_error("potential: empty domain");
    orient_arnold(mesh);
    const Density psi = Density::one(cfg.n);
    const auto ys = evaluation_sphere(cfg.n, cfg.eval_radius(), cfg.eval.num_points);
    const MomentVector mv =
        moments(inst.F, inst.lambda, psi, resolve_order(cfg, inst.F.mu()), grid, mode);

    OutputSink sink(cfg.output_dir);
    sink.add("potential.csv", potentials_csv(inst.F, inst.lambda, psi, ys, grid));
    sink.add("surface_potential.csv", surface_csv(mesh, psi, ys));
    sink.add("mesh.obj", mesh_to_obj(mesh));
    sink.add("moments.json", moments_to_json(mv).dump());
    sink.finalize(cfg, "potential");
    std::cout << "wrote potential samples at " << ys.size() << " points, moments order "
              << mv.order << "\n";
    return 0;
}

Json jacobian_to_json(const JacobianMatrix& J, const std::vector<double>& lambda) {
    Json rows = Json::array();
    for (const auto& a : J.row_alphas) rows.push(monomial_to_string(a));
    Json entries = Json::array();
    for (int r = 0; r < J.entries.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < J.entries.cols(); ++c) row.push(J.entries(r, c));
        entries.push(std::move(row));
    }
    Json j = Json::object();
    j.set("lambda", to_json(lambda))
        .set("mu", J.mu)
        .set("method", J.method == JacobianMethod::Surface ? "surface" : "finite_difference")
        .set("rows", std::move(rows))
        .set("entries", std::move(entries))
        .set("singular_values", to_json(J.singular_values));
    return j;
}

Json injectivity_to_json(const InjectivityCertificate& cert, const RunConfig& cfg, int order) {
    Json j = Json::object();
    j.set("lambda", to_json(cfg.lambda.empty() ? std::vector<double>{} : cfg.lambda))
        .set("mu", cert.mu)
        .set("L", order)
        .set("rank", cert.rank)
        .set("singular_values", to_json(cert.singular_values))
        .set("sigma_min", cert.sigma_min)
        .set("sigma_max", cert.sigma_max)
        .set("threshold", cert.threshold)
        .set("verdict", cert.verdict)
        .set("seed", static_cast<std::int64_t>(cfg.eval.seed));
    return j;
}

int cmd_jacobian(const RunConfig& cfg, const std::string& method, exec::Mode mode) {
    if (cfg.n != 3) throw config_error("jacobian: n = 3 required");
    Instance inst = make_instance(cfg);
    GridSpec grid(cfg.n, cfg.grid.radius, cfg.grid_h());
    LevelSetMesh mesh = extract_level_set(inst.F, inst.lambda, grid, mode);
    if (mesh.empty()) throw precondition_error("jacobian: empty domain");
    const int order = resolve_order(cfg, inst.F.mu());
    const JacobianMethod jm =
        method == "finite_difference" ? JacobianMethod::FiniteDifference : JacobianMethod::Surface;
    const JacobianMatrix J = moment_jacobian(inst.F, inst.lambda, Density::one(cfg.n), order,
                                             mesh, jm, grid, 1e-3, mode);
    const InjectivityCertificate cert = injectivity_certificate(J, cfg.thresholds.rank);

    RunConfig echo_cfg = cfg;
    echo_cfg.lambda = inst.lambda;
    OutputSink sink(cfg.output_dir);
    sink.add("jacobian.json", jacobian_to_json(J, inst.lambda).dump());
    sink.add("certificate.json", injectivity_to_json(cert, echo_cfg, order).dump());
    sink.finalize(cfg, "jacobian");
    std::cout << "rank " << cert.rank << " / " << cert.mu
              << ", verdict: " << (cert.verdict ? "true" : "false") << "\n";
    return cert.verdict ? 0 : 2;
}

int cmd_recover(const RunConfig& cfg, const std::string& target_path,
                const std::vector<double>& init, exec::Mode mode) {
    if (cfg.n != 3) throw config_error("recover: n = 3 required");
    Instance inst = make_instance(cfg);
    GridSpec grid(cfg.n, cfg.grid.radius, cfg.grid_h());

    std::ifstream in(target_path);
    if (!in) throw config_error("recover: cannot open target " + target_path);
    nlohmann::json tj;
    in >> tj;
    const int order = tj.at("order").get<int>();
    std::vector<double> target;
    for (const auto& e : tj.at("entries")) target.push_back(e.at("value").get<double>());

    const auto expected = moment_multi_indices(cfg.n, order).size();
    if (target.size() != expected)
        throw config_error("recover: target has wrong number of entries");

    RecoveryProblem problem =
        moment_recovery_problem(inst.F, Density::one(cfg.n), order, grid,
                                JacobianMethod::Surface, mode);
    const std::vector<double>& lambda0 = init.empty() ? inst.lambda : init;
    if (static_cast<int>(lambda0.size()) != inst.F.mu())
        throw config_error("recover: initial guess has wrong length");
    const RecoveryResult res = recover_parameters(problem, target, lambda0);

    Json j = Json::object();
    j.set("lambda_hat", to_json(res.lambda_hat))
        .set("residual_norm", res.residual_norm)
        .set("iterations", res.iterations)
        .set("converged", res.converged)
        .set("residual_history", to_json(res.residual_history));
    OutputSink sink(cfg.output_dir);
    sink.add("recovery.json", j.dump());
    sink.finalize(cfg, "recover");
    std::cout << "converged: " << (res.converged ? "true" : "false")
              << ", residual: " << res.residual_norm << ", iterations: " << res.iterations
              << "\n";
    return res.converged ? 0 : 3;
}

int cmd_verify(const RunConfig& cfg, exec::Mode mode) {
    if (cfg.n != 3) throw config_error("verify: n = 3 required");
    Instance inst = make_instance(cfg);
    GridSpec grid(cfg.n, cfg.grid.radius, cfg.grid_h());
    const Density psi = Density::one(cfg.n);

    LevelSetMesh mesh = extract_level_set(inst.F, inst.lambda, grid, mode);
    if (mesh.empty()) throw precondition_error("verify: empty domain");
    orient_arnold(mesh);
    const RegularityReport rep = check_regularity(mesh, cfg.thresholds.regularity);
    // Clipping only marks the domain as ball-truncated; the ball boundary is
    // lambda-independent, so moments and their derivatives stay consistent.
    // A vanishing gradient, by contrast, means lambda sits on the
    // discriminant: refuse.
    if (!(rep.min_grad > cfg.thresholds.regularity))
        throw precondition_error("verify: irregular lambda (min |grad F| = " +
                                 format_double(rep.min_grad) + ")");

    const int order = resolve_order(cfg, inst.F.mu());
    const JacobianMatrix J =
        moment_jacobian(inst.F, inst.lambda, psi, order, mesh, JacobianMethod::Surface, grid,
                        1e-3, mode);
    const InjectivityCertificate cert = injectivity_certificate(J, cfg.thresholds.rank);

    const auto ys = evaluation_sphere(cfg.n, cfg.eval_radius(), cfg.eval.num_points);
    const SeparationReport sep =
        separation_experiment(inst.F, psi, inst.lambda, cfg.separation.radius,
                              cfg.separation.num_pairs, ys, grid, cfg.eval.seed, 2.0, mode);

    RunConfig echo_cfg = cfg;
    echo_cfg.lambda = inst.lambda;

    Json cert_json = injectivity_to_json(cert, echo_cfg, order);
    cert_json.set("regularity", [&] {
        Json r = Json::object();
        r.set("min_grad", rep.min_grad).set("clipped", rep.clipped).set("regular", rep.regular);
        return r;
    }());

    Json pairs = Json::array();
    for (const auto& p : sep.pairs) {
        Json pj = Json::object();
        pj.set("l1", to_json(p.lambda1)).set("l2", to_json(p.lambda2)).set("separation", p.separation);
        pairs.push(std::move(pj));
    }
    Json ys_json = Json::array();
    for (const auto& y : ys) ys_json.push(to_json(y));
    Json sep_json = Json::object();
    sep_json.set("lambda", to_json(inst.lambda))
        .set("radius", sep.radius)
        .set("num_pairs", static_cast<std::int64_t>(sep.pairs.size()))
        .set("seed", static_cast<std::int64_t>(sep.seed))
        .set("y_samples", std::move(ys_json))
        .set("pairs", std::move(pairs))
        .set("min_separation", sep.min_separation)
        .set("sigma_min_prediction", sep.sigma_min_prediction)
        .set("prediction_factor", sep.prediction_factor)
        .set("all_positive", sep.all_positive)
        .set("prediction_met", sep.prediction_met);

    OutputSink sink(cfg.output_dir);
    sink.add("certificate.json", cert_json.dump());
    sink.add("separation.json", sep_json.dump());
    sink.finalize(echo_cfg, "verify");

    std::cout << "certificate: rank " << cert.rank << " / " << cert.mu << ", verdict "
              << (cert.verdict ? "true" : "false") << "\nseparation: min "
              << sep.min_separation << ", all positive: " << (sep.all_positive ? "true" : "false")
              << "\n";
    return (cert.verdict && sep.all_positive) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton potentials of vanishing-cycle domains: local algebras, the "
                 "zero-integral reduction calculus, level-set potentials, and local "
                 "injectivity certificates"};
    app.require_subcommand(1);

    std::string config_path;
    bool serial = false;
    RunConfig cfg;

    // Dotted-path overrides for every config leaf.
    std::string germ_override;
    std::vector<double> lambda_override;
    double grid_radius = -1, grid_h = -1, eval_sphere = -1;
    int n_override = -1, num_points = -1, moment_order = -2;
    std::int64_t seed_override = -1;
    double thr_reg = -1, thr_rank = -1, sep_radius = -1;
    int sep_pairs = -1;
    std::string output_dir;

    app.add_option("--config", config_path, "JSON run configuration");
    app.add_flag("--serial", serial, "run kernels on the serial reference path");
    app.add_option("--n", n_override, "ambient dimension");
    app.add_option("--germ", germ_override, "germ polynomial or preset");
    app.add_option("--lambda", lambda_override, "deformation parameters")->delimiter(',');
    app.add_option("--grid.radius", grid_radius, "ball radius");
    app.add_option("--grid.h", grid_h, "grid cell edge");
    app.add_option("--eval.sphere_radius", eval_sphere, "evaluation sphere radius");
    app.add_option("--eval.num_points", num_points, "number of evaluation points");
    app.add_option("--eval.seed", seed_override, "random seed");
    app.add_option("--moment_order", moment_order, "moment order L (-1: auto)");
    app.add_option("--thresholds.regularity", thr_reg, "gradient regularity threshold");
    app.add_option("--thresholds.rank", thr_rank, "rank threshold sigma_min/sigma_max");
    app.add_option("--separation.radius", sep_radius, "separation sampling radius");
    app.add_option("--separation.num_pairs", sep_pairs, "separation pair count");
    app.add_option("--output_dir", output_dir, "output directory");

    auto* algebra = app.add_subcommand("algebra", "local algebra and versal deformation");
    int degree_bound = 0;
    algebra->add_option("--degree-bound", degree_bound, "Macaulay degree bound (0: auto)");

    auto* reduce = app.add_subcommand("reduce", "normal form in vanishing cohomology");
    std::string form = "1";
    int kpow = 0, maxdeg = 0;
    reduce->add_option("--form", form, "volume form coefficient polynomial");
    reduce->add_option("--k", kpow, "multiply by ((F - lambda_mu)/lambda_mu)^k first");
    reduce->add_option("--maxdeg", maxdeg, "span degree bound (0: default)");

    auto* levelset = app.add_subcommand("levelset", "extract and orient the level set");
    auto* potential = app.add_subcommand("potential", "potential samples, mesh, moments");
    auto* jacobian = app.add_subcommand("jacobian", "moment Jacobian and rank certificate");
    std::string method = "surface";
    jacobian->add_option("--method", method, "surface | finite_difference");

    auto* recover = app.add_subcommand("recover", "Gauss-Newton parameter recovery");
    std::string target_path;
    std::vector<double> init;
    recover->add_option("--target", target_path, "moments.json with target data")->required();
    recover->add_option("--init", init, "initial guess (default: config lambda)")->delimiter(',');

    auto* verify = app.add_subcommand("verify", "end-to-end injectivity witness");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (n_override > 0) cfg.n = n_override;
        if (!germ_override.empty()) cfg.germ = germ_override;
        if (!lambda_override.empty()) cfg.lambda = lambda_override;
        if (grid_radius > 0) cfg.grid.radius = grid_radius;
        if (grid_h > 0) cfg.grid.h = grid_h;
        if (eval_sphere > 0) cfg.eval.sphere_radius = eval_sphere;
        if (num_points > 0) cfg.eval.num_points = num_points;
        if (seed_override >= 0) cfg.eval.seed = static_cast<std::uint64_t>(seed_override);
        if (moment_order >= -1) cfg.moment_order = moment_order;
        if (thr_reg > 0) cfg.thresholds.regularity = thr_reg;
        if (thr_rank > 0) cfg.thresholds.rank = thr_rank;
        if (sep_radius > 0) cfg.separation.radius = sep_radius;
        if (sep_pairs > 0) cfg.separation.num_pairs = sep_pairs;
        if (!output_dir.empty()) cfg.output_dir = output_dir;

        const exec::Mode mode = serial ? exec::Mode::Serial : exec::Mode::Parallel;
        if (algebra->parsed()) return cmd_algebra(cfg, degree_bound);
        if (reduce->parsed()) return cmd_reduce(cfg, form, kpow, maxdeg);
        if (levelset->parsed()) return cmd_levelset(cfg, mode);
        if (potential->parsed()) return cmd_potential(cfg, mode);
        if (jacobian->parsed()) return cmd_jacobian(cfg, method, mode);
        if (recover->parsed()) return cmd_recover(cfg, target_path, init, mode);
        if (verify->parsed()) return cmd_verify(cfg, mode);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const precondition_error& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
