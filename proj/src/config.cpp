#include "vcpot/config.hpp"

#include <fstream>
#include <json.hpp>

namespace vcpot {

namespace {

Polynomial radial_polynomial(int n) { // x1^2 + ... + xn^2
    Polynomial r2(n);
    for (int i = 0; i < n; ++i) {
        ExponentVector e(n);
        e[i] = 2;
        r2 += Polynomial::monomial(n, e);
    }
    return r2;
}

} // namespace

ResolvedGerm resolve_germ(const std::string& spec, int n) {
    if (spec.rfind("fermat:", 0) == 0) {
        const int N = std::stoi(spec.substr(7));
        if (N < 2) throw config_error("fermat preset: N must be >= 2");
        Polynomial f(n);
        for (int i = 0; i < n; ++i) {
            ExponentVector e(n);
            e[i] = N;
            f += Polynomial::monomial(n, e);
        }
        return {SingularityGerm(std::move(f)), {}};
    }
    if (spec == "morse") {
        return {SingularityGerm(radial_polynomial(n)), {-1.0}};
    }
    if (spec == "shell") {
        // (r^2-1)(r^2-4) = r^4 - 5 r^2 + 4: germ r^4 - 5 r^2, lambda_1 = 4.
        const Polynomial r2 = radial_polynomial(n);
        Polynomial f = r2 * r2 - Rat(5) * r2;
        return {SingularityGerm(std::move(f)), {4.0}};
    }
    if (spec == "threesphere") {
        // (r^2-1)(r^2-4)(r^2-9): germ is the product minus its constant -36.
        const Polynomial r2 = radial_polynomial(n);
        Polynomial p = (r2 - Polynomial::constant(n, 1)) * (r2 - Polynomial::constant(n, 4)) *
                       (r2 - Polynomial::constant(n, 9));
        Polynomial f = p + Polynomial::constant(n, 36);
        return {SingularityGerm(std::move(f)), {-36.0}};
    }
    return {SingularityGerm(parse_polynomial(spec, n)), {}};
}

Instance make_instance(const RunConfig& cfg) {
    ResolvedGerm rg = resolve_germ(cfg.germ, cfg.n);
    VersalDeformation F = versal_deformation(rg.germ);
    std::vector<double> lambda = cfg.lambda;
    if (lambda.empty()) lambda = rg.default_lambda;
    if (lambda.empty()) lambda.assign(static_cast<size_t>(F.mu()), 0.0);
    if (static_cast<int>(lambda.size()) != F.mu())
        throw config_error("config: lambda has " + std::to_string(lambda.size()) +
                           " entries but mu = " + std::to_string(F.mu()));
    return {std::move(F), std::move(lambda)};
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error("config parse error in " + path + ": " + e.what());
    }
    RunConfig cfg;
    try {
        if (j.contains("n")) cfg.n = j["n"].get<int>();
        if (j.contains("germ")) cfg.germ = j["germ"].get<std::string>();
        if (j.contains("lambda")) cfg.lambda = j["lambda"].get<std::vector<double>>();
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (g.contains("radius")) cfg.grid.radius = g["radius"].get<double>();
            if (g.contains("h")) cfg.grid.h = g["h"].get<double>();
        }
        if (j.contains("eval")) {
            const auto& e = j["eval"];
            if (e.contains("sphere_radius")) cfg.eval.sphere_radius = e["sphere_radius"].get<double>();
            if (e.contains("num_points")) cfg.eval.num_points = e["num_points"].get<int>();
            if (e.contains("seed")) cfg.eval.seed = e["seed"].get<std::uint64_t>();
        }
        if (j.contains("moment_order")) cfg.moment_order = j["moment_order"].get<int>();
        if (j.contains("thresholds")) {
            const auto& t = j["thresholds"];
            if (t.contains("regularity")) cfg.thresholds.regularity = t["regularity"].get<double>();
            if (t.contains("rank")) cfg.thresholds.rank = t["rank"].get<double>();
        }
        if (j.contains("separation")) {
            const auto& s = j["separation"];
            if (s.contains("radius")) cfg.separation.radius = s["radius"].get<double>();
            if (s.contains("num_pairs")) cfg.separation.num_pairs = s["num_pairs"].get<int>();
        }
        if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error("config field error in " + path + ": " + e.what());
    }
    return cfg;
}

Json RunConfig::echo() const {
    Json grid_j = Json::object();
    grid_j.set("radius", grid.radius).set("h", grid_h());
    Json eval_j = Json::object();
    eval_j.set("sphere_radius", eval_radius())
        .set("num_points", eval.num_points)
        .set("seed", static_cast<std::int64_t>(eval.seed));
    Json thr = Json::object();
    thr.set("regularity", thresholds.regularity).set("rank", thresholds.rank);
    Json sep = Json::object();
    sep.set("radius", separation.radius).set("num_pairs", separation.num_pairs);
    Json out = Json::object();
    out.set("n", n)
        .set("germ", germ)
        .set("lambda", to_json(lambda))
        .set("grid", std::move(grid_j))
        .set("eval", std::move(eval_j))
        .set("moment_order", moment_order)
        .set("thresholds", std::move(thr))
        .set("separation", std::move(sep))
        .set("output_dir", output_dir);
    return out;
}

} // namespace vcpot
