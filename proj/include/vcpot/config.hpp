#pragma once

#include "vcpot/jsonio.hpp"
#include "vcpot/versal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vcpot {

// One run configuration; every field has a default so a minimal config only
// names the germ. Flags may override any leaf by dotted path.
struct RunConfig {
    int n = 3;
    std::string germ = "morse"; // polynomial string or preset
    std::vector<double> lambda; // defaults to (0,...,0,-1)-style per preset
    struct {
        double radius = 1.5;
        double h = 0.0; // 0: radius / 64
    } grid;
    struct {
        double sphere_radius = 0.0; // 0: 4 * grid.radius
        int num_points = 8;
        std::uint64_t seed = 0;
    } eval;
    int moment_order = -1; // -1: smallest L with C(L+n,n) >= mu + 3
    struct {
        double regularity = 1e-3;
        double rank = 1e-6;
    } thresholds;
    struct {
        double radius = 0.02;
        int num_pairs = 10;
    } separation;
    std::string output_dir = "out";

    double grid_h() const { return grid.h > 0 ? grid.h : grid.radius / 64.0; }
    double eval_radius() const {
        return eval.sphere_radius > 0 ? eval.sphere_radius : 4.0 * grid.radius;
    }

    Json echo() const; // deterministic config echo for the manifest
};

RunConfig load_config(const std::string& path);

// Resolve the germ field: presets "fermat:N", "morse", "shell",
// "threesphere", or an explicit polynomial expression in x1..xn.
// Presets may also fix a default lambda (returned when the config left
// lambda empty).
struct ResolvedGerm {
    SingularityGerm germ;
    std::vector<double> default_lambda;
};
ResolvedGerm resolve_germ(const std::string& spec, int n);

// Deformation + lambda ready for computation; validates lambda length.
struct Instance {
    VersalDeformation F;
    std::vector<double> lambda;
};
Instance make_instance(const RunConfig& cfg);

} // namespace vcpot
