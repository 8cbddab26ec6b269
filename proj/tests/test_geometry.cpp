#include "vcpot/mesh.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace vcpot;

namespace {

Polynomial r2_poly(int n) {
    Polynomial p(n);
    for (int i = 0; i < n; ++i) {
        ExponentVector e(n);
        e[i] = 2;
        p += Polynomial::monomial(n, e);
    }
    return p;
}

// (r^2 - a)(r^2 - b)...
Polynomial sphere_product(int n, std::initializer_list<double> radii_sq) {
    Polynomial p = Polynomial::constant(n, 1);
    for (double a : radii_sq) p = p * (r2_poly(n) - Polynomial::constant(n, Rat(a)));
    return p;
}

} // namespace

TEST_CASE("sphere extraction: area, closedness, regularity") {
    RealPoly F(parse_polynomial("x1^2 + x2^2 + x3^2 - 1", 3));
    GridSpec grid(3, 1.5, 1.0 / 32);
    LevelSetMesh mesh = extract_level_set(F, grid);
    REQUIRE(mesh.components.size() == 1);
    CHECK(!mesh.clipped);
    CHECK(mesh.components[0].closed);
    CHECK(mesh.total_area() == doctest::Approx(4 * oracle::kPi).epsilon(0.01));

    const RegularityReport rep = check_regularity(mesh, 1e-3);
    CHECK(rep.regular);
    CHECK(rep.min_grad == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("empty level set is flagged, not fatal") {
    RealPoly F(parse_polynomial("x1^2 + x2^2 + 1", 2));
    LevelSetMesh mesh = extract_level_set(F, GridSpec(2, 1.5, 1.0 / 16));
    CHECK(mesh.empty());
    CHECK(!mesh.clipped);
    const RegularityReport rep = check_regularity(mesh, 1e-3);
    CHECK(!rep.regular);
    CHECK(rep.empty);
}

TEST_CASE("level set beyond the ball reports clipping") {
    RealPoly F(parse_polynomial("x1^2 + x2^2 + x3^2 - 4", 3));
    LevelSetMesh mesh = extract_level_set(F, GridSpec(3, 1.0, 1.0 / 16));
    CHECK(mesh.empty());
    CHECK(mesh.clipped);
    const RegularityReport rep = check_regularity(mesh, 1e-3);
    CHECK(!rep.regular);
    CHECK(rep.clipped);
}

TEST_CASE("factored circles: two components with forced nesting") {
    RealPoly F(sphere_product(2, {1.0, 4.0}));
    GridSpec grid(2, 2.5, 2.5 / 64);
    LevelSetMesh mesh = extract_level_set(F, grid);
    REQUIRE(mesh.components.size() == 2);
    compute_nesting(mesh);
    orient_arnold(mesh);
    // Outer circle first (deterministic component order by minimal vertex).
    CHECK(mesh.components[0].depth == 1);
    CHECK(mesh.components[1].depth == 2);
    CHECK(mesh.components[0].orientation_sign == +1);
    CHECK(mesh.components[1].orientation_sign == -1);
    CHECK(mesh.components[0].total_area() == doctest::Approx(4 * oracle::kPi).epsilon(0.01));
    CHECK(mesh.components[1].total_area() == doctest::Approx(2 * oracle::kPi).epsilon(0.01));
}

TEST_CASE("three concentric spheres: depths and signs exact") {
    RealPoly F(sphere_product(3, {1.0, 4.0, 9.0}));
    GridSpec grid(3, 3.5, 3.5 / 48);
    LevelSetMesh mesh = extract_level_set(F, grid);
    REQUIRE(mesh.components.size() == 3);
    compute_nesting(mesh);
    orient_arnold(mesh);
    CHECK(mesh.components[0].depth == 1);
    CHECK(mesh.components[1].depth == 2);
    CHECK(mesh.components[2].depth == 3);
    CHECK(mesh.components[0].orientation_sign == +1);
    CHECK(mesh.components[1].orientation_sign == -1);
    CHECK(mesh.components[2].orientation_sign == +1);
}

TEST_CASE("single component nesting is depth 1") {
    RealPoly F(parse_polynomial("x1^2 + x2^2 + x3^2 - 1", 3));
    LevelSetMesh mesh = extract_level_set(F, GridSpec(3, 1.5, 1.0 / 16));
    compute_nesting(mesh);
    CHECK(mesh.components[0].depth == 1);
}

TEST_CASE("orient_arnold is idempotent and validates gradients") {
    RealPoly F(sphere_product(3, {1.0, 4.0}));
    LevelSetMesh mesh = extract_level_set(F, GridSpec(3, 2.5, 2.5 / 32));
    orient_arnold(mesh);
    const auto signs_before = std::vector<int>{mesh.components[0].orientation_sign,
                                               mesh.components[1].orientation_sign};
    orient_arnold(mesh);
    CHECK(mesh.components[0].orientation_sign == signs_before[0]);
    CHECK(mesh.components[1].orientation_sign == signs_before[1]);
}

TEST_CASE("domain_indicator") {
    RealPoly ball(parse_polynomial("x1^2 + x2^2 + x3^2 - 1", 3));
    double origin[3] = {0, 0, 0};
    double outside[3] = {2, 0, 0};
    CHECK(domain_indicator(ball, origin, 3, 1.5));
    CHECK(!domain_indicator(ball, outside, 3, 1.5));
    RealPoly shell(sphere_product(3, {1.0, 4.0}));
    double mid[3] = {1.5, 0, 0};
    CHECK(domain_indicator(shell, mid, 3, 2.5));
}

TEST_CASE("cone level set is flagged irregular by the gradient floor") {
    // x1^2 - x2^2 = 0 passes through the origin; the numerical minimum
    // gradient on origin-adjacent facets is ~2h, far below a tolerance set
    // above it.
    RealPoly F(parse_polynomial("x1^2 - x2^2", 2));
    GridSpec grid(2, 1.0, 1.0 / 64);
    LevelSetMesh mesh = extract_level_set(F, grid);
    REQUIRE(!mesh.empty());
    const RegularityReport rep = check_regularity(mesh, 0.1);
    CHECK(rep.min_grad < 0.1);
    CHECK(!rep.regular);
}

TEST_CASE("winding of the Arnold cycle counts enclosing components") {
    SUBCASE("shell, n=3: interior points see winding 1") {
        RealPoly F(sphere_product(3, {1.0, 4.0}));
        LevelSetMesh mesh = extract_level_set(F, GridSpec(3, 2.5, 2.5 / 32));
        orient_arnold(mesh);
        const Vec3 p{1.5, 0, 0}; // inside the annulus = the domain
        double w = 0;
        for (const auto& c : mesh.components)
            w += component_winding(c, 3, p, c.orientation_sign);
        CHECK(w == doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("circles, n=2") {
        RealPoly F(sphere_product(2, {1.0, 4.0}));
        LevelSetMesh mesh = extract_level_set(F, GridSpec(2, 2.5, 2.5 / 64));
        orient_arnold(mesh);
        const Vec3 p{1.5, 0, 0};
        double w = 0;
        for (const auto& c : mesh.components)
            w += component_winding(c, 2, p, c.orientation_sign);
        CHECK(w == doctest::Approx(1.0).epsilon(0.01));
    }
    SUBCASE("three spheres: the deep center sees all three") {
        RealPoly F(sphere_product(3, {1.0, 4.0, 9.0}));
        LevelSetMesh mesh = extract_level_set(F, GridSpec(3, 3.5, 3.5 / 48));
        orient_arnold(mesh);
        auto winding_at = [&](const Vec3& p) {
            double w = 0;
            for (const auto& c : mesh.components)
                w += component_winding(c, 3, p, c.orientation_sign);
            return w;
        };
        CHECK(winding_at({0, 0, 0.1}) == doctest::Approx(3.0).epsilon(0.01));
        CHECK(winding_at({2.5, 0, 0}) == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("divergence volume matches indicator counting") {
    auto indicator_volume = [](const RealPoly& F, const GridSpec& grid) {
        long count = 0;
        for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
            double x[3] = {0, 0, 0};
            grid.cell_center(i, x);
            if (domain_indicator(F, x, grid.n, grid.radius)) ++count;
        }
        return count * grid.cell_volume();
    };
    SUBCASE("sphere at h = R/64 within 5 percent, R/128 within 2 percent") {
        RealPoly F(parse_polynomial("x1^2 + x2^2 + x3^2 - 1", 3));
        for (auto [div, tol] : std::vector<std::pair<int, double>>{{64, 0.05}, {128, 0.02}}) {
            GridSpec grid(3, 1.5, 1.5 / div);
            LevelSetMesh mesh = extract_level_set(F, grid);
            const double dv = divergence_volume(mesh);
            const double iv = indicator_volume(F, grid);
            CHECK(std::abs(dv - iv) / iv < tol);
            CHECK(dv == doctest::Approx(oracle::ball_volume(1.0)).epsilon(tol));
        }
    }
    SUBCASE("shell") {
        RealPoly F(sphere_product(3, {1.0, 4.0}));
        GridSpec grid(3, 2.5, 2.5 / 64);
        LevelSetMesh mesh = extract_level_set(F, grid);
        const double dv = divergence_volume(mesh);
        CHECK(dv == doctest::Approx(oracle::ball_volume(2.0) - oracle::ball_volume(1.0))
                        .epsilon(0.05));
        CHECK(std::abs(dv - indicator_volume(F, grid)) / dv < 0.05);
    }
}

TEST_CASE("depth assignments are invariant under grid refinement") {
    RealPoly F(sphere_product(3, {1.0, 4.0}));
    for (int div : {24, 48}) {
        LevelSetMesh mesh = extract_level_set(F, GridSpec(3, 2.5, 2.5 / div));
        compute_nesting(mesh);
        REQUIRE(mesh.components.size() == 2);
        CHECK(mesh.components[0].depth == 1);
        CHECK(mesh.components[1].depth == 2);
    }
}

TEST_CASE("extraction is bitwise identical between serial and parallel") {
    RealPoly F(sphere_product(3, {1.0, 4.0}));
    GridSpec grid(3, 2.5, 2.5 / 32);
    LevelSetMesh a = extract_level_set(F, grid, exec::Mode::Parallel);
    LevelSetMesh b = extract_level_set(F, grid, exec::Mode::Serial);
    orient_arnold(a);
    orient_arnold(b);
    CHECK(mesh_to_obj(a) == mesh_to_obj(b));
}

TEST_CASE("OBJ export carries group names with depth and sign") {
    RealPoly F(sphere_product(3, {1.0, 4.0}));
    LevelSetMesh mesh = extract_level_set(F, GridSpec(3, 2.5, 2.5 / 24));
    orient_arnold(mesh);
    const std::string obj = mesh_to_obj(mesh);
    CHECK(obj.find("g comp_0_depth_1_sign_+1\n") != std::string::npos);
    CHECK(obj.find("g comp_1_depth_2_sign_-1\n") != std::string::npos);
    CHECK(obj.find("v ") != std::string::npos);
    CHECK(obj.find("f ") != std::string::npos);
}
