#include "vcpot/reduction.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace vcpot;

namespace {

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) {
    CohomologyClass out = a;
    for (const auto& [e, v] : b.coords) {
        auto [it, inserted] = out.coords.emplace(e, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) out.coords.erase(it);
        }
    }
    return out;
}

Polynomial random_box_class(std::mt19937_64& rng, int N, int n) {
    std::uniform_int_distribution<int> expd(0, N - 2), num(-4, 4), den(1, 5);
    Polynomial p(n);
    for (int t = 0; t < 3; ++t) {
        ExponentVector e(n);
        for (int j = 0; j < n; ++j) e[j] = expd(rng);
        p.add_term(e, Rat(num(rng), den(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("relation_polynomial matches the exterior-algebra oracle") {
    // Spec examples first; the oracle fixes signs and the factor N.
    SUBCASE("n=2, N=3, beta=(3,1)") {
        const auto r = relation_polynomial(RelationGenerator(1, 2, ExponentVector{3, 1}), 3, 2);
        CHECK(r.poly == parse_polynomial("x1^5 - 3*x1^2*x2^3", 2));
        const Polynomial o = oracle::df_wedge_d(1, 2, ExponentVector{3, 1}, 3, 2);
        CHECK(o == Rat(3) * r.poly); // sign(1,2)=+1, factor N=3
    }
    SUBCASE("n=2, N=3, beta=(0,1)") {
        const auto r = relation_polynomial(RelationGenerator(1, 2, ExponentVector{0, 1}), 3, 2);
        CHECK(r.poly == parse_polynomial("x1^2", 2));
        CHECK(oracle::df_wedge_d(1, 2, ExponentVector{0, 1}, 3, 2) == Rat(3) * r.poly);
    }
    SUBCASE("n=3, N=3, i=2, k=3, beta=(0,1,1): oracle-validated value") {
        const Polynomial o = oracle::df_wedge_d(2, 3, ExponentVector{0, 1, 1}, 3, 3);
        const auto r = relation_polynomial(RelationGenerator(2, 3, ExponentVector{0, 1, 1}), 3, 3);
        CHECK(r.poly == parse_polynomial("x2^3 - x3^3", 3));
        const int sign = oracle::complement_sign(2, 3, 3);
        CHECK(o == Rat(sign * 3) * r.poly);
    }
    SUBCASE("randomized agreement across (n, N)") {
        std::mt19937_64 rng(4242);
        for (int n = 2; n <= 4; ++n) {
            for (int N = 2; N <= 4; ++N) {
                std::uniform_int_distribution<int> idx(1, n), expd(0, 3);
                for (int rep = 0; rep < 25; ++rep) {
                    int i = idx(rng), k = idx(rng);
                    if (i == k) continue;
                    if (i > k) std::swap(i, k);
                    ExponentVector beta(n);
                    for (int j = 0; j < n; ++j) beta[j] = expd(rng);
                    if (beta[k - 1] < 1) beta[k - 1] = 1;
                    const auto r = relation_polynomial(RelationGenerator(i, k, beta), N, n);
                    const int sign = oracle::complement_sign(i, k, n);
                    CHECK(oracle::df_wedge_d(i, k, beta, N, n) == Rat(sign * N) * r.poly);
                }
            }
        }
    }
}

TEST_CASE("relation generator validation") {
    CHECK_THROWS_AS(RelationGenerator(2, 1, ExponentVector{1, 1}), config_error);
    CHECK_THROWS_AS(RelationGenerator(1, 2, ExponentVector{1, 0}), config_error);
    CHECK_THROWS_AS(RelationGenerator(1, 3, ExponentVector{1, 1}), config_error);
}

TEST_CASE("zero-integral span contents") {
    ReductionContext ctx(3, 2, 4);
    const auto span = ctx.zero_integral_span();
    // x1^2 (beta=(0,1)) and its mirror x2^2 both appear.
    bool has_x1sq = false, has_x2sq = false;
    for (const auto& f : span) {
        if (f.poly == parse_polynomial("x1^2", 2)) has_x1sq = true;
        if (f.poly == parse_polynomial("x2^2", 2)) has_x2sq = true;
    }
    CHECK(has_x1sq);
    CHECK(has_x2sq);

    // Quotient by the zero-integral forms alone is at least mu-dimensional
    // (the level-set relations account for the rest).
    const int rank = oracle::form_rank(span, 2, 4);
    const int monomials = static_cast<int>(monomials_up_to_degree(2, 4).size());
    CHECK(monomials - rank >= 4);

    // n = 1, N = 2: the span contains x1 and all non-constant monomials reduce.
    ReductionContext ctx1(2, 1, 5);
    bool has_x1 = false;
    for (const auto& f : ctx1.zero_integral_span())
        if (f.poly == parse_polynomial("2*x1", 1) || f.poly == parse_polynomial("x1", 1))
            has_x1 = true;
    CHECK(has_x1);
    CHECK(ctx1.reduce(parse_polynomial("x1", 1)).is_zero());
    CHECK(ctx1.quotient_dimension(ctx1.complete_degree()) == 1);
}

TEST_CASE("reduce_to_basis kills every relation generator and is idempotent/linear") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 3; ++n) {
        for (int N = 2; N <= 4; ++N) {
            const int maxdeg = std::max(default_reduction_maxdeg(N, n), n * (N - 1) + N);
            ReductionContext ctx(N, n, maxdeg);
            for (const auto& f : ctx.zero_integral_span()) {
                if (f.poly.total_degree() > ctx.complete_degree()) continue;
                CHECK(ctx.reduce(f).is_zero());
            }
            // Linearity and idempotence on random classes.
            for (int rep = 0; rep < 5; ++rep) {
                const Polynomial a = random_box_class(rng, N, n);
                const Polynomial b = random_box_class(rng, N, n);
                const auto ra = ctx.reduce(a), rb = ctx.reduce(b);
                CHECK(ctx.reduce(a + b) == add(ra, rb));
                Polynomial back(n);
                for (const auto& [e, v] : ra.coords) back.add_term(e, v);
                CHECK(ctx.reduce(back) == ra);
            }
        }
    }
}

TEST_CASE("quotient dimension equals the Milnor number") {
    for (int n = 1; n <= 3; ++n) {
        for (int N = 2; N <= 4; ++N) {
            const int D = n * (N - 1);
            ReductionContext ctx(N, n, std::max(default_reduction_maxdeg(N, n), D + N));
            int mu = 1;
            for (int i = 0; i < n; ++i) mu *= (N - 1);
            REQUIRE(ctx.complete_degree() >= D);
            CHECK(ctx.quotient_dimension(D) == mu);
            // The standard monomials are exactly the box.
            for (const auto& e : ctx.standard_monomials(D)) {
                for (int i = 0; i < n; ++i) CHECK(e[i] <= N - 2);
            }
        }
    }
}

TEST_CASE("the paper's rewrite chain x1^{kN+N-1} = kN x1^{kN-1} x2^N") {
    ReductionContext ctx(3, 2, 10);
    for (int k = 1; k <= 2; ++k) {
        const int N = 3;
        ExponentVector lhs{k * N + N - 1, 0};
        ExponentVector rhs{k * N - 1, N};
        const auto a = ctx.reduce(Polynomial::monomial(2, lhs));
        const auto b = ctx.reduce(Polynomial::monomial(2, rhs, Rat(k * N)));
        CHECK(a == b);
    }
    // x1^5 reduces like 3 x1^2 x2^3.
    CHECK(ctx.reduce(parse_polynomial("x1^5", 2)) ==
          ctx.reduce(parse_polynomial("3*x1^2*x2^3", 2)));
    // x1*x2 is already a basis monomial; x1^2 is itself a relation.
    const auto cls = ctx.reduce(parse_polynomial("x1*x2", 2));
    CHECK(cls.coords.size() == 1);
    CHECK(cls.coords.at(ExponentVector{1, 1}) == 1);
    CHECK(ctx.reduce(parse_polynomial("x1^2", 2)).is_zero());
}

TEST_CASE("multiply_by_deformation_power: operation-1 identity") {
    std::mt19937_64 rng(2024);
    for (auto [N, n] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {3, 3}}) {
        const int need = n * (N - 2) + 2 * N + 1;
        ReductionContext ctx(N, n, std::max(default_reduction_maxdeg(N, n), need + N));
        REQUIRE(ctx.complete_degree() >= need);
        const VersalDeformation& F = ctx.family();
        SUBCASE("k = 0 leaves the form unchanged") {
            const VolumeFormGerm c(N, random_box_class(rng, N, n));
            const auto m = multiply_by_deformation_power(c, F, ctx.lambda(), 0);
            CHECK(m.poly == c.poly);
        }
        for (int rep = 0; rep < 20; ++rep) {
            const VolumeFormGerm c(N, random_box_class(rng, N, n));
            for (int k = 1; k <= 2; ++k) {
                const auto m = multiply_by_deformation_power(c, F, ctx.lambda(), k);
                const auto lhs = ctx.reduce(m);
                const auto rhs = ctx.reduce(c).scaled(k % 2 ? Rat(-1) : Rat(1));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("operation-1 identity at a general rational parameter") {
    // lambda = (1/3, -1/2, 2/5, 1) for (N, n) = (3, 2).
    std::vector<Rat> lambda = {Rat(1, 3), Rat(-1, 2), Rat(2, 5), Rat(1)};
    ReductionContext ctx(3, 2, 14, lambda);
    REQUIRE(ctx.complete_degree() >= 2 + 2 * 3);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const VolumeFormGerm c(3, random_box_class(rng, 3, 2));
        for (int k = 1; k <= 2; ++k) {
            const auto m = multiply_by_deformation_power(c, ctx.family(), lambda, k);
            CHECK(ctx.reduce(m) == ctx.reduce(c).scaled(k % 2 ? Rat(-1) : Rat(1)));
        }
    }
}

TEST_CASE("lambda_mu = 0 is rejected") {
    ReductionContext ctx(3, 2, 8);
    const VolumeFormGerm c(3, parse_polynomial("1", 2));
    std::vector<Rat> bad = {Rat(1), Rat(0), Rat(0), Rat(0)};
    CHECK_THROWS_AS(multiply_by_deformation_power(c, ctx.family(), bad, 1), precondition_error);
    CHECK_THROWS_AS(ReductionContext(3, 2, 8, bad), precondition_error);
}

TEST_CASE("degree overflow is reported") {
    ReductionContext ctx(3, 2, 8);
    ExponentVector big{20, 0};
    CHECK_THROWS_WITH_AS(ctx.reduce(Polynomial::monomial(2, big)),
                         doctest::Contains("exceeds the complete degree"), precondition_error);
}

TEST_CASE("surjectivity certificates") {
    SUBCASE("e = 0 is the identity map with the basis as witnesses") {
        const auto cert = surjectivity_certificate(ExponentVector{0, 0}, 3, 2, 4);
        CHECK(cert.full_rank);
        CHECK(cert.rank == 4);
        // Witnesses reduce to the four basis classes; the basis monomials
        // themselves are the first independent representatives found.
        std::vector<std::string> w;
        for (const auto& e : cert.witnesses) w.push_back(monomial_to_string(e));
        CHECK(w == std::vector<std::string>{"1", "x2", "x1", "x1*x2"});
    }
    SUBCASE("e = (1,1) at N=3 has full rank 4") {
        const auto cert = surjectivity_certificate(ExponentVector{1, 1}, 3, 2, 8);
        CHECK(cert.rank == 4);
        CHECK(cert.full_rank);
    }
    SUBCASE("e = (2,2) at N=4 has full rank 9") {
        const auto cert = surjectivity_certificate(ExponentVector{2, 2}, 4, 2, 8);
        CHECK(cert.rank == 9);
        CHECK(cert.full_rank);
    }
    SUBCASE("e outside the box is rejected") {
        CHECK_THROWS_AS(surjectivity_certificate(ExponentVector{2, 0}, 3, 2, 4), config_error);
    }
}
