#include "vcpot/polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace vcpot;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int n, int max_terms = 6, int max_deg = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expd(0, max_deg);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    Polynomial p(n);
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        ExponentVector e(n);
        for (int j = 0; j < n; ++j) e[j] = expd(rng);
        p.add_term(e, Rat(num(rng), den(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("parse_polynomial: term listing and cancellation") {
    const Polynomial p = parse_polynomial("x1^3 + x2^3", 2);
    CHECK(p.term_count() == 2);
    CHECK(p.coeff(ExponentVector{3, 0}) == 1);
    CHECK(p.coeff(ExponentVector{0, 3}) == 1);

    const Polynomial q = parse_polynomial("2*x1*x2 - x1*x2", 2);
    CHECK(q.term_count() == 1);
    CHECK(q.coeff(ExponentVector{1, 1}) == 1);

    const Polynomial r = parse_polynomial("x1^3 + 0*x2", 2);
    CHECK(r.term_count() == 1);
    CHECK(r.coeff(ExponentVector{3, 0}) == 1);
}

TEST_CASE("parse_polynomial: coefficients, decimals, rationals") {
    const Polynomial p = parse_polynomial("3/4*x1 - 0.25 + 2*x2^2", 2);
    CHECK(p.coeff(ExponentVector{1, 0}) == Rat(3, 4));
    CHECK(p.coeff(ExponentVector{0, 0}) == Rat(-1, 4));
    CHECK(p.coeff(ExponentVector{0, 2}) == 2);
}

TEST_CASE("parse_polynomial: errors carry positions") {
    CHECK_THROWS_AS(parse_polynomial("x3 + 1", 2), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x1 + + x2", 2), parse_error);
    CHECK_THROWS_AS(parse_polynomial("1/0", 2), parse_error);
    try {
        parse_polynomial("x1 * y", 2);
        FAIL("expected parse error");
    } catch (const parse_error& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("print/parse round-trip is the identity") {
    std::mt19937_64 rng(12345);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 40; ++rep) {
            const Polynomial p = random_poly(rng, n);
            const Polynomial q = parse_polynomial(p.to_string(), n);
            CHECK(p == q);
        }
    }
}

TEST_CASE("printing emits terms in the fixed term order") {
    const Polynomial p = parse_polynomial("1 + x2 + x1^2 + x1*x2", 2);
    CHECK(p.to_string() == "x1^2 + x1*x2 + x2 + 1");
}

TEST_CASE("truncate_jet") {
    CHECK(parse_polynomial("x1^3 + x1^5", 1).truncate_jet(3) == parse_polynomial("x1^3", 1));
    const Polynomial p = parse_polynomial("x1^3 + x2^3", 2);
    CHECK(p.truncate_jet(5) == p);
    CHECK(parse_polynomial("x1^2 + x1^4 + x1^6", 1).truncate_jet(4) ==
          parse_polynomial("x1^2 + x1^4", 1));
}

TEST_CASE("arithmetic and evaluation") {
    const Polynomial p = parse_polynomial("x1^2 - 2*x2", 2);
    const Polynomial q = parse_polynomial("x2 + 3", 2);
    CHECK((p + q) == parse_polynomial("x1^2 - x2 + 3", 2));
    CHECK((p * q).coeff(ExponentVector{2, 1}) == 1);
    CHECK(p.evaluate({2.0, 0.5}) == doctest::Approx(3.0));
    CHECK(p.evaluate_exact({Rat(2), Rat(1, 2)}) == Rat(3));
    CHECK(q.pow(2) == parse_polynomial("x2^2 + 6*x2 + 9", 2));
}

TEST_CASE("scale_variables substitutes x -> s x exactly") {
    const Polynomial p = parse_polynomial("x1^2*x2 + x2", 2);
    const Polynomial s = p.scale_variables(Rat(1, 2));
    CHECK(s.coeff(ExponentVector{2, 1}) == Rat(1, 8));
    CHECK(s.coeff(ExponentVector{0, 1}) == Rat(1, 2));
}
