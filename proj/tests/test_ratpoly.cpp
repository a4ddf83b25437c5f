#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "polybound/polynomial.hpp"
#include "polybound/rational.hpp"

using namespace polybound;

namespace {

Polynomial make_poly(int dim, const std::vector<std::pair<Rational, std::vector<int>>>& terms) {
    Polynomial f(dim);
    for (const auto& [c, e] : terms) f.add_term(Monomial(e), c);
    return f;
}

bool canonical(const Rational& r) {
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return r.get_den() > 0 && (g == 1 || (r.get_num() == 0 && r.get_den() == 1));
}

} // namespace

TEST_CASE("rational parsing") {
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-6/8") == Rational(-3, 4));
    CHECK(rational_from_string("7") == Rational(7));
    CHECK(rational_from_string("0.1") == Rational(1, 10));
    CHECK(rational_from_string("-0.125") == Rational(-1, 8));
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rational_from_string("abc"), ParseError);
    CHECK_THROWS_AS(rational_from_string(""), ParseError);
}

TEST_CASE("rational arithmetic stays canonical") {
    oracles::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational a = rng.rational(50, 50), b = rng.nonzero_rational(50, 50);
        for (const Rational& r : {Rational(a + b), Rational(a * b), Rational(a - b), Rational(a / b)})
            CHECK(canonical(r));
    }
    CHECK(rat_pow(Rational(-2, 3), 3) == Rational(-8, 27));
    CHECK(rat_pow(Rational(-2, 3), -2) == Rational(9, 4));
    CHECK(rat_pow(Rational(5), 0) == 1);
}

TEST_CASE("directed and half-even decimals") {
    Rational v(43, 24);
    CHECK(round_down(v, 6).str() == "1.791666");
    CHECK(round_up(v, 6).str() == "1.791667");
    CHECK(round_half_even(v, 6).str() == "1.791667");
    CHECK(round_half_even(Rational(1, 2), 0).str() == "0");   // tie to even
    CHECK(round_half_even(Rational(3, 2), 0).str() == "2");
    CHECK(round_down(Rational(-1, 4), 2).str() == "-0.25");
    CHECK(round_down(Rational(-1, 3), 2).str() == "-0.34");
    CHECK(round_up(Rational(-1, 3), 2).str() == "-0.33");
    CHECK(round_down(Rational(2), 3).str() == "2.000");
    Decimal d = round_down(v, 6);
    CHECK(d.value() == rational_from_string("1.791666"));
}

TEST_CASE("poly_pow golden values") {
    Polynomial xm1 = make_poly(1, {{Rational(1), {1}}, {Rational(-1), {0}}});
    CHECK(poly_pow(xm1, 2) ==
          make_poly(1, {{Rational(1), {2}}, {Rational(-2), {1}}, {Rational(1), {0}}}));

    Polynomial any = make_poly(2, {{Rational(3), {1, 2}}});
    CHECK(poly_pow(any, 0) == Polynomial::constant(2, Rational(1)));

    // ((x+y)^2)^2 expanded against the independent map-based oracle
    Polynomial xy = make_poly(2, {{Rational(1), {1, 0}}, {Rational(1), {0, 1}}});
    Polynomial sq = poly_pow(xy, 2);
    Polynomial lib = poly_pow(sq, 2);
    auto expect = oracles::naive_power(oracles::to_map(sq), 2, 2);
    CHECK(lib == oracles::from_map(2, expect));
    CHECK(lib == make_poly(2, {{Rational(1), {4, 0}},
                               {Rational(4), {3, 1}},
                               {Rational(6), {2, 2}},
                               {Rational(4), {1, 3}},
                               {Rational(1), {0, 4}}}));
}

TEST_CASE("poly_pow matches repeated naive multiplication") {
    oracles::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = rng.uniform(1, 3);
        Polynomial f = rng.polynomial(dim, 3, 6);
        unsigned k = static_cast<unsigned>(rng.uniform(0, 5));
        auto expect = oracles::naive_power(oracles::to_map(f), k, static_cast<size_t>(dim));
        CHECK(poly_pow(f, k) == oracles::from_map(dim, expect));
    }
}

TEST_CASE("ring distributivity on random polynomials") {
    oracles::Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = rng.uniform(1, 3);
        Polynomial f = rng.polynomial(dim, 3, 5);
        Polynomial g = rng.polynomial(dim, 3, 5);
        Polynomial h = rng.polynomial(dim, 3, 5);
        CHECK((f + g) * h == f * h + g * h);
    }
}

TEST_CASE("poly_eval") {
    Polynomial f = make_poly(1, {{Rational(1), {2}}, {Rational(-1), {1}}});
    CHECK(poly_eval(f, {Rational(1)}) == 0);

    Polynomial g = make_poly(1, {{Rational(-10), {2}}, {Rational(2), {0}}});
    CHECK(poly_eval(g, {Rational(1, 4)}) == Rational(11, 8));

    Polynomial c = Polynomial::constant(3, Rational(7));
    CHECK(poly_eval(c, {Rational(5), Rational(-2), Rational(9)}) == 7);

    CHECK_THROWS_AS(poly_eval(f, {Rational(1), Rational(2)}), MathError);
}

TEST_CASE("degree conventions") {
    Polynomial zero(2);
    CHECK(zero.is_zero());
    CHECK(zero.degree() == 0);
    Polynomial f = make_poly(2, {{Rational(2), {1, 3}}, {Rational(1), {0, 0}}});
    CHECK(f.degree() == 4);
    // cancelling terms disappear entirely
    f.add_term(Monomial({1, 3}), Rational(-2));
    CHECK(f.degree() == 0);
    CHECK(f.term_count() == 1);
}

TEST_CASE("polynomial text io") {
    std::istringstream in("# a comment\nd 2\n-5 4 0\n1/3 0 2\n");
    Polynomial f = parse_polynomial(in);
    CHECK(f.dim() == 2);
    CHECK(f.coefficient(Monomial({4, 0})) == -5);
    CHECK(f.coefficient(Monomial({0, 2})) == Rational(1, 3));

    std::istringstream again(format_polynomial(f));
    CHECK(parse_polynomial(again) == f);

    std::istringstream bad1("2 1\n");
    CHECK_THROWS_AS(parse_polynomial(bad1), ParseError);
    std::istringstream bad2("d 2\n1 0\n");
    CHECK_THROWS_AS(parse_polynomial(bad2), ParseError);
    std::istringstream bad3("d 2\n1 0 -1\n");
    CHECK_THROWS_AS(parse_polynomial(bad3), ParseError);
}
