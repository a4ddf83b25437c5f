#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "polybound/decompose.hpp"

using namespace polybound;

namespace {

Rational R(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

HRep interval_pm1() {  // [-1, 1]: g0 = 1 - x, g1 = x + 1
    return make_hrep(1, {{R(1)}, {R(-1)}}, {R(1), R(1)});
}

HRep triangle() {
    return make_hrep(2, {{R(-1), R(0)}, {R(0), R(-1)}, {R(1), R(1)}}, {R(-1), R(-1), R(3)});
}

HRep unit_box(int d) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int i = 0; i < d; ++i) {
        std::vector<Rational> row(static_cast<size_t>(d), R(0)), neg = row;
        row[static_cast<size_t>(i)] = R(1);
        neg[static_cast<size_t>(i)] = R(-1);
        a.push_back(row);
        b.push_back(R(1));
        a.push_back(neg);
        b.push_back(R(0));
    }
    return make_hrep(d, std::move(a), std::move(b));
}

Polynomial make_poly(int dim, const std::vector<std::pair<Rational, std::vector<int>>>& terms) {
    Polynomial f(dim);
    for (const auto& [c, e] : terms) f.add_term(Monomial(e), c);
    return f;
}

Polynomial x2_minus_x() {
    return make_poly(1, {{R(1), {2}}, {R(-1), {1}}});
}

Polynomial reconstruct(int dim, const std::vector<LinearFormPower>& terms) {
    return oracles::reconstruct_linear_forms(dim, terms);
}

const LinearFormPower* find_form(const std::vector<LinearFormPower>& terms,
                                 const std::vector<Rational>& form, unsigned power) {
    for (const auto& t : terms)
        if (t.form == form && t.power == power) return &t;
    return nullptr;
}

} // namespace

TEST_CASE("linear form decomposition of x1 x2") {
    Polynomial f = make_poly(2, {{R(1), {1, 1}}});
    auto terms = poly_to_linear_forms(f);
    REQUIRE(terms.size() == 3);
    CHECK(find_form(terms, {R(1), R(1)}, 2)->coefficient == R(1, 2));
    CHECK(find_form(terms, {R(1), R(0)}, 2)->coefficient == R(-1, 2));
    CHECK(find_form(terms, {R(0), R(1)}, 2)->coefficient == R(-1, 2));
    CHECK(reconstruct(2, terms) == f);
}

TEST_CASE("pure powers collapse to one form") {
    Polynomial f = make_poly(1, {{R(1), {3}}});
    auto raw = monomial_to_linear_forms(Monomial({3}));
    CHECK(raw.size() == 3);  // forms x, 2x, 3x before direction merging
    auto merged = poly_to_linear_forms(f);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].coefficient == 1);
    CHECK(merged[0].form == std::vector<Rational>{R(1)});
    CHECK(merged[0].power == 3);
}

TEST_CASE("decomposition of x1^2 x2 has four merged terms") {
    Polynomial f = make_poly(2, {{R(1), {2, 1}}});
    auto terms = poly_to_linear_forms(f);
    CHECK(terms.size() == 4);
    CHECK(reconstruct(2, terms) == f);
}

TEST_CASE("merging across monomials") {
    Polynomial f = make_poly(2, {{R(1), {1, 1}}, {R(1), {2, 0}}});
    auto terms = poly_to_linear_forms(f);
    REQUIRE(terms.size() == 3);
    CHECK(find_form(terms, {R(1), R(1)}, 2)->coefficient == R(1, 2));
    CHECK(find_form(terms, {R(1), R(0)}, 2)->coefficient == R(1, 2));
    CHECK(find_form(terms, {R(0), R(1)}, 2)->coefficient == R(-1, 2));
    CHECK(reconstruct(2, terms) == f);
}

TEST_CASE("constants ride along as zero forms") {
    Polynomial f = make_poly(1, {{R(5), {0}}});
    auto terms = poly_to_linear_forms(f);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].coefficient == 5);
    CHECK(terms[0].power == 0);
    CHECK(terms[0].form == std::vector<Rational>{R(0)});
}

TEST_CASE("random monomials reconstruct exactly") {
    oracles::Rng rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        int d = rng.uniform(1, 3);
        Monomial m(static_cast<size_t>(d));
        int budget = rng.uniform(1, 6);
        for (int i = 0; i < d && budget > 0; ++i) {
            m[static_cast<size_t>(i)] = rng.uniform(0, budget);
            budget -= m[static_cast<size_t>(i)];
        }
        if (m.total_degree() == 0) m[0] = 1;
        Polynomial f(d);
        f.add_term(m, R(1));
        CHECK(reconstruct(d, poly_to_linear_forms(f)) == f);
    }
}

TEST_CASE("facet polynomials come verbatim from the rows") {
    HRep tri = triangle();
    CHECK(facet_polynomial(tri, 0) == make_poly(2, {{R(1), {1, 0}}, {R(-1), {0, 0}}}));
    CHECK(facet_polynomial(tri, 2) ==
          make_poly(2, {{R(3), {0, 0}}, {R(-1), {1, 0}}, {R(-1), {0, 1}}}));
}

TEST_CASE("handelman lp shape") {
    HRep box = interval_pm1();
    LPProblem lp = handelman_lp(x2_minus_x(), box, 2, HandelmanObjective::SparseAndShift);
    CHECK(lp.rows.size() == 3);      // binom(2+1, 1) monomials
    CHECK(lp.num_vars() == 7);       // binom(2+2, 2) coefficients plus s
    CHECK(lp.var_bounds.back() == VarBound::Free);
    CHECK_THROWS_AS(handelman_lp(x2_minus_x(), box, 1, HandelmanObjective::SparseAndShift),
                    MathError);
}

TEST_CASE("worked certificate on [-1,1]") {
    HRep box = interval_pm1();
    Polynomial f = x2_minus_x();
    CertificateSearch search = find_certificate(f, box, 2, HandelmanObjective::SparseAndShift);
    CHECK(search.lp_objective == 2);  // s + sum c = 1 + 1
    CHECK(search.certificate.shift == 1);
    CHECK(search.certificate.monomials.size() == 2);
    CHECK(verify_certificate(search.certificate, box, f));

    // the identity (3/4)(1-x)^2 + (1/4)(x+1)^2 = x^2 - x + 1, in this
    // H-rep's facet order g0 = 1-x, g1 = x+1
    for (const auto& hm : search.certificate.monomials) {
        if (hm.alpha == std::vector<int>{2, 0}) CHECK(hm.coefficient == R(3, 4));
        if (hm.alpha == std::vector<int>{0, 2}) CHECK(hm.coefficient == R(1, 4));
    }
    Polynomial expect = f;
    expect.add_term(Monomial({0}), R(1));
    CHECK(expand_handelman(box, search.certificate.monomials) == expect);
}

TEST_CASE("zero polynomial certificate is trivial") {
    CertificateSearch search =
        find_certificate(Polynomial(1), interval_pm1(), 1, HandelmanObjective::SparseAndShift);
    CHECK(search.lp_objective == 0);
    CHECK(search.certificate.shift == 0);
    CHECK(search.certificate.monomials.empty());
}

TEST_CASE("a facet polynomial certifies itself cheaply") {
    HRep box = interval_pm1();
    Polynomial g0 = facet_polynomial(box, 0);
    CertificateSearch search = find_certificate(g0, box, 1, HandelmanObjective::SparseAndShift);
    CHECK(search.lp_objective <= 1);  // candidate c = e_{g0}, s = 0 scores 1
    CHECK(verify_certificate(search.certificate, box, g0));
}

TEST_CASE("constant polynomial with shift-only objective") {
    HRep box = unit_box(1);
    Polynomial seven = Polynomial::constant(1, R(7));
    CertificateSearch search = find_certificate(seven, box, 0, HandelmanObjective::ShiftOnly);
    CHECK(search.certificate.shift == -7);
    CHECK(search.certificate.monomials.empty());
    CHECK(verify_certificate(search.certificate, box, seven));
}

TEST_CASE("verification rejects a perturbed certificate") {
    HRep box = interval_pm1();
    Polynomial f = x2_minus_x();
    HandelmanCertificate cert = find_certificate(f, box, 2, HandelmanObjective::SparseAndShift)
                                    .certificate;
    CHECK(verify_certificate(cert, box, f));
    for (auto& hm : cert.monomials)
        if (hm.alpha == std::vector<int>{2, 0}) hm.coefficient = 1;
    CHECK_FALSE(verify_certificate(cert, box, f));

    HandelmanCertificate empty;
    empty.num_facets = 2;
    empty.degree = 0;
    empty.shift = 0;
    CHECK(verify_certificate(empty, box, Polynomial(1)));
}

TEST_CASE("certificate powers") {
    HRep box = interval_pm1();
    Polynomial f = x2_minus_x();
    HandelmanCertificate cert = find_certificate(f, box, 2, HandelmanObjective::SparseAndShift)
                                    .certificate;

    auto once = certificate_pow(cert, 1);
    CHECK(once.size() == cert.monomials.size());

    auto squared = certificate_pow(cert, 2);
    REQUIRE(squared.size() == 3);
    for (const auto& hm : squared) {
        if (hm.alpha == std::vector<int>{4, 0}) CHECK(hm.coefficient == R(9, 16));
        if (hm.alpha == std::vector<int>{2, 2}) CHECK(hm.coefficient == R(3, 8));
        if (hm.alpha == std::vector<int>{0, 4}) CHECK(hm.coefficient == R(1, 16));
    }

    HandelmanCertificate single;
    single.num_facets = 2;
    single.degree = 2;
    single.shift = 0;
    single.monomials.push_back(HandelmanMonomial{R(2, 3), {1, 1}});
    auto cubed = certificate_pow(single, 3);
    REQUIRE(cubed.size() == 1);
    CHECK(cubed[0].coefficient == R(8, 27));
    CHECK(cubed[0].alpha == std::vector<int>{3, 3});
}

TEST_CASE("certificate powers expand like polynomial powers") {
    HRep box = interval_pm1();
    Polynomial f = x2_minus_x();
    HandelmanCertificate cert = find_certificate(f, box, 2, HandelmanObjective::SparseAndShift)
                                    .certificate;
    Polynomial shifted = f;
    shifted.add_term(Monomial({0}), cert.shift);
    for (unsigned k : {1u, 2u, 3u}) {
        auto powered = certificate_pow(cert, k);
        CHECK(expand_handelman(box, powered) == poly_pow(shifted, k));
        for (const auto& hm : powered) CHECK(sign(hm.coefficient) >= 0);
    }
}

TEST_CASE("degenerate lp still verifies after facet permutation") {
    Polynomial f = x2_minus_x();
    HRep box = interval_pm1();
    HRep swapped = make_hrep(1, {{R(-1)}, {R(1)}}, {R(1), R(1)});
    auto a = find_certificate(f, box, 2, HandelmanObjective::SparseAndShift);
    auto b = find_certificate(f, swapped, 2, HandelmanObjective::SparseAndShift);
    CHECK(verify_certificate(a.certificate, box, f));
    CHECK(verify_certificate(b.certificate, swapped, f));
    CHECK(a.lp_objective == b.lp_objective);
}

TEST_CASE("certificate serialization round trip") {
    HRep box = interval_pm1();
    Polynomial f = x2_minus_x();
    HandelmanCertificate cert = find_certificate(f, box, 2, HandelmanObjective::SparseAndShift)
                                    .certificate;
    std::string text = serialize_certificate(cert);
    CHECK(text.find("t 2") == 0);
    CHECK(text.find("s 1") != std::string::npos);
    std::istringstream in(text);
    HandelmanCertificate back = parse_certificate(in, 2);
    CHECK(back.degree == cert.degree);
    CHECK(back.shift == cert.shift);
    REQUIRE(back.monomials.size() == cert.monomials.size());
    CHECK(verify_certificate(back, box, f));
}

TEST_CASE("shift validity against grid evaluation") {
    // -s lower-bounds the minimum: f + s >= 0 at every grid point
    oracles::Rng rng(555);
    HRep tri = triangle();
    for (int trial = 0; trial < 5; ++trial) {
        Polynomial f = rng.polynomial(2, 3, 4);
        if (f.is_zero()) continue;
        CertificateSearch search =
            find_certificate(f, tri, f.degree(), HandelmanObjective::SparseAndShift);
        for (const auto& pt : lattice_points(tri, 4)) {
            Rational value = poly_eval(f, pt) + search.certificate.shift;
            CHECK(sign(value) >= 0);
        }
    }
}
