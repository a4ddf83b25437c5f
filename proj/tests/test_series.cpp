#include "doctest.h"
#include "oracles.hpp"
#include "polybound/series.hpp"

using namespace polybound;

namespace {

// series -> map over (main exponents..., aux exponent) for the oracle;
// the aux coordinate is shifted to stay nonnegative in the map
oracles::TermMap series_to_map(const TruncatedSeries& s, int aux_base) {
    oracles::TermMap out;
    for (size_t r = 0; r < s.index().size(); ++r)
        for (int e = s.aux_lo(); e <= s.aux_hi(); ++e) {
            const Rational& c = s.at(r, e);
            if (c == 0) continue;
            std::vector<int> key = s.index().exponents(r);
            key.push_back(e - aux_base);
            out[key] = c;
        }
    return out;
}

} // namespace

TEST_CASE("monomial index enumerates graded-lex") {
    MonomialIndex idx(2, 2);
    CHECK(idx.size() == 6);
    CHECK(idx.exponents(0) == std::vector<int>{0, 0});
    CHECK(idx.exponents(1) == std::vector<int>{0, 1});
    CHECK(idx.exponents(2) == std::vector<int>{1, 0});
    CHECK(idx.exponents(3) == std::vector<int>{0, 2});
    CHECK(idx.rank({1, 1}) == 4);
    CHECK(idx.degree_range(1) == std::pair<size_t, size_t>{1, 3});
}

TEST_CASE("series truncation basics") {
    auto idx = MonomialIndex::get(1, 1);
    TruncatedSeries a(idx, 0, 0);
    a.set({0}, 0, Rational(1));
    a.set({1}, 0, Rational(1));
    // (1 + t)^2 at M = 1 loses the square term
    TruncatedSeries prod = a * a;
    CHECK(prod.coefficient({0}, 0) == 1);
    CHECK(prod.coefficient({1}, 0) == 2);

    TruncatedSeries one = TruncatedSeries::one(idx);
    CHECK(one * a == a);
}

TEST_CASE("series product golden case") {
    auto idx = MonomialIndex::get(2, 2);
    TruncatedSeries a(idx, 0, 0);  // 1 + t1 + t2
    a.set({0, 0}, 0, Rational(1));
    a.set({1, 0}, 0, Rational(1));
    a.set({0, 1}, 0, Rational(1));
    TruncatedSeries b(idx, 0, 0);  // 1 - t1
    b.set({0, 0}, 0, Rational(1));
    b.set({1, 0}, 0, Rational(-1));
    std::vector<TruncatedSeries> factors{a, b};
    TruncatedSeries p = truncated_product(factors, 2);
    CHECK(p.coefficient({0, 0}, 0) == 1);
    CHECK(p.coefficient({0, 1}, 0) == 1);
    CHECK(p.coefficient({1, 0}, 0) == 0);
    CHECK(p.coefficient({2, 0}, 0) == -1);
    CHECK(p.coefficient({1, 1}, 0) == -1);
    CHECK(p.coefficient({0, 2}, 0) == 0);
}

TEST_CASE("dimension mismatch rejected") {
    auto idx1 = MonomialIndex::get(1, 2);
    auto idx2 = MonomialIndex::get(2, 2);
    TruncatedSeries a(idx1, 0, 0), b(idx2, 0, 0);
    std::vector<TruncatedSeries> factors{a, b};
    CHECK_THROWS_AS(truncated_product(factors, 2), MathError);
}

TEST_CASE("truncated product equals full product with high terms deleted") {
    oracles::Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        int n = rng.uniform(1, 3);
        int M = rng.uniform(1, 6);
        auto idx = MonomialIndex::get(n, M);

        auto random_series = [&](int lo_span) {
            int lo = -rng.uniform(0, lo_span);
            int hi = lo + rng.uniform(0, 2);
            TruncatedSeries s(idx, lo, hi);
            for (size_t r = 0; r < idx->size(); ++r)
                for (int e = lo; e <= hi; ++e)
                    if (rng.uniform(0, 2)) s.add(r, e, rng.rational());
            return s;
        };
        TruncatedSeries a = random_series(2), b = random_series(2);
        TruncatedSeries got = a * b;

        int base_a = a.aux_lo(), base_b = b.aux_lo();
        auto ma = series_to_map(a, base_a);
        auto mb = series_to_map(b, base_b);
        auto full = oracles::naive_multiply(ma, mb);
        auto want = oracles::truncate_main_degree(full, static_cast<size_t>(n), M);
        auto got_map = series_to_map(got, base_a + base_b);
        CHECK(got_map == want);
        CHECK(got.aux_lo() == a.aux_lo() + b.aux_lo());
        CHECK(got.aux_hi() == a.aux_hi() + b.aux_hi());
    }
}
