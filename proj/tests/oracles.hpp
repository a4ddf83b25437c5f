#pragma once

// Independent reference implementations the tests check the library against.
// Everything here works on plain exponent->coefficient maps so it shares no
// code path with the library's polynomial, series, or integration types.

#include <map>
#include <random>
#include <vector>

#include "polybound/decompose.hpp"
#include "polybound/polynomial.hpp"
#include "polybound/rational.hpp"

namespace oracles {

using polybound::Int;
using polybound::Monomial;
using polybound::Polynomial;
using polybound::Rational;

using TermMap = std::map<std::vector<int>, Rational>;

inline TermMap to_map(const Polynomial& f) {
    TermMap out;
    for (const auto& [m, c] : f.terms()) out[m.exps] = c;
    return out;
}

inline Polynomial from_map(int dim, const TermMap& terms) {
    Polynomial f(dim);
    for (const auto& [e, c] : terms) f.add_term(Monomial(e), c);
    return f;
}

// plain term-by-term product
inline TermMap naive_multiply(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out[e] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline TermMap naive_power(const TermMap& a, unsigned k, size_t dim) {
    TermMap acc{{std::vector<int>(dim, 0), Rational(1)}};
    for (unsigned i = 0; i < k; ++i) acc = naive_multiply(acc, a);
    return acc;
}

// deletes every term of total degree > max_degree in the first n coordinates
inline TermMap truncate_main_degree(const TermMap& a, size_t nmain, int max_degree) {
    TermMap out;
    for (const auto& [e, c] : a) {
        int deg = 0;
        for (size_t i = 0; i < nmain; ++i) deg += e[i];
        if (deg <= max_degree) out[e] = c;
    }
    return out;
}

// int over the axis box prod [lo_i, hi_i] of x^e : prod (hi^{e+1}-lo^{e+1})/(e+1)
inline Rational integrate_monomial_box(const std::vector<int>& e,
                                       const std::vector<Rational>& lo,
                                       const std::vector<Rational>& hi) {
    Rational out(1);
    for (size_t i = 0; i < e.size(); ++i) {
        long p = e[i] + 1;
        out *= (polybound::rat_pow(hi[i], p) - polybound::rat_pow(lo[i], p)) / p;
    }
    return out;
}

inline Rational integrate_box(const Polynomial& f, const std::vector<Rational>& lo,
                              const std::vector<Rational>& hi) {
    Rational out(0);
    for (const auto& [m, c] : f.terms()) out += c * integrate_monomial_box(m.exps, lo, hi);
    return out;
}

// int over the unit simplex {x >= 0, sum x <= 1} of x^e : prod e_i! / (|e|+d)!
inline Rational integrate_unit_simplex(const Polynomial& f) {
    Rational out(0);
    const unsigned long d = static_cast<unsigned long>(f.dim());
    for (const auto& [m, c] : f.terms()) {
        Rational v(1);
        unsigned long total = 0;
        for (int e : m.exps) {
            v *= polybound::factorial(static_cast<unsigned long>(e));
            total += static_cast<unsigned long>(e);
        }
        v /= polybound::factorial(total + d);
        out += c * v;
    }
    return out;
}

// independent reconstruction of sum_i c_i <form_i, x>^{M_i}
inline Polynomial reconstruct_linear_forms(int dim,
                                           const std::vector<polybound::LinearFormPower>& terms) {
    TermMap total;
    for (const auto& t : terms) {
        TermMap lin;
        for (size_t i = 0; i < t.form.size(); ++i) {
            if (t.form[i] == 0) continue;
            std::vector<int> e(t.form.size(), 0);
            e[i] = 1;
            lin[e] = t.form[i];
        }
        if (lin.empty()) lin[std::vector<int>(t.form.size(), 0)] = 0;
        auto powed = naive_power(lin, t.power, static_cast<size_t>(dim));
        for (const auto& [e, c] : powed) total[e] += t.coefficient * c;
    }
    for (auto it = total.begin(); it != total.end();)
        it = it->second == 0 ? total.erase(it) : std::next(it);
    return from_map(dim, total);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }
    Rational rational(int max_abs_num = 9, int max_den = 9) {
        Rational r(uniform(-max_abs_num, max_abs_num), uniform(1, max_den));
        r.canonicalize();
        return r;
    }
    Rational nonzero_rational(int max_abs_num = 9, int max_den = 9) {
        for (;;) {
            Rational r = rational(max_abs_num, max_den);
            if (r != 0) return r;
        }
    }
    Polynomial polynomial(int dim, int max_degree, int max_terms) {
        Polynomial f(dim);
        int nterms = uniform(1, max_terms);
        for (int t = 0; t < nterms; ++t) {
            Monomial m(static_cast<size_t>(dim));
            int budget = uniform(0, max_degree);
            for (int i = 0; i < dim && budget > 0; ++i) {
                m[static_cast<size_t>(i)] = uniform(0, budget);
                budget -= m[static_cast<size_t>(i)];
            }
            f.add_term(m, rational());
        }
        return f;
    }
};

} // namespace oracles
