#include "polybound/integrate.hpp"

#include <algorithm>
#include <map>

#include "polybound/errors.hpp"
#include "polybound/parallel.hpp"

namespace polybound {

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational r(0);
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Int>& b) {
    Rational r(0);
    for (size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0) r += a[i] * b[i];
    return r;
}

Rational dot(const std::vector<Int>& a, const std::vector<Rational>& b) {
    Rational r(0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) r += b[i] * a[i];
    return r;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int r(0);
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

bool orthogonal_to_some_ray(const std::vector<SimplicialCone>& cones,
                            const std::vector<Rational>& form) {
    for (const auto& cone : cones)
        for (const auto& ray : cone.rays)
            if (dot(form, ray) == 0) return true;
    return false;
}

} // namespace

std::vector<Int> regular_direction(const std::vector<SimplicialCone>& cones, int dim) {
    for (Int lambda(1);; ++lambda) {
        std::vector<Int> ell(static_cast<size_t>(dim));
        ell[0] = 1;
        for (int j = 1; j < dim; ++j) ell[static_cast<size_t>(j)] = ell[static_cast<size_t>(j - 1)] * lambda;
        bool ok = true;
        for (const auto& cone : cones) {
            for (const auto& ray : cone.rays)
                if (dot(ell, ray) == 0) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) return ell;
        // a fixed finite ray set rules out only finitely many lambda
    }
}

Rational AffineProductIntegralTable::integral(const std::vector<int>& powers) const {
    Rational v = normalized_value(powers);
    for (int e : powers) v *= factorial(static_cast<unsigned long>(e));
    return v;
}

AffineProductIntegralTable integrate_affine_product(const std::vector<SimplicialCone>& cones,
                                                    int dim,
                                                    const std::vector<AffineFactor>& factors,
                                                    int max_total_degree) {
    const size_t n = factors.size();
    const size_t d = static_cast<size_t>(dim);
    int M = max_total_degree;
    if (M < 0) {
        M = 0;
        for (const auto& f : factors) M += static_cast<int>(f.power);
    }
    for (const auto& f : factors)
        if (f.linear.size() != d)
            throw MathError("integrate_affine_product: factor dimension mismatch");

    auto idx = MonomialIndex::get(static_cast<int>(n), M);
    std::vector<Int> reg = regular_direction(cones, dim);

    // per-cone series evaluation; cones are independent
    auto worker = [&](size_t begin, size_t end) {
        std::vector<Rational> acc(idx->size(), Rational(0));
        for (size_t ci = begin; ci < end; ++ci) {
            const SimplicialCone& cone = cones[ci];

            std::vector<TruncatedSeries> parts;
            // exponential series exp((<l_i, apex> + r_i) t_i) truncated at M
            for (size_t i = 0; i < n; ++i) {
                Rational base = dot(factors[i].linear, cone.apex) + factors[i].offset;
                TruncatedSeries s(idx, 0, 0);
                Rational term(1);
                std::vector<int> e(n, 0);
                for (int k = 0; k <= M; ++k) {
                    e[i] = k;
                    s.set(e, 0, term);
                    term *= base;
                    term /= (k + 1);
                }
                parts.push_back(std::move(s));
            }
            // geometric series of 1 / (-<b_i, t> - beta_i t_aux) per ray:
            // sum_k (-1)^{k+1} <b_i, t>^k beta_i^{-1-k} t_aux^{-1-k}
            for (size_t i = 0; i < d; ++i) {
                Int beta = dot(reg, cone.rays[i]);
                std::vector<std::vector<Rational>> b_pows(n);
                for (size_t j = 0; j < n; ++j) {
                    Rational bj = dot(factors[j].linear, cone.rays[i]);
                    b_pows[j].push_back(Rational(1));
                    for (int k = 1; k <= M; ++k) b_pows[j].push_back(b_pows[j].back() * bj);
                }
                TruncatedSeries s(idx, -1 - M, -1);
                Rational beta_inv_pow(1);
                beta_inv_pow /= beta;
                for (int k = 0; k <= M; ++k) {
                    auto [lo, hi] = idx->degree_range(k);
                    Int kfac = factorial(static_cast<unsigned long>(k));
                    for (size_t r = lo; r < hi; ++r) {
                        const auto& q = idx->exponents(r);
                        Rational c(kfac);
                        bool zero = false;
                        for (size_t j = 0; j < n && !zero; ++j) {
                            if (q[j] == 0) continue;
                            if (b_pows[j][static_cast<size_t>(q[j])] == 0) zero = true;
                            else {
                                c *= b_pows[j][static_cast<size_t>(q[j])];
                                c /= factorial(static_cast<unsigned long>(q[j]));
                            }
                        }
                        if (zero) continue;
                        c *= beta_inv_pow;
                        if (k % 2 == 0) c = -c;  // (-1)^{k+1}
                        s.add(r, -1 - k, c);
                    }
                    beta_inv_pow /= beta;
                }
                parts.push_back(std::move(s));
            }

            TruncatedSeries product = truncated_product(parts, M);

            // multiply by the truncated exponential in the auxiliary variable
            // and keep the auxiliary-degree-zero coefficients
            Rational apex_reg = dot(reg, cone.apex);
            int aux_span = -product.aux_lo();
            std::vector<Rational> reg_pow_over_fact(static_cast<size_t>(aux_span) + 1);
            reg_pow_over_fact[0] = 1;
            for (int k = 1; k <= aux_span; ++k)
                reg_pow_over_fact[static_cast<size_t>(k)] =
                    reg_pow_over_fact[static_cast<size_t>(k - 1)] * apex_reg / k;

            for (size_t r = 0; r < idx->size(); ++r)
                for (int e = product.aux_lo(); e <= std::min(product.aux_hi(), -1); ++e) {
                    const Rational& c = product.at(r, e);
                    if (c == 0) continue;
                    acc[r] += cone.parallelepiped_volume * c *
                              reg_pow_over_fact[static_cast<size_t>(-e)];
                }
        }
        return acc;
    };

    auto partials = parallel_ranges<std::vector<Rational>>(cones.size(), worker, 1);
    AffineProductIntegralTable table;
    table.idx_ = idx;
    table.values_.assign(idx->size(), Rational(0));
    for (const auto& part : partials)
        for (size_t r = 0; r < part.size(); ++r) table.values_[r] += part[r];
    return table;
}

AffineProductIntegralTable integrate_affine_product(const HRep& p,
                                                    const std::vector<AffineFactor>& factors,
                                                    int max_total_degree) {
    return integrate_affine_product(tangent_cones(p), p.dim, factors, max_total_degree);
}

Rational integrate_linear_form_power(const std::vector<SimplicialCone>& cones, int dim,
                                     const std::vector<Rational>& form, unsigned power) {
    bool zero_form = std::all_of(form.begin(), form.end(),
                                 [](const Rational& c) { return c == 0; });
    if (zero_form) return power == 0 ? volume(cones, dim) : Rational(0);
    if (power == 0) return volume(cones, dim);

    if (orthogonal_to_some_ray(cones, form)) {
        // pole in the cone formula: reroute through the series method
        AffineFactor f{form, Rational(0), power};
        auto table = integrate_affine_product(cones, dim, {f}, static_cast<int>(power));
        return table.integral({static_cast<int>(power)});
    }

    const unsigned long d = static_cast<unsigned long>(dim);
    Rational sum(0);
    for (const auto& cone : cones) {
        Rational apex_dot = dot(form, cone.apex);
        Rational numer = rat_pow(apex_dot, static_cast<long>(power + d));
        Rational denom(1);
        for (const auto& ray : cone.rays) denom *= -dot(form, ray);
        sum += cone.parallelepiped_volume * numer / denom;
    }
    Rational scale(factorial(power), factorial(power + d));
    scale.canonicalize();
    return scale * sum;
}

Rational integrate_linear_form_power(const HRep& p, const std::vector<Rational>& form,
                                     unsigned power) {
    return integrate_linear_form_power(tangent_cones(p), p.dim, form, power);
}

Rational volume(const std::vector<SimplicialCone>& cones, int dim) {
    std::vector<Int> reg = regular_direction(cones, dim);
    std::vector<Rational> form(reg.begin(), reg.end());
    Rational sum(0);
    for (const auto& cone : cones) {
        Rational numer = rat_pow(dot(form, cone.apex), dim);
        Rational denom(1);
        for (const auto& ray : cone.rays) denom *= -dot(form, ray);
        sum += cone.parallelepiped_volume * numer / denom;
    }
    return sum / factorial(static_cast<unsigned long>(dim));
}

Rational volume(const HRep& p) { return volume(tangent_cones(p), p.dim); }

Rational integrate_polynomial(const HRep& p, const Polynomial& f) {
    if (f.dim() != p.dim) throw MathError("integrate: polynomial/polytope dimension mismatch");
    if (f.is_zero()) return Rational(0);
    std::vector<SimplicialCone> cones = tangent_cones(p);
    std::vector<LinearFormPower> forms = poly_to_linear_forms(f);

    Rational total(0);
    std::vector<const LinearFormPower*> regular;
    // forms sharing a direction that touches a ray are served by one table
    std::map<std::vector<Rational>, std::vector<const LinearFormPower*>> degenerate;
    for (const auto& term : forms) {
        bool zero_form = term.power == 0;
        if (zero_form) {
            total += term.coefficient * volume(cones, p.dim);
        } else if (orthogonal_to_some_ray(cones, term.form)) {
            degenerate[term.form].push_back(&term);
        } else {
            regular.push_back(&term);
        }
    }

    auto worker = [&](size_t begin, size_t end) {
        Rational acc(0);
        for (size_t i = begin; i < end; ++i) {
            const LinearFormPower& term = *regular[i];
            acc += term.coefficient *
                   integrate_linear_form_power(cones, p.dim, term.form, term.power);
        }
        return acc;
    };
    for (const Rational& part : parallel_ranges<Rational>(regular.size(), worker, 64))
        total += part;

    for (const auto& [direction, terms] : degenerate) {
        unsigned max_power = 0;
        for (const auto* t : terms) max_power = std::max(max_power, t->power);
        AffineFactor factor{direction, Rational(0), max_power};
        auto table = integrate_affine_product(cones, p.dim, {factor},
                                              static_cast<int>(max_power));
        for (const auto* t : terms)
            total += t->coefficient * table.integral({static_cast<int>(t->power)});
    }
    return total;
}

Rational integrate_handelman_monomials(const std::vector<SimplicialCone>& cones,
                                       const HRep& p,
                                       const std::vector<HandelmanMonomial>& monomials) {
    if (monomials.empty()) return Rational(0);
    int M = 0;
    for (const auto& hm : monomials) {
        if (hm.alpha.size() != p.num_rows())
            throw MathError("handelman integration: exponent count != facet count");
        int deg = 0;
        for (int a : hm.alpha) deg += a;
        M = std::max(M, deg);
    }
    std::vector<AffineFactor> factors;
    for (size_t i = 0; i < p.num_rows(); ++i) {
        AffineFactor f;
        f.linear.reserve(static_cast<size_t>(p.dim));
        for (const Rational& c : p.A[i]) f.linear.push_back(-c);
        f.offset = p.b[i];
        factors.push_back(std::move(f));
    }
    AffineProductIntegralTable table = integrate_affine_product(cones, p.dim, factors, M);
    Rational total(0);
    for (const auto& hm : monomials) total += hm.coefficient * table.integral(hm.alpha);
    return total;
}

Rational integrate_handelman_monomials(const HRep& p,
                                       const std::vector<HandelmanMonomial>& monomials) {
    return integrate_handelman_monomials(tangent_cones(p), p, monomials);
}

Rational integrate_polynomial(const HRep& p, const Polynomial& f,
                              const std::vector<HandelmanMonomial>& certified_monomials) {
    if (!(expand_handelman(p, certified_monomials) == f))
        throw MathError("handelman integration: unverified certificate rejected");
    return integrate_handelman_monomials(p, certified_monomials);
}

} // namespace polybound
