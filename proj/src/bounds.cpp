#include "polybound/bounds.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

#include "polybound/errors.hpp"

namespace polybound {

LipschitzEstimate lipschitz(const Polynomial& f, const Rational& box_bound,
                            LipschitzMethod method) {
    if (sign(box_bound) < 0) throw MathError("lipschitz: negative box bound");
    LipschitzEstimate est;
    est.method = method;
    est.box_bound = box_bound;
    est.value = 0;

    if (method == LipschitzMethod::WholePolynomial) {
        Rational cmax(0);
        long r = 0;
        int deg = 0;
        for (const auto& [m, c] : f.terms()) {
            if (m.is_constant()) continue;
            ++r;
            Rational a = abs(c);
            if (a > cmax) cmax = a;
            deg = std::max(deg, m.total_degree());
        }
        if (r == 0) return est;  // constant polynomial: no variation
        est.value = cmax * r * deg * rat_pow(box_bound, deg - 1);
        return est;
    }

    for (const auto& [m, c] : f.terms()) {
        if (m.is_constant()) continue;
        int deg = m.total_degree();
        est.value += abs(c) * deg * rat_pow(box_bound, deg - 1);
    }
    return est;
}

Decimal nth_root_directed(const Rational& v, unsigned long n, int digits, RoundDirection dir) {
    if (n == 0) throw MathError("nth_root_directed: zero root order");
    if (sign(v) < 0) {
        if (n % 2 == 0) throw MathError("nth_root_directed: negative radicand with even order");
        Decimal mag = nth_root_directed(Rational(-v), n, digits,
                                        dir == RoundDirection::Down ? RoundDirection::Up
                                                                    : RoundDirection::Down);
        mag.scaled = -mag.scaled;
        return mag;
    }
    Int scale = int_pow(Int(10), static_cast<unsigned long>(digits));
    Int scaled_num = v.get_num() * int_pow(scale, n);
    Int floor_scaled = floor_div(scaled_num, v.get_den());
    Int root;
    mpz_root(root.get_mpz_t(), floor_scaled.get_mpz_t(), n);
    if (dir == RoundDirection::Up) {
        // bump unless the floor root is exact for v itself
        if (int_pow(root, n) * v.get_den() != scaled_num) root += 1;
    }
    Decimal out{root, digits};

    // exact re-powering check of the printed decimal
    Rational repow = rat_pow(out.value(), static_cast<long>(n));
    if (dir == RoundDirection::Down) {
        Rational next = rat_pow(Rational(root + 1, scale), static_cast<long>(n));
        if (!(repow <= v && next > v))
            throw MathError("nth_root_directed: lower-directed root failed verification");
    } else {
        if (!(repow >= v))
            throw MathError("nth_root_directed: upper-directed root failed verification");
        if (root > 0) {
            Rational prev = rat_pow(Rational(root - 1, scale), static_cast<long>(n));
            if (!(prev < v))
                throw MathError("nth_root_directed: upper-directed root not tight");
        }
    }
    return out;
}

namespace {

struct MpfrValue {
    mpfr_t x;
    MpfrValue() { mpfr_init2(x, 256); }
    ~MpfrValue() { mpfr_clear(x); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
};

Rational mpfr_to_rational(const mpfr_t x) {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

} // namespace

KChoice choose_k(const KChooserParams& params, int dim, const Rational& width,
                 const Rational& lipschitz_constant) {
    if (sign(params.epsilon) <= 0) throw MathError("choose_k: epsilon must be positive");
    if (sign(params.upper) <= 0 || sign(width) <= 0 || sign(lipschitz_constant) <= 0)
        throw MathError("choose_k: U, M and the Lipschitz constant must be positive");
    if (sign(params.delta) <= 0) throw MathError("choose_k: delta must be positive");

    KChoice choice;
    const Rational ml = width * lipschitz_constant;

    // component 1: d (U / (M L) - 1), exact
    choice.components[0] = Rational(dim) * (params.upper / ml - 1);

    // the remaining components round every intermediate up so the chosen k
    // stays sufficient
    MpfrValue t, u, w;

    // component 2: d / ((eps+1)^{1/3} - 1); denominator rounded down
    Rational eps1 = params.epsilon + 1;
    mpfr_set_q(t.x, eps1.get_mpq_t(), MPFR_RNDD);
    mpfr_cbrt(t.x, t.x, MPFR_RNDD);
    mpfr_sub_ui(t.x, t.x, 1, MPFR_RNDD);
    if (mpfr_sgn(t.x) <= 0) throw MathError("choose_k: cube-root bound degenerated");
    mpfr_ui_div(t.x, 1, t.x, MPFR_RNDU);
    mpfr_mul_ui(t.x, t.x, static_cast<unsigned long>(dim), MPFR_RNDU);
    choice.components[1] = mpfr_to_rational(t.x);

    // component 3: 3 d log(M L / U) (1 + 1/eps), clamped at zero
    if (ml <= params.upper) {
        choice.components[2] = 0;
        choice.log_clamped = true;
    } else {
        Rational z = ml / params.upper;
        mpfr_set_q(t.x, z.get_mpq_t(), MPFR_RNDU);
        mpfr_log(t.x, t.x, MPFR_RNDU);
        Rational one_over = 1 + 1 / params.epsilon;
        mpfr_set_q(u.x, one_over.get_mpq_t(), MPFR_RNDU);
        mpfr_mul(t.x, t.x, u.x, MPFR_RNDU);
        mpfr_mul_ui(t.x, t.x, 3 * static_cast<unsigned long>(dim), MPFR_RNDU);
        choice.components[2] = mpfr_to_rational(t.x);
    }

    // component 4: d ((3 c_delta)^{1+delta} (1 + 1/eps)^{1+delta} - 1)
    Rational base1 = 3 * params.c_delta;
    Rational expo = params.delta + 1;
    Rational base2 = 1 + 1 / params.epsilon;
    mpfr_set_q(t.x, base1.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(w.x, expo.get_mpq_t(), MPFR_RNDU);
    mpfr_pow(t.x, t.x, w.x, MPFR_RNDU);
    mpfr_set_q(u.x, base2.get_mpq_t(), MPFR_RNDU);
    mpfr_pow(u.x, u.x, w.x, MPFR_RNDU);
    mpfr_mul(t.x, t.x, u.x, MPFR_RNDU);
    mpfr_sub_ui(t.x, t.x, 1, MPFR_RNDU);
    mpfr_mul_ui(t.x, t.x, static_cast<unsigned long>(dim), MPFR_RNDU);
    choice.components[3] = mpfr_to_rational(t.x);

    Rational best = choice.components[0];
    for (const Rational& c : choice.components) best = std::max(best, c);
    Int k = ceil_div(best.get_num(), best.get_den());
    if (k < 1) k = 1;
    if (!k.fits_slong_p()) throw MathError("choose_k: selected k overflows");
    choice.k = k.get_si();
    return choice;
}

PipelineContext prepare_pipeline(const HRep& p, const Polynomial& f, PipelineOptions options) {
    if (f.dim() != p.dim) throw MathError("pipeline: polynomial/polytope dimension mismatch");
    if (options.backend == Backend::Handelman && options.shift == ShiftMode::None)
        throw MathError("pipeline: the handelman backend requires shift mode auto");

    PipelineContext ctx;
    ctx.options = options;
    ctx.polytope = &p;
    ctx.vertices = enumerate_vertices(p);
    ctx.cones = tangent_cones(p, ctx.vertices);
    ctx.vol = volume(ctx.cones, p.dim);
    ctx.widths = coordinate_width(p);

    if (options.shift == ShiftMode::Auto) {
        int t0 = options.t_start.value_or(f.is_zero() ? 0 : f.degree());
        CertificateSearch search =
            find_certificate(f, p, t0, options.objective, options.sparsity_weight);
        ctx.certificate = std::move(search.certificate);
        ctx.shift = ctx.certificate->shift;
    } else {
        ctx.shift = 0;
    }
    ctx.shifted = f;
    if (ctx.shift != 0)
        ctx.shifted.add_term(Monomial(static_cast<size_t>(p.dim)), ctx.shift);

    if (options.lipschitz_override) {
        if (sign(*options.lipschitz_override) < 0)
            throw MathError("pipeline: negative Lipschitz override");
        ctx.lipschitz_constant = *options.lipschitz_override;
    } else {
        ctx.lipschitz_constant =
            lipschitz(ctx.shifted, ctx.widths.abs_bound, options.lipschitz_method).value;
    }
    return ctx;
}

KChoice pipeline_k_choice(const PipelineContext& ctx) {
    if (!ctx.options.epsilon) throw MathError("pipeline: k choice requested without epsilon");
    if (!ctx.options.upper)
        throw MathError("pipeline: epsilon mode needs an initial upper bound");
    KChooserParams params;
    params.epsilon = *ctx.options.epsilon;
    params.delta = ctx.options.delta;
    params.c_delta = ctx.options.c_delta;
    params.upper = *ctx.options.upper;
    return choose_k(params, ctx.shifted.dim(), ctx.widths.width, ctx.lipschitz_constant);
}

BoundsReport bounds_for_k(const PipelineContext& ctx, long k) {
    if (k < 1) throw MathError("pipeline: k must be >= 1");
    const HRep& p = *ctx.polytope;
    const int d = p.dim;

    BoundsReport rep;
    rep.k = k;
    rep.dim = d;
    rep.digits = ctx.options.digits;
    rep.backend = ctx.options.backend;
    rep.vol = ctx.vol;
    rep.width = ctx.widths.width;
    rep.lipschitz_constant = ctx.lipschitz_constant;
    rep.shift = ctx.shift;
    rep.certificate_degree = ctx.certificate ? ctx.certificate->degree : 0;

    if (ctx.options.backend == Backend::Handelman) {
        auto powered = certificate_pow(*ctx.certificate, static_cast<unsigned>(k));
        rep.moment = integrate_handelman_monomials(ctx.cones, p, powered);
    } else {
        rep.moment = integrate_polynomial(p, poly_pow(ctx.shifted, static_cast<unsigned>(k)));
    }
    rep.lk_pow_k = rep.moment / ctx.vol;
    rep.lower = nth_root_directed(rep.lk_pow_k, static_cast<unsigned long>(k), rep.digits,
                                  RoundDirection::Down);

    rep.gamma_k = Rational(d, static_cast<unsigned long>(d) + static_cast<unsigned long>(k));
    rep.gamma_k.canonicalize();

    if (ctx.lipschitz_constant != 0 && ctx.widths.width != 0) {
        Rational ml = ctx.widths.width * ctx.lipschitz_constant;
        // U_k^{d+k} = (moment/vol) (M L)^d ((d+k)/d)^d ((d+k)/k)^k
        Rational dk(static_cast<unsigned long>(d) + static_cast<unsigned long>(k));
        rep.uk_pow_dk = rep.lk_pow_k * rat_pow(ml, d) * rat_pow(dk / d, d) *
                        rat_pow(dk / k, k);
        rep.upper = nth_root_directed(rep.uk_pow_dk,
                                      static_cast<unsigned long>(d) + static_cast<unsigned long>(k),
                                      rep.digits, RoundDirection::Up);
        rep.has_upper = true;

        // validity threshold: the caller's U when present, else the vertex
        // barycenter value of the (shifted) polynomial
        Rational estimate;
        if (ctx.options.upper) {
            estimate = Rational(d) * (*ctx.options.upper / ml - 1);
        } else {
            std::vector<Rational> center(static_cast<size_t>(d), Rational(0));
            for (const auto& v : ctx.vertices)
                for (size_t j = 0; j < center.size(); ++j) center[j] += v.point[j];
            for (auto& c : center) c /= static_cast<unsigned long>(ctx.vertices.size());
            estimate = Rational(d) * poly_eval(ctx.shifted, center) / ml;
        }
        rep.k0 = std::max(Rational(1), estimate);
        rep.k0_verified = Rational(k) >= rep.k0;
    }
    return rep;
}

BoundsReport run_pipeline(const HRep& p, const Polynomial& f, const PipelineOptions& options) {
    PipelineContext ctx = prepare_pipeline(p, f, options);
    long k;
    if (options.k) {
        k = *options.k;
    } else if (options.epsilon) {
        k = pipeline_k_choice(ctx).k;
    } else {
        throw MathError("pipeline: either k or epsilon is required");
    }
    return bounds_for_k(ctx, k);
}

std::pair<Rational, Decimal> lower_bound(const HRep& p, const Polynomial& f, long k,
                                         int digits) {
    if (k < 1) throw MathError("lower_bound: k must be >= 1");
    Rational moment = integrate_polynomial(p, poly_pow(f, static_cast<unsigned>(k)));
    Rational lk = moment / volume(p);
    return {lk, nth_root_directed(lk, static_cast<unsigned long>(k), digits,
                                  RoundDirection::Down)};
}

std::pair<Rational, Decimal> upper_bound(const HRep& p, const Polynomial& f, long k,
                                         const Rational& lipschitz_constant,
                                         const Rational& width, int digits) {
    if (k < 1) throw MathError("upper_bound: k must be >= 1");
    if (sign(lipschitz_constant) <= 0 || sign(width) <= 0)
        throw MathError("upper_bound: M and the Lipschitz constant must be positive");
    const int d = p.dim;
    Rational moment = integrate_polynomial(p, poly_pow(f, static_cast<unsigned>(k)));
    Rational lk = moment / volume(p);
    Rational dk(static_cast<unsigned long>(d) + static_cast<unsigned long>(k));
    Rational u = lk * rat_pow(width * lipschitz_constant, d) * rat_pow(dk / d, d) *
                 rat_pow(dk / k, k);
    return {u, nth_root_directed(u, static_cast<unsigned long>(d + k), digits,
                                 RoundDirection::Up)};
}

std::string format_report_rows(std::span<const BoundsReport> reports) {
    std::ostringstream os;
    os << "  k    L_k >=            U_k <=\n";
    for (const auto& r : reports) {
        std::string lk = r.lower.str();
        std::string uk = r.has_upper ? r.upper.str() : "-";
        os << "  " << r.k;
        for (size_t i = std::to_string(r.k).size(); i < 5; ++i) os << ' ';
        os << lk;
        for (size_t i = lk.size(); i < 18; ++i) os << ' ';
        os << uk << "\n";
    }
    return os.str();
}

std::string format_report_keyvalues(const BoundsReport& r) {
    std::ostringstream os;
    os << "k=" << r.k << "\n";
    os << "Lk_pow_k=" << r.lk_pow_k << "\n";
    os << "Uk_pow_dk=" << (r.has_upper ? to_string(r.uk_pow_dk) : "-") << "\n";
    os << "L_k=" << r.lower.str() << "\n";
    os << "U_k=" << (r.has_upper ? r.upper.str() : "-") << "\n";
    os << "M=" << r.width << "\n";
    os << "lipschitz=" << r.lipschitz_constant << "\n";
    os << "gamma_k=" << r.gamma_k << "\n";
    os << "s=" << r.shift << "\n";
    os << "t=" << r.certificate_degree << "\n";
    os << "backend=" << (r.backend == Backend::Handelman ? "handelman" : "linear-forms") << "\n";
    if (r.has_upper) {
        os << "k0=" << r.k0 << "\n";
        os << "k0_verified=" << (r.k0_verified ? "yes" : "unverified") << "\n";
    }
    if (r.shift != 0) {
        // bounds on the original maximum: subtracting the constant shift
        // preserves the directed rounding guarantees
        os << "L_k_minus_s=" << to_string(r.lower.value() - r.shift) << "\n";
        if (r.has_upper) os << "U_k_minus_s=" << to_string(r.upper.value() - r.shift) << "\n";
    }
    return os.str();
}

SimplexShiftQuality simplex_shift_quality(const HRep& p, const Polynomial& f,
                                          const Rational& epsilon) {
    if (p.num_rows() != static_cast<size_t>(p.dim) + 1)
        throw MathError("simplex_shift_quality: polytope is not a simplex");
    if (f.is_zero() || f.degree() < 1)
        throw MathError("simplex_shift_quality: constant polynomial");
    const int D = f.degree();
    const int t = D * (D - 1) + 1;

    SimplexShiftQuality q;
    q.degree = D;
    q.certificate_degree = t;
    q.constant_c = int_pow(Int(D), static_cast<unsigned long>(D)) *
                   binomial(2 * static_cast<unsigned long>(D) - 1, static_cast<unsigned long>(D));
    Int half = binomial(static_cast<unsigned long>(D), 2);
    q.factor = Rational(half, Int(t) - half);
    q.factor.canonicalize();
    q.epsilon_prime = epsilon / (2 * q.constant_c);

    CertificateSearch search = find_certificate(f, p, t, HandelmanObjective::ShiftOnly);
    q.shift = search.certificate.shift;
    return q;
}

} // namespace polybound
