#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polybound/decompose.hpp"
#include "polybound/integrate.hpp"
#include "polybound/polynomial.hpp"
#include "polybound/polytope.hpp"

namespace polybound {

enum class LipschitzMethod { WholePolynomial, PerMonomial };

/// Coefficient-based Lipschitz bound |f(x)-f(y)| <= value * |x-y|_inf on the
/// box |x_i| <= box_bound. Constant terms do not move the bound and are
/// excluded from the coefficient maximum and the term count.
struct LipschitzEstimate {
    Rational value;
    LipschitzMethod method = LipschitzMethod::PerMonomial;
    Rational box_bound;
};

LipschitzEstimate lipschitz(const Polynomial& f, const Rational& box_bound,
                            LipschitzMethod method);

enum class RoundDirection { Down, Up };

/// Decimal d with d^n <= v (Down) or d^n >= v (Up), exact to `digits`
/// fractional digits; the result is re-powered exactly as a self-check.
/// Negative v requires odd n.
Decimal nth_root_directed(const Rational& v, unsigned long n, int digits, RoundDirection dir);

struct KChooserParams {
    Rational epsilon;
    Rational delta = Rational(1, 10);
    Rational c_delta = Rational(81, 20);
    Rational upper;  // initial upper bound U for the maximum
};

struct KChoice {
    long k = 1;
    // the four bracketed alternatives, each rounded up; the log component is
    // clamped to zero when width*lipschitz <= upper
    std::array<Rational, 4> components;
    bool log_clamped = false;
};

/// Smallest integer k satisfying every sufficient condition for
/// U_k - L_k <= epsilon * max, evaluated in directed-rounded arithmetic.
KChoice choose_k(const KChooserParams& params, int dim, const Rational& width,
                 const Rational& lipschitz_constant);

enum class Backend { LinearForms, Handelman };
enum class ShiftMode { Auto, None };

struct BoundsReport {
    long k = 0;
    int dim = 0;
    int digits = 12;
    Backend backend = Backend::LinearForms;

    Rational moment;     // int_P (f+s)^k dx
    Rational vol;
    Rational lk_pow_k;   // moment / vol, exact
    Decimal lower;       // L_k, rounded down

    bool has_upper = false;
    Rational uk_pow_dk;  // exact (d+k)-th power of U_k
    Decimal upper;       // U_k, rounded up
    Rational gamma_k;
    Rational k0;             // reported validity threshold max{1, ...}
    bool k0_verified = false;

    Rational width;               // M
    Rational lipschitz_constant;  // L
    Rational shift;               // s (0 when no shift)
    int certificate_degree = 0;   // t (0 when no certificate)
};

struct PipelineOptions {
    std::optional<long> k;
    std::optional<Rational> epsilon;
    std::optional<Rational> upper;
    Rational delta = Rational(1, 10);
    Rational c_delta = Rational(81, 20);
    Backend backend = Backend::LinearForms;
    ShiftMode shift = ShiftMode::None;
    std::optional<Rational> lipschitz_override;
    LipschitzMethod lipschitz_method = LipschitzMethod::PerMonomial;
    std::optional<int> t_start;
    HandelmanObjective objective = HandelmanObjective::SparseAndShift;
    Rational sparsity_weight = Rational(1);
    int digits = 12;
};

/// Everything that does not depend on k: geometry, widths, the Lipschitz
/// constant, and (in auto-shift mode) the certificate for f + s.
struct PipelineContext {
    Polynomial shifted;  // f + s
    Rational shift;
    std::optional<HandelmanCertificate> certificate;
    std::vector<Vertex> vertices;
    std::vector<SimplicialCone> cones;
    Rational vol;
    CoordinateWidth widths;
    Rational lipschitz_constant;
    PipelineOptions options;
    const HRep* polytope = nullptr;
};

PipelineContext prepare_pipeline(const HRep& p, const Polynomial& f, PipelineOptions options);
/// The k to run at in epsilon mode (requires options.upper).
KChoice pipeline_k_choice(const PipelineContext& ctx);
BoundsReport bounds_for_k(const PipelineContext& ctx, long k);
BoundsReport run_pipeline(const HRep& p, const Polynomial& f, const PipelineOptions& options);

/// Exact lower bound data: ((int_P f^k)/vol, directed-down decimal root).
std::pair<Rational, Decimal> lower_bound(const HRep& p, const Polynomial& f, long k,
                                         int digits = 12);
/// Exact upper bound data: (U_k^{d+k}, directed-up decimal root).
std::pair<Rational, Decimal> upper_bound(const HRep& p, const Polynomial& f, long k,
                                         const Rational& lipschitz_constant,
                                         const Rational& width, int digits = 12);

std::string format_report_rows(std::span<const BoundsReport> reports);
std::string format_report_keyvalues(const BoundsReport& report);

/// Shift quality constants for the simplex case: with the shift-only LP at
/// t = D(D-1)+1, the found s obeys s + f_min <= c * factor * (f_max - f_min).
struct SimplexShiftQuality {
    int degree = 0;             // D
    int certificate_degree = 0; // t
    Int constant_c;            // D^D * binom(2D-1, D)
    Rational factor;           // binom(D,2) / (t - binom(D,2))
    Rational shift;            // s from the shift-only LP
    Rational epsilon_prime;    // epsilon / (2c)
};

SimplexShiftQuality simplex_shift_quality(const HRep& p, const Polynomial& f,
                                          const Rational& epsilon);

} // namespace polybound
