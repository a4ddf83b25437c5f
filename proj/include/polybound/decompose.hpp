#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polybound/lp.hpp"
#include "polybound/polynomial.hpp"
#include "polybound/polytope.hpp"

namespace polybound {

/// coefficient * <form, x>^power. Constants are carried with form = 0 and
/// power = 0 and integrate to coefficient * vol(P).
struct LinearFormPower {
    Rational coefficient;
    std::vector<Rational> form;
    unsigned power = 0;
};

/// Expands x^m into a rational combination of powers of linear forms
/// (p_1 x_1 + ... + p_d x_d)^{|m|} over 0 <= p <= m, p != 0.
std::vector<LinearFormPower> monomial_to_linear_forms(const Monomial& m);

/// Per-monomial expansion of f scaled by its coefficients, with like terms
/// merged on the normalized form (integer, gcd 1, first nonzero positive)
/// and power. Deterministic order: by power, then form lexicographically.
std::vector<LinearFormPower> poly_to_linear_forms(const Polynomial& f);

/// <form, x>^power expanded in the monomial basis (the Eq-check helper and
/// the constant-form convention live here).
Polynomial linear_form_power_to_poly(const std::vector<Rational>& form, unsigned power,
                                     const Rational& coefficient);

/// Facet polynomial g_i(x) = b_i - <A_i, x>, rows taken verbatim.
Polynomial facet_polynomial(const HRep& p, size_t row);

struct HandelmanMonomial {
    Rational coefficient;     // >= 0
    std::vector<int> alpha;   // exponents over the facet polynomials
};

struct HandelmanCertificate {
    int num_facets = 0;
    int degree = 0;     // t = max |alpha| allowed in the search
    Rational shift;     // s with f + s = sum of the monomials
    std::vector<HandelmanMonomial> monomials;
};

enum class HandelmanObjective { SparseAndShift, ShiftOnly };

/// The exact LP whose solution gives c_alpha >= 0 and free s with
/// f + s = sum c_alpha g^alpha as polynomials. Variables are the c_alpha in
/// graded-lex alpha order followed by s; one constraint row per monomial of
/// degree <= t. Requires t >= deg(f).
LPProblem handelman_lp(const Polynomial& f, const HRep& p, int t,
                       HandelmanObjective objective,
                       const Rational& sparsity_weight = Rational(1));

/// Sum of c_alpha g^alpha in the monomial basis.
Polynomial expand_handelman(const HRep& p, const std::vector<HandelmanMonomial>& monomials);

/// True iff the certificate identity sum c_alpha g^alpha == f + s holds
/// exactly, term by term.
bool verify_certificate(const HandelmanCertificate& cert, const HRep& p, const Polynomial& f);

struct CertificateSearch {
    HandelmanCertificate certificate;
    Rational lp_objective;
};

/// Solves the LP at degree t, retrying t+1, ..., up to the worst-case degree
/// D(D-1)+1. Every returned certificate has been verified.
CertificateSearch find_certificate(const Polynomial& f, const HRep& p, int t,
                                   HandelmanObjective objective,
                                   const Rational& sparsity_weight = Rational(1));

/// Multinomial expansion of (sum of the certificate monomials)^k, collecting
/// like exponent vectors; coefficients stay nonnegative.
std::vector<HandelmanMonomial> certificate_pow(const HandelmanCertificate& cert, unsigned k);

/// One monomial per line "c_alpha : alpha_1 ... alpha_n" after header lines
/// "t <t>" and "s <s>".
std::string serialize_certificate(const HandelmanCertificate& cert);
HandelmanCertificate parse_certificate(std::istream& in, int num_facets);

} // namespace polybound
