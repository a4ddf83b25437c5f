#pragma once

#include <vector>

#include "polybound/decompose.hpp"
#include "polybound/polynomial.hpp"
#include "polybound/polytope.hpp"
#include "polybound/series.hpp"

namespace polybound {

/// One factor <linear, x> + offset of a product integrand, with the power it
/// is raised to in the originating term.
struct AffineFactor {
    std::vector<Rational> linear;
    Rational offset;
    unsigned power = 0;
};

/// Dense table of int_P prod_i (<l_i, x> + r_i)^{p_i} / p_i! dx over all
/// p with |p| <= M. Built once per (polytope, factor set, M) and read for
/// every product of the same factors.
class AffineProductIntegralTable {
public:
    const MonomialIndex& index() const { return *idx_; }
    int max_total_degree() const { return idx_->max_degree(); }

    /// int_P prod (<l_i,x>+r_i)^{p_i} / p_i! dx
    const Rational& normalized_value(const std::vector<int>& powers) const {
        return values_[idx_->rank(powers)];
    }
    /// int_P prod (<l_i,x>+r_i)^{p_i} dx
    Rational integral(const std::vector<int>& powers) const;

private:
    friend AffineProductIntegralTable integrate_affine_product(
        const std::vector<SimplicialCone>& cones, int dim,
        const std::vector<AffineFactor>& factors, int max_total_degree);
    std::shared_ptr<const MonomialIndex> idx_;
    std::vector<Rational> values_;
};

/// Truncated-series evaluation of the vertex-cone decomposition; always
/// defined (the auxiliary direction is chosen to miss every ray).
/// max_total_degree < 0 means "sum of the factor powers".
AffineProductIntegralTable integrate_affine_product(const HRep& p,
                                                    const std::vector<AffineFactor>& factors,
                                                    int max_total_degree = -1);
AffineProductIntegralTable integrate_affine_product(const std::vector<SimplicialCone>& cones,
                                                    int dim,
                                                    const std::vector<AffineFactor>& factors,
                                                    int max_total_degree);

/// int_P <form, x>^power dx. Uses the closed cone formula when the form is
/// nonorthogonal to every ray and reroutes through the series method
/// otherwise. A zero form follows the constant convention (power 0).
Rational integrate_linear_form_power(const HRep& p, const std::vector<Rational>& form,
                                     unsigned power);
Rational integrate_linear_form_power(const std::vector<SimplicialCone>& cones, int dim,
                                     const std::vector<Rational>& form, unsigned power);

Rational volume(const HRep& p);
Rational volume(const std::vector<SimplicialCone>& cones, int dim);

/// int_P f dx by decomposition into powers of linear forms.
Rational integrate_polynomial(const HRep& p, const Polynomial& f);

/// int_P f dx where f = sum c_alpha g^alpha is certified exactly (shift
/// already folded into f); rejects a certificate that does not expand to f.
Rational integrate_polynomial(const HRep& p, const Polynomial& f,
                              const std::vector<HandelmanMonomial>& certified_monomials);

/// Table-driven integral of a sum of Handelman monomials (no verification).
Rational integrate_handelman_monomials(const HRep& p,
                                       const std::vector<HandelmanMonomial>& monomials);
Rational integrate_handelman_monomials(const std::vector<SimplicialCone>& cones,
                                       const HRep& p,
                                       const std::vector<HandelmanMonomial>& monomials);

/// First direction (1, t, t^2, ...) with t = 1, 2, ... that is nonorthogonal
/// to every ray; deterministic, so repeated runs integrate identically.
std::vector<Int> regular_direction(const std::vector<SimplicialCone>& cones, int dim);

} // namespace polybound
