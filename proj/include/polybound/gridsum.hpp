#pragma once

#include <vector>

#include "polybound/bounds.hpp"
#include "polybound/polynomial.hpp"
#include "polybound/polytope.hpp"

namespace polybound {

/// Grid-summation lower bound data over P intersected with (1/m) Z^d:
/// mean_pow_k = S(m) / count exactly, lower = its k-th root rounded down.
struct GridSumResult {
    unsigned long m = 0;
    long k = 0;
    Rational sum;          // S(m)
    unsigned long count = 0;
    Rational mean_pow_k;
    Decimal lower;
};

GridSumResult grid_lower_bound(const HRep& p, const Polynomial& f, long k, unsigned long m,
                               int digits = 12);

/// Grid bounds for each m side by side with the integration limit L_k.
struct ConvergenceReport {
    std::vector<GridSumResult> rows;
    Rational lk_pow_k;
    Decimal limit_lower;
};

ConvergenceReport convergence_report(const HRep& p, const Polynomial& f, long k,
                                     const std::vector<unsigned long>& ms, int digits = 12);

} // namespace polybound
