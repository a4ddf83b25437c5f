#include "polybound/gridsum.hpp"

#include "polybound/errors.hpp"
#include "polybound/integrate.hpp"
#include "polybound/parallel.hpp"

namespace polybound {

GridSumResult grid_lower_bound(const HRep& p, const Polynomial& f, long k, unsigned long m,
                               int digits) {
    if (k < 1) throw MathError("gridsum: k must be >= 1");
    if (f.dim() != p.dim) throw MathError("gridsum: polynomial/polytope dimension mismatch");
    std::vector<std::vector<Rational>> points = lattice_points(p, m);
    if (points.empty()) throw MathError("gridsum: empty grid");

    auto worker = [&](size_t begin, size_t end) {
        Rational acc(0);
        for (size_t i = begin; i < end; ++i)
            acc += rat_pow(poly_eval(f, points[i]), k);
        return acc;
    };

    GridSumResult out;
    out.m = m;
    out.k = k;
    out.count = points.size();
    out.sum = 0;
    for (const Rational& part : parallel_ranges<Rational>(points.size(), worker, 512))
        out.sum += part;
    out.mean_pow_k = out.sum / static_cast<unsigned long>(out.count);
    if (k % 2 == 0 && sign(out.mean_pow_k) < 0)
        throw MathError("gridsum: negative grid mean with even k");
    out.lower = nth_root_directed(out.mean_pow_k, static_cast<unsigned long>(k), digits,
                                  RoundDirection::Down);
    return out;
}

ConvergenceReport convergence_report(const HRep& p, const Polynomial& f, long k,
                                     const std::vector<unsigned long>& ms, int digits) {
    ConvergenceReport rep;
    for (unsigned long m : ms) rep.rows.push_back(grid_lower_bound(p, f, k, m, digits));
    auto [lk, root] = lower_bound(p, f, k, digits);
    rep.lk_pow_k = lk;
    rep.limit_lower = root;
    return rep;
}

} // namespace polybound
