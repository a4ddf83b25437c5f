#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace polybound {

/// Exponent vector of a monomial in a fixed ambient dimension.
/// Ordering is graded lexicographic, which fixes the canonical term order
/// used everywhere (map iteration, printed output, golden tests).
struct Monomial {
    std::vector<int> exps;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}
    Monomial(std::initializer_list<int> e) : exps(e) {}
    explicit Monomial(size_t dim) : exps(dim, 0) {}

    size_t dim() const { return exps.size(); }
    int total_degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }
    bool is_constant() const { return total_degree() == 0; }

    int operator[](size_t i) const { return exps[i]; }
    int& operator[](size_t i) { return exps[i]; }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.exps < b.exps;
    }

    Monomial operator+(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
        return r;
    }
};

struct IntVecHash {
    size_t operator()(const std::vector<int>& v) const {
        uint64_t h = 1469598103934665603ull;
        for (int e : v) {
            h ^= static_cast<uint64_t>(e) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const { return IntVecHash{}(m.exps); }
};

} // namespace polybound
