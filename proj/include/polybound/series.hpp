#pragma once

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "polybound/monomial.hpp"
#include "polybound/rational.hpp"

namespace polybound {

/// Graded-lex enumeration of all exponent vectors in `nvars` variables with
/// total degree <= max_degree, with O(1) rank lookup. Shared (immutable)
/// between the series built during one integration.
class MonomialIndex {
public:
    MonomialIndex(int nvars, int max_degree);

    static std::shared_ptr<const MonomialIndex> get(int nvars, int max_degree);

    int nvars() const { return nvars_; }
    int max_degree() const { return max_degree_; }
    size_t size() const { return list_.size(); }
    const std::vector<int>& exponents(size_t rank) const { return list_[rank]; }
    int degree_of(size_t rank) const { return degrees_[rank]; }
    size_t rank(const std::vector<int>& e) const;
    /// Half-open rank range of the given total degree.
    std::pair<size_t, size_t> degree_range(int degree) const;

private:
    int nvars_, max_degree_;
    std::vector<std::vector<int>> list_;
    std::vector<int> degrees_;
    std::vector<size_t> degree_offsets_;  // size max_degree_+2
    std::unordered_map<std::vector<int>, size_t, IntVecHash> rank_;
};

/// Power series in `n` main variables truncated at total degree M, times an
/// auxiliary Laurent variable with exponents in [aux_lo, aux_hi]. The main
/// truncation never touches auxiliary exponents; those add up exactly under
/// multiplication.
class TruncatedSeries {
public:
    TruncatedSeries(std::shared_ptr<const MonomialIndex> idx, int aux_lo, int aux_hi);
    static TruncatedSeries one(std::shared_ptr<const MonomialIndex> idx);

    int nvars() const { return idx_->nvars(); }
    int max_degree() const { return idx_->max_degree(); }
    int aux_lo() const { return aux_lo_; }
    int aux_hi() const { return aux_hi_; }
    const MonomialIndex& index() const { return *idx_; }
    std::shared_ptr<const MonomialIndex> index_ptr() const { return idx_; }

    const Rational& coefficient(const std::vector<int>& main_exp, int aux_exp) const;
    void set(const std::vector<int>& main_exp, int aux_exp, const Rational& c);
    void add(size_t main_rank, int aux_exp, const Rational& c);
    const Rational& at(size_t main_rank, int aux_exp) const;

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    std::shared_ptr<const MonomialIndex> idx_;
    int aux_lo_, aux_hi_;
    std::vector<Rational> coef_;  // [main_rank * width + (aux - aux_lo)]
    size_t width() const { return static_cast<size_t>(aux_hi_ - aux_lo_ + 1); }
};

/// Product of all factors, truncating main-variable total degree at M after
/// each pairwise multiplication. Factors must share the main variable count
/// and truncation order; auxiliary exponent ranges may differ.
TruncatedSeries truncated_product(std::span<const TruncatedSeries> factors, int M);

} // namespace polybound
