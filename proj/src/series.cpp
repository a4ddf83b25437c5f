#include "polybound/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "polybound/errors.hpp"

namespace polybound {

namespace {

void enumerate_degree(int nvars, int degree, std::vector<int>& cur, int pos, int left,
                      std::vector<std::vector<int>>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<size_t>(pos)] = left;
        out.push_back(cur);
        return;
    }
    for (int e = left; e >= 0; --e) {  // lex-descending first coordinate => lex order overall
        cur[static_cast<size_t>(pos)] = e;
        enumerate_degree(nvars, degree, cur, pos + 1, left - e, out);
    }
}

} // namespace

MonomialIndex::MonomialIndex(int nvars, int max_degree)
    : nvars_(nvars), max_degree_(max_degree) {
    degree_offsets_.push_back(0);
    for (int deg = 0; deg <= max_degree; ++deg) {
        if (nvars == 0) {
            if (deg == 0) list_.push_back({});
        } else {
            std::vector<int> cur(static_cast<size_t>(nvars), 0);
            std::vector<std::vector<int>> level;
            enumerate_degree(nvars, deg, cur, 0, deg, level);
            std::sort(level.begin(), level.end());
            for (auto& e : level) list_.push_back(std::move(e));
        }
        degree_offsets_.push_back(list_.size());
    }
    degrees_.reserve(list_.size());
    rank_.reserve(list_.size() * 2);
    for (size_t i = 0; i < list_.size(); ++i) {
        int deg = 0;
        for (int e : list_[i]) deg += e;
        degrees_.push_back(deg);
        rank_.emplace(list_[i], i);
    }
}

std::shared_ptr<const MonomialIndex> MonomialIndex::get(int nvars, int max_degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::weak_ptr<const MonomialIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, max_degree);
    if (auto it = cache.find(key); it != cache.end())
        if (auto p = it->second.lock()) return p;
    auto p = std::make_shared<const MonomialIndex>(nvars, max_degree);
    cache[key] = p;
    return p;
}

size_t MonomialIndex::rank(const std::vector<int>& e) const {
    auto it = rank_.find(e);
    if (it == rank_.end()) throw MathError("monomial outside truncation order");
    return it->second;
}

std::pair<size_t, size_t> MonomialIndex::degree_range(int degree) const {
    if (degree < 0 || degree > max_degree_) return {0, 0};
    return {degree_offsets_[static_cast<size_t>(degree)],
            degree_offsets_[static_cast<size_t>(degree) + 1]};
}

TruncatedSeries::TruncatedSeries(std::shared_ptr<const MonomialIndex> idx, int aux_lo,
                                 int aux_hi)
    : idx_(std::move(idx)), aux_lo_(aux_lo), aux_hi_(aux_hi) {
    if (aux_hi_ < aux_lo_) throw MathError("empty auxiliary exponent range");
    coef_.resize(idx_->size() * width());
}

TruncatedSeries TruncatedSeries::one(std::shared_ptr<const MonomialIndex> idx) {
    TruncatedSeries s(std::move(idx), 0, 0);
    s.coef_[0] = 1;
    return s;
}

const Rational& TruncatedSeries::coefficient(const std::vector<int>& main_exp,
                                             int aux_exp) const {
    static const Rational zero(0);
    if (aux_exp < aux_lo_ || aux_exp > aux_hi_) return zero;
    return coef_[idx_->rank(main_exp) * width() + static_cast<size_t>(aux_exp - aux_lo_)];
}

void TruncatedSeries::set(const std::vector<int>& main_exp, int aux_exp, const Rational& c) {
    if (aux_exp < aux_lo_ || aux_exp > aux_hi_)
        throw MathError("auxiliary exponent outside declared range");
    coef_[idx_->rank(main_exp) * width() + static_cast<size_t>(aux_exp - aux_lo_)] = c;
}

void TruncatedSeries::add(size_t main_rank, int aux_exp, const Rational& c) {
    coef_[main_rank * width() + static_cast<size_t>(aux_exp - aux_lo_)] += c;
}

const Rational& TruncatedSeries::at(size_t main_rank, int aux_exp) const {
    return coef_[main_rank * width() + static_cast<size_t>(aux_exp - aux_lo_)];
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.nvars() != b.nvars() || a.max_degree() != b.max_degree())
        throw MathError("truncated series factor dimension mismatch");
    const MonomialIndex& idx = a.index();
    const int M = idx.max_degree();
    TruncatedSeries out(a.index_ptr(), a.aux_lo_ + b.aux_lo_, a.aux_hi_ + b.aux_hi_);
    std::vector<int> sum_exp(static_cast<size_t>(idx.nvars()));
    for (int da = 0; da <= M; ++da) {
        auto [a_begin, a_end] = idx.degree_range(da);
        for (size_t ra = a_begin; ra < a_end; ++ra) {
            for (int db = 0; db + da <= M; ++db) {
                auto [b_begin, b_end] = idx.degree_range(db);
                for (size_t rb = b_begin; rb < b_end; ++rb) {
                    const auto& pa = idx.exponents(ra);
                    const auto& pb = idx.exponents(rb);
                    size_t target = 0;
                    bool have_target = false;
                    for (int ea = a.aux_lo_; ea <= a.aux_hi_; ++ea) {
                        const Rational& ca = a.at(ra, ea);
                        if (ca == 0) continue;
                        for (int eb = b.aux_lo_; eb <= b.aux_hi_; ++eb) {
                            const Rational& cb = b.at(rb, eb);
                            if (cb == 0) continue;
                            if (!have_target) {
                                for (size_t i = 0; i < sum_exp.size(); ++i)
                                    sum_exp[i] = pa[i] + pb[i];
                                target = idx.rank(sum_exp);
                                have_target = true;
                            }
                            out.add(target, ea + eb, ca * cb);
                        }
                    }
                }
            }
        }
    }
    return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.nvars() != b.nvars() || a.max_degree() != b.max_degree()) return false;
    const Rational zero(0);
    int lo = std::min(a.aux_lo(), b.aux_lo());
    int hi = std::max(a.aux_hi(), b.aux_hi());
    for (size_t r = 0; r < a.index().size(); ++r)
        for (int e = lo; e <= hi; ++e) {
            const Rational& ca = (e >= a.aux_lo() && e <= a.aux_hi()) ? a.at(r, e) : zero;
            const Rational& cb = (e >= b.aux_lo() && e <= b.aux_hi()) ? b.at(r, e) : zero;
            if (ca != cb) return false;
        }
    return true;
}

TruncatedSeries truncated_product(std::span<const TruncatedSeries> factors, int M) {
    if (factors.empty()) {
        return TruncatedSeries::one(MonomialIndex::get(0, M));
    }
    for (const auto& f : factors)
        if (f.nvars() != factors[0].nvars() || f.max_degree() != M)
            throw MathError("truncated_product: factor dimension mismatch");
    TruncatedSeries acc = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
    return acc;
}

} // namespace polybound
