#include "polybound/linalg.hpp"

namespace polybound {

namespace {

// Row echelon form; returns pivot column per pivot row.
std::vector<size_t> eliminate(Matrix& a, size_t cols) {
    std::vector<size_t> pivot_cols;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < a.size(); ++col) {
        size_t pr = row;
        while (pr < a.size() && a[pr][col] == 0) ++pr;
        if (pr == a.size()) continue;
        std::swap(a[row], a[pr]);
        Rational inv = Rational(1) / a[row][col];
        for (size_t j = col; j < a[row].size(); ++j) a[row][j] *= inv;
        for (size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (size_t j = col; j < a[r].size(); ++j) a[r][j] -= f * a[row][j];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

} // namespace

std::optional<std::vector<Rational>> solve_square(Matrix a, std::vector<Rational> b) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    auto pivots = eliminate(a, n);
    if (pivots.size() != n) return std::nullopt;
    std::vector<Rational> x(n);
    for (size_t r = 0; r < n; ++r) x[pivots[r]] = a[r][n];
    return x;
}

size_t matrix_rank(Matrix a) {
    if (a.empty()) return 0;
    return eliminate(a, a[0].size()).size();
}

std::optional<std::vector<Rational>> kernel_direction(Matrix a, size_t cols) {
    for (auto& row : a)
        if (row.size() != cols) throw MathError("kernel_direction: ragged matrix");
    auto pivots = eliminate(a, cols);
    if (pivots.size() + 1 != cols) return std::nullopt;
    // the single free column gets value 1; pivots back-substitute against it
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    size_t free_col = 0;
    while (free_col < cols && is_pivot[free_col]) ++free_col;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free_col];
    return v;
}

Rational determinant(Matrix a) {
    size_t n = a.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pr = col;
        while (pr < n && a[pr][col] == 0) ++pr;
        if (pr == n) return Rational(0);
        if (pr != col) {
            std::swap(a[pr], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rational inv = Rational(1) / a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] * inv;
            for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

} // namespace polybound
