#pragma once

#include <optional>
#include <vector>

#include "polybound/rational.hpp"

namespace polybound {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves the square system A x = b exactly; nullopt when A is singular.
std::optional<std::vector<Rational>> solve_square(Matrix a, std::vector<Rational> b);

size_t matrix_rank(Matrix a);

/// For a matrix with nullity exactly one, a nonzero kernel vector.
/// Works for matrices with zero rows (nullity = column count must be 1).
std::optional<std::vector<Rational>> kernel_direction(Matrix a, size_t cols);

Rational determinant(Matrix a);

} // namespace polybound
