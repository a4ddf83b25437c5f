#pragma once

#include <stdexcept>
#include <string>

namespace polybound {

/// Malformed input text (polynomial files, H-rep files, certificate files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematically invalid request or a failed solve: unbounded polytope,
/// empty interior, dimension mismatch, infeasible certificate search, ...
/// The message names the stage that failed.
class MathError : public std::runtime_error {
public:
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace polybound
