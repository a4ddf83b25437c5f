#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "polybound/monomial.hpp"
#include "polybound/rational.hpp"

namespace polybound {

/// Sparse multivariate polynomial over the rationals. Terms are kept in a
/// graded-lex ordered map with no stored zero coefficients. The zero
/// polynomial has degree 0; degree-driven callers guard on is_zero().
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit Polynomial(int dim = 0) : dim_(dim) {}

    static Polynomial constant(int dim, const Rational& c);
    /// The i-th coordinate variable x_i (0-based).
    static Polynomial variable(int dim, int i);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    int degree() const;
    const TermMap& terms() const { return terms_; }

    const Rational& coefficient(const Monomial& m) const;
    Rational constant_term() const;

    /// Adds c * x^m, merging with an existing term and dropping zeros.
    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    int dim_;
    TermMap terms_;
};

Polynomial poly_pow(const Polynomial& f, unsigned k);
Rational poly_eval(const Polynomial& f, const std::vector<Rational>& x);

/// Text format: '#' comment lines, then "d <dimension>", then one term per
/// line as "<coefficient> <e_1> ... <e_d>" with rational coefficients.
Polynomial parse_polynomial(std::istream& in);
Polynomial parse_polynomial_file(const std::string& path);
std::string format_polynomial(const Polynomial& f);

} // namespace polybound
