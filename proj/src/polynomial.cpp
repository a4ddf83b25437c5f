#include "polybound/polynomial.hpp"

#include <fstream>
#include <sstream>

namespace polybound {

Polynomial Polynomial::constant(int dim, const Rational& c) {
    Polynomial p(dim);
    p.add_term(Monomial(static_cast<size_t>(dim)), c);
    return p;
}

Polynomial Polynomial::variable(int dim, int i) {
    Polynomial p(dim);
    Monomial m(static_cast<size_t>(dim));
    m[static_cast<size_t>(i)] = 1;
    p.add_term(m, Rational(1));
    return p;
}

int Polynomial::degree() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->first.total_degree();  // graded order: last is max
}

const Rational& Polynomial::coefficient(const Monomial& m) const {
    static const Rational zero(0);
    auto it = terms_.find(m);
    return it == terms_.end() ? zero : it->second;
}

Rational Polynomial::constant_term() const {
    return coefficient(Monomial(static_cast<size_t>(dim_)));
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (m.dim() != static_cast<size_t>(dim_))
        throw MathError("polynomial term has wrong dimension");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (dim_ != o.dim_) throw MathError("polynomial dimension mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (dim_ != o.dim_) throw MathError("polynomial dimension mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.dim_ != b.dim_) throw MathError("polynomial dimension mismatch");
    Polynomial r(a.dim_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(ma + mb, ca * cb);
    return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    Polynomial r(p.dim_);
    if (c == 0) return r;
    for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
    return r;
}

Polynomial poly_pow(const Polynomial& f, unsigned k) {
    Polynomial r = Polynomial::constant(f.dim(), Rational(1));
    // f is typically short; repeated multiplication keeps intermediates sparse
    for (unsigned i = 0; i < k; ++i) r = r * f;
    return r;
}

Rational poly_eval(const Polynomial& f, const std::vector<Rational>& x) {
    if (x.size() != static_cast<size_t>(f.dim()))
        throw MathError("poly_eval: point dimension mismatch");
    // power cache per variable up to the needed exponent
    std::vector<std::vector<Rational>> powers(x.size());
    for (size_t i = 0; i < x.size(); ++i) powers[i].push_back(Rational(1));
    Rational total(0);
    for (const auto& [m, c] : f.terms()) {
        Rational v = c;
        for (size_t i = 0; i < x.size(); ++i) {
            int e = m[i];
            auto& cache = powers[i];
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * x[i]);
            if (e > 0) v *= cache[static_cast<size_t>(e)];
        }
        total += v;
    }
    return total;
}

Polynomial parse_polynomial(std::istream& in) {
    std::string line;
    int dim = -1;
    Polynomial p(0);
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (dim < 0) {
            std::string tag;
            ls >> tag >> dim;
            if (tag != "d" || ls.fail() || dim < 1)
                throw ParseError("polynomial header must be 'd <dimension>' (line " +
                                 std::to_string(lineno) + ")");
            p = Polynomial(dim);
            continue;
        }
        std::string coeff_text;
        ls >> coeff_text;
        Monomial m(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            ls >> m[static_cast<size_t>(i)];
            if (ls.fail() || m[static_cast<size_t>(i)] < 0)
                throw ParseError("bad exponent on line " + std::to_string(lineno));
        }
        std::string extra;
        if (ls >> extra) throw ParseError("trailing data on line " + std::to_string(lineno));
        p.add_term(m, rational_from_string(coeff_text));
    }
    if (dim < 0) throw ParseError("polynomial file has no 'd <dimension>' header");
    return p;
}

Polynomial parse_polynomial_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open polynomial file '" + path + "'");
    return parse_polynomial(in);
}

std::string format_polynomial(const Polynomial& f) {
    std::ostringstream os;
    os << "d " << f.dim() << "\n";
    for (const auto& [m, c] : f.terms()) {
        os << c;
        for (size_t i = 0; i < m.dim(); ++i) os << ' ' << m[i];
        os << "\n";
    }
    return os.str();
}

std::string Polynomial::str() const { return format_polynomial(*this); }

} // namespace polybound
