#include "polybound/decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "polybound/errors.hpp"
#include "polybound/parallel.hpp"
#include "polybound/series.hpp"

namespace polybound {

std::vector<LinearFormPower> monomial_to_linear_forms(const Monomial& m) {
    const size_t d = m.dim();
    const int total = m.total_degree();
    if (total == 0) return {LinearFormPower{Rational(1), std::vector<Rational>(d, Rational(0)), 0}};

    Rational inv_factorial(1, factorial(static_cast<unsigned long>(total)));
    inv_factorial.canonicalize();

    std::vector<LinearFormPower> out;
    std::vector<int> p(d, 0);
    // odometer over 0 <= p_i <= m_i, skipping p = 0
    for (;;) {
        size_t j = 0;
        while (j < d && p[j] == m[j]) p[j++] = 0;
        if (j == d) break;
        ++p[j];

        int psum = 0;
        Int binom_prod(1);
        for (size_t i = 0; i < d; ++i) {
            psum += p[i];
            binom_prod *= binomial(static_cast<unsigned long>(m[i]),
                                   static_cast<unsigned long>(p[i]));
        }
        Rational coeff = inv_factorial * binom_prod;
        if ((total - psum) % 2 != 0) coeff = -coeff;
        LinearFormPower term;
        term.coefficient = coeff;
        term.form.assign(p.begin(), p.end());
        term.power = static_cast<unsigned>(total);
        out.push_back(std::move(term));
    }
    return out;
}

namespace {

// Normalizes a form to integer entries, gcd 1, first nonzero positive and
// returns the scalar factor lambda with original = lambda * normalized.
std::pair<std::vector<Int>, Rational> normalize_form(const std::vector<Rational>& form) {
    Int denlcm(1);
    for (const Rational& c : form) {
        Int l;
        mpz_lcm(l.get_mpz_t(), denlcm.get_mpz_t(), c.get_den().get_mpz_t());
        denlcm = l;
    }
    std::vector<Int> ints;
    Int g(0);
    for (const Rational& c : form) {
        Int e = c.get_num() * (denlcm / c.get_den());
        ints.push_back(e);
        Int ng;
        mpz_gcd(ng.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        g = ng;
    }
    int flip = 1;
    for (const Int& e : ints)
        if (e != 0) {
            if (e < 0) flip = -1;
            break;
        }
    if (g == 0) return {ints, Rational(1)};  // zero form
    Int scale_num = flip < 0 ? Int(-g) : g;
    for (Int& e : ints) e /= scale_num;
    Rational lambda(scale_num, denlcm);
    lambda.canonicalize();
    return {ints, lambda};
}

} // namespace

namespace {

// merge key: power then the normalized direction, packed into one int vector
using FormKey = std::vector<int>;
using FormMap = std::unordered_map<FormKey, Rational, IntVecHash>;

// expansion of one scaled monomial into the map; forms keep small integer
// entries (bounded by the exponents), so int keys are exact
void expand_monomial_into(const Monomial& mono, const Rational& coeff, FormMap& merged) {
    const size_t d = mono.dim();
    const int total = mono.total_degree();
    if (total == 0) {
        FormKey key(d + 1, 0);
        merged[key] += coeff;
        return;
    }
    Rational scale = coeff / factorial(static_cast<unsigned long>(total));

    std::vector<int> p(d, 0);
    FormKey key(d + 1, 0);
    for (;;) {
        size_t j = 0;
        while (j < d && p[j] == mono[j]) p[j++] = 0;
        if (j == d) break;
        ++p[j];

        int psum = 0, gcd = 0;
        Int binom_prod(1);
        for (size_t i = 0; i < d; ++i) {
            psum += p[i];
            gcd = std::gcd(gcd, p[i]);
            binom_prod *= binomial(static_cast<unsigned long>(mono[i]),
                                   static_cast<unsigned long>(p[i]));
        }
        key[0] = total;
        for (size_t i = 0; i < d; ++i) key[i + 1] = p[i] / gcd;
        // p = gcd * key direction, so the scalar gcd^total joins the weight
        Rational c = scale * binom_prod;
        if (gcd > 1) c *= int_pow(Int(gcd), static_cast<unsigned long>(total));
        if ((total - psum) % 2 != 0) c = -c;
        auto [it, inserted] = merged.emplace(key, c);
        if (!inserted) it->second += c;
    }
}

} // namespace

std::vector<LinearFormPower> poly_to_linear_forms(const Polynomial& f) {
    std::vector<const std::pair<const Monomial, Rational>*> terms;
    terms.reserve(f.term_count());
    for (const auto& term : f.terms()) terms.push_back(&term);

    auto worker = [&](size_t begin, size_t end) {
        FormMap local;
        for (size_t i = begin; i < end; ++i)
            expand_monomial_into(terms[i]->first, terms[i]->second, local);
        return local;
    };
    FormMap merged;
    for (FormMap& part : parallel_ranges<FormMap>(terms.size(), worker, 64)) {
        if (merged.empty()) {
            merged = std::move(part);
            continue;
        }
        for (auto& [key, c] : part) {
            auto [it, inserted] = merged.emplace(key, std::move(c));
            if (!inserted) it->second += c;
        }
    }

    std::vector<std::pair<FormKey, Rational>> entries;
    entries.reserve(merged.size());
    for (auto& [key, c] : merged)
        if (c != 0) entries.emplace_back(key, std::move(c));
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<LinearFormPower> out;
    out.reserve(entries.size());
    for (auto& [key, c] : entries) {
        LinearFormPower t;
        t.coefficient = std::move(c);
        t.form.assign(key.begin() + 1, key.end());
        t.power = static_cast<unsigned>(key[0]);
        out.push_back(std::move(t));
    }
    return out;
}

Polynomial linear_form_power_to_poly(const std::vector<Rational>& form, unsigned power,
                                     const Rational& coefficient) {
    const int d = static_cast<int>(form.size());
    Polynomial lin(d);
    for (int i = 0; i < d; ++i) {
        Monomial m(static_cast<size_t>(d));
        m[static_cast<size_t>(i)] = 1;
        lin.add_term(m, form[static_cast<size_t>(i)]);
    }
    return coefficient * poly_pow(lin, power);
}

Polynomial facet_polynomial(const HRep& p, size_t row) {
    Polynomial g = Polynomial::constant(p.dim, p.b[row]);
    for (int i = 0; i < p.dim; ++i) {
        Monomial m(static_cast<size_t>(p.dim));
        m[static_cast<size_t>(i)] = 1;
        g.add_term(m, -p.A[row][static_cast<size_t>(i)]);
    }
    return g;
}

namespace {

// All alpha with |alpha| <= t over n facets, graded-lex, with g^alpha
// expanded by one extra multiplication from a lower neighbor.
struct HandelmanBasis {
    std::vector<std::vector<int>> alphas;
    std::vector<Polynomial> powers;
};

HandelmanBasis handelman_basis(const HRep& p, int t) {
    const size_t n = p.num_rows();
    std::vector<Polynomial> facets;
    for (size_t i = 0; i < n; ++i) facets.push_back(facet_polynomial(p, i));

    HandelmanBasis basis;
    std::map<std::vector<int>, size_t> pos;
    // degree level by degree level so each alpha has a predecessor
    std::vector<std::vector<int>> level{std::vector<int>(n, 0)};
    basis.alphas.push_back(level[0]);
    basis.powers.push_back(Polynomial::constant(p.dim, Rational(1)));
    pos[level[0]] = 0;
    for (int deg = 1; deg <= t; ++deg) {
        std::vector<std::vector<int>> next;
        std::set<std::vector<int>> seen;
        for (const auto& a : level)
            for (size_t j = 0; j < n; ++j) {
                std::vector<int> b = a;
                ++b[j];
                if (seen.insert(b).second) next.push_back(std::move(b));
            }
        std::sort(next.begin(), next.end());
        for (const auto& a : next) {
            size_t j = 0;
            while (a[j] == 0) ++j;
            std::vector<int> prev = a;
            --prev[j];
            Polynomial expanded = basis.powers[pos.at(prev)] * facets[j];
            pos[a] = basis.alphas.size();
            basis.alphas.push_back(a);
            basis.powers.push_back(std::move(expanded));
        }
        level = std::move(next);
    }
    return basis;
}

} // namespace

LPProblem handelman_lp(const Polynomial& f, const HRep& p, int t,
                       HandelmanObjective objective, const Rational& sparsity_weight) {
    if (f.dim() != p.dim) throw MathError("handelman_lp: polynomial/polytope dimension mismatch");
    if (!f.is_zero() && t < f.degree())
        throw MathError("handelman_lp: degree t below deg(f)");
    if (t < 0) throw MathError("handelman_lp: negative degree");

    HandelmanBasis basis = handelman_basis(p, t);
    const size_t ncols = basis.alphas.size();

    // variables: c_alpha (nonnegative, graded-lex order), then s (free)
    LPProblem lp(ncols + 1);
    lp.var_bounds[ncols] = VarBound::Free;
    if (objective == HandelmanObjective::SparseAndShift)
        for (size_t j = 0; j < ncols; ++j) lp.objective[j] = sparsity_weight;
    lp.objective[ncols] = 1;

    // one row per monomial of degree <= t; the constant row carries -s
    MonomialIndex rows(p.dim, t);
    for (size_t r = 0; r < rows.size(); ++r) {
        Monomial mono(rows.exponents(r));
        std::vector<Rational> row(ncols + 1, Rational(0));
        for (size_t j = 0; j < ncols; ++j) row[j] = basis.powers[j].coefficient(mono);
        bool constant_row = mono.total_degree() == 0;
        if (constant_row) row[ncols] = -1;
        lp.add_row(std::move(row), RowSense::Equal, f.coefficient(mono));
    }
    return lp;
}

Polynomial expand_handelman(const HRep& p, const std::vector<HandelmanMonomial>& monomials) {
    Polynomial total(p.dim);
    std::map<std::vector<int>, Polynomial> cache;
    for (const HandelmanMonomial& hm : monomials) {
        auto it = cache.find(hm.alpha);
        if (it == cache.end()) {
            Polynomial g = Polynomial::constant(p.dim, Rational(1));
            for (size_t j = 0; j < hm.alpha.size(); ++j)
                if (hm.alpha[j] > 0)
                    g = g * poly_pow(facet_polynomial(p, j),
                                     static_cast<unsigned>(hm.alpha[j]));
            it = cache.emplace(hm.alpha, std::move(g)).first;
        }
        total += hm.coefficient * it->second;
    }
    return total;
}

bool verify_certificate(const HandelmanCertificate& cert, const HRep& p, const Polynomial& f) {
    if (cert.num_facets != static_cast<int>(p.num_rows())) return false;
    for (const auto& hm : cert.monomials)
        if (sign(hm.coefficient) < 0) return false;
    Polynomial target = f;
    target.add_term(Monomial(static_cast<size_t>(p.dim)), cert.shift);
    return expand_handelman(p, cert.monomials) == target;
}

CertificateSearch find_certificate(const Polynomial& f, const HRep& p, int t,
                                   HandelmanObjective objective,
                                   const Rational& sparsity_weight) {
    const int deg = f.is_zero() ? 0 : f.degree();
    if (t < deg) throw MathError("find_certificate: degree t below deg(f)");
    const int t_worst_case = deg * (deg - 1) + 1;
    const int t_max = std::max(t, t_worst_case);

    for (int cur = t; cur <= t_max; ++cur) {
        LPProblem lp = handelman_lp(f, p, cur, objective, sparsity_weight);
        LPSolution sol = lp_solve(lp);
        if (sol.status == LPStatus::Unbounded)
            throw MathError("find_certificate: certificate LP unbounded (internal)");
        if (sol.status != LPStatus::Optimal) continue;

        HandelmanCertificate cert;
        cert.num_facets = static_cast<int>(p.num_rows());
        cert.degree = cur;
        cert.shift = sol.values.back();
        HandelmanBasis basis = handelman_basis(p, cur);
        for (size_t j = 0; j + 1 < sol.values.size(); ++j)
            if (sol.values[j] != 0)
                cert.monomials.push_back(HandelmanMonomial{sol.values[j], basis.alphas[j]});
        if (!verify_certificate(cert, p, f))
            throw MathError("find_certificate: LP solution failed verification (internal)");
        return CertificateSearch{std::move(cert), sol.objective};
    }
    throw MathError("find_certificate: infeasible up to degree t = " + std::to_string(t_max));
}

std::vector<HandelmanMonomial> certificate_pow(const HandelmanCertificate& cert, unsigned k) {
    if (k < 1) throw MathError("certificate_pow: k must be >= 1");
    std::map<std::vector<int>, Rational> acc;
    for (const auto& hm : cert.monomials) {
        auto [it, inserted] = acc.emplace(hm.alpha, hm.coefficient);
        if (!inserted) it->second += hm.coefficient;
    }
    for (unsigned step = 1; step < k; ++step) {
        std::map<std::vector<int>, Rational> next;
        for (const auto& [a, ca] : acc)
            for (const auto& hm : cert.monomials) {
                std::vector<int> sum = a;
                for (size_t j = 0; j < sum.size(); ++j) sum[j] += hm.alpha[j];
                auto [it, inserted] = next.emplace(std::move(sum), ca * hm.coefficient);
                if (!inserted) it->second += ca * hm.coefficient;
            }
        acc = std::move(next);
    }
    std::vector<HandelmanMonomial> out;
    for (const auto& [a, c] : acc)
        if (c != 0) out.push_back(HandelmanMonomial{c, a});
    return out;
}

std::string serialize_certificate(const HandelmanCertificate& cert) {
    std::ostringstream os;
    os << "t " << cert.degree << "\n";
    os << "s " << cert.shift << "\n";
    for (const auto& hm : cert.monomials) {
        os << hm.coefficient << " :";
        for (int a : hm.alpha) os << ' ' << a;
        os << "\n";
    }
    return os.str();
}

HandelmanCertificate parse_certificate(std::istream& in, int num_facets) {
    HandelmanCertificate cert;
    cert.num_facets = num_facets;
    std::string line;
    bool have_t = false, have_s = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "t") {
            ls >> cert.degree;
            have_t = true;
        } else if (head == "s") {
            std::string v;
            ls >> v;
            cert.shift = rational_from_string(v);
            have_s = true;
        } else {
            HandelmanMonomial hm;
            hm.coefficient = rational_from_string(head);
            std::string colon;
            ls >> colon;
            if (colon != ":") throw ParseError("certificate line " + std::to_string(lineno) +
                                               " missing ':'");
            int a;
            while (ls >> a) hm.alpha.push_back(a);
            if (static_cast<int>(hm.alpha.size()) != num_facets)
                throw ParseError("certificate line " + std::to_string(lineno) +
                                 " has wrong exponent count");
            cert.monomials.push_back(std::move(hm));
        }
    }
    if (!have_t || !have_s) throw ParseError("certificate file missing 't' or 's' header");
    return cert;
}

} // namespace polybound
