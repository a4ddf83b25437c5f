#include "polybound/rational.hpp"

#include <cctype>
#include <sstream>

namespace polybound {

namespace {

Int int_from_string(const std::string& text) {
    try {
        return Int(text, 10);  // base fixed: no octal surprises from leading zeros
    } catch (const std::invalid_argument&) {
        throw ParseError("not an integer: '" + text + "'");
    }
}

} // namespace

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num = int_from_string(text.substr(0, slash));
        Int den = int_from_string(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw ParseError("not a number: '" + text + "'");
        Int num = int_from_string(digits);
        Int den = int_pow(Int(10), frac_len);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    return Rational(int_from_string(text));
}

Rational rat_pow(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    if (x == 0) {
        if (e < 0) throw MathError("rat_pow: 0 raised to a negative power");
        return Rational(0);
    }
    unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.get_mpq_t()), mag);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.get_mpq_t()), mag);
    if (e < 0) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    // num/den powers of a canonical fraction stay coprime; sign fix is in inv
    return r;
}

Int int_pow(const Int& x, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int floor_div(const Int& num, const Int& den) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Int ceil_div(const Int& num, const Int& den) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Rational Decimal::value() const {
    Rational r(scaled, int_pow(Int(10), static_cast<unsigned long>(digits)));
    r.canonicalize();
    return r;
}

std::string Decimal::str() const {
    Int a = scaled;
    bool neg = a < 0;
    if (neg) a = -a;
    std::string body = a.get_str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    std::string out = neg ? "-" : "";
    if (digits == 0) return out + body;
    out += body.substr(0, body.size() - static_cast<size_t>(digits));
    out += '.';
    out += body.substr(body.size() - static_cast<size_t>(digits));
    return out;
}

namespace {

// Returns floor(v * 10^digits) together with the exact remainder test data.
Decimal scale_floor(const Rational& v, int digits) {
    Int scale = int_pow(Int(10), static_cast<unsigned long>(digits));
    Int num = v.get_num() * scale;
    return Decimal{floor_div(num, v.get_den()), digits};
}

} // namespace

Decimal round_down(const Rational& v, int digits) { return scale_floor(v, digits); }

Decimal round_up(const Rational& v, int digits) {
    Int scale = int_pow(Int(10), static_cast<unsigned long>(digits));
    Int num = v.get_num() * scale;
    return Decimal{ceil_div(num, v.get_den()), digits};
}

Decimal round_half_even(const Rational& v, int digits) {
    Int scale = int_pow(Int(10), static_cast<unsigned long>(digits));
    Int num = v.get_num() * scale;
    const Int& den = v.get_den();
    Int q = floor_div(num, den);
    Int rem = num - q * den;  // 0 <= rem < den
    Int twice = 2 * rem;
    if (twice > den || (twice == den && mpz_odd_p(q.get_mpz_t())))
        q += 1;
    return Decimal{q, digits};
}

std::string to_string(const Rational& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace polybound
