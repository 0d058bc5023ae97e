#include "gdtune/rational.hpp"

#include <cctype>

namespace gdtune {

namespace {

bool valid_integer_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

} // namespace

Rational rat_parse(const std::string& s) {
    auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw ParseError("not a rational in num/den form: '" + s + "'");
    Integer n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
        throw ParseError("not a rational in num/den form: '" + s + "'");
    if (d == 0) throw ParseError("zero denominator in rational: '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

double rat_to_double(const Rational& x) { return x.get_d(); }

std::size_t rat_bits(const Rational& x) {
    return mpz_sizeinbase(x.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(x.get_den().get_mpz_t(), 2);
}

Rational rat_pow(const Rational& base, unsigned e) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    return r; // base canonical => powers coprime
}

Rational rat_pow2_neg(unsigned k) {
    Rational r(1);
    mpz_mul_2exp(r.get_den().get_mpz_t(), r.get_den().get_mpz_t(), k);
    return r;
}

Rational rat_abs(const Rational& x) { return ::abs(x); }

namespace {

Integer rat_floor(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return f;
}

// 0 < a <= b assumed
Rational simplest_positive(const Rational& a, const Rational& b) {
    Integer fa = rat_floor(a);
    if (a == Rational(fa)) return a;           // a itself is an integer
    if (Rational(fa + 1) <= b) return Rational(fa + 1); // an integer inside (a, b]
    // floor(a) == floor(b), both fractional: descend one continued-fraction step
    Rational ra = a - Rational(fa);
    Rational rb = b - Rational(fa);
    return Rational(fa) + 1 / simplest_positive(1 / rb, 1 / ra);
}

} // namespace

Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw ConfigError("simplest_rational_in: empty interval");
    if (lo == hi) return lo;
    if (lo <= 0 && 0 <= hi) return Rational(0);
    if (hi < 0) return -simplest_rational_in(-hi, -lo);
    return simplest_positive(lo, hi);
}

} // namespace gdtune
