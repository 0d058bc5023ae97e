#include "gdtune/unipoly.hpp"

#include <sstream>

namespace gdtune {

void Budget::check(const UniPoly& p, const char* context) const {
    if (p.degree() > max_degree)
        throw SymbolicBudgetExceeded(std::string(context) + ": degree " +
                                     std::to_string(p.degree()) + " exceeds cap " +
                                     std::to_string(max_degree));
    if (p.bits() > max_bits)
        throw SymbolicBudgetExceeded(std::string(context) + ": coefficient size " +
                                     std::to_string(p.bits()) + " bits exceeds cap " +
                                     std::to_string(max_bits));
}

UniPoly::UniPoly(Rational constant) {
    if (constant != 0) c_.push_back(std::move(constant));
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { strip(); }

UniPoly UniPoly::variable() { return UniPoly({Rational(0), Rational(1)}); }

UniPoly UniPoly::linear(Rational a0, Rational a1) {
    return UniPoly({std::move(a0), std::move(a1)});
}

void UniPoly::strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::eval(const Rational& t) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double UniPoly::eval_double(double t) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + rat_to_double(*it);
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = Rational(static_cast<long>(k)) * c_[k];
    return UniPoly(std::move(d));
}

std::size_t UniPoly::bits() const {
    std::size_t total = 0;
    for (const auto& x : c_) total += rat_bits(x);
    return total;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    strip();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    strip();
    return *this;
}

UniPoly operator-(const UniPoly& a) {
    std::vector<Rational> c(a.c_.size());
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] = -a.c_[k];
    return UniPoly(std::move(c));
}

namespace {

// common-denominator integer form; avoids per-step mpq canonicalization in
// convolutions
void to_integer_form(const std::vector<Rational>& c, std::vector<Integer>& nums,
                     Integer& den) {
    den = 1;
    for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    nums.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        Integer scale;
        mpz_divexact(scale.get_mpz_t(), den.get_mpz_t(), c[k].get_den().get_mpz_t());
        nums[k] = c[k].get_num() * scale;
    }
}

} // namespace

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Integer> na, nb;
    Integer da, db;
    to_integer_form(a.c_, na, da);
    to_integer_form(b.c_, nb, db);
    std::vector<Integer> conv(na.size() + nb.size() - 1, Integer(0));
    for (std::size_t i = 0; i < na.size(); ++i) {
        if (na[i] == 0) continue;
        for (std::size_t j = 0; j < nb.size(); ++j) {
            if (nb[j] == 0) continue;
            conv[i + j] += na[i] * nb[j];
        }
    }
    Integer den = da * db;
    std::vector<Rational> c(conv.size());
    for (std::size_t k = 0; k < conv.size(); ++k) {
        Rational r(conv[k], den);
        r.canonicalize();
        c[k] = std::move(r);
    }
    return UniPoly(std::move(c));
}

UniPoly operator*(const Rational& s, const UniPoly& a) {
    if (s == 0) return UniPoly();
    std::vector<Rational> c(a.c_.size());
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] = s * a.c_[k];
    return UniPoly(std::move(c));
}

UniPoly mul_budgeted(const UniPoly& a, const UniPoly& b, const Budget& budget,
                     const char* context) {
    if (!a.is_zero() && !b.is_zero() && a.degree() + b.degree() > budget.max_degree)
        throw SymbolicBudgetExceeded(std::string(context) + ": product degree " +
                                     std::to_string(a.degree() + b.degree()) +
                                     " exceeds cap " + std::to_string(budget.max_degree));
    UniPoly r = a * b;
    budget.check(r, context);
    return r;
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        os << rat_str(c_[k]);
        if (k >= 1) os << "*" << var;
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os.str();
}

} // namespace gdtune
