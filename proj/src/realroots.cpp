#include "gdtune/realroots.hpp"

#include <algorithm>
#include <cassert>

namespace gdtune {

namespace {

using IntPoly = AlgebraicNumber::IntPoly; // constant first

int ideg(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

void istrip(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// positive content; zero polynomial -> 1
Integer icontent(const IntPoly& p) {
    Integer g(0);
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g == 0 ? Integer(1) : g;
}

// divide by positive content; sign pattern preserved
void make_primitive(IntPoly& p) {
    istrip(p);
    if (p.empty()) return;
    Integer g = icontent(p);
    if (g == 1) return;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// clear denominators of a rational polynomial, then primitivize.
IntPoly int_from_unipoly(const UniPoly& p) {
    IntPoly out;
    if (p.is_zero()) return out;
    Integer den(1);
    for (const auto& c : p.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        Integer scale;
        mpz_divexact(scale.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        out.push_back(c.get_num() * scale);
    }
    make_primitive(out);
    return out;
}

IntPoly int_derivative(const IntPoly& p) {
    if (p.size() <= 1) return {};
    IntPoly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = Integer(static_cast<long>(k)) * p[k];
    return d;
}

// sign of p(a/b) with b > 0, via the homogeneous integer form
int int_sign_at(const IntPoly& p, const Integer& a, const Integer& b) {
    if (p.empty()) return 0;
    Integer acc = p.back();
    Integer bp(1);
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        bp *= b;
        acc = acc * a + p[k] * bp;
    }
    return sgn(acc);
}

int int_sign_at(const IntPoly& p, const Rational& t) {
    return int_sign_at(p, t.get_num(), t.get_den());
}

// ---------------------------------------------------------------------------
// integer PRS (used for true gcds and the Sturm counting oracle)
// ---------------------------------------------------------------------------

// pseudo-remainder scaled by a POSITIVE constant multiple of the true
// remainder (sign-stable, as Sturm chains require)
IntPoly prem_signed(const IntPoly& a, const IntPoly& b) {
    assert(!b.empty());
    IntPoly r = a;
    istrip(r);
    const Integer& lcb = b.back();
    const int db = ideg(b);
    int e = ideg(r) - db + 1;
    while (!r.empty() && ideg(r) >= db) {
        const Integer lcr = r.back();
        const int shift = ideg(r) - db;
        for (auto& c : r) c *= lcb;
        for (int k = 0; k <= db; ++k) r[k + shift] -= lcr * b[k];
        istrip(r);
        --e;
    }
    if (e > 0) {
        Integer scale;
        mpz_pow_ui(scale.get_mpz_t(), lcb.get_mpz_t(), static_cast<unsigned>(e));
        for (auto& c : r) c *= scale;
    }
    int total_e = ideg(a) - db + 1;
    if (total_e > 0 && sgn(lcb) < 0 && (total_e & 1)) {
        for (auto& c : r) c = -c;
    }
    return r;
}

IntPoly int_gcd(IntPoly a, IntPoly b) {
    make_primitive(a);
    make_primitive(b);
    if (ideg(a) < ideg(b)) std::swap(a, b);
    while (!b.empty()) {
        IntPoly r = prem_signed(a, b);
        make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && sgn(a.back()) < 0)
        for (auto& c : a) c = -c;
    return a;
}

// exact division, valid when b | a over Z (Gauss, both primitive)
IntPoly int_divexact(const IntPoly& a, const IntPoly& b) {
    assert(!b.empty());
    IntPoly r = a;
    IntPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Integer(0));
    istrip(r);
    const int db = ideg(b);
    while (!r.empty() && ideg(r) >= db) {
        const int shift = ideg(r) - db;
        Integer qc;
        mpz_divexact(qc.get_mpz_t(), r.back().get_mpz_t(), b.back().get_mpz_t());
        q[shift] = qc;
        for (int k = 0; k <= db; ++k) r[k + shift] -= qc * b[k];
        istrip(r);
    }
    assert(r.empty() && "int_divexact: division was not exact");
    istrip(q);
    return q;
}

// ---------------------------------------------------------------------------
// modular coprimality certificate
// ---------------------------------------------------------------------------

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    unsigned __int128 acc = 1, b = base % p;
    while (e) {
        if (e & 1) acc = acc * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<std::uint64_t> reduce_mod(const IntPoly& a, std::uint64_t p) {
    std::vector<std::uint64_t> r(a.size());
    Integer pz(static_cast<unsigned long>(p)), tmp;
    for (std::size_t k = 0; k < a.size(); ++k) {
        mpz_fdiv_r(tmp.get_mpz_t(), a[k].get_mpz_t(), pz.get_mpz_t());
        r[k] = tmp.get_ui();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// degree of gcd(a, b) mod p, or -1 when p divides a leading coefficient
// (prime unusable). deg(gcd mod p) >= deg(gcd over Z) for usable primes, so a
// constant modular gcd certifies coprimality over Q.
int mod_gcd_degree(const IntPoly& a, const IntPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return -1;
    auto am = reduce_mod(a, p);
    auto bm = reduce_mod(b, p);
    if (am.size() != a.size() || bm.size() != b.size()) return -1; // lc vanished
    while (!bm.empty()) {
        // am mod bm over F_p
        std::uint64_t inv = pow_mod(bm.back(), p - 2, p);
        while (am.size() >= bm.size()) {
            unsigned __int128 q128 = static_cast<unsigned __int128>(am.back()) * inv % p;
            std::uint64_t q = static_cast<std::uint64_t>(q128);
            std::size_t shift = am.size() - bm.size();
            for (std::size_t k = 0; k < bm.size(); ++k) {
                unsigned __int128 sub = static_cast<unsigned __int128>(q) * bm[k] % p;
                std::uint64_t& c = am[k + shift];
                c = (c + p - static_cast<std::uint64_t>(sub)) % p;
            }
            while (!am.empty() && am.back() == 0) am.pop_back();
            if (am.empty()) break;
        }
        std::swap(am, bm);
    }
    return static_cast<int>(am.size()) - 1;
}

bool certainly_coprime(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return false;
    if (ideg(a) == 0 || ideg(b) == 0) return true;
    static const std::uint64_t primes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL};
    for (std::uint64_t p : primes) {
        int d = mod_gcd_degree(a, b, p);
        if (d == 0) return true;
    }
    return false;
}

IntPoly square_free_part(const IntPoly& p) {
    if (p.empty()) return p;
    if (ideg(p) <= 1) return p;
    IntPoly dp = int_derivative(p);
    if (certainly_coprime(p, dp)) return p; // already square-free
    IntPoly g = int_gcd(p, dp);
    if (ideg(g) == 0) return p;
    IntPoly sf = int_divexact(p, g);
    make_primitive(sf);
    return sf;
}

// deflate an exact rational root r = num/den: divide by (den*x - num)
IntPoly deflate_rational_root(const IntPoly& p, const Rational& r) {
    IntPoly lin = {-r.get_num(), r.get_den()};
    IntPoly q = int_divexact(p, lin);
    make_primitive(q);
    return q;
}

// ---------------------------------------------------------------------------
// Descartes / VCA isolation over integers
// ---------------------------------------------------------------------------

int sign_variations(const IntPoly& p) {
    int v = 0, prev = 0;
    for (const auto& c : p) {
        int s = sgn(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// P(x + 1), in place, O(n^2)
void taylor_shift_1(IntPoly& p) {
    if (p.size() <= 1) return;
    const int n = ideg(p);
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) p[j] += p[j + 1];
}

// number of roots in the open unit interval is bounded-below-and-certified by
// the sign variations of (x+1)^n P(1/(x+1)); 0 and 1 are exact answers
int descartes_01_test(const IntPoly& p) {
    IntPoly t(p.rbegin(), p.rend()); // x^n P(1/x)
    taylor_shift_1(t);
    return sign_variations(t);
}

// q(x) = 2^n p(x/2): left-half polynomial of the unit interval, in place
void half_left(IntPoly& p) {
    const int n = ideg(p);
    for (int k = 0; k <= n; ++k)
        mpz_mul_2exp(p[k].get_mpz_t(), p[k].get_mpz_t(), static_cast<unsigned>(n - k));
    make_primitive(p);
}

struct DyadicNode {
    Integer c;   // interval (c/2^k, (c+1)/2^k) of the normalized domain
    unsigned k;
    IntPoly poly;
};

struct VcaOutcome {
    std::vector<std::pair<Rational, Rational>> brackets; // normalized coordinates
    bool restart = false;
    Rational restart_root; // normalized coordinate of an exact dyadic root
};

// isolates roots of the square-free normalized polynomial over the open unit
// interval; endpoints must be non-roots
VcaOutcome vca_isolate(IntPoly p01) {
    VcaOutcome out;
    std::vector<DyadicNode> stack;
    stack.push_back({Integer(0), 0, std::move(p01)});
    while (!stack.empty()) {
        DyadicNode node = std::move(stack.back());
        stack.pop_back();
        int v = descartes_01_test(node.poly);
        if (v == 0) continue;
        Integer denom(1);
        mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), node.k);
        if (v == 1) {
            Rational lo(node.c, denom), hi(node.c + 1, denom);
            lo.canonicalize();
            hi.canonicalize();
            out.brackets.emplace_back(std::move(lo), std::move(hi));
            continue;
        }
        // split; the midpoint may be an exact root
        IntPoly left = node.poly;
        half_left(left);
        IntPoly right = left;
        taylor_shift_1(right);
        istrip(right);
        if (right.empty() || right[0] == 0) {
            Rational mid(2 * node.c + 1, 2 * denom);
            mid.canonicalize();
            out.restart = true;
            out.restart_root = std::move(mid);
            return out;
        }
        stack.push_back({2 * node.c + 1, node.k + 1, std::move(right)});
        stack.push_back({2 * node.c, node.k + 1, std::move(left)});
    }
    return out;
}

// normalized form of p over [lo, hi]: integer-primitive q with
// q(t) ~ p(lo + (hi-lo) t), roots mapped onto (0,1)
IntPoly normalize_to_unit(const IntPoly& p, const Rational& lo, const Rational& hi) {
    Rational w = hi - lo;
    Integer D;
    mpz_lcm(D.get_mpz_t(), lo.get_den().get_mpz_t(), w.get_den().get_mpz_t());
    Integer A = lo.get_num() * (D / lo.get_den());
    Integer B = w.get_num() * (D / w.get_den());
    const int n = ideg(p);
    // Horner in the linear form (A + B t), rescaling by D each level
    IntPoly acc = {p.back()};
    for (int k = n - 1; k >= 0; --k) {
        // acc = acc*(A + B t) + p[k]*D^(n-k)
        IntPoly next(acc.size() + 1, Integer(0));
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * A;
            next[j + 1] += acc[j] * B;
        }
        Integer dpow;
        mpz_pow_ui(dpow.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned>(n - k));
        next[0] += p[k] * dpow;
        acc = std::move(next);
        istrip(acc);
        if (acc.empty()) acc = {Integer(0)}; // keep shape; stripped below
    }
    istrip(acc);
    make_primitive(acc);
    return acc;
}

// true iff the square-free primitive g has a root strictly inside (lo, hi);
// endpoints must be non-roots of g
bool has_root_inside(const IntPoly& g, const Rational& lo, const Rational& hi) {
    if (g.empty() || ideg(g) == 0) return false;
    if (!(lo < hi)) return false;
    IntPoly q = normalize_to_unit(g, lo, hi);
    std::vector<IntPoly> stack{std::move(q)};
    while (!stack.empty()) {
        IntPoly p = std::move(stack.back());
        stack.pop_back();
        int v = descartes_01_test(p);
        if (v == 0) continue;
        if (v == 1) return true;
        IntPoly left = p;
        half_left(left);
        IntPoly right = left;
        taylor_shift_1(right);
        istrip(right);
        if (right.empty() || right[0] == 0) return true; // exact midpoint root
        stack.push_back(std::move(right));
        stack.push_back(std::move(left));
    }
    return false;
}

const Rational& w_iso_default() {
    static const Rational w = rat_pow2_neg(30);
    return w;
}

} // namespace

const Rational& default_isolation_width() { return w_iso_default(); }

AlgebraicNumber::AlgebraicNumber() : AlgebraicNumber(from_rational(Rational(0))) {}

AlgebraicNumber AlgebraicNumber::from_rational(Rational r) {
    AlgebraicNumber a{Raw{}};
    a.rational_ = true;
    a.value_ = r;
    a.lo_ = r;
    a.hi_ = std::move(r);
    a.sign_lo_ = 0;
    auto def = std::make_shared<IntPoly>(IntPoly{-a.value_.get_num(), a.value_.get_den()});
    a.defining_ = std::move(def);
    return a;
}

AlgebraicNumber::AlgebraicNumber(std::shared_ptr<const IntPoly> defining, Rational lo,
                                 Rational hi)
    : rational_(false), lo_(std::move(lo)), hi_(std::move(hi)), defining_(std::move(defining)) {
    sign_lo_ = int_sign_at(*defining_, lo_);
    assert(sign_lo_ != 0 && int_sign_at(*defining_, hi_) == -sign_lo_ &&
           "isolating bracket must change sign at non-root endpoints");
}

const Rational& AlgebraicNumber::value() const {
    if (!rational_) throw ConfigError("AlgebraicNumber::value on irrational value");
    return value_;
}

AlgebraicNumber AlgebraicNumber::refined(const Rational& w) const {
    if (rational_ || hi_ - lo_ <= w) return *this;
    AlgebraicNumber a = *this;
    while (a.hi_ - a.lo_ > w) {
        Rational m = (a.lo_ + a.hi_) / 2;
        int s = int_sign_at(*defining_, m);
        if (s == 0) return from_rational(std::move(m));
        if (s == a.sign_lo_)
            a.lo_ = std::move(m);
        else
            a.hi_ = std::move(m);
    }
    return a;
}

int compare(const AlgebraicNumber& a, const Rational& r) {
    if (a.is_rational()) {
        int c = cmp(a.value(), r);
        return c < 0 ? -1 : (c == 0 ? 0 : +1);
    }
    // irrational: the root lies strictly inside (lo, hi), endpoints non-roots
    if (r <= a.lo()) return +1;
    if (r >= a.hi()) return -1;
    int s = int_sign_at(a.defining(), r);
    if (s == 0) return 0;                 // r is the unique root in the bracket
    return s == a.sign_at_lo() ? +1 : -1; // lo-side sign => root right of r
}

namespace {

bool gcd_has_root_in(const IntPoly& g, const Rational& lo, const Rational& hi) {
    if (g.empty() || ideg(g) == 0) return false;
    // callers guarantee endpoints are non-roots of g
    IntPoly gsf = square_free_part(g);
    return has_root_inside(gsf, lo, hi);
}

} // namespace

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational()) return -compare(b, a.value());
    if (b.is_rational()) return compare(a, b.value());

    // copies of one isolation output: same defining object, same bracket
    if (a.defining_ptr() == b.defining_ptr() && a.lo() == b.lo() && a.hi() == b.hi())
        return 0;

    // touching brackets decide strictly: roots are interior to their brackets
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return +1;

    // overlapping brackets: equality is decidable once, via the gcd
    Rational olo = std::max(a.lo(), b.lo());
    Rational ohi = std::min(a.hi(), b.hi());
    if (a.defining_ptr() == b.defining_ptr() || a.defining() == b.defining()) {
        // same defining polynomial: equal iff the shared root is in the overlap
        if (gcd_has_root_in(a.defining(), olo, ohi)) return 0;
    } else if (!certainly_coprime(a.defining(), b.defining())) {
        IntPoly g = int_gcd(a.defining(), b.defining());
        if (gcd_has_root_in(g, olo, ohi)) return 0;
    }

    // distinct: refine until the brackets separate
    AlgebraicNumber x = a, y = b;
    while (true) {
        if (!x.is_rational()) x = x.refined(x.bracket_width() / 2);
        if (!y.is_rational()) y = y.refined(y.bracket_width() / 2);
        if (x.is_rational()) return -compare(y, x.value());
        if (y.is_rational()) return compare(x, y.value());
        if (x.hi() <= y.lo()) return -1;
        if (y.hi() <= x.lo()) return +1;
    }
}

int sign_at(const UniPoly& p, const AlgebraicNumber& a) {
    if (p.is_zero()) return 0;
    IntPoly ip = int_from_unipoly(p);
    if (a.is_rational()) return int_sign_at(ip, a.value());
    if (!certainly_coprime(ip, a.defining())) {
        IntPoly g = int_gcd(ip, a.defining());
        if (gcd_has_root_in(g, a.lo(), a.hi())) return 0;
    }
    // p(a) != 0: refine until interval evaluation of p excludes zero
    AlgebraicNumber x = a;
    while (true) {
        // naive rational interval Horner over [lo, hi]
        Rational lo(0), hi(0);
        for (std::size_t k = ip.size(); k-- > 0;) {
            Rational nlo = std::min(std::min(lo * x.lo(), lo * x.hi()),
                                    std::min(hi * x.lo(), hi * x.hi()));
            Rational nhi = std::max(std::max(lo * x.lo(), lo * x.hi()),
                                    std::max(hi * x.lo(), hi * x.hi()));
            Rational c(ip[k]);
            lo = nlo + c;
            hi = nhi + c;
        }
        if (sgn(lo) > 0) return +1;
        if (sgn(hi) < 0) return -1;
        x = x.refined(x.bracket_width() / 2);
        if (x.is_rational()) return int_sign_at(ip, x.value());
    }
}

Rational interior_rational(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    AlgebraicNumber x = a, y = b;
    while (!(x.hi() < y.lo())) {
        if (x.is_rational() && y.is_rational()) return (x.value() + y.value()) / 2;
        if (!x.is_rational()) x = x.refined(x.bracket_width() / 2);
        if (!y.is_rational()) y = y.refined(y.bracket_width() / 2);
    }
    return (x.hi() + y.lo()) / 2;
}

std::vector<AlgebraicNumber> isolate_roots(const UniPoly& p, const RatInterval& domain,
                                           const Rational& w_iso) {
    if (p.is_zero()) throw ZeroPolynomialError("isolate_roots: zero polynomial");
    if (!(domain.lo < domain.hi))
        throw ConfigError("isolate_roots: domain must satisfy lo < hi");

    IntPoly sf = square_free_part(int_from_unipoly(p));
    if (ideg(sf) == 0) return {}; // nonzero constant: no roots

    std::vector<Rational> exact_roots;

    // peel off rational roots at the domain endpoints and any roots hit
    // exactly by dyadic split points; isolation then runs with non-root
    // endpoints throughout
    while (ideg(sf) > 0) {
        if (int_sign_at(sf, domain.lo) == 0) {
            exact_roots.push_back(domain.lo);
            sf = deflate_rational_root(sf, domain.lo);
            continue;
        }
        if (int_sign_at(sf, domain.hi) == 0) {
            exact_roots.push_back(domain.hi);
            sf = deflate_rational_root(sf, domain.hi);
            continue;
        }
        break;
    }

    std::vector<std::pair<Rational, Rational>> brackets;
    while (ideg(sf) > 0) {
        brackets.clear();
        VcaOutcome out = vca_isolate(normalize_to_unit(sf, domain.lo, domain.hi));
        if (!out.restart) {
            // map normalized brackets back to the domain
            Rational w = domain.hi - domain.lo;
            for (auto& [nlo, nhi] : out.brackets)
                brackets.emplace_back(domain.lo + w * nlo, domain.lo + w * nhi);
            break;
        }
        Rational root = domain.lo + (domain.hi - domain.lo) * out.restart_root;
        exact_roots.push_back(root);
        sf = deflate_rational_root(sf, root);
    }

    auto defining = std::make_shared<const IntPoly>(sf);

    std::vector<AlgebraicNumber> roots;
    roots.reserve(exact_roots.size() + brackets.size());
    for (auto& r : exact_roots) roots.push_back(AlgebraicNumber::from_rational(std::move(r)));
    for (auto& [blo, bhi] : brackets) {
        AlgebraicNumber a(defining, blo, bhi);
        AlgebraicNumber r = a.refined(w_iso);
        if (!r.is_rational()) {
            // recognize small-denominator rational roots exactly
            Rational cand = simplest_rational_in(r.lo(), r.hi());
            if (int_sign_at(*defining, cand) == 0) r = AlgebraicNumber::from_rational(cand);
        }
        roots.push_back(std::move(r));
    }
    std::sort(roots.begin(), roots.end(),
              [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
                  return compare(a, b) < 0;
              });
    return roots;
}

namespace {

// classical Sturm chain; kept as the independent counting oracle
struct SturmChain {
    std::vector<IntPoly> seq;

    explicit SturmChain(const IntPoly& sf) {
        seq.push_back(sf);
        IntPoly d = int_derivative(sf);
        make_primitive(d);
        if (d.empty()) return;
        seq.push_back(std::move(d));
        while (ideg(seq.back()) > 0) {
            IntPoly r = prem_signed(seq[seq.size() - 2], seq.back());
            for (auto& c : r) c = -c;
            make_primitive(r);
            if (r.empty()) break;
            seq.push_back(std::move(r));
        }
    }

    int variations_at(const Rational& t) const {
        int v = 0, prev = 0;
        for (const auto& p : seq) {
            int s = int_sign_at(p, t);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    int count_open(const Rational& a, const Rational& b) const {
        return variations_at(a) - variations_at(b);
    }
};

} // namespace

int count_real_roots(const UniPoly& p, const RatInterval& domain) {
    if (p.is_zero()) throw ZeroPolynomialError("count_real_roots: zero polynomial");
    IntPoly sf = square_free_part(int_from_unipoly(p));
    if (!sf.empty() && ideg(sf) == 0) return 0;
    int extra = 0;
    while (ideg(sf) > 0) {
        if (int_sign_at(sf, domain.lo) == 0) {
            ++extra;
            sf = deflate_rational_root(sf, domain.lo);
            continue;
        }
        if (int_sign_at(sf, domain.hi) == 0) {
            ++extra;
            sf = deflate_rational_root(sf, domain.hi);
            continue;
        }
        break;
    }
    if (sf.empty() || ideg(sf) == 0) return extra;
    SturmChain chain(sf);
    return extra + chain.count_open(domain.lo, domain.hi);
}

SublevelIntervals sublevel_intervals(const UniPoly& p, const RatInterval& domain,
                                     const Rational& w_iso) {
    SublevelIntervals out;
    if (p.is_zero()) {
        out.degenerate_zero = true;
        out.intervals.emplace_back(AlgebraicNumber::from_rational(domain.lo),
                                   AlgebraicNumber::from_rational(domain.hi));
        return out;
    }
    std::vector<AlgebraicNumber> cuts;
    cuts.push_back(AlgebraicNumber::from_rational(domain.lo));
    for (auto& r : isolate_roots(p, domain, w_iso)) {
        // endpoint roots are already present as interval cuts
        if (r.is_rational() && (r.value() == domain.lo || r.value() == domain.hi)) continue;
        cuts.push_back(std::move(r));
    }
    cuts.push_back(AlgebraicNumber::from_rational(domain.hi));

    IntPoly ip = int_from_unipoly(p);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        Rational sample = interior_rational(cuts[k], cuts[k + 1]);
        if (int_sign_at(ip, sample) < 0)
            out.intervals.emplace_back(cuts[k], cuts[k + 1]);
    }
    return out;
}

} // namespace gdtune
