#pragma once

#include <cstdint>
#include <initializer_list>

#include "gdtune/interval.hpp"
#include "gdtune/rational.hpp"

namespace gdtune {

/// SplitMix64 finalizer; the basis of the counter-based stream below.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based deterministic RNG. The stream is a pure function of the key,
/// and keys are pure functions of their parts, so draw k of stream (s, k) is
/// reproducible regardless of evaluation order or thread schedule.
class CounterRng {
public:
    explicit CounterRng(std::initializer_list<std::uint64_t> key_parts) {
        key_ = 0x243F6A8885A308D3ULL; // arbitrary nonzero start
        for (std::uint64_t p : key_parts) key_ = splitmix64(key_ ^ p);
    }

    std::uint64_t next() { return splitmix64(key_ + (ctr_++) * 0x9E3779B97F4A7C15ULL); }

    /// Uniform in [0, n), bias-free by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = next();
        while (r >= limit) r = next();
        return r % n;
    }

    /// Uniform rational on the denominator-2^16 lattice intersected with range.
    Rational lattice(const RatInterval& range, unsigned log2_den = 16) {
        Integer den(1);
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), log2_den);
        Rational dl = range.lo * Rational(den);
        Rational dh = range.hi * Rational(den);
        Integer lo, hi;
        mpz_cdiv_q(lo.get_mpz_t(), dl.get_num().get_mpz_t(), dl.get_den().get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), dh.get_num().get_mpz_t(), dh.get_den().get_mpz_t());
        if (hi < lo) return range.lo; // no lattice point; degenerate range
        Integer count = hi - lo + 1;
        // count fits in 64 bits for any sane range
        std::uint64_t k = below(count.get_ui());
        Rational r(lo + Integer(static_cast<unsigned long>(k)), den);
        r.canonicalize();
        return r;
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace gdtune
