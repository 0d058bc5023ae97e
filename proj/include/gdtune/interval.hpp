#pragma once

#include "gdtune/rational.hpp"

namespace gdtune {

/// Closed rational interval [lo, hi].
struct RatInterval {
    Rational lo;
    Rational hi;

    RatInterval() = default;
    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool operator==(const RatInterval& o) const { return lo == o.lo && hi == o.hi; }
};

} // namespace gdtune
