#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gdtune/interval.hpp"
#include "gdtune/realroots.hpp"
#include "gdtune/unipoly.hpp"

namespace gdtune {

/// Checked reconstruction of an algebraic number from serialized data.
AlgebraicNumber algebraic_from_bracket(const UniPoly& defining, const Rational& lo,
                                       const Rational& hi);

/// Piecewise-constant function of one hyperparameter over a closed rational
/// domain. Cells are the open intervals between consecutive breakpoints (and
/// domain endpoints); values at breakpoints follow the left-cell convention.
/// Operations emit canonical values (no adjacent equal cells); `make` keeps
/// the cells as given.
struct PwConstFn {
    RatInterval domain;
    std::vector<AlgebraicNumber> breakpoints;
    std::vector<Rational> values; // size = breakpoints.size() + 1

    static PwConstFn constant(RatInterval dom, Rational v);
    /// Validates ordering and interiority; does not merge equal neighbors.
    static PwConstFn make(RatInterval dom, std::vector<AlgebraicNumber> bps,
                          std::vector<Rational> vals);

    std::size_t cell_count() const { return values.size(); }
    /// Value at a rational point; at a breakpoint, the left cell's value.
    const Rational& value_at(const Rational& t) const;
    /// Merge adjacent cells with equal values.
    PwConstFn canonicalized() const;

    nlohmann::json to_json() const;
    static PwConstFn from_json(const nlohmann::json& j);
};

/// Piecewise-polynomial function with the same cell conventions.
struct PwPolyFn {
    RatInterval domain;
    std::vector<AlgebraicNumber> breakpoints;
    std::vector<UniPoly> pieces; // size = breakpoints.size() + 1

    static PwPolyFn make(RatInterval dom, std::vector<AlgebraicNumber> bps,
                         std::vector<UniPoly> pieces);

    std::size_t cell_count() const { return pieces.size(); }
    Rational value_at(const Rational& t) const;
    double value_at_double(double t) const;

    nlohmann::json to_json() const;
    static PwPolyFn from_json(const nlohmann::json& j);
};

/// Sorted union of breakpoint lists with exact duplicate elimination.
std::vector<AlgebraicNumber> partition_refine(
    std::span<const std::vector<AlgebraicNumber>> partitions);

/// Exact cellwise mean of piecewise-constant functions (the empirical risk of
/// a sample of duals); canonical output. Throws DomainMismatch.
PwConstFn pwconst_mean(std::span<const PwConstFn> fs);

/// Cellwise rational sum (tree-folded); canonical output.
PwConstFn pwconst_sum(std::span<const PwConstFn> fs);

struct ArgminResult {
    std::size_t cell_index = 0;                  // in the function as stored
    AlgebraicNumber cell_lo, cell_hi;            // domain endpoints included
    Rational value;
    Rational eta_hat;                            // certified interior rational
};

/// Leftmost cell attaining the minimum value, with a certified interior
/// representative point.
ArgminResult pwconst_argmin(const PwConstFn& f);

/// Exact sup-norm of f - g over the (shared) domain.
Rational pw_sup_diff(const PwConstFn& f, const PwConstFn& g);

struct PwMinResult {
    AlgebraicNumber location;  // leftmost global minimizer over the closed domain
    bool value_exact = false;
    Rational value;            // set when value_exact
    RatInterval value_bracket; // certified bracket (width <= 2^-30); always set
};

/// Global infimum of a piecewise polynomial over its closed domain; endpoint
/// values are one-sided limits of the adjacent piece.
PwMinResult pwpoly_min(const PwPolyFn& f);

// serialization helpers shared with instance files
nlohmann::json algebraic_to_json(const AlgebraicNumber& a);
AlgebraicNumber algebraic_from_json(const nlohmann::json& j);
nlohmann::json unipoly_to_json(const UniPoly& p);
UniPoly unipoly_from_json(const nlohmann::json& j);

} // namespace gdtune
