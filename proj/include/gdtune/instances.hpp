#pragma once

#include <optional>
#include <variant>

#include "json.hpp"

#include "gdtune/objective.hpp"
#include "gdtune/rng.hpp"

namespace gdtune {

// --- serializable objective descriptions --------------------------------------

struct PolySpec {
    MultiPoly poly;
};

struct PwPolySpec {
    int dim = 1;
    std::vector<MultiPoly> boundaries;
    std::map<std::string, MultiPoly> pieces;
};

struct NetSpec {
    std::vector<int> widths; // input, hidden..., output
    Activation activation = Activation::relu;
    std::vector<NetSample> data;
    std::vector<int> free_indices;
    std::vector<Rational> frozen;          // full flat weight vector
    std::optional<MultiPoly> regularizer;  // polynomial in the free weights
};

using ObjectiveSpec = std::variant<PolySpec, PwPolySpec, NetSpec>;

int objective_spec_dim(const ObjectiveSpec& spec);

/// A problem instance (x0, f[, f_v]).
struct Instance {
    std::string label;
    std::optional<std::vector<Rational>> x0; // absent when a binding supplies it
    ObjectiveSpec objective;
    std::optional<ObjectiveSpec> validation;
};

/// Materialized objective with stable storage for the numeric interface.
struct BuiltObjective {
    std::optional<PwPolyObjective> pw;
    std::optional<SmoothNetDescriptor> net;

    bool exact() const { return pw.has_value(); }
    NumericObjective numeric() const {
        return {pw ? &*pw : nullptr, net ? &*net : nullptr};
    }
    const PwPolyObjective& exact_or_throw() const {
        if (!pw) throw ConfigError("objective has no exact piecewise form (smooth activation)");
        return *pw;
    }
};

/// Expand an objective description. ReLU nets become PwPolyObjective with
/// pre-activation boundaries (one hidden layer) and lazily generated pieces;
/// sigmoid/tanh nets become smooth descriptors for the numeric oracle only.
/// Throws BudgetExceeded when the boundary count exceeds piece_cap_p.
BuiltObjective build_objective(const ObjectiveSpec& spec, int piece_cap_p = 16);

// --- generators ----------------------------------------------------------------

/// Every monomial of total degree <= delta gets an independent coefficient
/// drawn uniformly from the denominator-2^16 lattice inside coeff_range.
MultiPoly gen_random_poly(int d, int delta, const RatInterval& coeff_range,
                          std::uint64_t seed);

/// Net-MSE objective spec; missing frozen weights are drawn from the lattice
/// on weight_range with the given seed.
NetSpec gen_net_mse(std::vector<int> widths, Activation activation,
                    std::vector<NetSample> data, std::vector<int> free_indices,
                    std::vector<Rational> frozen, std::uint64_t seed,
                    RatInterval weight_range = {Rational(-1), Rational(1)});

// --- distributions -------------------------------------------------------------

struct RandomPolyFamily {
    int d = 1;
    int delta = 2;
    RatInterval coeff_range{Rational(-1), Rational(1)};
    RatInterval x0_range{Rational(-1), Rational(1)};
    bool with_validation = false;
    int delta_v = 2;
};

struct ScalarQuadraticFamily {
    RatInterval curvature{Rational(1, 2), Rational(2)};
};

struct NetMseFamily {
    std::vector<int> widths;
    Activation activation = Activation::relu;
    std::vector<NetSample> data;
    std::vector<int> free_indices;
    RatInterval weight_range{Rational(-1), Rational(1)};
    bool with_validation = false;
    int delta_v = 2;
};

using FamilySpec = std::variant<RandomPolyFamily, ScalarQuadraticFamily, NetMseFamily>;

struct InstanceDistribution {
    FamilySpec family;
    std::uint64_t seed = 0;
};

/// Draw k of the stream (dist.seed, seed): a pure function of (seeds, k), so
/// parallel sampling matches sequential sampling.
Instance sample_instance(const InstanceDistribution& dist, std::uint64_t seed,
                         std::uint64_t index);

std::vector<Instance> sample_instances(const InstanceDistribution& dist, int m,
                                       std::uint64_t seed);

// --- instance files -------------------------------------------------------------

nlohmann::json multipoly_to_json(const MultiPoly& f);
MultiPoly multipoly_from_json(const nlohmann::json& j, int dim);

nlohmann::json family_to_json(const FamilySpec& family);
FamilySpec family_from_json(const nlohmann::json& j);

std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

} // namespace gdtune
