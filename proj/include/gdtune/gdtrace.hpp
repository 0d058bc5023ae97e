#pragma once

#include <variant>

#include "gdtune/objective.hpp"
#include "gdtune/piecewise.hpp"

namespace gdtune {

/// Trace configuration: iteration cap H, gradient threshold theta, the
/// rational domain of the free hyperparameter, and the symbolic size budget.
struct GDConfig {
    int H = 5;
    Rational theta = Rational(1, 10);
    RatInterval domain;
    Budget budget;
    Rational w_iso = default_isolation_width();

    void validate() const;
};

// --- hyperparameter bindings -------------------------------------------------

/// Free step size; x_{i+1} = x_i - t * grad f(x_i).
struct StepsizeBinding {};

/// Free initialization scale: x_1 = t * direction, fixed step eta.
struct InitScaleBinding {
    std::vector<Rational> direction;
    Rational eta;
};

/// Free initial coordinate: x_1 = base with coordinate `index` replaced by t.
struct InitCoordBinding {
    int index = 0;
    std::vector<Rational> base;
    Rational eta;
};

/// Free schedule entry: round free_round uses step t, the others use the
/// fixed schedule (1-based rounds; schedule.size() == H).
struct ScheduleCoordBinding {
    int free_round = 1;
    std::vector<Rational> schedule;
};

/// Momentum with free step size t at fixed gamma:
///   y_{i+1} = gamma*y_i - t*grad f(x_i); x_{i+1} = x_i + y_{i+1}.
/// literal_update switches to the variant x_{i+1} = x_i + y_i.
struct MomentumEtaBinding {
    Rational gamma;
    bool literal_update = false;
};

using ParamBinding = std::variant<StepsizeBinding, InitScaleBinding, InitCoordBinding,
                                  ScheduleCoordBinding, MomentumEtaBinding>;

// --- results -----------------------------------------------------------------

struct SettledCell {
    AlgebraicNumber lo, hi;
    int cost = 0;
    bool converged = false;
    /// The algorithm's returned point as a curve in the free parameter:
    /// x_cost on converged cells, x_{H+1} on exhausted cells. Populated only
    /// for validation traces; empty otherwise.
    std::vector<UniPoly> final_point;
};

struct TraceStats {
    int rounds = 0;
    std::vector<int> max_curve_degree;     // per round, 1-based round = index+1
    std::size_t settlement_cell_count = 0; // raw partition size
    std::size_t cell_count = 0;            // canonical dual cells
    bool degree_bound_ok = true;           // per-round curve degree stayed under D^(i-2)
    bool piece_bound_ok = true;            // (2D)^(H+1) / (4pdD)^(H+1) envelope
    Integer piece_bound;                   // the envelope value
};

/// Exact dual cost function plus the raw settlement partition and invariant
/// bookkeeping.
struct TraceResult {
    PwConstFn dual;
    std::vector<SettledCell> settlement;
    TraceStats stats;
};

TraceResult trace_stepsize(const PwPolyObjective& f, std::span<const Rational> x0,
                           const GDConfig& cfg);

/// x0 is ignored by init-scale/init-coord bindings (they carry their own
/// initial data); required otherwise.
TraceResult trace_param(const PwPolyObjective& f, std::span<const Rational> x0,
                        const ParamBinding& binding, const GDConfig& cfg);

struct ValidationResult {
    PwPolyFn dual; // exact t -> f_v(returned point(t))
    TraceResult trace;
};

ValidationResult trace_validation(const PwPolyObjective& f, const PwPolyObjective& f_v,
                                  std::span<const Rational> x0, const GDConfig& cfg);

// --- numeric oracle ----------------------------------------------------------

struct NumericDualResult {
    PwConstFn approx;
    std::vector<RatInterval> unresolved; // residual breakpoint uncertainty
    int nonfinite_count = 0;             // grid points flagged non-finite (cost H)
};

/// Cost of one floating-point run at parameter value `param`.
int numeric_cost_at(const NumericObjective& obj, std::span<const Rational> x0,
                    const ParamBinding& binding, const GDConfig& cfg, double param,
                    bool* nonfinite = nullptr);

/// Brute-force dual estimate on a uniform grid with bisection refinement of
/// detected jumps.
NumericDualResult numeric_dual(const NumericObjective& obj, std::span<const Rational> x0,
                               const ParamBinding& binding, const GDConfig& cfg, int grid,
                               int refine_rounds);

} // namespace gdtune
