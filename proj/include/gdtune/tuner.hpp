#pragma once

#include "gdtune/gdtrace.hpp"
#include "gdtune/instances.hpp"

namespace gdtune {

struct ErmResult {
    Rational eta_hat;
    Rational train_mean_cost;
    AlgebraicNumber cell_lo, cell_hi;
    std::size_t sample_size = 0;
    std::size_t breakpoint_count = 0; // of the summed (mean) dual
};

/// Exact ERM over the step size: mean of the duals, leftmost argmin cell,
/// certified interior representative.
ErmResult erm_stepsize(std::span<const PwConstFn> duals);

/// Exact dual cost functions for a sample of instances under one binding.
/// Instances must be exactly traceable. Deterministic result order.
std::vector<PwConstFn> sample_duals(std::span<const Instance> sample,
                                    const ParamBinding& binding, const GDConfig& cfg,
                                    int threads = 1);

struct ExperimentRow {
    int trial = 0;
    int m = 0;
    Rational eta_hat, train_mean, test_mean, sup_gap;
    long long wall_ms = 0;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
    nlohmann::json metadata;
    /// Header: trial,m,eta_hat,train_mean,test_mean,sup_gap,wall_ms.
    /// wall_ms is written as 0 unless with_timings (byte-stable output).
    std::string to_csv(bool with_timings = false) const;
};

/// Per trial: a fresh test sample of test_size proxies the population mean;
/// per m: draw a train sample, run exact ERM, record the exact uniform
/// sup-gap and the gap at eta_hat. Budget-failed instances are resampled
/// deterministically (count recorded in metadata).
ExperimentReport uniform_convergence_experiment(const InstanceDistribution& dist,
                                                std::span<const int> m_schedule, int trials,
                                                const GDConfig& cfg, int test_size,
                                                std::uint64_t seed, int threads = 1);

/// Largest m <= m_max such that some m-subset of the duals is pseudo-shattered
/// by the step-size family (witnesses from value midpoints, cells from the
/// refined breakpoint partition). Throws CapExceeded for m_max > 3.
int empirical_pdim_lower_bound(std::span<const PwConstFn> duals, int m_max);

// --- bound calculators ---------------------------------------------------------

enum class BoundRegime {
    sample_pdim,       // (H/eps)^2 (pdim + ln 1/delta)
    pdim_from_pieces,  // log2 N
    sample_poly,       // (H^2/eps^2)(H ln D + ln 1/delta)
    sample_pwpoly,     // (H^2/eps^2)(H ln(p d D) + ln 1/delta)
    sample_pfaffian,   // (H^2/eps^2)(q^2 d^2 H^2 + q d H ln(D+M) + ln 1/delta)
    sample_schedule,   // (H^2/eps^2)(H^2 ln(p d D) + ln 1/delta)
    sample_init_scale, // (H^2/eps^2)(H ln(p d D) + ln 1/delta)
    sample_init_vector,// (H^2/eps^2)(d H ln(p d D) + ln 1/delta)
    sample_momentum,   // (H^2/eps^2)(H ln(p d D) + ln 1/delta)
    sample_validation, // (H^2/eps^2)(H ln(p d D) + ln(D_v p_v / delta))
    pdim_gj,           // n ln(D Lambda)
    pdim_poly,         // H ln D
    pdim_pwpoly,       // H ln(p d D)
    pdim_pfaffian,     // q^2 d^2 H^2 + q d H ln(D+M)
    pdim_schedule,     // H^2 ln(p d D)
    pdim_init_vector,  // d H ln(p d D)
    pdim_validation,   // H ln(p d D) + ln(D_v p_v)
    warren,            // (4 e degree s / n)^n
    khovanskii,        // 2^(dq(dq-1)/2) D^d (d^2 (D+M))^(dq)
    pieces_poly,       // D^H
    pieces_pwpoly,     // (2 p d D)^H
    pieces_pfaffian,   // 2^(q^2 d^2 H^2) (D+M)^(q d H)
};

BoundRegime bound_regime_from_string(const std::string& name);
std::string bound_regime_to_string(BoundRegime r);

struct BoundQuery {
    BoundRegime regime = BoundRegime::sample_poly;
    double H = 0, eps = 0, delta_conf = 0; // delta_conf is the failure probability
    double Delta = 0, p = 0, d = 0;
    double q = 0, M = 0;
    double Delta_v = 0, p_v = 0;
    double n = 0, s = 0, degree = 0, Lambda = 0;
    double pdim = 0, pieces = 0;
};

struct BoundValue {
    double value = 0;       // may be inf for astronomically large shapes
    double log10_value = 0; // always finite when the formula is
    std::string formula;
    std::string note; // "shape value, not a rigorous constant"
};

/// Evaluates the cited formula with every asymptotic constant set to 1.
BoundValue bounds_calculator(const BoundQuery& q);

// --- multi-parameter tuning ------------------------------------------------------

struct ScheduleStep {
    int sweep = 0;
    int round = 0; // 1-based coordinate
    Rational old_value, new_value;
    Rational mean_before, mean_after;
};

struct ScheduleResult {
    std::vector<Rational> schedule;
    std::vector<ScheduleStep> steps;
    Rational final_mean;
};

/// Cyclic exact coordinate descent over the per-round step sizes; the
/// empirical mean cost is non-increasing at every coordinate update.
ScheduleResult schedule_coordinate_descent(std::span<const Instance> sample,
                                           const GDConfig& cfg, int sweeps,
                                           std::vector<Rational> init_schedule,
                                           int threads = 1);

struct MomentumTuneResult {
    Rational best_gamma;
    ErmResult best;
    std::vector<std::pair<Rational, ErmResult>> per_gamma;
};

struct OracleCheckResult {
    int instances = 0;
    long long points_checked = 0;
    long long points_skipped = 0; // within tol of an exact breakpoint
    long long mismatches = 0;
    int substitutions = 0; // budget-failed instances resampled
};

/// Compares the exact dual against floating-point runs at grid+1 uniformly
/// spaced parameter values, skipping points within tol of an exact breakpoint.
OracleCheckResult oracle_check(std::span<const Instance> sample, const GDConfig& cfg,
                               int grid, const Rational& tol, int threads = 1);

/// Exact ERM over eta at each grid gamma; best (gamma, eta_hat) by empirical
/// mean (ties to the earlier grid entry). literal_update selects the
/// x_{i+1} = x_i + y_i variant of the momentum recursion.
MomentumTuneResult momentum_grid_tune(std::span<const Instance> sample, const GDConfig& cfg,
                                      std::span<const Rational> gamma_grid, int threads = 1,
                                      bool literal_update = false);

} // namespace gdtune
