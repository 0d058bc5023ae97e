#include "gdtune/tuner.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "gdtune/threads.hpp"

namespace gdtune {

ErmResult erm_stepsize(std::span<const PwConstFn> duals) {
    if (duals.empty()) throw ConfigError("erm_stepsize: empty sample");
    PwConstFn mean = pwconst_mean(duals);
    ArgminResult arg = pwconst_argmin(mean);
    ErmResult r;
    r.eta_hat = arg.eta_hat;
    r.train_mean_cost = arg.value;
    r.cell_lo = arg.cell_lo;
    r.cell_hi = arg.cell_hi;
    r.sample_size = duals.size();
    r.breakpoint_count = mean.breakpoints.size();
    return r;
}

std::vector<PwConstFn> sample_duals(std::span<const Instance> sample,
                                    const ParamBinding& binding, const GDConfig& cfg,
                                    int threads) {
    std::vector<PwConstFn> duals(sample.size());
    parallel_for(sample.size(), threads, [&](std::size_t k) {
        const Instance& inst = sample[k];
        BuiltObjective built = build_objective(inst.objective);
        std::vector<Rational> x0 = inst.x0 ? *inst.x0 : std::vector<Rational>{};
        duals[k] = trace_param(built.exact_or_throw(), x0, binding, cfg).dual;
    });
    return duals;
}

// ---------------------------------------------------------------------------
// uniform convergence experiment
// ---------------------------------------------------------------------------

namespace {

// deterministic resampling on budget failures: attempt a for slot k draws
// index k + a * 0x100000000
PwConstFn dual_with_resample(const InstanceDistribution& dist, std::uint64_t stream_seed,
                             std::uint64_t index, const GDConfig& cfg, int* substitutions) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Instance inst =
            sample_instance(dist, stream_seed, index + attempt * 0x100000000ULL);
        try {
            BuiltObjective built = build_objective(inst.objective);
            std::vector<Rational> x0 = inst.x0 ? *inst.x0 : std::vector<Rational>{};
            return trace_stepsize(built.exact_or_throw(), x0, cfg).dual;
        } catch (const SymbolicBudgetExceeded&) {
        } catch (const BudgetExceededError&) {
        } catch (const DegenerateTrajectoryError&) {
        }
        ++*substitutions;
        if (attempt > 64)
            throw ConfigError("experiment: distribution keeps exceeding the budget");
    }
}

} // namespace

ExperimentReport uniform_convergence_experiment(const InstanceDistribution& dist,
                                                std::span<const int> m_schedule, int trials,
                                                const GDConfig& cfg, int test_size,
                                                std::uint64_t seed, int threads) {
    cfg.validate();
    if (trials < 1 || test_size < 1 || m_schedule.empty())
        throw ConfigError("experiment: need trials >= 1, test_size >= 1, nonempty m schedule");

    ExperimentReport report;
    std::atomic<int> substitutions{0};

    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t test_seed = splitmix64(seed ^ splitmix64(0x7465u ^ trial));
        std::vector<PwConstFn> test_duals(static_cast<std::size_t>(test_size));
        {
            std::vector<int> subs(static_cast<std::size_t>(test_size), 0);
            parallel_for(static_cast<std::size_t>(test_size), threads, [&](std::size_t k) {
                test_duals[k] = dual_with_resample(dist, test_seed, k, cfg, &subs[k]);
            });
            for (int s : subs) substitutions += s;
        }
        PwConstFn test_mean = pwconst_mean(test_duals);
        test_duals.clear();
        test_duals.shrink_to_fit();

        for (int m : m_schedule) {
            auto t0 = std::chrono::steady_clock::now();
            const std::uint64_t train_seed =
                splitmix64(seed ^ splitmix64(0x7472u ^ trial) ^ splitmix64(0x6d00u ^ m));
            std::vector<PwConstFn> duals(static_cast<std::size_t>(m));
            std::vector<int> subs(static_cast<std::size_t>(m), 0);
            parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t k) {
                duals[k] = dual_with_resample(dist, train_seed, k, cfg, &subs[k]);
            });
            for (int s : subs) substitutions += s;

            PwConstFn train_mean = pwconst_mean(duals);
            ArgminResult arg = pwconst_argmin(train_mean);
            ExperimentRow row;
            row.trial = trial;
            row.m = m;
            row.eta_hat = arg.eta_hat;
            row.train_mean = arg.value;
            row.test_mean = test_mean.value_at(arg.eta_hat);
            row.sup_gap = pw_sup_diff(train_mean, test_mean);
            row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            report.rows.push_back(std::move(row));
        }
    }

    report.metadata["seed"] = seed;
    report.metadata["trials"] = trials;
    report.metadata["test_size"] = test_size;
    report.metadata["m_schedule"] = std::vector<int>(m_schedule.begin(), m_schedule.end());
    report.metadata["distribution"] = family_to_json(dist.family);
    report.metadata["distribution_seed"] = dist.seed;
    report.metadata["cfg"] = {{"H", cfg.H},
                              {"theta", rat_str(cfg.theta)},
                              {"domain", {rat_str(cfg.domain.lo), rat_str(cfg.domain.hi)}}};
    report.metadata["substitutions"] = substitutions.load();
    return report;
}

std::string ExperimentReport::to_csv(bool with_timings) const {
    std::ostringstream os;
    os << "trial,m,eta_hat,train_mean,test_mean,sup_gap,wall_ms\n";
    for (const auto& r : rows) {
        os << r.trial << ',' << r.m << ',' << rat_str(r.eta_hat) << ','
           << rat_str(r.train_mean) << ',' << rat_str(r.test_mean) << ','
           << rat_str(r.sup_gap) << ',' << (with_timings ? r.wall_ms : 0) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// empirical pseudo-dimension lower bound
// ---------------------------------------------------------------------------

namespace {

// value of each chosen dual on every cell of their refined partition
std::vector<std::vector<Rational>> cell_values(std::span<const PwConstFn> duals,
                                               std::span<const std::size_t> chosen) {
    std::vector<std::vector<AlgebraicNumber>> parts;
    for (std::size_t i : chosen) parts.push_back(duals[i].breakpoints);
    std::vector<AlgebraicNumber> merged = partition_refine(parts);

    const RatInterval& dom = duals[chosen.front()].domain;
    std::vector<AlgebraicNumber> cuts;
    cuts.push_back(AlgebraicNumber::from_rational(dom.lo));
    for (auto& b : merged) cuts.push_back(std::move(b));
    cuts.push_back(AlgebraicNumber::from_rational(dom.hi));

    std::vector<std::vector<Rational>> vals(chosen.size());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        Rational sample = interior_rational(cuts[c], cuts[c + 1]);
        for (std::size_t i = 0; i < chosen.size(); ++i)
            vals[i].push_back(duals[chosen[i]].value_at(sample));
    }
    return vals;
}

// witness thresholds: midpoints between consecutive distinct dual values
std::vector<Rational> witness_candidates(const PwConstFn& dual) {
    std::vector<Rational> vals = dual.values;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<Rational> out;
    for (std::size_t k = 0; k + 1 < vals.size(); ++k)
        out.push_back((vals[k] + vals[k + 1]) / 2);
    return out;
}

bool shattered(const std::vector<std::vector<Rational>>& vals,
               const std::vector<std::vector<Rational>>& cands) {
    const std::size_t m = vals.size();
    const std::size_t cells = vals.front().size();
    std::vector<std::size_t> pick(m, 0);
    while (true) {
        // realized sign patterns over cells for this witness choice
        std::vector<bool> seen(static_cast<std::size_t>(1) << m, false);
        std::size_t count = 0;
        for (std::size_t c = 0; c < cells && count < seen.size(); ++c) {
            std::size_t pattern = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (vals[i][c] >= cands[i][pick[i]]) pattern |= (1u << i);
            if (!seen[pattern]) {
                seen[pattern] = true;
                ++count;
            }
        }
        if (count == seen.size()) return true;
        // next witness combination
        std::size_t i = 0;
        while (i < m && ++pick[i] == cands[i].size()) pick[i++] = 0;
        if (i == m) return false;
    }
}

bool some_subset_shattered(std::span<const PwConstFn> duals, int m) {
    const std::size_t n = duals.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(m));
    // enumerate m-subsets
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                            std::size_t start) -> bool {
        if (pos == idx.size()) {
            std::vector<std::vector<Rational>> cands;
            for (std::size_t i : idx) {
                auto c = witness_candidates(duals[i]);
                if (c.empty()) return false; // constant dual cannot be shattered
                cands.push_back(std::move(c));
            }
            return shattered(cell_values(duals, idx), cands);
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[pos] = i;
            if (rec(pos + 1, i + 1)) return true;
        }
        return false;
    };
    return rec(0, 0);
}

} // namespace

int empirical_pdim_lower_bound(std::span<const PwConstFn> duals, int m_max) {
    if (m_max > 3)
        throw CapExceededError("empirical pdim search is capped at m_max <= 3 (got " +
                               std::to_string(m_max) + ")");
    if (duals.empty() || m_max < 1) return 0;
    for (std::size_t k = 1; k < duals.size(); ++k)
        if (!(duals[k].domain == duals[0].domain))
            throw DomainMismatchError("pdim search: dual domains differ");
    int cap = std::min<int>(m_max, static_cast<int>(duals.size()));
    for (int m = cap; m >= 1; --m)
        if (some_subset_shattered(duals, m)) return m;
    return 0;
}

// ---------------------------------------------------------------------------
// bound calculators
// ---------------------------------------------------------------------------

namespace {

struct RegimeName {
    BoundRegime regime;
    const char* name;
};

constexpr RegimeName kRegimes[] = {
    {BoundRegime::sample_pdim, "sample-pdim"},
    {BoundRegime::pdim_from_pieces, "pdim-from-pieces"},
    {BoundRegime::sample_poly, "sample-poly"},
    {BoundRegime::sample_pwpoly, "sample-pwpoly"},
    {BoundRegime::sample_pfaffian, "sample-pfaffian"},
    {BoundRegime::sample_schedule, "sample-schedule"},
    {BoundRegime::sample_init_scale, "sample-init-scale"},
    {BoundRegime::sample_init_vector, "sample-init-vector"},
    {BoundRegime::sample_momentum, "sample-momentum"},
    {BoundRegime::sample_validation, "sample-validation"},
    {BoundRegime::pdim_gj, "pdim-gj"},
    {BoundRegime::pdim_poly, "pdim-poly"},
    {BoundRegime::pdim_pwpoly, "pdim-pwpoly"},
    {BoundRegime::pdim_pfaffian, "pdim-pfaffian"},
    {BoundRegime::pdim_schedule, "pdim-schedule"},
    {BoundRegime::pdim_init_vector, "pdim-init-vector"},
    {BoundRegime::pdim_validation, "pdim-validation"},
    {BoundRegime::warren, "warren"},
    {BoundRegime::khovanskii, "khovanskii"},
    {BoundRegime::pieces_poly, "pieces-poly"},
    {BoundRegime::pieces_pwpoly, "pieces-pwpoly"},
    {BoundRegime::pieces_pfaffian, "pieces-pfaffian"},
};

void need_positive(double v, const char* name) {
    if (!(v > 0)) throw ConfigError(std::string("bounds: parameter ") + name + " must be > 0");
}

} // namespace

BoundRegime bound_regime_from_string(const std::string& name) {
    for (const auto& r : kRegimes)
        if (name == r.name) return r.regime;
    throw ConfigError("bounds: unknown regime '" + name + "'");
}

std::string bound_regime_to_string(BoundRegime regime) {
    for (const auto& r : kRegimes)
        if (regime == r.regime) return r.name;
    return "?";
}

BoundValue bounds_calculator(const BoundQuery& q) {
    BoundValue out;
    out.note = "shape value, not a rigorous constant";
    const double ln10 = std::log(10.0);
    auto from_log_e = [&](double log_e, std::string formula) {
        out.log10_value = log_e / ln10;
        out.value = std::exp(log_e); // inf for astronomically large shapes
        out.formula = std::move(formula);
        return out;
    };
    auto pdim_pw = [&] {
        need_positive(q.p, "p");
        need_positive(q.d, "d");
        need_positive(q.Delta, "Delta");
        need_positive(q.H, "H");
        return q.H * std::log(q.p * q.d * q.Delta);
    };
    auto sample_from_pdim_term = [&](double pdim_term, const std::string& formula) {
        need_positive(q.eps, "eps");
        need_positive(q.delta_conf, "delta");
        double v = (q.H * q.H) / (q.eps * q.eps) * (pdim_term + std::log(1.0 / q.delta_conf));
        out.value = v;
        out.log10_value = std::log10(v);
        out.formula = formula;
        return out;
    };

    switch (q.regime) {
    case BoundRegime::sample_pdim: {
        need_positive(q.H, "H");
        need_positive(q.eps, "eps");
        need_positive(q.delta_conf, "delta");
        need_positive(q.pdim, "pdim");
        double v = (q.H / q.eps) * (q.H / q.eps) * (q.pdim + std::log(1.0 / q.delta_conf));
        out.value = v;
        out.log10_value = std::log10(v);
        out.formula = "(H/eps)^2 * (pdim + ln(1/delta))";
        return out;
    }
    case BoundRegime::pdim_from_pieces: {
        need_positive(q.pieces, "pieces");
        out.value = std::log2(q.pieces);
        out.log10_value = std::log10(std::max(out.value, 1e-300));
        out.formula = "log2(N)";
        return out;
    }
    case BoundRegime::sample_poly:
        need_positive(q.H, "H");
        need_positive(q.Delta, "Delta");
        return sample_from_pdim_term(q.H * std::log(q.Delta),
                                     "(H^2/eps^2) * (H ln(Delta) + ln(1/delta))");
    case BoundRegime::sample_pwpoly:
        return sample_from_pdim_term(pdim_pw(),
                                     "(H^2/eps^2) * (H ln(p d Delta) + ln(1/delta))");
    case BoundRegime::sample_pfaffian: {
        need_positive(q.H, "H");
        need_positive(q.q, "q");
        need_positive(q.d, "d");
        need_positive(q.Delta, "Delta");
        need_positive(q.M, "M");
        double term = q.q * q.q * q.d * q.d * q.H * q.H +
                      q.q * q.d * q.H * std::log(q.Delta + q.M);
        return sample_from_pdim_term(
            term, "(H^2/eps^2) * (q^2 d^2 H^2 + q d H ln(Delta+M) + ln(1/delta))");
    }
    case BoundRegime::sample_schedule: {
        need_positive(q.H, "H");
        double term = q.H * pdim_pw();
        return sample_from_pdim_term(term,
                                     "(H^2/eps^2) * (H^2 ln(p d Delta) + ln(1/delta))");
    }
    case BoundRegime::sample_init_scale:
    case BoundRegime::sample_momentum:
        return sample_from_pdim_term(pdim_pw(),
                                     "(H^2/eps^2) * (H ln(p d Delta) + ln(1/delta))");
    case BoundRegime::sample_init_vector: {
        need_positive(q.d, "d");
        return sample_from_pdim_term(q.d * pdim_pw(),
                                     "(H^2/eps^2) * (d H ln(p d Delta) + ln(1/delta))");
    }
    case BoundRegime::sample_validation: {
        need_positive(q.Delta_v, "Delta_v");
        need_positive(q.p_v, "p_v");
        need_positive(q.eps, "eps");
        need_positive(q.delta_conf, "delta");
        double v = (q.H * q.H) / (q.eps * q.eps) *
                   (pdim_pw() + std::log(q.Delta_v * q.p_v / q.delta_conf));
        out.value = v;
        out.log10_value = std::log10(v);
        out.formula = "(H^2/eps^2) * (H ln(p d Delta) + ln(Delta_v p_v / delta))";
        return out;
    }
    case BoundRegime::pdim_gj: {
        need_positive(q.n, "n");
        need_positive(q.Delta, "Delta");
        need_positive(q.Lambda, "Lambda");
        out.value = q.n * std::log(q.Delta * q.Lambda);
        out.log10_value = std::log10(out.value);
        out.formula = "n ln(Delta Lambda)";
        return out;
    }
    case BoundRegime::pdim_poly:
        need_positive(q.H, "H");
        need_positive(q.Delta, "Delta");
        out.value = q.H * std::log(q.Delta);
        out.log10_value = std::log10(std::max(out.value, 1e-300));
        out.formula = "H ln(Delta)";
        return out;
    case BoundRegime::pdim_pwpoly:
        out.value = pdim_pw();
        out.log10_value = std::log10(std::max(out.value, 1e-300));
        out.formula = "H ln(p d Delta)";
        return out;
    case BoundRegime::pdim_pfaffian: {
        need_positive(q.H, "H");
        need_positive(q.q, "q");
        need_positive(q.d, "d");
        need_positive(q.Delta, "Delta");
        need_positive(q.M, "M");
        out.value = q.q * q.q * q.d * q.d * q.H * q.H +
                    q.q * q.d * q.H * std::log(q.Delta + q.M);
        out.log10_value = std::log10(out.value);
        out.formula = "q^2 d^2 H^2 + q d H ln(Delta+M)";
        return out;
    }
    case BoundRegime::pdim_schedule:
        need_positive(q.H, "H");
        out.value = q.H * pdim_pw();
        out.log10_value = std::log10(out.value);
        out.formula = "H^2 ln(p d Delta)";
        return out;
    case BoundRegime::pdim_init_vector:
        need_positive(q.d, "d");
        out.value = q.d * pdim_pw();
        out.log10_value = std::log10(out.value);
        out.formula = "d H ln(p d Delta)";
        return out;
    case BoundRegime::pdim_validation:
        need_positive(q.Delta_v, "Delta_v");
        need_positive(q.p_v, "p_v");
        out.value = pdim_pw() + std::log(q.Delta_v * q.p_v);
        out.log10_value = std::log10(std::max(out.value, 1e-300));
        out.formula = "H ln(p d Delta) + ln(Delta_v p_v)";
        return out;
    case BoundRegime::warren: {
        need_positive(q.degree, "degree");
        need_positive(q.s, "s");
        need_positive(q.n, "n");
        double log_e = q.n * std::log(4.0 * std::exp(1.0) * q.degree * q.s / q.n);
        return from_log_e(log_e, "(4 e degree s / n)^n");
    }
    case BoundRegime::khovanskii: {
        need_positive(q.d, "d");
        need_positive(q.q, "q");
        need_positive(q.Delta, "Delta");
        need_positive(q.M, "M");
        double dq = q.d * q.q;
        double log_e = dq * (dq - 1) / 2.0 * std::log(2.0) + q.d * std::log(q.Delta) +
                       dq * std::log(q.d * q.d * (q.Delta + q.M));
        return from_log_e(log_e, "2^(dq(dq-1)/2) Delta^d (d^2 (Delta+M))^(dq)");
    }
    case BoundRegime::pieces_poly: {
        need_positive(q.Delta, "Delta");
        need_positive(q.H, "H");
        return from_log_e(q.H * std::log(q.Delta), "Delta^H");
    }
    case BoundRegime::pieces_pwpoly: {
        need_positive(q.p, "p");
        need_positive(q.d, "d");
        need_positive(q.Delta, "Delta");
        need_positive(q.H, "H");
        return from_log_e(q.H * std::log(2.0 * q.p * q.d * q.Delta), "(2 p d Delta)^H");
    }
    case BoundRegime::pieces_pfaffian: {
        need_positive(q.q, "q");
        need_positive(q.d, "d");
        need_positive(q.H, "H");
        need_positive(q.Delta, "Delta");
        need_positive(q.M, "M");
        double log_e = q.q * q.q * q.d * q.d * q.H * q.H * std::log(2.0) +
                       q.q * q.d * q.H * std::log(q.Delta + q.M);
        return from_log_e(log_e, "2^(q^2 d^2 H^2) (Delta+M)^(q d H)");
    }
    }
    throw ConfigError("bounds: unhandled regime");
}

// ---------------------------------------------------------------------------
// multi-parameter tuning
// ---------------------------------------------------------------------------

ScheduleResult schedule_coordinate_descent(std::span<const Instance> sample,
                                           const GDConfig& cfg, int sweeps,
                                           std::vector<Rational> init_schedule,
                                           int threads) {
    cfg.validate();
    if (sweeps < 1) throw ConfigError("schedule descent: sweeps must be >= 1");
    if (static_cast<int>(init_schedule.size()) != cfg.H)
        throw ConfigError("schedule descent: schedule length must equal H");
    for (const auto& eta : init_schedule)
        if (!cfg.domain.contains(eta))
            throw ConfigError("schedule descent: initial schedule entry outside domain");

    ScheduleResult out;
    out.schedule = std::move(init_schedule);
    Rational current_mean;
    for (int sweep = 1; sweep <= sweeps; ++sweep) {
        for (int t = 1; t <= cfg.H; ++t) {
            ParamBinding binding = ScheduleCoordBinding{t, out.schedule};
            std::vector<PwConstFn> duals = sample_duals(sample, binding, cfg, threads);
            PwConstFn mean = pwconst_mean(duals);
            Rational before = mean.value_at(out.schedule[static_cast<std::size_t>(t) - 1]);
            ArgminResult arg = pwconst_argmin(mean);
            if (arg.value > before)
                throw std::logic_error("schedule descent: mean cost increased");
            ScheduleStep step;
            step.sweep = sweep;
            step.round = t;
            step.old_value = out.schedule[static_cast<std::size_t>(t) - 1];
            step.new_value = arg.eta_hat;
            step.mean_before = before;
            step.mean_after = arg.value;
            out.schedule[static_cast<std::size_t>(t) - 1] = arg.eta_hat;
            out.steps.push_back(std::move(step));
            current_mean = arg.value;
        }
    }
    out.final_mean = current_mean;
    return out;
}

OracleCheckResult oracle_check(std::span<const Instance> sample, const GDConfig& cfg,
                               int grid, const Rational& tol, int threads) {
    cfg.validate();
    if (grid < 2) throw ConfigError("oracle_check: grid must be >= 2");
    OracleCheckResult result;
    result.instances = static_cast<int>(sample.size());
    std::vector<OracleCheckResult> partial(sample.size());

    parallel_for(sample.size(), threads, [&](std::size_t k) {
        const Instance& inst = sample[k];
        BuiltObjective built = build_objective(inst.objective);
        std::vector<Rational> x0 = inst.x0 ? *inst.x0 : std::vector<Rational>{};
        TraceResult exact = trace_stepsize(built.exact_or_throw(), x0, cfg);
        ParamBinding binding = StepsizeBinding{};
        NumericObjective num = built.numeric();

        const Rational w = cfg.domain.width();
        OracleCheckResult& mine = partial[k];
        for (int j = 0; j <= grid; ++j) {
            Rational t = cfg.domain.lo + w * Rational(j, grid);
            bool near = false;
            for (const auto& bp : exact.dual.breakpoints) {
                if (t <= bp.hi() + tol && t >= bp.lo() - tol) {
                    near = true;
                    break;
                }
            }
            if (near) {
                ++mine.points_skipped;
                continue;
            }
            ++mine.points_checked;
            int exact_cost =
                static_cast<int>(exact.dual.value_at(t).get_num().get_si());
            int num_cost = numeric_cost_at(num, x0, binding, cfg, rat_to_double(t), nullptr);
            if (exact_cost != num_cost) ++mine.mismatches;
        }
    });
    for (const auto& p : partial) {
        result.points_checked += p.points_checked;
        result.points_skipped += p.points_skipped;
        result.mismatches += p.mismatches;
    }
    return result;
}

MomentumTuneResult momentum_grid_tune(std::span<const Instance> sample, const GDConfig& cfg,
                                      std::span<const Rational> gamma_grid, int threads,
                                      bool literal_update) {
    cfg.validate();
    if (gamma_grid.empty()) throw ConfigError("momentum tune: empty gamma grid");
    for (const auto& g : gamma_grid)
        if (g < 0) throw ConfigError("momentum tune: gamma must be >= 0");

    MomentumTuneResult out;
    for (const auto& gamma : gamma_grid) {
        ParamBinding binding = MomentumEtaBinding{gamma, literal_update};
        std::vector<PwConstFn> duals = sample_duals(sample, binding, cfg, threads);
        ErmResult erm = erm_stepsize(duals);
        out.per_gamma.emplace_back(gamma, erm);
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < out.per_gamma.size(); ++k)
        if (out.per_gamma[k].second.train_mean_cost <
            out.per_gamma[best].second.train_mean_cost)
            best = k;
    out.best_gamma = out.per_gamma[best].first;
    out.best = out.per_gamma[best].second;
    return out;
}

} // namespace gdtune
