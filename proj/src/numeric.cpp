#include <cmath>

#include "gdtune/gdtrace.hpp"

namespace gdtune {

namespace {

std::vector<double> initial_point(const NumericObjective& obj, std::span<const Rational> x0,
                                  const ParamBinding& binding, double param) {
    const int d = obj.dim();
    std::vector<double> x(d);
    if (const auto* b = std::get_if<InitScaleBinding>(&binding)) {
        for (int j = 0; j < d; ++j) x[j] = param * rat_to_double(b->direction[j]);
        return x;
    }
    if (const auto* b = std::get_if<InitCoordBinding>(&binding)) {
        for (int j = 0; j < d; ++j) x[j] = rat_to_double(b->base[j]);
        x[b->index] = param;
        return x;
    }
    if (static_cast<int>(x0.size()) != d) throw DimensionError("x0 dim != objective dim");
    for (int j = 0; j < d; ++j) x[j] = rat_to_double(x0[j]);
    return x;
}

double step_value(const ParamBinding& binding, int round, double param) {
    if (std::holds_alternative<StepsizeBinding>(binding) ||
        std::holds_alternative<MomentumEtaBinding>(binding))
        return param;
    if (const auto* b = std::get_if<InitScaleBinding>(&binding)) return rat_to_double(b->eta);
    if (const auto* b = std::get_if<InitCoordBinding>(&binding)) return rat_to_double(b->eta);
    const auto& b = std::get<ScheduleCoordBinding>(binding);
    if (round == b.free_round) return param;
    return rat_to_double(b.schedule[static_cast<std::size_t>(round) - 1]);
}

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

int numeric_cost_at(const NumericObjective& obj, std::span<const Rational> x0,
                    const ParamBinding& binding, const GDConfig& cfg, double param,
                    bool* nonfinite) {
    if (nonfinite) *nonfinite = false;
    const int d = obj.dim();
    std::vector<double> x = initial_point(obj, x0, binding, param);
    std::vector<double> g(d), v(d, 0.0);
    const double theta2 = rat_to_double(cfg.theta) * rat_to_double(cfg.theta);

    const auto* mom = std::get_if<MomentumEtaBinding>(&binding);
    const double gamma = mom ? rat_to_double(mom->gamma) : 0.0;

    for (int i = 1; i <= cfg.H; ++i) {
        if (!all_finite(x)) {
            if (nonfinite) *nonfinite = true;
            return cfg.H;
        }
        obj.grad(x, g);
        if (!all_finite(g)) {
            if (nonfinite) *nonfinite = true;
            return cfg.H;
        }
        double n2 = 0.0;
        for (double gj : g) n2 += gj * gj;
        if (n2 < theta2) return i;
        const double step = step_value(binding, i, param);
        if (mom) {
            for (int j = 0; j < d; ++j) {
                double vnew = gamma * v[j] - param * g[j];
                x[j] += mom->literal_update ? v[j] : vnew;
                v[j] = vnew;
            }
        } else {
            for (int j = 0; j < d; ++j) x[j] -= step * g[j];
        }
    }
    return cfg.H;
}

NumericDualResult numeric_dual(const NumericObjective& obj, std::span<const Rational> x0,
                               const ParamBinding& binding, const GDConfig& cfg, int grid,
                               int refine_rounds) {
    cfg.validate();
    if (grid < 2) throw ConfigError("numeric_dual: grid must be >= 2");
    const Rational w = cfg.domain.width();

    NumericDualResult out;
    std::vector<int> costs(static_cast<std::size_t>(grid) + 1);
    for (int j = 0; j <= grid; ++j) {
        Rational tj = cfg.domain.lo + w * Rational(j, grid);
        bool flag = false;
        costs[static_cast<std::size_t>(j)] =
            numeric_cost_at(obj, x0, binding, cfg, rat_to_double(tj), &flag);
        if (flag) ++out.nonfinite_count;
    }

    std::vector<AlgebraicNumber> bps;
    std::vector<Rational> vals;
    vals.emplace_back(static_cast<long>(costs[0]));
    for (int j = 0; j < grid; ++j) {
        if (costs[j + 1] == costs[j]) continue;
        double a = rat_to_double(cfg.domain.lo + w * Rational(j, grid));
        double b = rat_to_double(cfg.domain.lo + w * Rational(j + 1, grid));
        const int ca = costs[j];
        for (int r = 0; r < refine_rounds; ++r) {
            double m = 0.5 * (a + b);
            if (m <= a || m >= b) break; // double resolution exhausted
            int cm = numeric_cost_at(obj, x0, binding, cfg, m, nullptr);
            if (cm == ca)
                a = m;
            else
                b = m;
        }
        Rational ra(a), rb(b);
        out.unresolved.push_back({ra, rb});
        Rational estimate = (ra + rb) / 2;
        if (!bps.empty() && compare(bps.back(), estimate) >= 0) continue; // collapsed
        bps.push_back(AlgebraicNumber::from_rational(estimate));
        vals.emplace_back(static_cast<long>(costs[j + 1]));
    }
    out.approx = PwConstFn::make(cfg.domain, std::move(bps), std::move(vals)).canonicalized();
    return out;
}

} // namespace gdtune
