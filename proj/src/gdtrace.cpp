#include "gdtune/gdtrace.hpp"

#include <algorithm>

namespace gdtune {

void GDConfig::validate() const {
    if (H < 1) throw ConfigError("GDConfig: H must be >= 1");
    if (theta <= 0) throw ConfigError("GDConfig: theta must be > 0");
    if (!(domain.lo < domain.hi)) throw ConfigError("GDConfig: empty parameter domain");
    if (domain.lo < 0) throw ConfigError("GDConfig: parameter domain must satisfy lo >= 0");
    if (w_iso <= 0) throw ConfigError("GDConfig: isolation width must be > 0");
}

namespace {

struct ActiveCell {
    AlgebraicNumber lo, hi;
    std::vector<UniPoly> x;
    std::vector<UniPoly> v; // momentum velocity; empty otherwise
};

std::vector<UniPoly> initial_curve(const PwPolyObjective& f, std::span<const Rational> x0,
                                   const ParamBinding& binding) {
    const int d = f.dim();
    std::vector<UniPoly> g(d);
    if (const auto* b = std::get_if<InitScaleBinding>(&binding)) {
        if (static_cast<int>(b->direction.size()) != d)
            throw DimensionError("init_scale direction dim != objective dim");
        for (int j = 0; j < d; ++j) g[j] = UniPoly::linear(Rational(0), b->direction[j]);
        return g;
    }
    if (const auto* b = std::get_if<InitCoordBinding>(&binding)) {
        if (static_cast<int>(b->base.size()) != d)
            throw DimensionError("init_coord base dim != objective dim");
        if (b->index < 0 || b->index >= d) throw DimensionError("init_coord index out of range");
        for (int j = 0; j < d; ++j)
            g[j] = (j == b->index) ? UniPoly::variable() : UniPoly(b->base[j]);
        return g;
    }
    if (static_cast<int>(x0.size()) != d)
        throw DimensionError("x0 dim != objective dim");
    for (int j = 0; j < d; ++j) g[j] = UniPoly(x0[j]);
    return g;
}

// step polynomial for round i (1-based): the multiplier of grad f(x_i)
UniPoly step_poly(const ParamBinding& binding, int round, int H) {
    if (std::holds_alternative<StepsizeBinding>(binding) ||
        std::holds_alternative<MomentumEtaBinding>(binding))
        return UniPoly::variable();
    if (const auto* b = std::get_if<InitScaleBinding>(&binding)) return UniPoly(b->eta);
    if (const auto* b = std::get_if<InitCoordBinding>(&binding)) return UniPoly(b->eta);
    const auto& b = std::get<ScheduleCoordBinding>(binding);
    if (static_cast<int>(b.schedule.size()) != H)
        throw ConfigError("schedule length != H");
    if (b.free_round < 1 || b.free_round > H)
        throw ConfigError("schedule free round out of range");
    if (round == b.free_round) return UniPoly::variable();
    return UniPoly(b.schedule[static_cast<std::size_t>(round) - 1]);
}

// per-round curve degree bound delta^(round-2); init bindings start one power
// up because their round-1 curve is already linear in the parameter
Integer curve_degree_bound(const ParamBinding& binding, int delta, int round) {
    const bool init_binding = std::holds_alternative<InitScaleBinding>(binding) ||
                              std::holds_alternative<InitCoordBinding>(binding);
    int e = init_binding ? round - 1 : round - 2;
    if (e < 0) e = 0;
    Integer bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(std::max(delta, 1)),
                  static_cast<unsigned long>(e));
    return bound;
}

// roots of poly strictly inside the open cell (lo, hi)
std::vector<AlgebraicNumber> roots_inside(const UniPoly& poly, const AlgebraicNumber& lo,
                                          const AlgebraicNumber& hi, const Rational& w_iso) {
    std::vector<AlgebraicNumber> out;
    if (poly.is_zero() || poly.degree() == 0) return out;
    RatInterval enclosure{lo.lo(), hi.hi()};
    if (!(enclosure.lo < enclosure.hi)) return out;
    for (auto& r : isolate_roots(poly, enclosure, w_iso))
        if (compare(r, lo) > 0 && compare(r, hi) < 0) out.push_back(std::move(r));
    return out;
}

std::vector<AlgebraicNumber> merge_cuts(std::vector<std::vector<AlgebraicNumber>> lists) {
    if (lists.size() == 1) return std::move(lists[0]);
    return partition_refine(lists);
}

struct TraceEngine {
    const PwPolyObjective& f;
    const ParamBinding& binding;
    const GDConfig& cfg;
    bool keep_final_points;

    std::vector<SettledCell> settled;
    TraceStats stats;
    bool momentum_literal = false;
    Rational momentum_gamma;
    bool is_momentum = false;

    TraceEngine(const PwPolyObjective& f_, const ParamBinding& binding_, const GDConfig& cfg_,
                bool keep_final)
        : f(f_), binding(binding_), cfg(cfg_), keep_final_points(keep_final) {
        if (const auto* m = std::get_if<MomentumEtaBinding>(&binding)) {
            is_momentum = true;
            momentum_gamma = m->gamma;
            momentum_literal = m->literal_update;
            if (momentum_gamma < 0) throw ConfigError("momentum gamma must be >= 0");
        }
    }

    void settle(const ActiveCell& cell, int cost, bool converged,
                std::vector<UniPoly> point) {
        settled.push_back({cell.lo, cell.hi, cost, converged, std::move(point)});
    }

    std::vector<ActiveCell> split_cell(ActiveCell cell, std::vector<AlgebraicNumber> cuts) {
        std::vector<ActiveCell> out;
        if (cuts.empty()) {
            out.push_back(std::move(cell));
            return out;
        }
        AlgebraicNumber prev = cell.lo;
        for (auto& c : cuts) {
            out.push_back({prev, c, cell.x, cell.v});
            prev = std::move(c);
        }
        out.push_back({std::move(prev), std::move(cell.hi), std::move(cell.x), std::move(cell.v)});
        return out;
    }

    TraceResult run(std::span<const Rational> x0) {
        cfg.validate();
        const int d = f.dim();
        const int p = f.boundary_count();
        const Rational theta2 = cfg.theta * cfg.theta;

        std::vector<ActiveCell> active;
        {
            ActiveCell root{AlgebraicNumber::from_rational(cfg.domain.lo),
                            AlgebraicNumber::from_rational(cfg.domain.hi),
                            initial_curve(f, x0, binding),
                            {}};
            if (is_momentum) root.v.assign(d, UniPoly());
            active.push_back(std::move(root));
        }

        for (int round = 1; round <= cfg.H && !active.empty(); ++round) {
            stats.rounds = round;
            int round_max_deg = 0;
            Integer deg_bound = curve_degree_bound(binding, f.max_degree(), round);
            std::vector<ActiveCell> survivors;

            for (auto& cell : active) {
                for (const auto& xc : cell.x) round_max_deg = std::max(round_max_deg, xc.degree());

                // (b) split at boundary crossings of the iterate curve, then
                // fix the sign vector per sub-cell at an interior rational
                std::vector<ActiveCell> subcells;
                if (p == 0) {
                    subcells.push_back(std::move(cell));
                } else {
                    std::vector<UniPoly> bcomp(p);
                    std::vector<std::vector<AlgebraicNumber>> cut_lists;
                    for (int k = 0; k < p; ++k) {
                        bcomp[k] = compose_uni(f.boundaries()[k], cell.x, cfg.budget);
                        if (bcomp[k].is_zero())
                            throw DegenerateTrajectoryError(
                                "iterate lies on boundary " + std::to_string(k) +
                                " across a whole cell at round " + std::to_string(round));
                        auto roots = roots_inside(bcomp[k], cell.lo, cell.hi, cfg.w_iso);
                        if (!roots.empty()) cut_lists.push_back(std::move(roots));
                    }
                    if (cut_lists.empty())
                        subcells.push_back(std::move(cell));
                    else
                        subcells = split_cell(std::move(cell), merge_cuts(std::move(cut_lists)));
                }

                for (auto& sub : subcells) {
                    std::string signs;
                    if (p > 0) {
                        Rational mid = interior_rational(sub.lo, sub.hi);
                        std::vector<Rational> pt(d);
                        for (int j = 0; j < d; ++j) pt[j] = sub.x[j].eval(mid);
                        signs = f.sign_vector_at(pt);
                    }
                    const auto& grad = f.piece_gradient(signs);

                    // (a)+(c) gradient-norm polynomial and its sublevel set
                    std::vector<UniPoly> gamma(d);
                    UniPoly q;
                    for (int j = 0; j < d; ++j) {
                        gamma[j] = compose_uni(grad[j], sub.x, cfg.budget);
                        q += mul_budgeted(gamma[j], gamma[j], cfg.budget, "grad norm");
                    }
                    q -= UniPoly(theta2);
                    cfg.budget.check(q, "grad norm");

                    if (q.is_zero()) {
                        // |grad| == theta identically: strict test never fires
                        carry_update(survivors, std::move(sub), gamma, round);
                        continue;
                    }
                    if (q.degree() == 0) {
                        if (q.coeffs()[0] < 0)
                            settle(sub, round, true, keep_point(sub.x));
                        else
                            carry_update(survivors, std::move(sub), gamma, round);
                        continue;
                    }

                    auto cuts = roots_inside(q, sub.lo, sub.hi, cfg.w_iso);
                    if (cuts.empty()) {
                        Rational mid = interior_rational(sub.lo, sub.hi);
                        if (q.eval(mid) < 0)
                            settle(sub, round, true, keep_point(sub.x));
                        else
                            carry_update(survivors, std::move(sub), gamma, round);
                        continue;
                    }
                    for (auto& piece_cell : split_cell(std::move(sub), std::move(cuts))) {
                        Rational mid = interior_rational(piece_cell.lo, piece_cell.hi);
                        if (q.eval(mid) < 0)
                            settle(piece_cell, round, true, keep_point(piece_cell.x));
                        else
                            carry_update(survivors, std::move(piece_cell), gamma, round);
                    }
                }
            }

            stats.max_curve_degree.push_back(round_max_deg);
            if (round >= 2 || curve_is_parametric()) {
                if (Integer(round_max_deg) > deg_bound) stats.degree_bound_ok = false;
            }
            active = std::move(survivors);
            check_partition(active);
        }

        // cells that exhausted the loop cost H
        for (auto& cell : active)
            settle(cell, cfg.H, false, keep_final_points ? cell.x : std::vector<UniPoly>());

        return assemble();
    }

    bool curve_is_parametric() const {
        return std::holds_alternative<InitScaleBinding>(binding) ||
               std::holds_alternative<InitCoordBinding>(binding);
    }

    std::vector<UniPoly> keep_point(const std::vector<UniPoly>& x) const {
        return keep_final_points ? x : std::vector<UniPoly>();
    }

    // (d) apply the update to a surviving cell and push it forward; gamma is
    // the composed gradient on this cell. At round H the update is performed
    // only when final points are requested (the returned point is x_{H+1}).
    void carry_update(std::vector<ActiveCell>& survivors, ActiveCell cell,
                      const std::vector<UniPoly>& gamma, int round) {
        if (round == cfg.H && !keep_final_points) {
            survivors.push_back(std::move(cell));
            return;
        }
        UniPoly step = step_poly(binding, round, cfg.H);
        const int d = f.dim();
        if (is_momentum) {
            for (int j = 0; j < d; ++j) {
                UniPoly vnew = momentum_gamma * cell.v[j] -
                               mul_budgeted(step, gamma[j], cfg.budget, "momentum step");
                cfg.budget.check(vnew, "momentum velocity");
                if (momentum_literal)
                    cell.x[j] += cell.v[j];
                else
                    cell.x[j] += vnew;
                cfg.budget.check(cell.x[j], "iterate curve");
                cell.v[j] = std::move(vnew);
            }
        } else {
            for (int j = 0; j < d; ++j) {
                cell.x[j] -= mul_budgeted(step, gamma[j], cfg.budget, "gd step");
                cfg.budget.check(cell.x[j], "iterate curve");
            }
        }
        survivors.push_back(std::move(cell));
    }

    // settled + active must partition [domain.lo, domain.hi] exactly, every
    // round: endpoints telescope under exact algebraic comparison
    void check_partition(const std::vector<ActiveCell>& active) {
        std::vector<std::pair<const AlgebraicNumber*, const AlgebraicNumber*>> spans;
        spans.reserve(settled.size() + active.size());
        for (const auto& c : settled) spans.emplace_back(&c.lo, &c.hi);
        for (const auto& c : active) spans.emplace_back(&c.lo, &c.hi);
        std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
            return compare(*a.first, *b.first) < 0;
        });
        bool ok = !spans.empty() && spans.front().first->is_rational() &&
                  spans.front().first->value() == cfg.domain.lo &&
                  spans.back().second->is_rational() &&
                  spans.back().second->value() == cfg.domain.hi;
        for (std::size_t k = 1; ok && k < spans.size(); ++k)
            ok = compare(*spans[k - 1].second, *spans[k].first) == 0;
        if (!ok) throw std::logic_error("settled+active cells do not partition the domain");
    }

    TraceResult assemble() {
        std::sort(settled.begin(), settled.end(), [](const SettledCell& a, const SettledCell& b) {
            return compare(a.lo, b.lo) < 0;
        });
        // exact telescoping of the settlement partition
        if (settled.empty()) throw std::logic_error("trace produced no cells");
        if (!settled.front().lo.is_rational() ||
            settled.front().lo.value() != cfg.domain.lo ||
            !settled.back().hi.is_rational() || settled.back().hi.value() != cfg.domain.hi)
            throw std::logic_error("settlement does not span the domain");
        for (std::size_t k = 1; k < settled.size(); ++k)
            if (compare(settled[k - 1].hi, settled[k].lo) != 0)
                throw std::logic_error("settlement partition has a gap or overlap");

        std::vector<AlgebraicNumber> bps;
        std::vector<Rational> vals;
        vals.reserve(settled.size());
        for (std::size_t k = 0; k < settled.size(); ++k) {
            if (k > 0) bps.push_back(settled[k].lo);
            vals.emplace_back(static_cast<long>(settled[k].cost));
        }
        PwConstFn raw = PwConstFn::make(cfg.domain, std::move(bps), std::move(vals));

        TraceResult out;
        out.dual = raw.canonicalized();
        out.settlement = std::move(settled);
        out.stats = std::move(stats);
        out.stats.settlement_cell_count = out.settlement.size();
        out.stats.cell_count = out.dual.cell_count();

        // piece-count envelope: (2D)^(H+1) for p = 0, (4pdD)^(H+1) otherwise
        const int p = f.boundary_count();
        long base = p == 0 ? 2L * f.max_degree()
                           : 4L * p * f.dim() * f.max_degree();
        Integer bound;
        mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(std::max(base, 1L)),
                      static_cast<unsigned long>(cfg.H + 1));
        out.stats.piece_bound = bound;
        if (Integer(static_cast<long>(out.stats.cell_count)) > bound)
            out.stats.piece_bound_ok = false;
        return out;
    }
};

} // namespace

TraceResult trace_stepsize(const PwPolyObjective& f, std::span<const Rational> x0,
                           const GDConfig& cfg) {
    ParamBinding b = StepsizeBinding{};
    TraceEngine e(f, b, cfg, false);
    return e.run(x0);
}

TraceResult trace_param(const PwPolyObjective& f, std::span<const Rational> x0,
                        const ParamBinding& binding, const GDConfig& cfg) {
    TraceEngine e(f, binding, cfg, false);
    return e.run(x0);
}

ValidationResult trace_validation(const PwPolyObjective& f, const PwPolyObjective& f_v,
                                  std::span<const Rational> x0, const GDConfig& cfg) {
    if (f_v.dim() != f.dim())
        throw DimensionError("validation objective dim != training objective dim");
    ParamBinding b = StepsizeBinding{};
    TraceEngine e(f, b, cfg, true);
    TraceResult trace = e.run(x0);

    const int d = f.dim();
    const int pv = f_v.boundary_count();
    std::vector<AlgebraicNumber> bps;
    std::vector<UniPoly> pieces;

    for (std::size_t ci = 0; ci < trace.settlement.size(); ++ci) {
        const auto& cell = trace.settlement[ci];
        if (ci > 0) bps.push_back(cell.lo);

        // split further at validation-boundary crossings along the final curve
        std::vector<std::vector<AlgebraicNumber>> cut_lists;
        std::vector<UniPoly> bcomp(pv);
        for (int k = 0; k < pv; ++k) {
            bcomp[k] = compose_uni(f_v.boundaries()[k], cell.final_point, cfg.budget);
            if (bcomp[k].is_zero())
                throw DegenerateTrajectoryError(
                    "returned point lies on a validation boundary across a whole cell");
            std::vector<AlgebraicNumber> roots;
            for (auto& r : isolate_roots(bcomp[k], {cell.lo.lo(), cell.hi.hi()}, cfg.w_iso))
                if (compare(r, cell.lo) > 0 && compare(r, cell.hi) < 0)
                    roots.push_back(std::move(r));
            if (!roots.empty()) cut_lists.push_back(std::move(roots));
        }
        std::vector<AlgebraicNumber> cuts;
        if (!cut_lists.empty()) cuts = partition_refine(cut_lists);

        AlgebraicNumber prev = cell.lo;
        auto emit = [&](const AlgebraicNumber& lo, const AlgebraicNumber& hi) {
            std::string signs;
            if (pv > 0) {
                Rational mid = interior_rational(lo, hi);
                std::vector<Rational> pt(d);
                for (int j = 0; j < d; ++j) pt[j] = cell.final_point[j].eval(mid);
                signs = f_v.sign_vector_at(pt);
            }
            pieces.push_back(compose_uni(f_v.piece(signs), cell.final_point, cfg.budget));
        };
        for (const auto& c : cuts) {
            emit(prev, c);
            bps.push_back(c);
            prev = c;
        }
        emit(prev, cell.hi);
    }

    // merge adjacent cells carrying the same polynomial
    std::vector<AlgebraicNumber> mbps;
    std::vector<UniPoly> mpieces;
    mpieces.push_back(pieces[0]);
    for (std::size_t k = 0; k < bps.size(); ++k) {
        if (pieces[k + 1] == mpieces.back()) continue;
        mbps.push_back(bps[k]);
        mpieces.push_back(pieces[k + 1]);
    }

    ValidationResult out;
    out.dual = PwPolyFn::make(cfg.domain, std::move(mbps), std::move(mpieces));
    out.trace = std::move(trace);
    return out;
}

} // namespace gdtune
