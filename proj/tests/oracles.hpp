#pragma once

// Test-only oracles: brute-force and closed-form references kept independent
// of the symbolic trace path they check.

#include <vector>

#include "gdtune/objective.hpp"
#include "gdtune/rational.hpp"

namespace oracles {

using namespace gdtune;

/// Closed-form cost of gradient descent on f = (a/2) x^2 from x0:
/// the iterate is x_i = (1 - a*eta)^(i-1) x0, so the algorithm stops at the
/// first i with |a| |1 - a*eta|^(i-1) |x0| < theta.
inline int quadratic_cost(const Rational& a, const Rational& x0, const Rational& eta,
                          const Rational& theta, int H) {
    Rational contraction = rat_abs(Rational(1) - a * eta);
    Rational grad_mag = rat_abs(a * x0);
    for (int i = 1; i <= H; ++i) {
        if (grad_mag < theta) return i;
        grad_mag *= contraction;
    }
    return H;
}

struct ExactRun {
    int cost = 0;
    bool converged = false;
    std::vector<Rational> point; // the algorithm's returned point
};

/// Exact rational gradient descent, one step at a time: piece chosen by the
/// boundary signs at the current iterate. Independent of the symbolic tracer.
inline ExactRun exact_gd_run(const PwPolyObjective& f, std::vector<Rational> x,
                             const Rational& eta, const Rational& theta, int H) {
    const int d = f.dim();
    const Rational theta2 = theta * theta;
    for (int i = 1; i <= H; ++i) {
        std::string signs = f.sign_vector_at(x);
        const auto& grad = f.piece_gradient(signs);
        std::vector<Rational> g(d);
        Rational n2(0);
        for (int j = 0; j < d; ++j) {
            g[j] = grad[j].eval(x);
            n2 += g[j] * g[j];
        }
        if (n2 < theta2) return {i, true, std::move(x)};
        for (int j = 0; j < d; ++j) x[j] -= eta * g[j];
    }
    return {H, false, std::move(x)};
}

inline int exact_gd_cost(const PwPolyObjective& f, std::vector<Rational> x,
                         const Rational& eta, const Rational& theta, int H) {
    return exact_gd_run(f, std::move(x), eta, theta, H).cost;
}

/// Momentum variant (proof-order update by default).
inline int exact_momentum_cost(const PwPolyObjective& f, std::vector<Rational> x,
                               const Rational& eta, const Rational& gamma,
                               const Rational& theta, int H, bool literal = false) {
    const int d = f.dim();
    const Rational theta2 = theta * theta;
    std::vector<Rational> v(d, Rational(0));
    for (int i = 1; i <= H; ++i) {
        std::string signs = f.sign_vector_at(x);
        const auto& grad = f.piece_gradient(signs);
        std::vector<Rational> g(d);
        Rational n2(0);
        for (int j = 0; j < d; ++j) {
            g[j] = grad[j].eval(x);
            n2 += g[j] * g[j];
        }
        if (n2 < theta2) return i;
        for (int j = 0; j < d; ++j) {
            Rational vnew = gamma * v[j] - eta * g[j];
            x[j] += literal ? v[j] : vnew;
            v[j] = vnew;
        }
    }
    return H;
}

} // namespace oracles
