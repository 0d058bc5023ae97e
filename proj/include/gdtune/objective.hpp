#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gdtune/multipoly.hpp"

namespace gdtune {

/// Piecewise-polynomial objective: p boundary polynomials whose sign pattern
/// in {-,+}^p selects the active piece. A plain polynomial is the p = 0 case.
/// Pieces may be supplied explicitly or synthesized on demand (ReLU nets);
/// the cache is shared across threads.
class PwPolyObjective {
public:
    using PieceGenerator = std::function<std::optional<MultiPoly>(const std::string&)>;

    explicit PwPolyObjective(MultiPoly f);
    PwPolyObjective(int dim, std::vector<MultiPoly> boundaries,
                    std::map<std::string, MultiPoly> pieces);
    PwPolyObjective(int dim, std::vector<MultiPoly> boundaries, PieceGenerator gen,
                    int declared_degree);

    PwPolyObjective(const PwPolyObjective& o);
    PwPolyObjective(PwPolyObjective&&) = default;
    PwPolyObjective& operator=(const PwPolyObjective&) = delete;
    PwPolyObjective& operator=(PwPolyObjective&&) = default;

    int dim() const { return dim_; }
    int boundary_count() const { return static_cast<int>(boundaries_.size()); }
    const std::vector<MultiPoly>& boundaries() const { return boundaries_; }
    /// Delta bookkeeping: max degree over boundaries and pieces, at least 1.
    int max_degree() const;

    /// Piece for a sign vector ('+'/'-' per boundary). Throws MissingPiece.
    const MultiPoly& piece(const std::string& signs) const;
    const std::vector<MultiPoly>& piece_gradient(const std::string& signs) const;
    /// All explicitly known pieces (for serialization).
    std::map<std::string, MultiPoly> known_pieces() const;

    /// Sign vector at an exact point: '+' iff boundary > 0 (0 counts as '-').
    std::string sign_vector_at(std::span<const Rational> x) const;
    std::string sign_vector_at(std::span<const double> x) const;

    Rational eval(std::span<const Rational> x) const;
    double eval_double(std::span<const double> x) const;
    void grad_double(std::span<const double> x, std::span<double> out) const;

private:
    struct Cache {
        std::mutex mu;
        int max_degree = 1;
        std::map<std::string, MultiPoly> pieces;
        std::map<std::string, std::vector<MultiPoly>> gradients;
    };

    int dim_;
    std::vector<MultiPoly> boundaries_;
    PieceGenerator gen_;
    std::unique_ptr<Cache> cache_;
};

enum class Activation { relu, sigmoid, tanh_act };

Activation activation_from_string(const std::string& s); // throws ParseError
std::string activation_to_string(Activation a);

struct NetSample {
    std::vector<Rational> in;
    std::vector<Rational> out;
};

/// Feedforward net with a fixed architecture, dataset, and frozen weights;
/// the free weights are the optimization variables. Smooth activations are
/// evaluated numerically only.
struct SmoothNetDescriptor {
    std::vector<int> widths; // input, hidden..., output
    Activation activation = Activation::sigmoid;
    std::vector<NetSample> data;
    std::vector<int> free_indices;
    std::vector<Rational> frozen; // full flat weight vector; free entries ignored

    int dim() const { return static_cast<int>(free_indices.size()); }
    double eval_double(std::span<const double> w) const; // dataset MSE
    void grad_double(std::span<const double> w, std::span<double> out) const;
};

/// Flat weight vector length for a widths spec (row-major weights then bias,
/// per layer).
int net_weight_count(const std::vector<int>& widths);

/// Objective handle for the numeric oracle: either exact piecewise data or a
/// smooth network.
struct NumericObjective {
    const PwPolyObjective* pw = nullptr;
    const SmoothNetDescriptor* net = nullptr;

    int dim() const { return pw ? pw->dim() : net->dim(); }
    void grad(std::span<const double> x, std::span<double> out) const {
        if (pw)
            pw->grad_double(x, out);
        else
            net->grad_double(x, out);
    }
};

} // namespace gdtune
