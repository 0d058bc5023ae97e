#include "gdtune/objective.hpp"

#include <cmath>

namespace gdtune {

PwPolyObjective::PwPolyObjective(MultiPoly f)
    : dim_(f.dim()), cache_(std::make_unique<Cache>()) {
    cache_->max_degree = std::max(1, f.total_degree());
    cache_->pieces.emplace("", std::move(f));
}

PwPolyObjective::PwPolyObjective(int dim, std::vector<MultiPoly> boundaries,
                                 std::map<std::string, MultiPoly> pieces)
    : dim_(dim), boundaries_(std::move(boundaries)), cache_(std::make_unique<Cache>()) {
    cache_->pieces = std::move(pieces);
    for (const auto& b : boundaries_) {
        if (b.dim() != dim_) throw DimensionError("boundary dim mismatch");
        cache_->max_degree = std::max(cache_->max_degree, b.total_degree());
    }
    for (const auto& [s, f] : cache_->pieces) {
        if (static_cast<int>(s.size()) != boundary_count())
            throw DimensionError("piece sign vector length != boundary count");
        if (f.dim() != dim_) throw DimensionError("piece dim mismatch");
        cache_->max_degree = std::max(cache_->max_degree, f.total_degree());
    }
}

PwPolyObjective::PwPolyObjective(int dim, std::vector<MultiPoly> boundaries,
                                 PieceGenerator gen, int declared_degree)
    : dim_(dim), boundaries_(std::move(boundaries)), gen_(std::move(gen)),
      cache_(std::make_unique<Cache>()) {
    cache_->max_degree = std::max(1, declared_degree);
    for (const auto& b : boundaries_) {
        if (b.dim() != dim_) throw DimensionError("boundary dim mismatch");
        cache_->max_degree = std::max(cache_->max_degree, b.total_degree());
    }
}

PwPolyObjective::PwPolyObjective(const PwPolyObjective& o)
    : dim_(o.dim_), boundaries_(o.boundaries_), gen_(o.gen_),
      cache_(std::make_unique<Cache>()) {
    std::lock_guard lk(o.cache_->mu);
    cache_->max_degree = o.cache_->max_degree;
    cache_->pieces = o.cache_->pieces;
    cache_->gradients = o.cache_->gradients;
}

int PwPolyObjective::max_degree() const {
    std::lock_guard lk(cache_->mu);
    return cache_->max_degree;
}

const MultiPoly& PwPolyObjective::piece(const std::string& signs) const {
    if (static_cast<int>(signs.size()) != boundary_count())
        throw MissingPieceError("sign vector length != boundary count");
    std::lock_guard lk(cache_->mu);
    auto it = cache_->pieces.find(signs);
    if (it != cache_->pieces.end()) return it->second;
    if (gen_) {
        if (auto p = gen_(signs)) {
            cache_->max_degree = std::max(cache_->max_degree, p->total_degree());
            return cache_->pieces.emplace(signs, std::move(*p)).first->second;
        }
    }
    throw MissingPieceError("no piece for sign vector '" + signs + "'");
}

const std::vector<MultiPoly>& PwPolyObjective::piece_gradient(const std::string& signs) const {
    const MultiPoly& f = piece(signs);
    std::lock_guard lk(cache_->mu);
    auto it = cache_->gradients.find(signs);
    if (it != cache_->gradients.end()) return it->second;
    return cache_->gradients.emplace(signs, f.gradient()).first->second;
}

std::map<std::string, MultiPoly> PwPolyObjective::known_pieces() const {
    std::lock_guard lk(cache_->mu);
    return cache_->pieces;
}

std::string PwPolyObjective::sign_vector_at(std::span<const Rational> x) const {
    std::string s;
    s.reserve(boundaries_.size());
    for (const auto& b : boundaries_) s.push_back(b.eval(x) > 0 ? '+' : '-');
    return s;
}

std::string PwPolyObjective::sign_vector_at(std::span<const double> x) const {
    std::string s;
    s.reserve(boundaries_.size());
    for (const auto& b : boundaries_) s.push_back(b.eval_double(x) > 0 ? '+' : '-');
    return s;
}

Rational PwPolyObjective::eval(std::span<const Rational> x) const {
    return piece(sign_vector_at(x)).eval(x);
}

double PwPolyObjective::eval_double(std::span<const double> x) const {
    return piece(sign_vector_at(x)).eval_double(x);
}

void PwPolyObjective::grad_double(std::span<const double> x, std::span<double> out) const {
    const auto& g = piece_gradient(sign_vector_at(x));
    for (std::size_t j = 0; j < g.size(); ++j) out[j] = g[j].eval_double(x);
}

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "sigmoid") return Activation::sigmoid;
    if (s == "tanh") return Activation::tanh_act;
    throw ParseError("unknown activation '" + s + "'");
}

std::string activation_to_string(Activation a) {
    switch (a) {
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::tanh_act: return "tanh";
    }
    return "?";
}

int net_weight_count(const std::vector<int>& widths) {
    if (widths.size() < 2) throw ConfigError("net widths need at least input and output");
    int n = 0;
    for (std::size_t l = 1; l < widths.size(); ++l) n += widths[l] * (widths[l - 1] + 1);
    return n;
}

namespace {

double act_fwd(Activation a, double x) {
    switch (a) {
    case Activation::relu: return x > 0 ? x : 0.0;
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::tanh_act: return std::tanh(x);
    }
    return 0.0;
}

// derivative expressed through the forward value
double act_bwd(Activation a, double pre, double post) {
    switch (a) {
    case Activation::relu: return pre > 0 ? 1.0 : 0.0;
    case Activation::sigmoid: return post * (1.0 - post);
    case Activation::tanh_act: return 1.0 - post * post;
    }
    return 0.0;
}

} // namespace

double SmoothNetDescriptor::eval_double(std::span<const double> w) const {
    std::vector<double> weights(frozen.size());
    for (std::size_t k = 0; k < frozen.size(); ++k) weights[k] = rat_to_double(frozen[k]);
    for (std::size_t k = 0; k < free_indices.size(); ++k) weights[free_indices[k]] = w[k];

    const std::size_t L = widths.size() - 1;
    double loss = 0.0;
    for (const auto& sample : data) {
        std::vector<double> cur(sample.in.size());
        for (std::size_t k = 0; k < cur.size(); ++k) cur[k] = rat_to_double(sample.in[k]);
        std::size_t off = 0;
        for (std::size_t l = 1; l <= L; ++l) {
            const int rows = widths[l], cols = widths[l - 1];
            std::vector<double> nxt(rows);
            for (int r = 0; r < rows; ++r) {
                double pre = weights[off + rows * cols + r]; // bias
                for (int c = 0; c < cols; ++c) pre += weights[off + r * cols + c] * cur[c];
                nxt[r] = (l < L) ? act_fwd(activation, pre) : pre;
            }
            off += rows * (cols + 1);
            cur = std::move(nxt);
        }
        for (std::size_t k = 0; k < cur.size(); ++k) {
            double d = cur[k] - rat_to_double(sample.out[k]);
            loss += d * d;
        }
    }
    return loss / static_cast<double>(data.size());
}

void SmoothNetDescriptor::grad_double(std::span<const double> w, std::span<double> out) const {
    std::vector<double> weights(frozen.size());
    for (std::size_t k = 0; k < frozen.size(); ++k) weights[k] = rat_to_double(frozen[k]);
    for (std::size_t k = 0; k < free_indices.size(); ++k) weights[free_indices[k]] = w[k];
    std::vector<double> grad(weights.size(), 0.0);

    const std::size_t L = widths.size() - 1;
    for (const auto& sample : data) {
        // forward, keeping pre/post activations
        std::vector<std::vector<double>> post(L + 1), pre(L + 1);
        post[0].resize(sample.in.size());
        for (std::size_t k = 0; k < post[0].size(); ++k)
            post[0][k] = rat_to_double(sample.in[k]);
        std::size_t off = 0;
        std::vector<std::size_t> offsets(L + 1);
        for (std::size_t l = 1; l <= L; ++l) {
            offsets[l] = off;
            const int rows = widths[l], cols = widths[l - 1];
            pre[l].resize(rows);
            post[l].resize(rows);
            for (int r = 0; r < rows; ++r) {
                double s = weights[off + rows * cols + r];
                for (int c = 0; c < cols; ++c) s += weights[off + r * cols + c] * post[l - 1][c];
                pre[l][r] = s;
                post[l][r] = (l < L) ? act_fwd(activation, s) : s;
            }
            off += rows * (cols + 1);
        }
        // backward
        std::vector<double> delta(post[L].size());
        for (std::size_t k = 0; k < delta.size(); ++k)
            delta[k] = 2.0 * (post[L][k] - rat_to_double(sample.out[k]));
        for (std::size_t l = L; l >= 1; --l) {
            const int rows = widths[l], cols = widths[l - 1];
            const std::size_t o = offsets[l];
            std::vector<double> prev_delta(cols, 0.0);
            for (int r = 0; r < rows; ++r) {
                double d = delta[r];
                if (l < L) d *= act_bwd(activation, pre[l][r], post[l][r]);
                grad[o + rows * cols + r] += d; // bias
                for (int c = 0; c < cols; ++c) {
                    grad[o + r * cols + c] += d * post[l - 1][c];
                    prev_delta[c] += d * weights[o + r * cols + c];
                }
            }
            delta = std::move(prev_delta);
            if (l == 1) break;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(data.size());
    for (std::size_t k = 0; k < free_indices.size(); ++k)
        out[k] = grad[free_indices[k]] * inv_n;
}

} // namespace gdtune
