#include "tidt/hankel.hpp"

#include "tidt/tsvd.hpp"

#include <cmath>

namespace tidt {

std::string to_string(Padding padding) { return padding == Padding::Symmetric ? "symmetric" : "none"; }

Padding parse_padding(std::string_view name) {
    if (name == "none") return Padding::None;
    if (name == "symmetric") return Padding::Symmetric;
    throw DomainError("unknown padding '" + std::string(name) + "' (expected none or symmetric)");
}

namespace {

void require_temporal(const Tensor& m, const char* op) {
    if (m.order() < 1) throw ShapeError(std::string(op) + " needs a tensor with a temporal mode");
}

Tensor embed(const Tensor& m, std::size_t k, double scale) {
    const std::size_t t = m.extent(0);
    const std::size_t fiber = m.size() / t;
    Shape shape{t, k};
    shape.insert(shape.end(), m.shape().begin() + 1, m.shape().end());
    Tensor out(shape);
    const double* src = m.data().data();
    double* dst = out.data().data();
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const double* s = src + ((i + j) % t) * fiber;
            double* d = dst + (i * k + j) * fiber;
            for (std::size_t q = 0; q < fiber; ++q) d[q] = scale * s[q];
        }
    return out;
}

} // namespace

Tensor symmetric_pad(const Tensor& m) {
    require_temporal(m, "symmetric_pad");
    const std::size_t t = m.extent(0);
    const std::size_t fiber = m.size() / t;
    Shape shape = m.shape();
    shape[0] = 2 * t;
    Tensor out(shape);
    for (std::size_t i = 0; i < t; ++i) {
        std::copy_n(m.data().begin() + i * fiber, fiber, out.data().begin() + i * fiber);
        std::copy_n(m.data().begin() + i * fiber, fiber, out.data().begin() + (2 * t - 1 - i) * fiber);
    }
    return out;
}

Tensor symmetric_unpad(const Tensor& m) {
    require_temporal(m, "symmetric_unpad");
    const std::size_t t2 = m.extent(0);
    if (t2 % 2 != 0) throw ShapeError("symmetric_unpad needs an even temporal extent, got " + shape_to_string(m.shape()));
    const std::size_t t = t2 / 2;
    const std::size_t fiber = m.size() / t2;
    Shape shape = m.shape();
    shape[0] = t;
    Tensor out(shape);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t q = 0; q < fiber; ++q)
            out[i * fiber + q] = 0.5 * (m[i * fiber + q] + m[(t2 - 1 - i) * fiber + q]);
    return out;
}

std::size_t effective_k(const HankelConfig& cfg, std::size_t t) {
    const std::size_t limit = cfg.padding == Padding::Symmetric ? 2 * t : t;
    const std::size_t k = cfg.k == 0 ? limit : cfg.k;
    if (k < 1 || k > limit)
        throw DomainError("Hankel column count k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(limit) + "]");
    return k;
}

Tensor hankel_forward(const Tensor& m, const HankelConfig& cfg) {
    require_temporal(m, "hankel_forward");
    const std::size_t k = effective_k(cfg, m.extent(0));
    const Tensor src = cfg.padding == Padding::Symmetric ? symmetric_pad(m) : m;
    return embed(src, k, 1.0 / std::sqrt(static_cast<double>(k)));
}

Tensor hankel_embed_unscaled(const Tensor& m, const HankelConfig& cfg) {
    require_temporal(m, "hankel_embed_unscaled");
    const std::size_t k = effective_k(cfg, m.extent(0));
    const Tensor src = cfg.padding == Padding::Symmetric ? symmetric_pad(m) : m;
    return embed(src, k, 1.0);
}

Tensor hankel_inverse(const Tensor& z, const HankelConfig& cfg) {
    if (z.order() < 2) throw ShapeError("hankel_inverse needs order >= 2, got " + shape_to_string(z.shape()));
    const std::size_t t = z.extent(0);
    const std::size_t k = z.extent(1);
    if (cfg.padding == Padding::Symmetric && t % 2 != 0)
        throw ShapeError("symmetric-padded Hankel tensor must have an even temporal extent, got " +
                         shape_to_string(z.shape()));
    const std::size_t expected_k = effective_k(cfg, cfg.padding == Padding::Symmetric ? t / 2 : t);
    if (k != expected_k)
        throw ShapeError("Hankel tensor " + shape_to_string(z.shape()) + " has " + std::to_string(k) +
                         " columns, configuration expects " + std::to_string(expected_k));
    const std::size_t fiber = z.size() / (t * k);
    Shape shape{t};
    shape.insert(shape.end(), z.shape().begin() + 2, z.shape().end());
    Tensor out(shape);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    const double* src = z.data().data();
    double* dst = out.data().data();
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const double* s = src + (i * k + j) * fiber;
            double* d = dst + ((i + j) % t) * fiber;
            for (std::size_t q = 0; q < fiber; ++q) d[q] += scale * s[q];
        }
    return cfg.padding == Padding::Symmetric ? symmetric_unpad(out) : out;
}

double smoothness(const Tensor& m) {
    require_temporal(m, "smoothness");
    return distance(m, temporal_shift(m, 1));
}

double periodicity(const Tensor& m, std::size_t tau) {
    require_temporal(m, "periodicity");
    if (tau < 1 || tau > m.extent(0))
        throw DomainError("period tau=" + std::to_string(tau) + " outside [1, " + std::to_string(m.extent(0)) + "]");
    return distance(m, temporal_shift(m, tau));
}

double rank_error(const Tensor& z, std::size_t r, const TransformSpec& spec) {
    if (z.order() < 2) throw ShapeError("rank_error needs a Hankel tensor of order >= 2");
    const std::size_t limit = std::min(z.extent(0), z.extent(1));
    if (r > limit)
        throw DomainError("rank r=" + std::to_string(r) + " outside [0, " + std::to_string(limit) + "]");
    return truncation_error(z, r, spec);
}

BoundCheck check_smoothness_bound(const Tensor& m, std::size_t k, std::size_t r, const TransformSpec& spec) {
    const Tensor h = hankel_forward(m, {k, Padding::None});
    if (r < 1 || r > std::min(m.extent(0), k))
        throw DomainError("smoothness bound needs 1 <= r <= min(t, k), got r=" + std::to_string(r));
    BoundCheck c;
    c.lhs = rank_error(h, r, spec);
    const double dk = static_cast<double>(k), dr = static_cast<double>(r);
    c.rhs = std::sqrt((dk - dr) / (3.0 * dk)) * std::ceil(dk / dr) * smoothness(m);
    c.holds = c.lhs <= c.rhs + kBoundSlack;
    return c;
}

BoundCheck check_periodicity_bound(const Tensor& m, std::size_t k, std::size_t tau, const TransformSpec& spec) {
    const Tensor h = hankel_forward(m, {k, Padding::None});
    const double beta = periodicity(m, tau);
    const std::size_t r = std::min({tau, m.extent(0), k});
    BoundCheck c;
    c.lhs = rank_error(h, r, spec);
    const double dk = static_cast<double>(k), dt = static_cast<double>(tau);
    c.rhs = dt / std::sqrt(dk) * (std::ceil(dk / dt) - 1.0) * beta;
    c.holds = c.lhs <= c.rhs + kBoundSlack;
    return c;
}

} // namespace tidt
