#include "tidt/sampling.hpp"

#include "faces.hpp"
#include "tidt/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace tidt {

std::string to_string(PatternKind kind) {
    switch (kind) {
    case PatternKind::Pattern1: return "1";
    case PatternKind::Pattern2: return "2";
    case PatternKind::Pattern3: return "3";
    case PatternKind::Bernoulli: return "bernoulli";
    case PatternKind::Prediction: return "prediction";
    case PatternKind::Custom: return "custom";
    }
    return "custom";
}

PatternKind parse_pattern_kind(std::string_view name) {
    if (name == "1" || name == "pattern1") return PatternKind::Pattern1;
    if (name == "2" || name == "pattern2") return PatternKind::Pattern2;
    if (name == "3" || name == "pattern3") return PatternKind::Pattern3;
    if (name == "bernoulli") return PatternKind::Bernoulli;
    if (name == "prediction") return PatternKind::Prediction;
    if (name == "custom") return PatternKind::Custom;
    throw DomainError("unknown sampling pattern '" + std::string(name) + "'");
}

SamplingMask SamplingMask::custom(Tensor mask) {
    for (double v : mask.data())
        if (v != 0.0 && v != 1.0)
            throw DomainError("mask entries must be exactly 0 or 1, found " + std::to_string(v));
    SamplingMask m;
    m.mask = std::move(mask);
    m.kind = PatternKind::Custom;
    m.rate = m.observed_fraction();
    return m;
}

SamplingMask SamplingMask::full(const Shape& shape) {
    SamplingMask m;
    m.mask = Tensor::ones(shape);
    m.kind = PatternKind::Custom;
    return m;
}

double SamplingMask::observed_fraction() const {
    if (mask.empty()) return 0.0;
    const double s = std::accumulate(mask.data().begin(), mask.data().end(), 0.0);
    return s / static_cast<double>(mask.size());
}

Tensor apply_mask(const Tensor& x, const SamplingMask& m) { return hadamard(x, m.mask); }

SamplingMask hankel_mask(const SamplingMask& m, const HankelConfig& cfg) {
    SamplingMask out = m;
    out.mask = hankel_embed_unscaled(m.mask, cfg);
    return out;
}

double min_temporal_sampling_rate(const SamplingMask& m) {
    const Tensor& mk = m.mask;
    if (mk.order() < 1) throw ShapeError("mask has no temporal mode");
    const std::size_t t = mk.extent(0);
    const std::size_t fibers = mk.size() / t;
    double best = 1.0;
    for (std::size_t q = 0; q < fibers; ++q) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < t; ++i) count += mk[i * fibers + q] != 0.0;
        best = std::min(best, static_cast<double>(count) / static_cast<double>(t));
    }
    return best;
}

std::size_t missing_block_length(double rate, std::size_t t) {
    const double x = (1.0 - rate) * static_cast<double>(t);
    const double len = std::ceil(x - 1e-9);
    return static_cast<std::size_t>(std::clamp(len, 0.0, static_cast<double>(t)));
}

namespace {

void require_rate(double rate, const char* what) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw DomainError(std::string(what) + " must lie in (0, 1], got " + std::to_string(rate));
}

void require_temporal_shape(const Shape& shape) {
    if (shape.empty()) throw ShapeError("mask shape needs a temporal mode");
    for (std::size_t e : shape)
        if (e == 0) throw ShapeError("mask extents must be positive: " + shape_to_string(shape));
}

} // namespace

SamplingMask gen_pattern(PatternKind kind, const Shape& shape, double rate, std::uint64_t seed) {
    require_temporal_shape(shape);
    require_rate(rate, "sampling rate");
    if (kind == PatternKind::Bernoulli) return gen_bernoulli(shape, rate, seed);
    if (kind != PatternKind::Pattern1 && kind != PatternKind::Pattern2 && kind != PatternKind::Pattern3)
        throw DomainError("gen_pattern handles patterns 1, 2, 3 and bernoulli");

    const std::size_t t = shape[0];
    const std::size_t fibers = shape_size(shape) / t;
    SamplingMask out;
    out.mask = Tensor::ones(shape);
    out.kind = kind;
    out.rate = rate;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    double* mk = out.mask.data().data();

    if (kind == PatternKind::Pattern1 || kind == PatternKind::Pattern2) {
        const std::size_t len = missing_block_length(rate, t);
        if (len == 0) return out;
        if (len >= t)
            throw DomainError("missing block of length " + std::to_string(len) +
                              " would remove entire temporal fibers (t=" + std::to_string(t) + ")");
        std::uniform_int_distribution<std::size_t> start_dist(0, t - len);
        if (kind == PatternKind::Pattern1) {
            const std::size_t start = start_dist(rng);
            std::fill(mk + start * fibers, mk + (start + len) * fibers, 0.0);
        } else {
            for (std::size_t q = 0; q < fibers; ++q) {
                const std::size_t start = start_dist(rng);
                for (std::size_t i = start; i < start + len; ++i) mk[i * fibers + q] = 0.0;
            }
        }
        return out;
    }

    // Pattern3
    const std::size_t drop = missing_block_length(rate, fibers);
    if (drop == 0) return out;
    if (drop >= fibers)
        throw DomainError("dropping " + std::to_string(drop) + " of " + std::to_string(fibers) +
                          " fibers per time slice leaves nothing observed");
    std::vector<std::size_t> order(fibers);
    for (std::size_t i = 0; i < t; ++i) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t q = 0; q < drop; ++q) mk[i * fibers + order[q]] = 0.0;
    }
    return out;
}

SamplingMask gen_bernoulli(const Shape& shape, double theta, std::uint64_t seed) {
    require_temporal_shape(shape);
    require_rate(theta, "Bernoulli theta");
    SamplingMask out;
    out.mask = Tensor(shape);
    out.kind = PatternKind::Bernoulli;
    out.rate = theta;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : out.mask.data()) v = u(rng) < theta ? 1.0 : 0.0;
    return out;
}

SamplingMask gen_prediction(const Shape& shape, std::size_t horizon) {
    require_temporal_shape(shape);
    const std::size_t t = shape[0];
    if (horizon >= t)
        throw DomainError("forecast horizon " + std::to_string(horizon) + " must be below t=" + std::to_string(t));
    SamplingMask out;
    out.mask = Tensor::ones(shape);
    out.kind = PatternKind::Prediction;
    out.horizon = horizon;
    out.rate = static_cast<double>(t - horizon) / static_cast<double>(t);
    const std::size_t fibers = shape_size(shape) / t;
    std::fill(out.mask.data().begin() + (t - horizon) * fibers, out.mask.data().end(), 0.0);
    return out;
}

namespace {

struct IncoherenceParts {
    double mu = 0.0;
    std::size_t r = 0;
    std::size_t r_s = 0;
};

// Applies per-mode real matrices along the trailing axes of a buffer laid out
// as [rows][trailing...].
void apply_trailing(std::vector<double>& buf, std::size_t rows, const Shape& trailing,
                    const std::vector<Eigen::MatrixXd>& mats) {
    std::vector<double> tmp(buf.size());
    for (std::size_t j = 0; j < trailing.size(); ++j) {
        const std::size_t len = trailing[j];
        std::size_t outer = rows, inner = 1;
        for (std::size_t m = 0; m < j; ++m) outer *= trailing[m];
        for (std::size_t m = j + 1; m < trailing.size(); ++m) inner *= trailing[m];
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t a = 0; a < len; ++a)
                for (std::size_t b = 0; b < len; ++b) {
                    const double w = mats[j](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                    const double* s = buf.data() + (o * len + b) * inner;
                    double* d = tmp.data() + (o * len + a) * inner;
                    for (std::size_t i = 0; i < inner; ++i) d[i] += w * s[i];
                }
        buf.swap(tmp);
    }
}

IncoherenceParts incoherence_parts(const Tensor& h, const TransformSpec& spec) {
    const std::size_t rows = h.extent(0), cols = h.extent(1);
    const TrailingTransform tr(spec, h.shape());
    const detail::FaceLayout layout(h.shape());
    const ComplexTensor hh = tr.forward(h);
    const std::size_t faces = layout.faces;

    std::vector<detail::FaceSvd> svds(faces);
    double smax = 0.0;
    const auto independent = detail::independent_faces(tr);
    for (std::size_t f : independent) {
        const bool real = spec.is_real() || tr.conjugate_partner(f) == f;
        svds[f] = detail::face_svd(layout.gather(hh, f), real, detail::SvdJob::Thin, f);
        if (svds[f].s.size() > 0) smax = std::max(smax, svds[f].s(0));
    }

    IncoherenceParts out;
    if (smax <= 0.0) return out;
    // energy_u[i * faces + f] = squared norm of row i of the rank-truncated U face
    std::vector<double> energy_u(rows * faces, 0.0), energy_v(cols * faces, 0.0);
    for (std::size_t f : independent) {
        const auto& d = svds[f];
        std::size_t rank = 0;
        while (rank < static_cast<std::size_t>(d.s.size()) && d.s(static_cast<Eigen::Index>(rank)) > kRankTol * smax)
            ++rank;
        const std::size_t p = tr.conjugate_partner(f);
        const std::size_t copies = p == f ? 1 : 2;
        out.r = std::max(out.r, rank);
        out.r_s += copies * rank;
        const auto rk = static_cast<Eigen::Index>(rank);
        for (std::size_t i = 0; i < rows; ++i) {
            const double e = d.u.row(static_cast<Eigen::Index>(i)).head(rk).squaredNorm();
            energy_u[i * faces + f] = e;
            energy_u[i * faces + p] = e;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const double e = d.v.row(static_cast<Eigen::Index>(j)).head(rk).squaredNorm();
            energy_v[j * faces + f] = e;
            energy_v[j * faces + p] = e;
        }
    }
    if (out.r == 0) return out;

    // ‖U^T * e(i, s)‖_F^2 = (1/ell) sum_f |L(f, s)|^2 energy_u(i, f); the
    // Kronecker weights separate per mode, so apply |L_j|^T mode by mode.
    const Shape& trailing = tr.trailing_shape();
    std::vector<Eigen::MatrixXd> weights;
    for (std::size_t j = 0; j < trailing.size(); ++j)
        weights.push_back(spec.mode_matrix(trailing[j], j).cwiseAbs2().transpose());
    apply_trailing(energy_u, rows, trailing, weights);
    apply_trailing(energy_v, cols, trailing, weights);

    const double max_u = *std::max_element(energy_u.begin(), energy_u.end()) / tr.ell();
    const double max_v = *std::max_element(energy_v.begin(), energy_v.end()) / tr.ell();
    const double n = static_cast<double>(faces);
    const double r = static_cast<double>(out.r);
    out.mu = std::max(static_cast<double>(rows) * n / r * max_u, static_cast<double>(cols) * n / r * max_v);
    return out;
}

} // namespace

double incoherence_mu(const Tensor& m, const HankelConfig& cfg, const TransformSpec& spec) {
    const IncoherenceParts p = incoherence_parts(hankel_forward(m, cfg), spec);
    if (p.r == 0) throw DomainError("incoherence is undefined for a rank-0 Hankel tensor");
    return p.mu;
}

TheoryDiagnostics theory_bound(const Tensor& m, const SamplingMask& mask, const HankelConfig& cfg,
                               const TransformSpec& spec, double alpha) {
    m.require_same_shape(mask.mask, "theory_bound");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("alpha must lie in (0, 1], got " + std::to_string(alpha));
    const Tensor h = hankel_forward(m, cfg);
    const IncoherenceParts p = incoherence_parts(h, spec);
    if (p.r == 0) throw DomainError("incoherence is undefined for a rank-0 Hankel tensor");

    TheoryDiagnostics d;
    d.rho = min_temporal_sampling_rate(mask);
    d.mu = p.mu;
    d.r = p.r;
    d.r_s = p.r_s;
    d.k = h.extent(1);
    d.t = h.extent(0);
    d.alpha = alpha;
    const double denom = 2.0 * d.mu * static_cast<double>(d.r) * static_cast<double>(d.r_s + 1);
    d.rho_bound = std::clamp(1.0 - alpha * static_cast<double>(d.k) / (denom * static_cast<double>(d.t)), 0.0, 1.0);
    d.h_max = static_cast<double>(d.k) / denom;
    d.satisfied = d.rho > d.rho_bound;
    return d;
}

} // namespace tidt
