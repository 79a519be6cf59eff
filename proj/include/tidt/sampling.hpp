#pragma once

#include "tidt/hankel.hpp"
#include "tidt/tensor.hpp"
#include "tidt/transform.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tidt {

enum class PatternKind { Pattern1, Pattern2, Pattern3, Bernoulli, Prediction, Custom };

std::string to_string(PatternKind kind);
PatternKind parse_pattern_kind(std::string_view name); // "1" | "2" | "3" | "bernoulli" | "prediction" | "custom"

/// Binary observation mask (1 = observed) plus how it was produced.
///
/// Pattern1: one contiguous block of time steps missing in every fiber.
/// Pattern2: every spatial fiber loses its own contiguous block.
/// Pattern3: every time slice loses its own random subset of fibers.
struct SamplingMask {
    Tensor mask;
    PatternKind kind = PatternKind::Custom;
    double rate = 1.0;          ///< requested observed fraction (patterns) or theta (Bernoulli)
    std::size_t horizon = 0;    ///< Prediction only
    std::uint64_t seed = 0;

    /// Wraps an arbitrary tensor, checking that entries are exactly 0 or 1.
    static SamplingMask custom(Tensor mask);

    static SamplingMask full(const Shape& shape);

    double observed_fraction() const;
};

Tensor apply_mask(const Tensor& x, const SamplingMask& m);

/// Binary mask of the Hankelized observations (the 1/sqrt(k) factor dropped).
SamplingMask hankel_mask(const SamplingMask& m, const HankelConfig& cfg);

/// Smallest per-fiber fraction of observed time steps.
double min_temporal_sampling_rate(const SamplingMask& m);

/// Number of missing time steps a pattern of observed fraction `rate` removes
/// from a length-t fiber: ceil((1 - rate) * t), ignoring round-off.
std::size_t missing_block_length(double rate, std::size_t t);

SamplingMask gen_pattern(PatternKind kind, const Shape& shape, double rate, std::uint64_t seed);
SamplingMask gen_bernoulli(const Shape& shape, double theta, std::uint64_t seed);
SamplingMask gen_prediction(const Shape& shape, std::size_t horizon);

/// Smallest mu satisfying both temporal Hankel incoherence conditions for
/// the skinny t-SVD of H_k(m). Throws DomainError when H_k(m) has rank 0.
double incoherence_mu(const Tensor& m, const HankelConfig& cfg, const TransformSpec& spec = {});

struct TheoryDiagnostics {
    double rho = 0.0;
    double mu = 0.0;
    std::size_t r = 0;
    std::size_t r_s = 0;
    std::size_t k = 0;
    std::size_t t = 0;
    double alpha = 1.0;
    double rho_bound = 0.0;
    double h_max = 0.0; ///< horizon bound k / (2 mu r (r_s + 1))
    bool satisfied = false;
};

inline constexpr double kDefaultAlpha = 0.99;

/// Sampling-rate condition rho > 1 - alpha k / (2 mu r (r_s + 1) t) for the
/// ground-truth tensor m under mask.
TheoryDiagnostics theory_bound(const Tensor& m, const SamplingMask& mask, const HankelConfig& cfg,
                               const TransformSpec& spec = {}, double alpha = kDefaultAlpha);

} // namespace tidt
