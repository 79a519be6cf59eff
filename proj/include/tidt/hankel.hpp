#pragma once

#include "tidt/tensor.hpp"
#include "tidt/transform.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace tidt {

enum class Padding { None, Symmetric };

std::string to_string(Padding padding);
Padding parse_padding(std::string_view name); // "none" | "symmetric"

/// Temporal Hankel transform settings. `k == 0` selects k = t, where t is
/// the temporal extent after padding.
struct HankelConfig {
    std::size_t k = 0;
    Padding padding = Padding::None;
};

/// [M_1, ..., M_t, M_t, ..., M_1] along mode 0.
Tensor symmetric_pad(const Tensor& m);

/// Inverse of symmetric_pad: averages the two mirrored copies of each slice.
Tensor symmetric_unpad(const Tensor& m);

/// Column count actually used for a tensor whose (unpadded) temporal
/// extent is `t`; throws DomainError when k is out of range.
std::size_t effective_k(const HankelConfig& cfg, std::size_t t);

/// Temporal Hankel tensor of m (t x n_1 x ... x n_p -> t x k x n_1 x ... x n_p).
/// Lateral slice j holds the temporal fibers cyclically advanced by j steps,
/// scaled by 1/sqrt(k), so the map is an isometry for Padding::None.
Tensor hankel_forward(const Tensor& m, const HankelConfig& cfg);

/// Adjoint of hankel_forward (and its left inverse). With symmetric padding
/// the mirrored halves of the length-2t intermediate are averaged.
Tensor hankel_inverse(const Tensor& z, const HankelConfig& cfg);

/// Hankelization without the 1/sqrt(k) factor; keeps 0/1 masks binary.
Tensor hankel_embed_unscaled(const Tensor& m, const HankelConfig& cfg);

/// ‖m − S(m)‖_F where S advances every temporal fiber by one step (cyclic).
double smoothness(const Tensor& m);

/// ‖m − N_tau(m)‖_F where N_tau advances every temporal fiber by tau steps.
double periodicity(const Tensor& m, std::size_t tau);

/// Best tubal-rank-r approximation error of a Hankel tensor z (t x k x ...).
/// Requires 0 <= r <= min(t, k).
double rank_error(const Tensor& z, std::size_t r, const TransformSpec& spec = {});

struct BoundCheck {
    double lhs = 0.0; ///< rank-r approximation error of H_k(m)
    double rhs = 0.0; ///< smoothness/periodicity bound
    bool holds = true;
    double slack() const noexcept { return rhs - lhs; }
};

inline constexpr double kBoundSlack = 1e-10;

/// eps_r(H_k(m)) <= sqrt((k - r) / (3k)) * ceil(k / r) * smoothness(m)
BoundCheck check_smoothness_bound(const Tensor& m, std::size_t k, std::size_t r,
                                  const TransformSpec& spec = {});

/// eps_tau(H_k(m)) <= (tau / sqrt(k)) * (ceil(k / tau) - 1) * periodicity(m, tau)
BoundCheck check_periodicity_bound(const Tensor& m, std::size_t k, std::size_t tau,
                                   const TransformSpec& spec = {});

} // namespace tidt
