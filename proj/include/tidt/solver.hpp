#pragma once

#include "tidt/hankel.hpp"
#include "tidt/sampling.hpp"
#include "tidt/tensor.hpp"
#include "tidt/transform.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

namespace tidt {

/// ADMM settings for the Hankel-TNN completion model
///   min ‖H_k(X)‖_⊛ + (λ/2)‖P_Ω(X − Y)‖_F².
/// A large λ (1e10) emulates exact data constraints; a small one (0.01)
/// absorbs observation noise.
struct SolverConfig {
    std::size_t k = 0; ///< 0 selects k = t
    double lambda = 1e10;
    double mu0 = 1e-6;
    double mu_growth = 1.1;
    double mu_max = 1e12;
    std::size_t max_iters = 500;
    double tol = 1e-7;
    TransformSpec transform{};
    Padding padding = Padding::None;

    HankelConfig hankel() const { return {k, padding}; }

    /// Throws DomainError on an invalid combination.
    void validate() const;
};

struct RecoveryReport {
    std::size_t iterations = 0;
    std::vector<double> primal_residuals; ///< ‖Z − H_k(X)‖_F per iterate
    std::vector<double> relative_changes; ///< ‖X^{j+1} − X^j‖_F / max(1, ‖X^j‖_F)
    std::vector<double> objective_trace;  ///< ‖Z‖_⊛ + (λ/2)‖P_Ω(X − Y)‖_F² per iterate
    bool converged = false;
    std::optional<double> mae;
    std::optional<double> rmse;
    std::chrono::duration<double> wall_time{0};
};

/// Snapshot handed to an iteration observer after the multiplier update.
/// All tensors live in the (possibly padded) working domain.
///
/// The solver keeps Z and the multiplier in the transform domain (the
/// trailing-mode transform commutes with the temporal Hankel map), so the
/// `_hat` fields are the values it actually updates and the real-valued
/// fields are their inverse transforms.
struct IterationState {
    std::size_t iteration = 0;
    double mu = 0.0;             ///< penalty used in this iteration
    const Tensor& observed;      ///< P_Ω(Y)
    const Tensor& mask;
    const Tensor& x_prev;
    const Tensor& x;
    const Tensor& z;
    const Tensor& multiplier_prev;
    const Tensor& multiplier;
    const HankelConfig& hankel;  ///< unpadded configuration of the working domain
    const ComplexTensor& z_hat;
    const ComplexTensor& hankel_x_hat; ///< transform of H_k(x)
    const ComplexTensor& multiplier_hat_prev;
    const ComplexTensor& multiplier_hat;
};

using IterationObserver = std::function<void(const IterationState&)>;

struct Recovery {
    Tensor x;
    RecoveryReport report;
};

/// Runs the three-block ADMM (t-SVT step, closed-form data step, dual
/// ascent) with geometrically increasing penalty. Throws ShapeError on a
/// mask mismatch and NumericalError if the iterates stop being finite.
Recovery admm_solve(const Tensor& y, const SamplingMask& mask, const SolverConfig& cfg,
                    const IterationObserver& observer = {});

/// ‖H_k(x)‖_⊛ + (λ/2)‖P_Ω(x − y)‖_F²
double objective(const Tensor& x, const Tensor& y, const SamplingMask& mask, const SolverConfig& cfg);

} // namespace tidt
