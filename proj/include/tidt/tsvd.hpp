#pragma once

#include "tidt/tensor.hpp"
#include "tidt/transform.hpp"

#include <Eigen/Dense>

#include <vector>

namespace tidt {

/// Relative tolerance (w.r.t. the largest transform-domain singular value)
/// below which a singular value counts as zero.
inline constexpr double kRankTol = 1e-8;

/// Factors of z = U * S * V^T.
///
/// Full factors have U: n1 x n1 x ..., S: n1 x n2 x ..., V: n2 x n2 x ...;
/// skinny factors keep the first r = tsvd_rank(z) lateral slices
/// (U: n1 x r x ..., S: r x r x ..., V: n2 x r x ...). S is f-diagonal in
/// the transform domain with nonnegative, nonincreasing diagonals.
struct TSvdFactors {
    Tensor u;
    Tensor s;
    Tensor v;
    TransformSpec transform;
};

enum class SvdForm { Full, Skinny };

/// n x n x trailing tensor whose transform-domain faces all equal I_n
/// (for the DFT: first face I_n, the others zero).
Tensor identity_tensor(std::size_t n, const Shape& trailing, const TransformSpec& spec = {});

/// a * b computed face-wise in the transform domain.
Tensor t_product(const Tensor& a, const Tensor& b, const TransformSpec& spec = {});

/// Tensor whose transform-domain faces are the conjugate transposes of
/// those of a.
Tensor t_transpose(const Tensor& a, const TransformSpec& spec = {});

TSvdFactors t_svd(const Tensor& z, const TransformSpec& spec = {}, SvdForm form = SvdForm::Full);

/// Singular values of every transform-domain face, lexicographic face order.
std::vector<Eigen::VectorXd> face_singular_values(const Tensor& z, const TransformSpec& spec = {});

std::size_t tsvd_rank(const Tensor& z, const TransformSpec& spec = {});
std::vector<std::size_t> multi_rank(const Tensor& z, const TransformSpec& spec = {});
std::size_t multi_rank_sum(const Tensor& z, const TransformSpec& spec = {});

/// (1/ell) * sum of all transform-domain singular values.
double tnn(const Tensor& z, const TransformSpec& spec = {});

/// Largest transform-domain singular value.
double spectral_norm(const Tensor& z, const TransformSpec& spec = {});

/// Proximal operator of tau * tnn: shrinks every transform-domain singular
/// value by tau. Throws DomainError for negative tau.
Tensor t_svt(const Tensor& z, double tau, const TransformSpec& spec = {});

struct SvtResult {
    Tensor value;
    double tnn = 0.0;        ///< tnn of `value`
    std::size_t rank = 0;    ///< tubal rank of `value`
};

/// t_svt against a pre-bound transform; also reports the TNN and tubal rank
/// of the result, which come for free from the shrunken spectrum.
SvtResult t_svt(const Tensor& z, double tau, const TrailingTransform& transform);

/// min ‖z − w‖_F over tubal-rank ≤ r tensors w (per-face Eckart-Young).
double truncation_error(const Tensor& z, std::size_t r, const TransformSpec& spec = {});

} // namespace tidt
