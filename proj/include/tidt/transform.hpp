#pragma once

#include "tidt/tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tidt {

enum class TransformKind { Dft, Dct, RandomOrthogonal };

std::string to_string(TransformKind kind);
TransformKind parse_transform_kind(std::string_view name); // "dft" | "dct" | "rot"

/// Which invertible transform defines the t-algebra along the trailing
/// modes (3..d) of a tensor.
///
/// The per-mode matrices depend on the mode extents, so a spec is bound to
/// a concrete trailing shape through `TrailingTransform`. Every matrix L
/// satisfies L^H L = c I; `ell` is the product of those constants: the
/// product of the extents for DFT and 1 for the orthonormal DCT-II and the
/// random orthogonal transform.
struct TransformSpec {
    TransformKind kind = TransformKind::Dft;
    std::uint64_t seed = 0; ///< only used by RandomOrthogonal

    static TransformSpec dft() { return {TransformKind::Dft, 0}; }
    static TransformSpec dct() { return {TransformKind::Dct, 0}; }
    static TransformSpec random_orthogonal(std::uint64_t seed) {
        return {TransformKind::RandomOrthogonal, seed};
    }

    /// True when the transform matrices are real, so transform-domain faces
    /// of a real tensor are real.
    bool is_real() const noexcept { return kind != TransformKind::Dft; }

    /// Forward matrix for trailing mode `position` (0-based among the
    /// trailing modes) of extent n.
    Eigen::MatrixXcd mode_matrix(std::size_t n, std::size_t position) const;

    /// Constant c with L^H L = c I for that mode.
    double mode_constant(std::size_t n) const;

    friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

/// A TransformSpec bound to the trailing extents of a tensor shape.
class TrailingTransform {
public:
    TrailingTransform(const TransformSpec& spec, const Shape& tensor_shape);

    const TransformSpec& spec() const noexcept { return spec_; }
    const Shape& trailing_shape() const noexcept { return trailing_; }
    std::size_t face_count() const noexcept { return faces_; }
    double ell() const noexcept { return ell_; }

    ComplexTensor forward(const Tensor& x) const;
    ComplexTensor forward(const ComplexTensor& x) const;
    ComplexTensor inverse_complex(const ComplexTensor& x) const;

    /// Inverse transform followed by the real-output check: imaginary parts
    /// up to 1e-9 (relative to max(1, max|x|)) are dropped, larger residue
    /// throws NumericalError.
    Tensor inverse(const ComplexTensor& x) const;

    /// Index of the face whose transform-domain slice is the complex
    /// conjugate of face `f` for every real input. Identity for real
    /// transforms.
    std::size_t conjugate_partner(std::size_t f) const;

private:
    void apply(ComplexTensor& x, const std::vector<Eigen::MatrixXcd>& mats) const;

    TransformSpec spec_;
    Shape shape_;
    Shape trailing_;
    std::size_t faces_ = 1;
    double ell_ = 1.0;
    std::vector<Eigen::MatrixXcd> forward_;
    std::vector<Eigen::MatrixXcd> inverse_;
};

inline constexpr double kImagTolerance = 1e-9;

/// x ×_3 L_{n_3} ... ×_d L_{n_d}. Orders 1 and 2 pass through unchanged.
ComplexTensor transform_forward(const Tensor& x, const TransformSpec& spec);
ComplexTensor transform_inverse_complex(const ComplexTensor& x, const TransformSpec& spec);
Tensor transform_inverse(const ComplexTensor& x, const TransformSpec& spec);

} // namespace tidt
