#pragma once

// Transform-domain face access and per-face SVD shared by the t-SVD stack.

#include "tidt/tensor.hpp"
#include "tidt/transform.hpp"

#include <Eigen/Dense>

#include <vector>

namespace tidt::detail {

/// Face f of an n1 x n2 x (trailing) tensor is the strided matrix
/// x(:, :, f) with entry (i, j) stored at (i * n2 + j) * faces + f.
struct FaceLayout {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t faces = 1;

    explicit FaceLayout(const Shape& shape);

    Eigen::MatrixXcd gather(const ComplexTensor& x, std::size_t f) const;
    void scatter(ComplexTensor& x, std::size_t f, const Eigen::MatrixXcd& m) const;
    void scatter_conj(ComplexTensor& x, std::size_t f, const Eigen::MatrixXcd& m) const;
};

enum class SvdJob { ValuesOnly, Thin, Full };

/// a = u * diag(s) * v^H, singular values in nonincreasing order.
struct FaceSvd {
    Eigen::MatrixXcd u;
    Eigen::VectorXd s;
    Eigen::MatrixXcd v;
};

/// LAPACK divide-and-conquer SVD of one face. `real` selects the real
/// routine on Re(a) (faces of real transforms and self-conjugate DFT faces).
/// Throws NumericalError naming `face` on non-convergence.
FaceSvd face_svd(const Eigen::MatrixXcd& a, bool real, SvdJob job, std::size_t face);

/// Faces that must be processed explicitly: f with partner(f) >= f.
/// The remaining faces are conjugates of processed ones.
std::vector<std::size_t> independent_faces(const TrailingTransform& tr);

struct FaceSvt {
    ComplexTensor value;
    double nuclear = 0.0; ///< sum of shrunken singular values over all faces, not divided by ell
    std::size_t rank = 0;
};

/// Singular value thresholding of every face of a transform-domain tensor.
/// Conjugate partner faces are filled from their processed counterparts.
FaceSvt svt_faces(const ComplexTensor& zh, double tau, const TrailingTransform& tr);

/// Order-2 tensors are handled as a single face; order-1 tensors are
/// promoted to an n x 1 matrix.
Shape as_matrix_shape(const Shape& shape);

} // namespace tidt::detail
