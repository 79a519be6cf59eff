#include "faces.hpp"

#include <lapacke.h>

#include <string>

namespace tidt::detail {

FaceLayout::FaceLayout(const Shape& shape) {
    if (shape.size() < 2) throw ShapeError("face access needs order >= 2, got " + shape_to_string(shape));
    rows = shape[0];
    cols = shape[1];
    for (std::size_t m = 2; m < shape.size(); ++m) faces *= shape[m];
}

Eigen::MatrixXcd FaceLayout::gather(const ComplexTensor& x, std::size_t f) const {
    Eigen::MatrixXcd m(rows, cols);
    const Complex* p = x.data().data();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[(i * cols + j) * faces + f];
    return m;
}

void FaceLayout::scatter(ComplexTensor& x, std::size_t f, const Eigen::MatrixXcd& m) const {
    Complex* p = x.data().data();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            p[(i * cols + j) * faces + f] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

void FaceLayout::scatter_conj(ComplexTensor& x, std::size_t f, const Eigen::MatrixXcd& m) const {
    Complex* p = x.data().data();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            p[(i * cols + j) * faces + f] =
                std::conj(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
}

namespace {

char jobz_of(SvdJob job) {
    switch (job) {
    case SvdJob::ValuesOnly: return 'N';
    case SvdJob::Thin: return 'S';
    case SvdJob::Full: return 'A';
    }
    return 'N';
}

[[noreturn]] void svd_failed(std::size_t face, lapack_int info) {
    throw NumericalError("SVD of transform-domain face " + std::to_string(face) +
                         " did not converge (info=" + std::to_string(info) + ")");
}

} // namespace

FaceSvd face_svd(const Eigen::MatrixXcd& a, bool real, SvdJob job, std::size_t face) {
    if (!a.allFinite())
        throw NumericalError("non-finite entries in transform-domain face " + std::to_string(face));
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    const lapack_int mn = std::min(m, n);
    const char jobz = jobz_of(job);
    const lapack_int ucols = job == SvdJob::Full ? m : (job == SvdJob::Thin ? mn : 1);
    const lapack_int vrows = job == SvdJob::Full ? n : (job == SvdJob::Thin ? mn : 1);

    FaceSvd out;
    out.s.resize(mn);
    if (real) {
        Eigen::MatrixXd work = a.real();
        Eigen::MatrixXd u(m, ucols), vt(vrows, n);
        const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, jobz, m, n, work.data(), m, out.s.data(),
                                               u.data(), m, vt.data(), vrows);
        if (info != 0) svd_failed(face, info);
        if (job != SvdJob::ValuesOnly) {
            out.u = u.cast<Complex>();
            out.v = vt.transpose().cast<Complex>();
        }
    } else {
        Eigen::MatrixXcd work = a;
        Eigen::MatrixXcd u(m, ucols), vt(vrows, n);
        const lapack_int info = LAPACKE_zgesdd(
            LAPACK_COL_MAJOR, jobz, m, n, reinterpret_cast<lapack_complex_double*>(work.data()), m,
            out.s.data(), reinterpret_cast<lapack_complex_double*>(u.data()), m,
            reinterpret_cast<lapack_complex_double*>(vt.data()), vrows);
        if (info != 0) svd_failed(face, info);
        if (job != SvdJob::ValuesOnly) {
            out.u = std::move(u);
            out.v = vt.adjoint();
        }
    }
    return out;
}

std::vector<std::size_t> independent_faces(const TrailingTransform& tr) {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < tr.face_count(); ++f)
        if (tr.conjugate_partner(f) >= f) out.push_back(f);
    return out;
}

Shape as_matrix_shape(const Shape& shape) {
    if (shape.size() == 1) return {shape[0], 1};
    return shape;
}

} // namespace tidt::detail
