#include "tidt/transform.hpp"

#include <numbers>
#include <random>

namespace tidt {

std::string to_string(TransformKind kind) {
    switch (kind) {
    case TransformKind::Dft: return "dft";
    case TransformKind::Dct: return "dct";
    case TransformKind::RandomOrthogonal: return "rot";
    }
    return "unknown";
}

TransformKind parse_transform_kind(std::string_view name) {
    if (name == "dft" || name == "fft") return TransformKind::Dft;
    if (name == "dct") return TransformKind::Dct;
    if (name == "rot" || name == "random-orthogonal") return TransformKind::RandomOrthogonal;
    throw DomainError("unknown transform '" + std::string(name) + "' (expected dft, dct or rot)");
}

namespace {

Eigen::MatrixXcd dft_matrix(std::size_t n) {
    Eigen::MatrixXcd f(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // reduce the exponent first so large n keeps full phase accuracy
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((a * b) % n) /
                                 static_cast<double>(n);
            f(a, b) = std::polar(1.0, phase);
        }
    return f;
}

Eigen::MatrixXcd dct_matrix(std::size_t n) {
    Eigen::MatrixXcd c(n, n);
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double alpha = std::sqrt((k == 0 ? 1.0 : 2.0) / dn);
        for (std::size_t j = 0; j < n; ++j)
            c(k, j) = alpha * std::cos(std::numbers::pi * (2.0 * j + 1.0) * k / (2.0 * dn));
    }
    return c;
}

Eigen::MatrixXcd random_orthogonal_matrix(std::size_t n, std::uint64_t seed, std::size_t position) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(n)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < g.cols(); ++j)
        for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // sign fix makes Q Haar distributed and independent of the QR convention
    for (Eigen::Index j = 0; j < q.cols(); ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q.cast<Complex>();
}

} // namespace

Eigen::MatrixXcd TransformSpec::mode_matrix(std::size_t n, std::size_t position) const {
    switch (kind) {
    case TransformKind::Dft: return dft_matrix(n);
    case TransformKind::Dct: return dct_matrix(n);
    case TransformKind::RandomOrthogonal: return random_orthogonal_matrix(n, seed, position);
    }
    throw DomainError("invalid transform kind");
}

double TransformSpec::mode_constant(std::size_t n) const {
    return kind == TransformKind::Dft ? static_cast<double>(n) : 1.0;
}

TrailingTransform::TrailingTransform(const TransformSpec& spec, const Shape& tensor_shape)
    : spec_(spec), shape_(tensor_shape) {
    if (tensor_shape.size() > 2) trailing_.assign(tensor_shape.begin() + 2, tensor_shape.end());
    for (std::size_t j = 0; j < trailing_.size(); ++j) {
        const std::size_t n = trailing_[j];
        Eigen::MatrixXcd l = spec.mode_matrix(n, j);
        const double c = spec.mode_constant(n);
        inverse_.push_back(l.adjoint() / c);
        forward_.push_back(std::move(l));
        faces_ *= n;
        ell_ *= c;
    }
}

void TrailingTransform::apply(ComplexTensor& x, const std::vector<Eigen::MatrixXcd>& mats) const {
    if (x.shape() != shape_)
        throw ShapeError("transform bound to " + shape_to_string(shape_) + " applied to " +
                         shape_to_string(x.shape()));
    if (mats.empty()) return;
    const Shape& shape = x.shape();
    std::vector<Complex> buf(x.size());
    for (std::size_t j = 0; j < mats.size(); ++j) {
        const std::size_t axis = j + 2;
        const std::size_t len = shape[axis];
        std::size_t outer = 1, inner = 1;
        for (std::size_t m = 0; m < axis; ++m) outer *= shape[m];
        for (std::size_t m = axis + 1; m < shape.size(); ++m) inner *= shape[m];
        const Eigen::MatrixXcd& l = mats[j];
        const auto n = static_cast<Eigen::Index>(len);
        const auto in = static_cast<Eigen::Index>(inner);
        Complex* src = x.data().data();
        if (inner == 1) {
            // row-major outer x len is column-major len x outer
            Eigen::Map<const Eigen::MatrixXcd> m(src, n, static_cast<Eigen::Index>(outer));
            Eigen::Map<Eigen::MatrixXcd> dst(buf.data(), n, static_cast<Eigen::Index>(outer));
            dst.noalias() = l * m;
        } else {
            for (std::size_t o = 0; o < outer; ++o) {
                const std::size_t base = o * len * inner;
                Eigen::Map<const Eigen::MatrixXcd> m(src + base, in, n);
                Eigen::Map<Eigen::MatrixXcd> dst(buf.data() + base, in, n);
                dst.noalias() = m * l.transpose();
            }
        }
        std::copy(buf.begin(), buf.end(), x.data().begin());
    }
}

ComplexTensor TrailingTransform::forward(const Tensor& x) const {
    ComplexTensor out = to_complex(x);
    apply(out, forward_);
    return out;
}

ComplexTensor TrailingTransform::forward(const ComplexTensor& x) const {
    ComplexTensor out = x;
    apply(out, forward_);
    return out;
}

ComplexTensor TrailingTransform::inverse_complex(const ComplexTensor& x) const {
    ComplexTensor out = x;
    apply(out, inverse_);
    return out;
}

Tensor TrailingTransform::inverse(const ComplexTensor& x) const {
    const ComplexTensor out = inverse_complex(x);
    double scale = 1.0;
    for (const Complex& v : out.data()) scale = std::max(scale, std::abs(v.real()));
    return real_part(out, kImagTolerance * scale);
}

std::size_t TrailingTransform::conjugate_partner(std::size_t f) const {
    if (spec_.is_real() || trailing_.empty()) return f;
    // negate every trailing index modulo its extent
    std::size_t partner = 0;
    std::size_t stride = 1;
    for (std::size_t j = trailing_.size(); j-- > 0;) {
        const std::size_t n = trailing_[j];
        const std::size_t idx = (f / stride) % n;
        partner += ((n - idx) % n) * stride;
        stride *= n;
    }
    return partner;
}

ComplexTensor transform_forward(const Tensor& x, const TransformSpec& spec) {
    return TrailingTransform(spec, x.shape()).forward(x);
}

ComplexTensor transform_inverse_complex(const ComplexTensor& x, const TransformSpec& spec) {
    return TrailingTransform(spec, x.shape()).inverse_complex(x);
}

Tensor transform_inverse(const ComplexTensor& x, const TransformSpec& spec) {
    return TrailingTransform(spec, x.shape()).inverse(x);
}

} // namespace tidt
