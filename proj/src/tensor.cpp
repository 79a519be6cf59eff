#include "tidt/tensor.hpp"

#include <sstream>

namespace tidt {

std::string shape_to_string(const Shape& shape) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
    os << ']';
    return os.str();
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
    a.require_same_shape(b, "hadamard");
    Tensor out(a.shape());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

double inner(const Tensor& a, const Tensor& b) {
    a.require_same_shape(b, "inner");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double distance(const Tensor& a, const Tensor& b) {
    a.require_same_shape(b, "distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double relative_error(const Tensor& a, const Tensor& b) {
    const double d = distance(a, b);
    const double nb = b.frobenius_norm();
    return nb > 0.0 ? d / nb : d;
}

ComplexTensor to_complex(const Tensor& x) {
    ComplexTensor out(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    return out;
}

Tensor real_part(const ComplexTensor& x, double imag_tol) {
    Tensor out(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i].imag()) > imag_tol)
            throw NumericalError("imaginary residue " + std::to_string(std::abs(x[i].imag())) +
                                 " exceeds tolerance after inverse transform");
        out[i] = x[i].real();
    }
    return out;
}

Tensor temporal_shift(const Tensor& x, std::size_t step) {
    if (x.order() == 0) return x;
    const std::size_t t = x.extent(0);
    const std::size_t fiber = x.size() / t;
    step %= t;
    Tensor out(x.shape());
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t src = (i + step) % t;
        std::copy_n(x.data().begin() + src * fiber, fiber, out.data().begin() + i * fiber);
    }
    return out;
}

} // namespace tidt
