#pragma once

#include "tidt/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tidt {

using Shape = std::vector<std::size_t>;
using Complex = std::complex<double>;

/// Number of elements described by `shape` (1 for the empty shape).
inline std::size_t shape_size(const Shape& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>{});
}

std::string shape_to_string(const Shape& shape);

/// Dense order-d tensor stored row-major (first index slowest).
///
/// Extents are all positive; element access through `at()` is bounds
/// checked and throws `ShapeError` on a bad index, while `operator[]`
/// addresses the flat buffer directly.
template <typename T>
class BasicTensor {
public:
    using value_type = T;

    BasicTensor() = default;

    explicit BasicTensor(Shape shape, T fill = T{})
        : shape_(std::move(shape)) {
        validate_shape(shape_);
        data_.assign(shape_size(shape_), fill);
    }

    BasicTensor(Shape shape, std::vector<T> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        validate_shape(shape_);
        if (data_.size() != shape_size(shape_))
            throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                             " does not match shape " + shape_to_string(shape_));
    }

    static BasicTensor zeros(Shape shape) { return BasicTensor(std::move(shape), T{}); }
    static BasicTensor ones(Shape shape) { return BasicTensor(std::move(shape), T{1}); }

    const Shape& shape() const noexcept { return shape_; }
    std::size_t order() const noexcept { return shape_.size(); }
    std::size_t extent(std::size_t mode) const {
        if (mode >= shape_.size())
            throw ShapeError("mode " + std::to_string(mode) + " out of range for order " +
                             std::to_string(shape_.size()));
        return shape_[mode];
    }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }
    std::vector<T>& storage() noexcept { return data_; }
    const std::vector<T>& storage() const noexcept { return data_; }

    T& operator[](std::size_t i) noexcept { return data_[i]; }
    const T& operator[](std::size_t i) const noexcept { return data_[i]; }

    std::size_t linear_index(std::span<const std::size_t> idx) const {
        if (idx.size() != shape_.size())
            throw ShapeError("index of order " + std::to_string(idx.size()) +
                             " used on tensor of order " + std::to_string(shape_.size()));
        std::size_t lin = 0;
        for (std::size_t m = 0; m < shape_.size(); ++m) {
            if (idx[m] >= shape_[m])
                throw ShapeError("index " + std::to_string(idx[m]) + " out of range for mode " +
                                 std::to_string(m) + " of extent " + std::to_string(shape_[m]));
            lin = lin * shape_[m] + idx[m];
        }
        return lin;
    }

    T& at(std::span<const std::size_t> idx) { return data_[linear_index(idx)]; }
    const T& at(std::span<const std::size_t> idx) const { return data_[linear_index(idx)]; }
    T& at(std::initializer_list<std::size_t> idx) {
        return at(std::span<const std::size_t>(idx.begin(), idx.size()));
    }
    const T& at(std::initializer_list<std::size_t> idx) const {
        return at(std::span<const std::size_t>(idx.begin(), idx.size()));
    }

    /// Same data viewed under a new shape with identical element count.
    BasicTensor reshaped(Shape shape) const {
        if (shape_size(shape) != data_.size())
            throw ShapeError("cannot reshape " + shape_to_string(shape_) + " to " +
                             shape_to_string(shape));
        return BasicTensor(std::move(shape), data_);
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (const auto& v : data_)
            if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
        return true;
    }

    BasicTensor& operator+=(const BasicTensor& o) {
        require_same_shape(o, "+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    BasicTensor& operator-=(const BasicTensor& o) {
        require_same_shape(o, "-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    BasicTensor& operator*=(T s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend BasicTensor operator+(BasicTensor a, const BasicTensor& b) { return a += b; }
    friend BasicTensor operator-(BasicTensor a, const BasicTensor& b) { return a -= b; }
    friend BasicTensor operator*(BasicTensor a, T s) { return a *= s; }
    friend BasicTensor operator*(T s, BasicTensor a) { return a *= s; }

    friend bool operator==(const BasicTensor&, const BasicTensor&) = default;

    void require_same_shape(const BasicTensor& o, const char* what) const {
        if (o.shape_ != shape_)
            throw ShapeError(std::string("shape mismatch in ") + what + ": " +
                             shape_to_string(shape_) + " vs " + shape_to_string(o.shape_));
    }

private:
    static void validate_shape(const Shape& shape) {
        for (std::size_t e : shape)
            if (e == 0) throw ShapeError("tensor extents must be positive: " + shape_to_string(shape));
    }

    Shape shape_;
    std::vector<T> data_;
};

using Tensor = BasicTensor<double>;
using ComplexTensor = BasicTensor<Complex>;

/// Entry-wise product of two equally shaped tensors.
Tensor hadamard(const Tensor& a, const Tensor& b);

/// Frobenius inner product <a, b>.
double inner(const Tensor& a, const Tensor& b);

/// ‖a − b‖_F
double distance(const Tensor& a, const Tensor& b);

/// ‖a − b‖_F / ‖b‖_F, or the absolute distance when b is zero.
double relative_error(const Tensor& a, const Tensor& b);

ComplexTensor to_complex(const Tensor& x);

/// Real part of `x`; throws NumericalError if any imaginary part exceeds
/// `imag_tol` in absolute value.
Tensor real_part(const ComplexTensor& x, double imag_tol);

/// Cyclic shift along mode 0: result(i, ...) = x((i + step) mod t, ...).
Tensor temporal_shift(const Tensor& x, std::size_t step);

} // namespace tidt
