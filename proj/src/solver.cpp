#include "tidt/solver.hpp"

#include "faces.hpp"
#include "tidt/tsvd.hpp"

#include <cmath>
#include <string>

namespace tidt {

void SolverConfig::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be finite and nonnegative");
    if (!(mu0 > 0.0)) throw DomainError("mu0 must be positive");
    if (!(mu_growth > 1.0)) throw DomainError("mu growth factor must exceed 1");
    if (!(mu_max >= mu0)) throw DomainError("mu cap must be at least mu0");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (max_iters == 0) throw DomainError("max_iters must be positive");
}

namespace {

// x viewed as t x 1 x n_1 x ... so its faces line up with those of H_k(x).
Shape column_shape(const Shape& shape) {
    Shape out{shape[0], 1};
    out.insert(out.end(), shape.begin() + 1, shape.end());
    return out;
}

// Complex counterparts of the unpadded Hankel map and its adjoint on the
// face layout [t][k][faces].
void hankel_hat(const ComplexTensor& xh, std::size_t k, ComplexTensor& out) {
    const std::size_t t = xh.extent(0);
    const std::size_t faces = xh.size() / t;
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    const Complex* src = xh.data().data();
    Complex* dst = out.data().data();
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Complex* s = src + ((i + j) % t) * faces;
            Complex* d = dst + (i * k + j) * faces;
            for (std::size_t f = 0; f < faces; ++f) d[f] = scale * s[f];
        }
}

ComplexTensor hankel_adjoint_hat(const ComplexTensor& zh, const Shape& col_shape) {
    const std::size_t t = zh.extent(0);
    const std::size_t k = zh.extent(1);
    const std::size_t faces = zh.size() / (t * k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    ComplexTensor out(col_shape);
    const Complex* src = zh.data().data();
    Complex* dst = out.data().data();
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Complex* s = src + (i * k + j) * faces;
            Complex* d = dst + ((i + j) % t) * faces;
            for (std::size_t f = 0; f < faces; ++f) d[f] += scale * s[f];
        }
    return out;
}

} // namespace

Recovery admm_solve(const Tensor& y, const SamplingMask& mask, const SolverConfig& cfg,
                    const IterationObserver& observer) {
    cfg.validate();
    y.require_same_shape(mask.mask, "admm_solve");
    if (y.order() < 1) throw ShapeError("admm_solve needs a tensor with a temporal mode");
    if (!y.all_finite()) throw NumericalError("observed tensor contains non-finite values");
    const auto start = std::chrono::steady_clock::now();

    const bool padded = cfg.padding == Padding::Symmetric;
    const HankelConfig hcfg{effective_k(cfg.hankel(), y.extent(0)), Padding::None};
    const Tensor omega = padded ? symmetric_pad(mask.mask) : mask.mask;
    // entries outside the mask are ignored even if the caller left data there
    const Tensor observed = hadamard(padded ? symmetric_pad(y) : y, omega);

    const std::size_t k = hcfg.k;
    const Shape col_shape = column_shape(observed.shape());
    Shape h_shape = col_shape;
    h_shape[1] = k;
    const TrailingTransform xtr(cfg.transform, col_shape);
    const TrailingTransform htr(cfg.transform, h_shape);
    const double norm_scale = 1.0 / std::sqrt(static_cast<double>(htr.ell()));

    const double lambda = cfg.lambda;
    Tensor x = observed;
    ComplexTensor hx_hat(h_shape);
    hankel_hat(xtr.forward(x.reshaped(col_shape)), k, hx_hat);
    ComplexTensor multiplier(h_shape);
    double mu = cfg.mu0;

    RecoveryReport report;
    ComplexTensor shifted(h_shape);
    ComplexTensor dual_sum(h_shape);
    ComplexTensor hx_next(h_shape);
    Tensor multiplier_real, multiplier_real_prev;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = hx_hat[i] - multiplier[i] / mu;
        const detail::FaceSvt svt = detail::svt_faces(shifted, 1.0 / mu, htr);
        const ComplexTensor& z = svt.value;

        for (std::size_t i = 0; i < z.size(); ++i) dual_sum[i] = mu * z[i] + multiplier[i];
        const Tensor back = xtr.inverse(hankel_adjoint_hat(dual_sum, col_shape)).reshaped(x.shape());
        Tensor x_next(x.shape());
        for (std::size_t i = 0; i < x.size(); ++i)
            x_next[i] = (back[i] + lambda * omega[i] * observed[i]) / (lambda * omega[i] + mu);

        hankel_hat(xtr.forward(x_next.reshaped(col_shape)), k, hx_next);
        ComplexTensor multiplier_next(h_shape);
        double primal_sq = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const Complex gap = z[i] - hx_next[i];
            multiplier_next[i] = multiplier[i] + mu * gap;
            primal_sq += std::norm(gap);
        }
        double fit_sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = omega[i] * (x_next[i] - observed[i]);
            fit_sq += r * r;
        }

        // the transform scales norms by sqrt(ell); H_k is an isometry
        const double primal = std::sqrt(primal_sq) * norm_scale;
        const double change = distance(x_next, x) / std::max(1.0, x.frobenius_norm());
        const double hx_norm = x_next.frobenius_norm();
        if (!std::isfinite(primal) || !std::isfinite(change) || !x_next.all_finite())
            throw NumericalError("ADMM iterates became non-finite at iteration " + std::to_string(it) +
                                 " (mu=" + std::to_string(mu) + ")");

        report.primal_residuals.push_back(primal);
        report.relative_changes.push_back(change);
        report.objective_trace.push_back(svt.nuclear / static_cast<double>(htr.ell()) + 0.5 * lambda * fit_sq);
        report.iterations = it + 1;

        if (observer) {
            if (it == 0) multiplier_real_prev = Tensor(h_shape);
            const Shape out_shape = hankel_forward(x, hcfg).shape();
            const Tensor z_real = htr.inverse(z).reshaped(out_shape);
            multiplier_real = htr.inverse(multiplier_next).reshaped(out_shape);
            const Tensor prev = multiplier_real_prev.reshaped(out_shape);
            observer(IterationState{it, mu, observed, omega, x, x_next, z_real, prev, multiplier_real, hcfg, z,
                                    hx_next, multiplier, multiplier_next});
            multiplier_real_prev = multiplier_real;
        }

        x = std::move(x_next);
        std::swap(hx_hat, hx_next);
        multiplier = std::move(multiplier_next);
        mu = std::min(mu * cfg.mu_growth, cfg.mu_max);

        if (change < cfg.tol && primal <= cfg.tol * hx_norm) {
            report.converged = true;
            break;
        }
    }

    report.wall_time = std::chrono::steady_clock::now() - start;
    return {padded ? symmetric_unpad(x) : std::move(x), std::move(report)};
}

double objective(const Tensor& x, const Tensor& y, const SamplingMask& mask, const SolverConfig& cfg) {
    x.require_same_shape(y, "objective");
    x.require_same_shape(mask.mask, "objective");
    const Tensor h = hankel_forward(x, cfg.hankel());
    double fit_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = mask.mask[i] * (x[i] - y[i]);
        fit_sq += r * r;
    }
    return tnn(h, cfg.transform) + 0.5 * cfg.lambda * fit_sq;
}

} // namespace tidt
