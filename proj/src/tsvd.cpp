#include "tidt/tsvd.hpp"

#include "faces.hpp"

#include <algorithm>
#include <string>

namespace tidt {

using detail::FaceLayout;
using detail::face_svd;
using detail::SvdJob;

namespace {

Shape with_leading(std::size_t n1, std::size_t n2, const Shape& like) {
    Shape s{n1, n2};
    s.insert(s.end(), like.begin() + 2, like.end());
    return s;
}

void require_order2(const Tensor& x, const char* op) {
    if (x.order() < 2)
        throw ShapeError(std::string(op) + " needs a tensor of order >= 2, got " +
                         shape_to_string(x.shape()));
}

bool face_is_real(const TrailingTransform& tr, std::size_t f) {
    return tr.spec().is_real() || tr.conjugate_partner(f) == f;
}

struct Spectrum {
    std::vector<Eigen::VectorXd> values; // all faces
    double max = 0.0;
};

Spectrum spectrum_of(const Tensor& z, const TransformSpec& spec) {
    const Tensor m = z.reshaped(detail::as_matrix_shape(z.shape()));
    const TrailingTransform tr(spec, m.shape());
    const ComplexTensor zh = tr.forward(m);
    const FaceLayout layout(m.shape());
    Spectrum out;
    out.values.resize(layout.faces);
    for (std::size_t f : detail::independent_faces(tr)) {
        out.values[f] = face_svd(layout.gather(zh, f), face_is_real(tr, f), SvdJob::ValuesOnly, f).s;
        out.values[tr.conjugate_partner(f)] = out.values[f];
    }
    for (const auto& s : out.values)
        if (s.size() > 0) out.max = std::max(out.max, s(0));
    return out;
}

std::size_t count_above(const Eigen::VectorXd& s, double threshold) {
    std::size_t r = 0;
    while (r < static_cast<std::size_t>(s.size()) && s(static_cast<Eigen::Index>(r)) > threshold) ++r;
    return r;
}

} // namespace

Tensor identity_tensor(std::size_t n, const Shape& trailing, const TransformSpec& spec) {
    Shape shape{n, n};
    shape.insert(shape.end(), trailing.begin(), trailing.end());
    const TrailingTransform tr(spec, shape);
    ComplexTensor ih(shape);
    const std::size_t faces = tr.face_count();
    for (std::size_t f = 0; f < faces; ++f)
        for (std::size_t i = 0; i < n; ++i) ih[(i * n + i) * faces + f] = 1.0;
    return tr.inverse(ih);
}

Tensor t_product(const Tensor& a, const Tensor& b, const TransformSpec& spec) {
    require_order2(a, "t_product");
    require_order2(b, "t_product");
    if (a.extent(1) != b.extent(0))
        throw ShapeError("t_product inner dimension mismatch: " + shape_to_string(a.shape()) + " * " +
                         shape_to_string(b.shape()));
    if (!std::equal(a.shape().begin() + 2, a.shape().end(), b.shape().begin() + 2, b.shape().end()))
        throw ShapeError("t_product trailing modes differ: " + shape_to_string(a.shape()) + " * " +
                         shape_to_string(b.shape()));

    const TrailingTransform ta(spec, a.shape());
    const TrailingTransform tb(spec, b.shape());
    const Shape out_shape = with_leading(a.extent(0), b.extent(1), a.shape());
    const TrailingTransform tc(spec, out_shape);

    const ComplexTensor ah = ta.forward(a);
    const ComplexTensor bh = tb.forward(b);
    ComplexTensor ch(out_shape);
    const FaceLayout la(a.shape()), lb(b.shape()), lc(out_shape);
    for (std::size_t f = 0; f < lc.faces; ++f) lc.scatter(ch, f, la.gather(ah, f) * lb.gather(bh, f));
    return tc.inverse(ch);
}

Tensor t_transpose(const Tensor& a, const TransformSpec& spec) {
    require_order2(a, "t_transpose");
    const TrailingTransform ta(spec, a.shape());
    const Shape out_shape = with_leading(a.extent(1), a.extent(0), a.shape());
    const TrailingTransform tt(spec, out_shape);
    const ComplexTensor ah = ta.forward(a);
    ComplexTensor th(out_shape);
    const FaceLayout la(a.shape()), lt(out_shape);
    for (std::size_t f = 0; f < la.faces; ++f) lt.scatter(th, f, la.gather(ah, f).adjoint());
    return tt.inverse(th);
}

TSvdFactors t_svd(const Tensor& z, const TransformSpec& spec, SvdForm form) {
    require_order2(z, "t_svd");
    const std::size_t n1 = z.extent(0), n2 = z.extent(1);
    const TrailingTransform tr(spec, z.shape());
    const FaceLayout layout(z.shape());
    const ComplexTensor zh = tr.forward(z);

    std::vector<detail::FaceSvd> svds(layout.faces);
    double smax = 0.0;
    for (std::size_t f : detail::independent_faces(tr)) {
        svds[f] = face_svd(layout.gather(zh, f), face_is_real(tr, f), SvdJob::Full, f);
        if (svds[f].s.size() > 0) smax = std::max(smax, svds[f].s(0));
    }

    std::size_t r_u = n1, r_v = n2, r_s1 = n1, r_s2 = n2;
    if (form == SvdForm::Skinny) {
        std::size_t r = 0;
        for (std::size_t f : detail::independent_faces(tr))
            r = std::max(r, count_above(svds[f].s, kRankTol * smax));
        r = std::max<std::size_t>(r, 1); // zero tensor keeps a single (zero) tube
        r_u = r_v = r_s1 = r_s2 = r;
    }

    const Shape su = with_leading(n1, r_u, z.shape());
    const Shape ss = with_leading(r_s1, r_s2, z.shape());
    const Shape sv = with_leading(n2, r_v, z.shape());
    ComplexTensor uh(su), sh(ss), vh(sv);
    const FaceLayout lu(su), ls(ss), lv(sv);
    for (std::size_t f : detail::independent_faces(tr)) {
        const auto& d = svds[f];
        const Eigen::MatrixXcd uf = d.u.leftCols(static_cast<Eigen::Index>(r_u));
        const Eigen::MatrixXcd vf = d.v.leftCols(static_cast<Eigen::Index>(r_v));
        Eigen::MatrixXcd sf = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(r_s1), static_cast<Eigen::Index>(r_s2));
        for (Eigen::Index i = 0; i < std::min<Eigen::Index>(d.s.size(), std::min(sf.rows(), sf.cols())); ++i)
            sf(i, i) = d.s(i);
        const std::size_t p = tr.conjugate_partner(f);
        lu.scatter(uh, f, uf);
        ls.scatter(sh, f, sf);
        lv.scatter(vh, f, vf);
        if (p != f) {
            lu.scatter_conj(uh, p, uf);
            ls.scatter_conj(sh, p, sf);
            lv.scatter_conj(vh, p, vf);
        }
    }
    return {TrailingTransform(spec, su).inverse(uh), TrailingTransform(spec, ss).inverse(sh),
            TrailingTransform(spec, sv).inverse(vh), spec};
}

std::vector<Eigen::VectorXd> face_singular_values(const Tensor& z, const TransformSpec& spec) {
    return spectrum_of(z, spec).values;
}

std::vector<std::size_t> multi_rank(const Tensor& z, const TransformSpec& spec) {
    const Spectrum sp = spectrum_of(z, spec);
    std::vector<std::size_t> out(sp.values.size(), 0);
    if (sp.max <= 0.0) return out;
    for (std::size_t f = 0; f < sp.values.size(); ++f) out[f] = count_above(sp.values[f], kRankTol * sp.max);
    return out;
}

std::size_t tsvd_rank(const Tensor& z, const TransformSpec& spec) {
    const auto ranks = multi_rank(z, spec);
    return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());
}

std::size_t multi_rank_sum(const Tensor& z, const TransformSpec& spec) {
    std::size_t s = 0;
    for (std::size_t r : multi_rank(z, spec)) s += r;
    return s;
}

double tnn(const Tensor& z, const TransformSpec& spec) {
    const Spectrum sp = spectrum_of(z, spec);
    double sum = 0.0;
    for (const auto& s : sp.values) sum += s.sum();
    const TrailingTransform tr(spec, detail::as_matrix_shape(z.shape()));
    return sum / tr.ell();
}

double spectral_norm(const Tensor& z, const TransformSpec& spec) { return spectrum_of(z, spec).max; }

namespace detail {

FaceSvt svt_faces(const ComplexTensor& zh, double tau, const TrailingTransform& tr) {
    const FaceLayout layout(zh.shape());
    FaceSvt res{ComplexTensor(zh.shape()), 0.0, 0};
    for (std::size_t f : independent_faces(tr)) {
        const std::size_t p = tr.conjugate_partner(f);
        const Eigen::MatrixXcd a = layout.gather(zh, f);
        // sigma_max <= ||a||_F, so the whole face shrinks to zero
        if (a.norm() <= tau) continue;
        const auto d = face_svd(a, face_is_real(tr, f), SvdJob::Thin, f);
        std::size_t keep = 0;
        double face_sum = 0.0;
        Eigen::VectorXd shrunk(d.s.size());
        for (Eigen::Index i = 0; i < d.s.size(); ++i) {
            shrunk(i) = std::max(d.s(i) - tau, 0.0);
            if (shrunk(i) > 0.0) ++keep;
            face_sum += shrunk(i);
        }
        const auto k = static_cast<Eigen::Index>(keep);
        const Eigen::MatrixXcd face =
            d.u.leftCols(k) * shrunk.head(k).asDiagonal() * d.v.leftCols(k).adjoint();
        layout.scatter(res.value, f, face);
        res.nuclear += face_sum;
        if (p != f) {
            layout.scatter_conj(res.value, p, face);
            res.nuclear += face_sum;
        }
        res.rank = std::max(res.rank, keep);
    }
    return res;
}

} // namespace detail

SvtResult t_svt(const Tensor& z, double tau, const TrailingTransform& tr) {
    if (!(tau >= 0.0)) throw DomainError("t_svt threshold must be nonnegative, got " + std::to_string(tau));
    require_order2(z, "t_svt");
    detail::FaceSvt res = detail::svt_faces(tr.forward(z), tau, tr);
    return {tr.inverse(res.value), res.nuclear / tr.ell(), res.rank};
}

Tensor t_svt(const Tensor& z, double tau, const TransformSpec& spec) {
    if (!(tau >= 0.0)) throw DomainError("t_svt threshold must be nonnegative, got " + std::to_string(tau));
    const Tensor m = z.reshaped(detail::as_matrix_shape(z.shape()));
    return t_svt(m, tau, TrailingTransform(spec, m.shape())).value.reshaped(z.shape());
}

double truncation_error(const Tensor& z, std::size_t r, const TransformSpec& spec) {
    const Spectrum sp = spectrum_of(z, spec);
    double tail = 0.0;
    for (const auto& s : sp.values)
        for (Eigen::Index i = static_cast<Eigen::Index>(r); i < s.size(); ++i) tail += s(i) * s(i);
    const TrailingTransform tr(spec, detail::as_matrix_shape(z.shape()));
    return std::sqrt(tail / tr.ell());
}

} // namespace tidt
