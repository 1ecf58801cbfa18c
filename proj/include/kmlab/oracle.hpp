#pragma once

// Finite-difference oracles, independent of the closed-form geometry:
//
//   metric_fd  - the Kubo-Mori metric is the negative Hessian of entropy;
//                here recovered from the mixed second difference of the
//                relative entropy, whose t,s cross-derivative at the base
//                state equals minus the metric.
//   scal_fd    - intrinsic scalar curvature on a chart of the trace-one
//                submanifold: metric samples -> Christoffel symbols ->
//                curvature contraction, all by central differences. No use
//                of the closed curvature formulas anywhere on this path.

#include <cmath>
#include <cstddef>
#include <vector>

#include "kmlab/curvature.hpp"
#include "kmlab/errors.hpp"
#include "kmlab/matrix.hpp"

namespace kmlab {

// Affine chart around a base state. Two flavours:
//   - trace-one chart: traceless directions spanning the tangent of the
//     normalized state space, dimension n^2-1 (complex) or n(n+1)/2-1
//     (real symmetric);
//   - cone chart: the same plus one trace direction, spanning the tangent
//     of the unnormalized positive definite cone.
// The closed curvature formulas turn out to describe the cone; the
// trace-one submanifold differs by the constant dim(dim-1)/4. Both charts
// are exposed so that relation stays testable.
struct Chart {
    DensityMatrix base;
    std::vector<TangentVector> directions;
    double step = 1e-3;

    std::size_t tangent_dim() const {
        const std::size_t n = std::size_t(base.dim());
        return base.real_only() ? n * (n + 1) / 2 - 1 : n * n - 1;
    }

    bool is_cone_chart() const { return directions.size() == tangent_dim() + 1; }

    void validate() const {
        if (directions.size() != tangent_dim() && directions.size() != tangent_dim() + 1)
            throw usage_error("Chart: direction count must equal the tangent dimension (+1 for the cone)");
        if (!(step > 0.0)) throw usage_error("Chart: step must be positive");
        std::size_t trace_dirs = 0;
        for (const auto& d : directions) {
            if (d.m.dim() != base.dim())
                throw usage_error("Chart: directions must match the base dimension");
            if (std::abs(d.m.trace()) > 1e-12) ++trace_dirs;
        }
        if (trace_dirs != (is_cone_chart() ? 1u : 0u))
            throw usage_error("Chart: exactly the cone chart carries one trace direction");
    }
};

namespace detail {

inline double hs_inner(const Matrix& a, const Matrix& b) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) t += a(i, j) * std::conj(b(i, j));
    return t.real();
}

} // namespace detail

// Frobenius-orthonormal traceless chart directions: the off-diagonal F/H
// basis elements plus orthonormalised diagonal differences. Well conditioned
// near diagonal base points.
inline Chart default_chart(const DensityMatrix& d, double step = 1e-3) {
    const int n = d.dim();
    std::vector<TangentVector> dirs;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            Matrix f(n);
            f(k, l) = inv_sqrt2;
            f(l, k) = inv_sqrt2;
            dirs.push_back(TangentVector::from(std::move(f), true));
            if (!d.real_only()) {
                Matrix h(n);
                h(k, l) = cplx(0.0, inv_sqrt2);
                h(l, k) = cplx(0.0, -inv_sqrt2);
                dirs.push_back(TangentVector::from(std::move(h), true));
            }
        }
    // diagonal differences, Gram-Schmidt within the diagonal subspace
    std::vector<Matrix> diag;
    for (int k = 0; k + 1 < n; ++k) {
        Matrix m(n);
        m(k, k) = 1.0;
        m(k + 1, k + 1) = -1.0;
        for (const auto& prev : diag) {
            const double proj = detail::hs_inner(m, prev);
            m -= cplx(proj) * prev;
        }
        const double nrm = std::sqrt(detail::hs_inner(m, m));
        m *= cplx(1.0 / nrm);
        diag.push_back(m);
    }
    for (auto& m : diag) dirs.push_back(TangentVector::from(std::move(m), true));
    Chart chart{d, std::move(dirs), step};
    chart.validate();
    return chart;
}

// Cone chart: the trace-one chart plus the normalized identity direction.
inline Chart cone_chart(const DensityMatrix& d, double step = 1e-3) {
    Chart chart = default_chart(d, step);
    const int n = d.dim();
    Matrix id(n);
    for (int k = 0; k < n; ++k) id(k, k) = 1.0 / std::sqrt(double(n));
    chart.directions.push_back(TangentVector::from(std::move(id), false));
    chart.validate();
    return chart;
}

// Mixed central second difference of the relative entropy, sign-adjusted so
// that it estimates G_D(X,Y) directly (the metric is the negative entropy
// Hessian). Requires the whole stencil inside the positive cone.
inline double metric_fd(const DensityMatrix& d, const TangentVector& x, const TangentVector& y,
                        double h) {
    if (!(h > 0.0)) throw usage_error("metric_fd: step must be positive");
    if (std::abs(x.m.trace()) > 1e-12 || std::abs(y.m.trace()) > 1e-12)
        throw usage_error("metric_fd: directions must be traceless");
    auto corner = [&](double t, double s) {
        Matrix m = d.matrix();
        m += cplx(t) * x.m;
        m += cplx(s) * y.m;
        try {
            return DensityMatrix::from(std::move(m), false);
        } catch (const boundary_error&) {
            throw boundary_error("metric_fd: stencil leaves the positive cone");
        }
    };
    const double f_pp = relative_entropy(corner(h, 0.0), corner(0.0, h));
    const double f_pm = relative_entropy(corner(h, 0.0), corner(0.0, -h));
    const double f_mp = relative_entropy(corner(-h, 0.0), corner(0.0, h));
    const double f_mm = relative_entropy(corner(-h, 0.0), corner(0.0, -h));
    return -(f_pp - f_pm - f_mp + f_mm) / (4.0 * h * h);
}

namespace detail {

// dense solve via Gaussian elimination with partial pivoting;
// returns the inverse of g.
inline std::vector<double> invert_dense(std::vector<double> g, std::size_t n) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(g[r * n + col]) > std::fabs(g[piv * n + col])) piv = r;
        if (g[piv * n + col] == 0.0) throw numerical_error("singular metric");
        if (piv != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(g[piv * n + c], g[col * n + c]);
                std::swap(inv[piv * n + c], inv[col * n + c]);
            }
        const double d = g[col * n + col];
        for (std::size_t c = 0; c < n; ++c) {
            g[col * n + c] /= d;
            inv[col * n + c] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = g[r * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                g[r * n + c] -= f * g[col * n + c];
                inv[r * n + c] -= f * inv[col * n + c];
            }
        }
    }
    return inv;
}

// Scalar curvature at theta = 0 of a smooth metric field given as a
// callable theta -> row-major dim x dim Gram matrix, entirely by central
// differences: metric samples -> Christoffel symbols -> curvature
// contraction. Factored out of scal_fd so the tensor machinery can be
// validated against metrics of known curvature.
template <class MetricFn>
double scalar_curvature_from_metric(const MetricFn& metric_at, std::size_t dim, double h) {
    auto christoffel_at = [&](const std::vector<double>& theta) {
        std::vector<double> g0 = metric_at(theta);
        std::vector<double> ginv = invert_dense(g0, dim);
        std::vector<std::vector<double>> dg(dim);
        for (std::size_t m = 0; m < dim; ++m) {
            auto tp = theta, tm = theta;
            tp[m] += h;
            tm[m] -= h;
            auto gp = metric_at(tp), gm = metric_at(tm);
            dg[m].resize(dim * dim);
            for (std::size_t e = 0; e < dim * dim; ++e) dg[m][e] = (gp[e] - gm[e]) / (2.0 * h);
        }
        // Gamma^i_{jk} = (1/2) g^{il} (d_j g_{lk} + d_k g_{jl} - d_l g_{jk})
        std::vector<double> gam(dim * dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t k = 0; k < dim; ++k) {
                    double s = 0.0;
                    for (std::size_t l = 0; l < dim; ++l)
                        s += ginv[i * dim + l]
                           * (dg[j][l * dim + k] + dg[k][j * dim + l] - dg[l][j * dim + k]);
                    gam[(i * dim + j) * dim + k] = 0.5 * s;
                }
        return gam;
    };

    const std::vector<double> origin(dim, 0.0);
    std::vector<double> ginv0 = invert_dense(metric_at(origin), dim);
    std::vector<double> gam0 = christoffel_at(origin);

    // dgam[m][(i,j,k)] = d_m Gamma^i_{jk} at the origin
    std::vector<std::vector<double>> dgam(dim);
    for (std::size_t m = 0; m < dim; ++m) {
        auto tp = origin, tm = origin;
        tp[m] += h;
        tm[m] -= h;
        auto gp = christoffel_at(tp), gmm = christoffel_at(tm);
        dgam[m].resize(dim * dim * dim);
        for (std::size_t e = 0; e < dim * dim * dim; ++e)
            dgam[m][e] = (gp[e] - gmm[e]) / (2.0 * h);
    }

    auto G = [&](std::size_t i, std::size_t j, std::size_t k) {
        return gam0[(i * dim + j) * dim + k];
    };
    auto dG = [&](std::size_t m, std::size_t i, std::size_t j, std::size_t k) {
        return dgam[m][(i * dim + j) * dim + k];
    };

    // Ricci_{sn} = d_m Gamma^m_{ns} - d_n Gamma^m_{ms}
    //            + Gamma^m_{ml} Gamma^l_{ns} - Gamma^m_{nl} Gamma^l_{ms}
    double scal_value = 0.0;
    for (std::size_t s = 0; s < dim; ++s)
        for (std::size_t nn = 0; nn < dim; ++nn) {
            double ric = 0.0;
            for (std::size_t m = 0; m < dim; ++m) {
                ric += dG(m, m, nn, s) - dG(nn, m, m, s);
                for (std::size_t l = 0; l < dim; ++l)
                    ric += G(m, m, l) * G(l, nn, s) - G(m, nn, l) * G(l, m, s);
            }
            scal_value += ginv0[s * dim + nn] * ric;
        }
    return scal_value;
}

} // namespace detail

// Offset between the curvature of the trace-one submanifold and of the
// cone at the same state: Scal_sub = Scal_cone + d(d-1)/4 where d is the
// submanifold dimension. Observed through the finite-difference oracle and
// pinned by tests.
inline double trace_one_curvature_shift(std::size_t tangent_dim) {
    return double(tangent_dim) * double(tangent_dim - 1) / 4.0;
}

// Intrinsic finite-difference scalar curvature at the chart origin.
// Guarded to chart dimension <= 9; the n = 3 complex cases are allowed but
// slow. Throws numerical_error when the metric condition number exceeds
// 1e12, boundary_error when a stencil state leaves the positive cone.
inline double scal_fd(const Chart& chart, const EvalPolicy& policy = default_policy()) {
    chart.validate();
    const std::size_t dim = chart.directions.size();
    if (dim > 9) throw usage_error("scal_fd: chart dimension above the desk-scale guard (9)");
    const double h = chart.step;

    auto metric_at = [&](const std::vector<double>& theta) {
        Matrix m = chart.base.matrix();
        for (std::size_t i = 0; i < dim; ++i)
            if (theta[i] != 0.0) m += cplx(theta[i]) * chart.directions[i].m;
        auto eig = jacobi_eigh(m);
        if (eig.eigenvalues.back() <= 0.0)
            throw boundary_error("scal_fd: stencil leaves the positive cone");
        const int n = chart.base.dim();
        std::vector<Matrix> xt(dim);
        for (std::size_t i = 0; i < dim; ++i)
            xt[i] = eig.vectors.adjoint() * chart.directions[i].m * eig.vectors;
        std::vector<double> g(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j) {
                double s = 0.0;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c)
                        s += m2(eig.eigenvalues[r], eig.eigenvalues[c], policy)
                           * (xt[i](r, c) * std::conj(xt[j](r, c))).real();
                g[i * dim + j] = s;
                g[j * dim + i] = s;
            }
        return g;
    };

    // condition-number guard at the origin
    {
        const std::vector<double> origin(dim, 0.0);
        std::vector<double> g0 = metric_at(origin);
        Matrix gm{int(dim)};
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) gm(int(i), int(j)) = g0[i * dim + j];
        auto ge = jacobi_eigh(gm);
        if (!(ge.eigenvalues.back() > 0.0)
            || ge.eigenvalues.front() / ge.eigenvalues.back() > 1e12)
            throw numerical_error("scal_fd: metric is numerically singular");
    }
    return detail::scalar_curvature_from_metric(metric_at, dim, h);
}

} // namespace kmlab
