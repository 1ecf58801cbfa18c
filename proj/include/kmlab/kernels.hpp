#pragma once

// Divided-difference kernels of the Kubo-Mori geometry.
//
//   m2(x,y)   = int_0^inf dt / ((x+t)(y+t))        = (log x - log y)/(x - y)
//   m3(x,y,z) = int_0^inf dt / ((x+t)(y+t)(z+t))
//
// m2 is the first divided difference of log; m3 is its negated second
// divided difference. Both are totally symmetric, positive, and have
// removable singularities at coincident arguments:
//   m2(x,x) = 1/x,  m3(x,x,x) = 1/(2x^2)
// with the scaling laws m2(ux,uy) = m2(x,y)/u, m3(ux,uy,uz) = m3(x,y,z)/u^2.
//
// phi and v are the scalar-curvature integrands built from m2 and m3, and
// phi1/phi2/kappa/rho are the one-variable functions used by the grouped
// monotonicity analysis. All kernels accept arbitrary positive reals.

#include <algorithm>
#include <cmath>
#include <limits>

#include "kmlab/errors.hpp"
#include "kmlab/policy.hpp"
#include "kmlab/series.hpp"

namespace kmlab {

namespace detail {

inline void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error(std::string(fn) + ": argument must be positive and finite");
}

// Complete homogeneous symmetric polynomial h_k(d0,d1,d2).
inline double homog3(int k, double d0, double d1, double d2) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) {
        double p0 = std::pow(d0, i);
        for (int j = 0; i + j <= k; ++j) {
            s += p0 * std::pow(d1, j) * std::pow(d2, k - i - j);
        }
    }
    return s;
}

} // namespace detail

// First divided difference of log. The log1p form is cancellation-free for
// comparable arguments, so no series branch is needed; at extreme ratios
// 1 + (x-y)/y itself loses digits and the plain quotient form is the
// accurate one.
inline double m2(double x, double y, const EvalPolicy& = default_policy()) {
    detail::require_positive(x, "m2");
    detail::require_positive(y, "m2");
    if (x == y) return 1.0 / x;
    const double d = x - y;
    const double r = x / y;
    if (r > 0.5 && r < 2.0) return std::log1p(d / y) / d;
    return std::log(r) / d;
}

// Negated second divided difference of log. The closed form divides the
// m2 difference by the widest argument gap; for clustered arguments it
// switches to the expansion around the mean argument (h_k are the complete
// homogeneous symmetric polynomials):
//   m3 = sum_{m>=2} (-1)^m h_{m-2}(x-mu, y-mu, z-mu) / (m mu^m).
// The switch happens at the policy tolerance or at the spread where the
// truncation error of the expansion drops below the cancellation error of
// the closed form, whichever is larger.
inline double m3(double x, double y, double z, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(x, "m3");
    detail::require_positive(y, "m3");
    detail::require_positive(z, "m3");
    double a = x, b = y, c = z;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    // a <= b <= c
    const double switch_gap = std::max(policy.rel_degeneracy_tol,
                                       std::pow(2e-16, 1.0 / double(policy.series_order + 2)));
    if ((c - a) <= switch_gap * c) {
        const double mu = (a + b + c) / 3.0;
        const double d0 = a - mu, d1 = b - mu, d2 = c - mu;
        double sum = 0.0;
        double mu_pow = mu * mu;
        for (int m = 2; m <= 2 + policy.series_order; ++m) {
            const double term = detail::homog3(m - 2, d0, d1, d2) / (double(m) * mu_pow);
            sum += (m % 2 == 0) ? term : -term;
            mu_pow *= mu;
        }
        return sum;
    }
    return (m2(a, b) - m2(c, b)) / (c - a);
}

// Curvature integrand phi (symmetric under exchanging the outer arguments):
//   phi(x,y,z) = m3(x,y,z)^2 / (2 m2(x,y) m2(y,z) m2(z,x))
//              - m3(y,y,x) m3(y,y,z) / (m2(y,x) m2(y,y) m2(y,z))
inline double phi(double x, double y, double z, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(x, "phi");
    detail::require_positive(y, "phi");
    detail::require_positive(z, "phi");
    if (x < z) std::swap(x, z); // bitwise outer symmetry
    const double mxy = m2(x, y);
    const double myz = m2(y, z);
    const double mzx = m2(z, x);
    const double myy = 1.0 / y;
    const double t3 = m3(x, y, z, policy);
    const double first = 0.5 * t3 * t3 / (mxy * myz * mzx);
    const double second = m3(y, y, x, policy) * m3(y, y, z, policy) / (mxy * myy * myz);
    return first - second;
}

// Curvature integrand v of the real state space:
//   v(x,y) = m3(x,x,y)^2 / (2 m2(x,y)^2 m2(x,x))
//          - m3(x,x,y) m3(y,y,x) / (m2(x,y)^2 m2(y,y))
inline double v_fn(double x, double y, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(x, "v_fn");
    detail::require_positive(y, "v_fn");
    const double mxy = m2(x, y);
    const double mxxy = m3(x, x, y, policy);
    const double myyx = m3(y, y, x, policy);
    return 0.5 * mxxy * mxxy * x / (mxy * mxy) - mxxy * myyx * y / (mxy * mxy);
}

namespace detail {

// Switch window for the one-variable functions with a removable singularity
// at u = 1. Inside the window a 32-term expansion in e = u - 1 is exact to
// ~1e-18; outside it the closed forms lose at most ~2 digits to cancellation.
inline constexpr double unit_window = 0.2;

// phi1 = [e - (1+e)log(1+e)] / [(1+e) e log(1+e)], numerator ~ -e^2/2
inline const Series& phi1_series() {
    static const Series s = [] {
        Series num; // (e - (1+e)log1p(e)) / e^2 = -sum_k (-1)^k e^k / ((k+2)(k+1))
        for (std::size_t k = 0; k < series_len; ++k)
            num.c[k] = -(k % 2 == 0 ? 1.0 : -1.0) / (double(k + 2) * double(k + 1));
        return num / (poly(1.0, 1.0) * log1p_over_e());
    }();
    return s;
}

// phi2 = [e - log(1+e)] / [e log(1+e)], numerator ~ e^2/2
inline const Series& phi2_series() {
    static const Series s = [] {
        Series num; // (e - log1p(e)) / e^2 = sum_k (-1)^k e^k / (k+2)
        for (std::size_t k = 0; k < series_len; ++k)
            num.c[k] = (k % 2 == 0 ? 1.0 : -1.0) / double(k + 2);
        return num / log1p_over_e();
    }();
    return s;
}

// kappa over common denominator 2c(c-1)^2 log^2 c; the numerator
// 3e^2 - 2(2e+3)eL + (3+4e+e^2)L^2 vanishes to order e^4, so with
// l = L/e the series below starts at the constant kappa(1) = -1/8.
inline const Series& kappa_series() {
    static const Series s = [] {
        const Series& l = log1p_over_e();
        Series num = constant(3.0) - poly(6.0, 4.0) * l + poly(3.0, 4.0, 1.0) * (l * l);
        num = shift_down(num, 2);
        return num / (2.0 * (poly(1.0, 1.0) * (l * l)));
    }();
    return s;
}

} // namespace detail

// phi1(u) = 1/(u log u) + 1/(1-u), continuous across u = 1 with phi1(1) = -1/2.
inline double phi1(double u, const EvalPolicy& = default_policy()) {
    detail::require_positive(u, "phi1");
    const double e = u - 1.0;
    if (std::fabs(e) <= detail::unit_window) return detail::phi1_series().eval(e);
    return 1.0 / (u * std::log(u)) + 1.0 / (1.0 - u);
}

// phi2(u) = 1/log u + 1/(1-u), continuous across u = 1 with phi2(1) = 1/2.
inline double phi2(double u, const EvalPolicy& = default_policy()) {
    detail::require_positive(u, "phi2");
    const double e = u - 1.0;
    if (std::fabs(e) <= detail::unit_window) return detail::phi2_series().eval(e);
    return 1.0 / std::log(u) + 1.0 / (1.0 - u);
}

// kappa(c) = 3/(2c log^2 c) - (2c+1)/(c(c-1)log c) + (c+2)/(2(c-1)^2),
// continuous across c = 1 with kappa(1) = -1/8.
inline double kappa_fn(double c, const EvalPolicy& = default_policy()) {
    detail::require_positive(c, "kappa_fn");
    const double e = c - 1.0;
    if (std::fabs(e) <= detail::unit_window) return detail::kappa_series().eval(e);
    const double L = std::log(c);
    return 3.0 / (2.0 * c * L * L) - (2.0 * c + 1.0) / (c * (c - 1.0) * L)
         + (c + 2.0) / (2.0 * (c - 1.0) * (c - 1.0));
}

// rho(c) = 3/(2 log^2 c) - (c+2)/((c-1)log c) + (1+2c)/(2(1-c)^2).
// Identically rho(c) = kappa(1/c)/c, which is how it is evaluated; the
// identity routes rho through kappa's expansion near c = 1.
inline double rho_fn(double c, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(c, "rho_fn");
    return kappa_fn(1.0 / c, policy) / c;
}

} // namespace kmlab
