#pragma once

// Named one-variable functions carrying the sign claims of the grouped
// monotonicity analysis. Each reduces a monotonicity or concavity statement
// about a curvature summand to an elementary inequality:
//
//   tau_alpha   - alpha reduces to (a+b) alpha(a,b) = -tau_alpha(b/a);
//                 tau_alpha is claimed decreasing on (0,1).
//   q_alpha     - final rearranged inequality of the alpha proof, >= 0 on (0,1).
//   tau1_beta,
//   tau2_beta   - the beta1 summand equals [tau(a/l)+tau(b/l)]/l with
//                 tau = tau1 + tau2/2; both tau1 and tau2 are claimed concave.
//   d_u         - log u + 16/3 + 18/u + rational, claimed > 0 (this is the
//                 last step of the proof that r_beta decreases).
//   eta_fn      - claimed > 0; the deepest step of the tau2 concavity proof.
//   tau_real    - sixth derivative bound for the concavity of kappa + rho,
//                 claimed < 0 for all positive c except the root at c = 1.
//
// tau_alpha, tau1_beta and tau2_beta have removable singularities at c = 1
// and switch to expansions there; the others are regular away from c = 0.

#include <cmath>

#include "kmlab/errors.hpp"
#include "kmlab/kernels.hpp"
#include "kmlab/series.hpp"

namespace kmlab {

namespace detail {

// tau_alpha over common denominator 2c(c-1)^2 log^2 c.
inline const Series& tau_alpha_series() {
    static const Series s = [] {
        const Series& l = log1p_over_e();
        // -(1+e)(2+e)^2 l^2 + 2(2+e)(e^2+2e+2) l - (2+e)^2, vanishes to e^2
        Series num = constant(0.0) - (poly(1.0, 1.0) * poly(4.0, 4.0, 1.0)) * (l * l)
                   + 2.0 * (poly(2.0, 1.0) * poly(2.0, 2.0, 1.0)) * l - poly(4.0, 4.0, 1.0);
        num = shift_down(num, 2);
        return num / (2.0 * (poly(1.0, 1.0) * (l * l)));
    }();
    return s;
}

// tau1_beta = [(3-c)(c-1) - 2 log c] / (4c(c-1) log^2 c)
inline const Series& tau1_beta_series() {
    static const Series s = [] {
        const Series& l = log1p_over_e();
        Series num = poly(2.0, -1.0) - 2.0 * l; // (2 - e - 2l), vanishes to e^2
        num = shift_down(num, 2);
        return num / (4.0 * (poly(1.0, 1.0) * (l * l)));
    }();
    return s;
}

// tau2_beta = [-3e - 2 e l + 2(1+e)^2 e^2 l^2 / e^2 ...] over 2c(c-1)^2 log^2 c
inline const Series& tau2_beta_series() {
    static const Series s = [] {
        const Series& l = log1p_over_e();
        Series num = poly(0.0, -3.0) - 2.0 * l + 2.0 * (poly(1.0, 2.0, 1.0) * (l * l));
        num = shift_down(num, 2);
        return num / (2.0 * (poly(1.0, 1.0) * (l * l)));
    }();
    return s;
}

} // namespace detail

// tau_alpha(c) = -(1+c)^2/(2(1-c)^2) + (1+c)(1+c^2)/(c(c-1)log c)
//              - (1+c)^2/(2c log^2 c);   tau_alpha(1) = 3/2.
inline double tau_alpha(double c, const EvalPolicy& = default_policy()) {
    detail::require_positive(c, "tau_alpha");
    const double e = c - 1.0;
    if (std::fabs(e) <= detail::unit_window) return detail::tau_alpha_series().eval(e);
    const double L = std::log(c);
    const double p = 1.0 + c;
    return -0.5 * p * p / (e * e) + p * (1.0 + c * c) / (c * e * L) - 0.5 * p * p / (c * L * L);
}

// q_alpha(c) = log c + 2(c-1) P(c) / (c Q(c)) with the degree-7 polynomials
// of the alpha proof; claimed >= 0 on (0,1), with equality at c = 1.
inline double q_alpha(double c, const EvalPolicy& = default_policy()) {
    detail::require_positive(c, "q_alpha");
    const double P = ((((((10.0 * c - 26.0) * c - 1.0) * c - 25.0) * c - 3.0) * c - 27.0) * c - 18.0) * c - 6.0;
    const double Q = ((((((96.0 * c + 84.0) * c + 156.0) * c - 240.0) * c + 176.0) * c - 144.0) * c + 52.0) * c + 12.0;
    return std::log(c) + 2.0 * (c - 1.0) * P / (c * Q);
}

// tau1(c) = (3-c)/(4c log^2 c) - 1/(2c(c-1)log c);  tau1(1) = -1/6.
inline double tau1_beta(double c, const EvalPolicy& = default_policy()) {
    detail::require_positive(c, "tau1_beta");
    const double e = c - 1.0;
    if (std::fabs(e) <= detail::unit_window) return detail::tau1_beta_series().eval(e);
    const double L = std::log(c);
    return (3.0 - c) / (4.0 * c * L * L) - 1.0 / (2.0 * c * e * L);
}

// tau2(c) = (3-3c)/(2c log^2 c) - 1/(c(c-1)log c) + c/(1-c)^2;  tau2(1) = -5/12.
inline double tau2_beta(double c, const EvalPolicy& = default_policy()) {
    detail::require_positive(c, "tau2_beta");
    const double e = c - 1.0;
    if (std::fabs(e) <= detail::unit_window) return detail::tau2_beta_series().eval(e);
    const double L = std::log(c);
    return (3.0 - 3.0 * c) / (2.0 * c * L * L) - 1.0 / (c * e * L) + c / (e * e);
}

// tau of the beta1 reduction: tau = tau1 + tau2/2, so that
// beta1_k(a,b) = [beta1_tau(a/l_k) + beta1_tau(b/l_k)] / l_k.
inline double beta1_tau(double c, const EvalPolicy& policy = default_policy()) {
    return tau1_beta(c, policy) + 0.5 * tau2_beta(c, policy);
}

// d(u) = log u + 16/3 + 18/u + (2484u^2 - 1284u + 655)/(3(48u^3 - 27u^2 + 12u + 1)),
// claimed > 0 for all u > 0. The cubic denominator has no positive root.
inline double d_u(double u, const EvalPolicy& = default_policy()) {
    detail::require_positive(u, "d_u");
    const double num = (2484.0 * u - 1284.0) * u + 655.0;
    const double den = ((48.0 * u - 27.0) * u + 12.0) * u + 1.0;
    return std::log(u) + 16.0 / 3.0 + 18.0 / u + num / (3.0 * den);
}

// eta(c), claimed strictly positive for all c > 0.
inline double eta_fn(double c, const EvalPolicy& = default_policy()) {
    detail::require_positive(c, "eta_fn");
    const double L = std::log(c);
    const double den = c * (((576.0 * c + 216.0) * c + 144.0) * c + 216.0);
    const double p1 = (((450.0 * c - 1920.0) * c + 45.0) * c + 20.0) * c * c - 63.0 * c - 432.0;
    const double p2 = ((((6285.0 * c - 5112.0) * c + 924.0) * c + 392.0) * c + 579.0) * c + 1440.0;
    return -L * L + 2.0 * p1 / den * L + p2 / den;
}

// tau_real(c): the sixth derivative controlling concavity of kappa + rho,
// claimed < 0 for every positive c != 1 (it vanishes to second order at 1).
inline double tau_real(double c, const EvalPolicy& = default_policy()) {
    detail::require_positive(c, "tau_real");
    const double L = std::log(c);
    const double c5 = c * c * c * c * c;
    const double p2 = (((((30.0 * c - 211.0) * c - 198.0) * c + 207.0) * c + 18.0) * c + 54.0) * c + 90.0;
    const double p1 = ((((351.0 * c + 1306.0) * c - 29.0) * c + 1120.0) * c + 957.0) * c + 765.0;
    const double p0 = (((1249.0 * c + 1132.0) * c - 744.0) * c - 872.0) * c - 705.0;
    const double omc = 1.0 - c;
    return 1440.0 * L * L * L - 24.0 / c5 * p2 * L * L + 8.0 / c5 * omc * p1 * L
         + 4.0 / c5 * omc * omc * p0;
}

} // namespace kmlab
