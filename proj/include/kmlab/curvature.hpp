#pragma once

// Kubo-Mori metric and the scalar curvature of the state space.
//
// The metric at D is G_D(X,Y) = int_0^inf Tr((D+t)^-1 X (D+t)^-1 Y) dt,
// evaluated in the eigenbasis of D through the m2 kernel. The scalar
// curvature of the complex state space is the triple sum of phi over all
// index triples that are not all equal; the real state space adds the v
// pair sum. Both depend on the spectrum alone.
//
// decompose() regroups the triple sum around a distinguished eigenvalue
// pair (a,b): alpha collects triples built from a and b only, beta1/beta2
// the triples where a third eigenvalue joins, gamma those where a or b
// appears once, delta the rest. The regrouping is an exact partition.
//
// The beta2 and gamma groups also carry closed forms in the scaled
// variables; the direct phi sums stay authoritative and the closed forms
// are cross-validated against them.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmlab/errors.hpp"
#include "kmlab/kernels.hpp"
#include "kmlab/matrix.hpp"
#include "kmlab/spectrum.hpp"

namespace kmlab {

namespace detail {

// Neumaier compensated accumulation; keeps the triple sums deterministic
// and accurate in index order.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace detail

enum class BasisKind { F_offdiag, H_offdiag, F_diag };

// Matrix-unit basis of the self-adjoint matrices: F_kl = E_kl + E_lk,
// H_kl = i E_kl - i E_lk for k < l, and F_kk = 2 E_kk on the diagonal.
struct BasisElement {
    BasisKind kind;
    int k, l;
    TangentVector matrix;
};

inline std::vector<BasisElement> basis(int n, bool real_only = false) {
    if (n <= 0) throw usage_error("basis: n must be positive");
    std::vector<BasisElement> out;
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            Matrix f(n);
            f(k, l) = 1.0;
            f(l, k) = 1.0;
            out.push_back({BasisKind::F_offdiag, k, l, TangentVector::from(std::move(f))});
            if (!real_only) {
                Matrix h(n);
                h(k, l) = cplx(0.0, 1.0);
                h(l, k) = cplx(0.0, -1.0);
                out.push_back({BasisKind::H_offdiag, k, l, TangentVector::from(std::move(h))});
            }
        }
    for (int k = 0; k < n; ++k) {
        Matrix f(n);
        f(k, k) = 2.0;
        out.push_back({BasisKind::F_diag, k, k, TangentVector::from(std::move(f))});
    }
    return out;
}

// G_D(X,Y) in the eigenbasis of D: sum_{ij} m2(l_i, l_j) X~_ij conj(Y~_ij).
inline double kubo_mori(const DensityMatrix& d, const TangentVector& x, const TangentVector& y,
                        const EvalPolicy& policy = default_policy()) {
    const int n = d.dim();
    if (x.m.dim() != n || y.m.dim() != n) throw usage_error("kubo_mori: dimension mismatch");
    auto eig = jacobi_eigh(d.matrix());
    Matrix xt = eig.vectors.adjoint() * x.m * eig.vectors;
    Matrix yt = eig.vectors.adjoint() * y.m * eig.vectors;
    double g = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double w = m2(eig.eigenvalues[i], eig.eigenvalues[j], policy);
            g += w * (xt(i, j) * std::conj(yt(i, j))).real();
        }
    return g;
}

// Scalar curvature of the complex state space: sum of phi(l_j, l_k, l_l)
// over triples with at least two distinct indices. Uses the outer symmetry
// of phi to halve the work; summation order is fixed.
inline double scal(const Spectrum& s, const EvalPolicy& policy = default_policy()) {
    const std::size_t n = s.size();
    detail::CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) acc.add(phi(s[j], s[k], s[j], policy));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
                acc.add(2.0 * phi(s[j], s[k], s[l], policy));
    }
    return acc.value();
}

// Scalar curvature of the real state space:
// Scal_R = Scal/4 + (1/4) sum_{k,l} v(l_k, l_l), the v sum over all pairs
// including k = l.
inline double scal_real(const Spectrum& s, const EvalPolicy& policy = default_policy()) {
    const std::size_t n = s.size();
    detail::CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) acc.add(v_fn(s[k], s[l], policy));
    return 0.25 * scal(s, policy) + 0.25 * acc.value();
}

// Variant without the diagonal v terms. The finite-difference oracle
// identifies this as the intrinsic scalar curvature of the real positive
// definite cone; the all-pairs formula above exceeds it by exactly
// (1/4) sum_k v(l_k, l_k) = -(1/32) sum_k 1/l_k.
inline double scal_real_cone(const Spectrum& s, const EvalPolicy& policy = default_policy()) {
    double diag = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) diag += v_fn(s[k], s[k], policy);
    return scal_real(s, policy) - 0.25 * diag;
}

// --- grouped summands -------------------------------------------------

inline double alpha_group(double a, double b, const EvalPolicy& policy = default_policy()) {
    return 2.0 * phi(a, a, b, policy) + 2.0 * phi(b, b, a, policy) + phi(a, b, a, policy)
         + phi(b, a, b, policy);
}

inline double beta1_group(double a, double b, double lk, const EvalPolicy& policy = default_policy()) {
    return 2.0 * phi(a, a, lk, policy) + 2.0 * phi(b, b, lk, policy) + phi(a, lk, a, policy)
         + phi(b, lk, b, policy);
}

inline double beta2_group(double a, double b, double lk, const EvalPolicy& policy = default_policy()) {
    return 2.0 * phi(a, b, lk, policy) + 2.0 * phi(b, a, lk, policy) + phi(a, lk, b, policy)
         + phi(b, lk, a, policy);
}

inline double gamma_group(double a, double b, double lk, double ll,
                          const EvalPolicy& policy = default_policy()) {
    return phi(a, lk, ll, policy) + phi(b, lk, ll, policy) + phi(lk, a, ll, policy)
         + phi(lk, b, ll, policy) + phi(lk, ll, a, policy) + phi(lk, ll, b, policy);
}

// Exact regrouping of the scalar-curvature triple sum around the eigenvalue
// pair at positions (i, j). k and (k,l) run over the remaining positions,
// the gamma map over ordered pairs including k = l.
struct CurvatureBreakdown {
    int i = 0, j = 0;
    double a = 0.0, b = 0.0;
    bool degenerate_pair = false;
    double alpha = 0.0;
    std::map<int, double> beta1;
    std::map<int, double> beta2;
    std::map<std::pair<int, int>, double> gamma;
    double delta_total = 0.0;
    double total = 0.0;
};

inline CurvatureBreakdown decompose(const Spectrum& s, int i, int j,
                                    const EvalPolicy& policy = default_policy()) {
    const int n = int(s.size());
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw usage_error("decompose: need two distinct valid positions");
    CurvatureBreakdown br;
    br.i = i;
    br.j = j;
    br.a = s[std::size_t(i)];
    br.b = s[std::size_t(j)];
    br.degenerate_pair = (br.a == br.b);

    detail::CompensatedSum total;
    br.alpha = alpha_group(br.a, br.b, policy);
    total.add(br.alpha);

    std::vector<int> others;
    for (int k = 0; k < n; ++k)
        if (k != i && k != j) others.push_back(k);

    for (int k : others) {
        const double b1 = beta1_group(br.a, br.b, s[std::size_t(k)], policy);
        const double b2 = beta2_group(br.a, br.b, s[std::size_t(k)], policy);
        br.beta1[k] = b1;
        br.beta2[k] = b2;
        total.add(b1);
        total.add(b2);
    }
    for (int k : others)
        for (int l : others) {
            const double g = gamma_group(br.a, br.b, s[std::size_t(k)], s[std::size_t(l)], policy);
            br.gamma[{k, l}] = g;
            total.add(g);
        }
    detail::CompensatedSum delta;
    for (int p : others)
        for (int q : others)
            for (int r : others) {
                if (p == q && q == r) continue;
                delta.add(phi(s[std::size_t(p)], s[std::size_t(q)], s[std::size_t(r)], policy));
            }
    br.delta_total = delta.value();
    total.add(br.delta_total);
    br.total = total.value();
    return br;
}

// --- closed forms of the beta2 group in scaled variables ----------------
//
// With atil = a/l_k = c+x and btil = b/l_k = c-x the group satisfies
// l_k beta2_k(a,b) = 3 w + 2(q1 + q2) + 2 r. The explicit forms below are
// the transcription-resolved ones; beta2_direct is the authoritative phi
// sum in the same variables.

inline void beta2_check_args(double x, double c) {
    if (!(c > 0.0) || !(x > 0.0) || !(x < c))
        throw usage_error("beta2 closed form: need 0 < x < c");
}

inline double beta2_w(double x, double c, const EvalPolicy& policy = default_policy()) {
    beta2_check_args(x, c);
    const double t = m3(c - x, c + x, 1.0, policy);
    return t * t / (m2(c - x, c + x, policy) * m2(c - x, 1.0, policy) * m2(c + x, 1.0, policy));
}

inline double beta2_q1(double x, double c, const EvalPolicy& policy = default_policy()) {
    beta2_check_args(x, c);
    const double lratio = std::log1p(2.0 * x / (c - x)); // log((c+x)/(c-x))
    return (phi1(c - x, policy) - phi1(c + x, policy)) / lratio;
}

inline double beta2_q2(double x, double c, const EvalPolicy& policy = default_policy()) {
    beta2_check_args(x, c);
    return (phi2(c + x, policy) - phi2(c - x, policy)) / (2.0 * x);
}

inline double beta2_r(double x, double c, const EvalPolicy& policy = default_policy()) {
    beta2_check_args(x, c);
    return -phi2(c - x, policy) * phi2(c + x, policy);
}

inline double beta2_closed(double x, double c, const EvalPolicy& policy = default_policy()) {
    return 3.0 * beta2_w(x, c, policy) + 2.0 * (beta2_q1(x, c, policy) + beta2_q2(x, c, policy))
         + 2.0 * beta2_r(x, c, policy);
}

inline double beta2_direct(double x, double c, const EvalPolicy& policy = default_policy()) {
    beta2_check_args(x, c);
    return beta2_group(c + x, c - x, 1.0, policy);
}

// --- closed forms of the gamma group -----------------------------------
//
// Scaled by l_l with xtil = a/l_l and ctil = l_k/l_l, each displaced
// eigenvalue contributes the kernel (3/2) w + q + r - d; the group is
// gamma_kl(a,b) = [kernel(a/l_l) + kernel(b/l_l)] / l_l.

inline double gamma_w(double x, double c, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(x, "gamma_w");
    detail::require_positive(c, "gamma_w");
    const double t = m3(x, c, 1.0, policy);
    return t * t / (m2(x, c, policy) * m2(x, 1.0, policy) * m2(c, 1.0, policy));
}

inline double gamma_q(double x, double c, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(x, "gamma_q");
    detail::require_positive(c, "gamma_q");
    return phi1(c, policy) * phi2(x / c, policy);
}

inline double gamma_r(double x, double c, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(x, "gamma_r");
    detail::require_positive(c, "gamma_r");
    return -(1.0 / x) * phi2(c / x, policy) * phi2(1.0 / x, policy);
}

inline double gamma_d(double x, double c, const EvalPolicy& policy = default_policy()) {
    detail::require_positive(x, "gamma_d");
    detail::require_positive(c, "gamma_d");
    return phi2(c, policy) * phi2(x, policy);
}

inline double gamma_closed(double x, double c, const EvalPolicy& policy = default_policy()) {
    return 1.5 * gamma_w(x, c, policy) + gamma_q(x, c, policy) + gamma_r(x, c, policy)
         - gamma_d(x, c, policy);
}

inline double gamma_kernel_direct(double x, double c, const EvalPolicy& policy = default_policy()) {
    return phi(x, c, 1.0, policy) + phi(c, x, 1.0, policy) + phi(x, 1.0, c, policy);
}

inline double gamma_group_closed(double a, double b, double lk, double ll,
                                 const EvalPolicy& policy = default_policy()) {
    return (gamma_closed(a / ll, lk / ll, policy) + gamma_closed(b / ll, lk / ll, policy)) / ll;
}

// --- named sub-sums of the grouped summands ------------------------------

enum class SubtermName {
    item1_first,
    item1_second,
    item2_first,
    item2_full,
    item2_last,
    item3_first,
    item3_full,
    item3_last,
    item4_first,
    item4_last,
    gamma_star,
};

inline const char* subterm_name_str(SubtermName n) {
    switch (n) {
        case SubtermName::item1_first: return "item1-first";
        case SubtermName::item1_second: return "item1-second";
        case SubtermName::item2_first: return "item2-first";
        case SubtermName::item2_full: return "item2-full";
        case SubtermName::item2_last: return "item2-last";
        case SubtermName::item3_first: return "item3-first";
        case SubtermName::item3_full: return "item3-full";
        case SubtermName::item3_last: return "item3-last";
        case SubtermName::item4_first: return "item4-first";
        case SubtermName::item4_last: return "item4-last";
        case SubtermName::gamma_star: return "gamma-star";
    }
    return "?";
}

inline SubtermName parse_subterm_name(const std::string& s) {
    for (SubtermName n : {SubtermName::item1_first, SubtermName::item1_second, SubtermName::item2_first,
                          SubtermName::item2_full, SubtermName::item2_last, SubtermName::item3_first,
                          SubtermName::item3_full, SubtermName::item3_last, SubtermName::item4_first,
                          SubtermName::item4_last, SubtermName::gamma_star})
        if (s == subterm_name_str(n)) return n;
    throw usage_error("unknown subterm name: " + s);
}

inline bool subterm_needs_lk(SubtermName n) {
    return n != SubtermName::item1_first && n != SubtermName::item1_second;
}

inline bool subterm_needs_ll(SubtermName n) {
    return n == SubtermName::item4_first || n == SubtermName::item4_last || n == SubtermName::gamma_star;
}

// Evaluates the named sub-sum at displacement x along (a-x, b+x).
inline double subterm(SubtermName name, double a, double b, double x,
                      std::optional<double> lam_k = std::nullopt,
                      std::optional<double> lam_l = std::nullopt,
                      const EvalPolicy& policy = default_policy()) {
    if (!(a > b) || !(b > 0.0)) throw usage_error("subterm: need a > b > 0");
    if (!(x >= 0.0) || !(x <= 0.5 * (a - b) + 1e-15)) throw usage_error("subterm: x outside [0, (a-b)/2]");
    if (subterm_needs_lk(name) && !lam_k) throw usage_error("subterm: lam_k required");
    if (subterm_needs_ll(name) && !lam_l) throw usage_error("subterm: lam_l required");
    const double u = a - x, w = b + x;
    const double lk = lam_k.value_or(0.0), ll = lam_l.value_or(0.0);
    if (lam_k) detail::require_positive(lk, "subterm");
    if (lam_l) detail::require_positive(ll, "subterm");
    switch (name) {
        case SubtermName::item1_first:
            return phi(u, u, w, policy) + phi(w, w, u, policy);
        case SubtermName::item1_second:
            return phi(u, w, u, policy) + phi(w, u, w, policy);
        case SubtermName::item2_first:
            return phi(u, u, lk, policy) + phi(w, w, lk, policy);
        case SubtermName::item2_full:
            return phi(u, u, lk, policy) + phi(w, w, lk, policy) + phi(u, lk, u, policy)
                 + phi(w, lk, w, policy);
        case SubtermName::item2_last:
            return phi(u, lk, u, policy) + phi(w, lk, w, policy);
        case SubtermName::item3_first:
            return phi(u, w, lk, policy) + phi(w, u, lk, policy);
        case SubtermName::item3_full:
            return phi(u, w, lk, policy) + phi(w, u, lk, policy) + phi(u, lk, w, policy)
                 + phi(w, lk, u, policy);
        case SubtermName::item3_last:
            return phi(u, lk, w, policy) + phi(w, lk, u, policy);
        case SubtermName::item4_first:
            return phi(lk, u, ll, policy) + phi(lk, w, ll, policy);
        case SubtermName::item4_last:
            return phi(u, lk, ll, policy) + phi(w, lk, ll, policy);
        case SubtermName::gamma_star:
            return 2.0 * phi(u, lk, ll, policy) + 2.0 * phi(w, lk, ll, policy)
                 + phi(lk, u, ll, policy) + phi(lk, w, ll, policy);
    }
    throw usage_error("subterm: unknown name");
}

} // namespace kmlab
