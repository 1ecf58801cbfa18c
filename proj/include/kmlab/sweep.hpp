#pragma once

// The verification harness. Every statement under test belongs to one of
// three claim classes, and that classification is the contract:
//
//   proven     - proved in closed form; the sweep is a regression test and
//                must pass;
//   evidenced  - supported numerically at larger scale; the sweep
//                reproduces that evidence at desk scale and must pass;
//   disproven  - stated to fail; the sweep is a counterexample search and
//                must find a violation.
//
// Strictness: a step or point only counts as a violation when it breaks
// the claim by more than strictness*(1 + |value|); smaller deviations are
// recorded as ties, never as passes of a strict claim. Margins are the
// signed slack including that allowance, so min_margin < 0 exactly when a
// violation was recorded. Sweeps are deterministic given (seed, grid),
// independent of the worker count.

#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmlab/curvature.hpp"
#include "kmlab/errors.hpp"
#include "kmlab/inequalities.hpp"
#include "kmlab/kernels.hpp"
#include "kmlab/parallel.hpp"
#include "kmlab/rng.hpp"
#include "kmlab/spectrum.hpp"

namespace kmlab {

enum class ClaimClass { proven, evidenced, disproven };

inline const char* claim_class_str(ClaimClass c) {
    switch (c) {
        case ClaimClass::proven: return "proven";
        case ClaimClass::evidenced: return "evidenced";
        case ClaimClass::disproven: return "disproven";
    }
    return "?";
}

struct Violation {
    std::string location;
    double value = 0.0;
    double margin = 0.0;
};

struct GridPoint {
    std::vector<double> coords;
    double value = 0.0;
    double margin = 0.0;
};

struct SweepReport {
    std::string description;
    ClaimClass claim_class = ClaimClass::evidenced;
    std::uint64_t seed = 0;
    long points_checked = 0;
    long ties = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::vector<Violation> violations;
    std::vector<std::string> coord_names;
    std::vector<GridPoint> trace;
    std::vector<std::pair<std::string, std::string>> config;

    bool pass() const { return violations.empty(); }
    const char* verdict() const { return pass() ? "pass" : "fail"; }
    // a disproven claim is reproduced exactly when the search finds a violation
    bool matches_claim() const {
        return claim_class == ClaimClass::disproven ? !pass() : pass();
    }
};

namespace detail {

inline std::string locf(const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

// One observation against a claim. `breach` is how far the point violates
// the claim (positive = violated before strictness), `scale` sets the
// strictness allowance.
inline void record(SweepReport& rep, std::vector<double> coords, double value, double breach,
                   double scale, double strictness, const std::string& location,
                   bool keep_trace = true) {
    const double tol = strictness * (1.0 + std::fabs(scale));
    const double margin = tol - breach;
    rep.points_checked++;
    if (margin < rep.min_margin) rep.min_margin = margin;
    if (breach > tol) {
        if (rep.violations.size() < 1000) rep.violations.push_back({location, value, margin});
    } else if (std::fabs(breach) <= tol) {
        rep.ties++;
    }
    if (keep_trace && rep.trace.size() < 200000) rep.trace.push_back({std::move(coords), value, margin});
}

inline std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo * std::pow(hi / lo, (double(i) + 0.5) / double(count));
    return g;
}

} // namespace detail

// ---------------------------------------------------------------------
// Conjecture sweep: along random T-transform chains the scalar curvature
// must strictly increase toward the more mixed end, for both the complex
// and the real formula.
inline SweepReport check_conjecture(int n, long trials, std::uint64_t seed, int steps_per_chain = 10,
                                    double strictness = 1e-12,
                                    const EvalPolicy& policy = default_policy()) {
    if (n < 2) throw usage_error("check_conjecture: n must be >= 2");
    SweepReport rep;
    rep.description = detail::locf(
        "scalar curvature increases along random T-transform chains (n=%d, trials=%ld, steps=%d)", n,
        trials, steps_per_chain);
    rep.claim_class = ClaimClass::evidenced;
    rep.seed = seed;
    rep.coord_names = {"trial", "step", "formula"};

    struct LinkObs {
        double margin_c, margin_r, val_c, val_r;
        int step;
        bool used;
    };
    std::vector<std::vector<LinkObs>> obs;
    obs.resize(std::size_t(trials));

    parallel_for(std::size_t(trials), [&](std::size_t trial) {
        Rng rng(seed ^ (0x9E3779B97F4A7C15ull * (trial + 1)));
        Spectrum cur = sample_spectrum(std::size_t(n), rng);
        double sc = scal(cur, policy), sr = scal_real(cur, policy);
        auto& row = obs[trial];
        row.reserve(std::size_t(steps_per_chain));
        for (int step = 0; step < steps_per_chain; ++step) {
            std::size_t k = rng.index(std::size_t(n)), l = rng.index(std::size_t(n));
            double t = rng.uniform01();
            if (k == l) {
                row.push_back({0, 0, 0, 0, step, false});
                continue;
            }
            Spectrum nxt = t_transform(cur, k, l, t);
            bool same = true;
            for (std::size_t i = 0; i < nxt.size(); ++i)
                if (nxt[i] != cur[i]) { same = false; break; }
            if (same) {
                row.push_back({0, 0, 0, 0, step, false});
                continue;
            }
            const double sc2 = scal(nxt, policy), sr2 = scal_real(nxt, policy);
            row.push_back({sc2 - sc, sr2 - sr, sc2, sr2, step, true});
            cur = nxt;
            sc = sc2;
            sr = sr2;
        }
    });

    for (long trial = 0; trial < trials; ++trial)
        for (const auto& o : obs[std::size_t(trial)]) {
            if (!o.used) continue;
            detail::record(rep, {double(trial), double(o.step), 0.0}, o.val_c, -o.margin_c, o.val_c,
                           strictness,
                           detail::locf("trial=%ld step=%d formula=complex", trial, o.step));
            detail::record(rep, {double(trial), double(o.step), 1.0}, o.val_r, -o.margin_r, o.val_r,
                           strictness,
                           detail::locf("trial=%ld step=%d formula=real", trial, o.step));
        }
    return rep;
}

// ---------------------------------------------------------------------
// Monotonicity of one grouped summand along the displacement x.

enum class TermKind { alpha, beta1, beta2, gamma, v_pair, v_cross, subterm };

inline const char* term_kind_str(TermKind t) {
    switch (t) {
        case TermKind::alpha: return "alpha";
        case TermKind::beta1: return "beta1";
        case TermKind::beta2: return "beta2";
        case TermKind::gamma: return "gamma";
        case TermKind::v_pair: return "v-pair";
        case TermKind::v_cross: return "v-cross";
        case TermKind::subterm: return "subterm";
    }
    return "?";
}

inline ClaimClass subterm_claim(SubtermName n) {
    switch (n) {
        case SubtermName::item1_first:
        case SubtermName::item1_second:
        case SubtermName::item2_first:
        case SubtermName::item2_full:
            return ClaimClass::proven;
        case SubtermName::item3_first:
        case SubtermName::item3_full:
        case SubtermName::item4_first:
            return ClaimClass::evidenced;
        case SubtermName::item2_last:
        case SubtermName::item3_last:
        case SubtermName::item4_last:
        case SubtermName::gamma_star:
            return ClaimClass::disproven;
    }
    return ClaimClass::evidenced;
}

struct GroupedTermTask {
    TermKind term = TermKind::alpha;
    std::optional<SubtermName> sub_name;
    double a = 0.0, b = 0.0;
    std::optional<double> lam_k, lam_l;
    std::vector<double> x_grid;

    void validate() const {
        if (!(a > b && b > 0.0)) throw usage_error("GroupedTermTask: need a > b > 0");
        if (x_grid.size() < 2) throw usage_error("GroupedTermTask: grid needs at least two points");
        double prev = -1.0;
        for (double x : x_grid) {
            if (!(x >= 0.0 && x <= 0.5 * (a - b) + 1e-15) || !(x > prev))
                throw usage_error("GroupedTermTask: grid must increase inside [0,(a-b)/2]");
            prev = x;
        }
        const bool needs_k = term == TermKind::beta1 || term == TermKind::beta2
                          || term == TermKind::gamma || term == TermKind::v_cross
                          || (term == TermKind::subterm && sub_name && subterm_needs_lk(*sub_name));
        const bool needs_l = term == TermKind::gamma
                          || (term == TermKind::subterm && sub_name && subterm_needs_ll(*sub_name));
        if (needs_k && !lam_k) throw usage_error("GroupedTermTask: lam_k required");
        if (needs_l && !lam_l) throw usage_error("GroupedTermTask: lam_l required");
        if (term == TermKind::subterm && !sub_name)
            throw usage_error("GroupedTermTask: subterm name required");
    }
};

inline GroupedTermTask make_term_task(TermKind term, double a, double b,
                                      std::optional<double> lam_k = std::nullopt,
                                      std::optional<double> lam_l = std::nullopt, int points = 1000,
                                      std::optional<SubtermName> sub = std::nullopt) {
    GroupedTermTask t;
    t.term = term;
    t.sub_name = sub;
    t.a = a;
    t.b = b;
    t.lam_k = lam_k;
    t.lam_l = lam_l;
    t.x_grid.resize(std::size_t(points));
    for (int i = 0; i < points; ++i)
        t.x_grid[std::size_t(i)] = 0.5 * (a - b) * double(i) / double(points - 1);
    t.validate();
    return t;
}

inline double eval_term(const GroupedTermTask& t, double x, const EvalPolicy& policy) {
    const double u = t.a - x, w = t.b + x;
    switch (t.term) {
        case TermKind::alpha: return alpha_group(u, w, policy);
        case TermKind::beta1: return beta1_group(u, w, *t.lam_k, policy);
        case TermKind::beta2: return beta2_group(u, w, *t.lam_k, policy);
        case TermKind::gamma: return gamma_group(u, w, *t.lam_k, *t.lam_l, policy);
        case TermKind::v_pair: return v_fn(u, w, policy) + v_fn(w, u, policy);
        case TermKind::v_cross:
            return v_fn(u, *t.lam_k, policy) + v_fn(w, *t.lam_k, policy)
                 + v_fn(*t.lam_k, u, policy) + v_fn(*t.lam_k, w, policy);
        case TermKind::subterm: return subterm(*t.sub_name, t.a, t.b, x, t.lam_k, t.lam_l, policy);
    }
    throw usage_error("eval_term: unknown term");
}

inline SweepReport check_term_monotonicity(const GroupedTermTask& task, double strictness = 1e-12,
                                           const EvalPolicy& policy = default_policy()) {
    task.validate();
    SweepReport rep;
    const char* tname =
        task.term == TermKind::subterm ? subterm_name_str(*task.sub_name) : term_kind_str(task.term);
    rep.description = detail::locf("grouped term %s increases along x in [0,(a-b)/2] (a=%g, b=%g)",
                                   tname, task.a, task.b);
    rep.claim_class = task.term == TermKind::subterm ? subterm_claim(*task.sub_name)
                    : (task.term == TermKind::beta2 || task.term == TermKind::gamma)
                        ? ClaimClass::evidenced
                        : ClaimClass::proven;
    rep.coord_names = {"x"};

    std::vector<double> vals(task.x_grid.size());
    parallel_for(task.x_grid.size(),
                 [&](std::size_t i) { vals[i] = eval_term(task, task.x_grid[i], policy); });
    for (std::size_t i = 1; i < vals.size(); ++i) {
        const double diff = vals[i] - vals[i - 1];
        detail::record(rep, {task.x_grid[i]}, vals[i], -diff, vals[i - 1], strictness,
                       detail::locf("%s x=%.17g", tname, task.x_grid[i]));
    }
    return rep;
}

// ---------------------------------------------------------------------
// Derivative conditions behind the beta2 monotonicity claim. All four
// combinations must have negative x-derivative on 0 < x < c; condition 4
// is proven, conditions 1-3 reproduce numerical evidence.
inline SweepReport check_beta2_conditions(int c_count, int x_count, double c_lo = 1e-2,
                                          double c_hi = 1e2, std::vector<int> conditions = {1, 2, 3, 4},
                                          double strictness = 1e-12,
                                          const EvalPolicy& policy = default_policy()) {
    if (c_count < 1 || x_count < 1) throw usage_error("check_beta2_conditions: empty grid");
    SweepReport rep;
    rep.description = detail::locf(
        "beta2 closed-form conditions d/dx < 0 on a %dx%d grid, c in [%g, %g]", c_count, x_count,
        c_lo, c_hi);
    bool proven_only = conditions == std::vector<int>{4};
    rep.claim_class = proven_only ? ClaimClass::proven : ClaimClass::evidenced;
    rep.coord_names = {"c", "x", "condition"};

    auto combo = [&](int cond, double x, double c) {
        switch (cond) {
            case 1:
                return beta2_w(x, c, policy) + beta2_q1(x, c, policy) + beta2_q2(x, c, policy);
            case 2: return 2.0 * beta2_w(x, c, policy) + beta2_q1(x, c, policy) + beta2_r(x, c, policy);
            case 3: return beta2_q2(x, c, policy);
            case 4: return beta2_r(x, c, policy);
        }
        throw usage_error("check_beta2_conditions: condition must be 1..4");
    };

    const auto cs = detail::log_grid(c_lo, c_hi, c_count);
    struct Obs {
        double c, x, deriv, f0;
        int cond;
    };
    std::vector<std::vector<Obs>> rows(cs.size());
    parallel_for(cs.size(), [&](std::size_t ic) {
        const double c = cs[ic];
        auto& row = rows[ic];
        for (int ix = 0; ix < x_count; ++ix) {
            const double x = c * (double(ix) + 1.0) / (double(x_count) + 1.0);
            double h = 1e-5 * (1.0 + x);
            const double room = 0.45 * std::min(x, c - x);
            if (h > room) h = room;
            for (int cond : conditions) {
                const double fp = combo(cond, x + h, c);
                const double fm = combo(cond, x - h, c);
                const double f0 = combo(cond, x, c);
                row.push_back({c, x, (fp - fm) / (2.0 * h), f0, cond});
            }
        }
    });
    for (const auto& row : rows)
        for (const auto& o : row)
            detail::record(rep, {o.c, o.x, double(o.cond)}, o.deriv, o.deriv, o.f0, strictness,
                           detail::locf("cond=%d c=%.17g x=%.17g", o.cond, o.c, o.x));
    return rep;
}

// ---------------------------------------------------------------------
// Concavity conditions behind the gamma monotonicity claim. The printed
// two-way split of the kernel is garbled beyond recovery (no whole-term
// split passes numerically); what is checked is the surviving half
// (w/2 + q + r) and the full kernel (3/2)w + q + r - d, whose concavity is
// the inequality the monotonicity actually needs.
inline SweepReport check_gamma_conditions(int c_count, int x_count, double lo = 1e-3, double hi = 1e7,
                                          double strictness = 1e-12,
                                          const EvalPolicy& policy = default_policy()) {
    if (c_count < 1 || x_count < 1) throw usage_error("check_gamma_conditions: empty grid");
    SweepReport rep;
    rep.description = detail::locf(
        "gamma conditions d2/dx2 < 0 (1: w/2+q+r, 2: full kernel) on a %dx%d grid over [%g, %g]^2",
        c_count, x_count, lo, hi);
    rep.claim_class = ClaimClass::evidenced;
    rep.coord_names = {"c", "x", "condition"};

    auto combo = [&](int cond, double x, double c) {
        if (cond == 1)
            return 0.5 * gamma_w(x, c, policy) + gamma_q(x, c, policy) + gamma_r(x, c, policy);
        return gamma_closed(x, c, policy);
    };

    const auto cs = detail::log_grid(lo, hi, c_count);
    const auto xs = detail::log_grid(lo, hi, x_count);
    struct Obs {
        double c, x, second, f0;
        int cond;
    };
    std::vector<std::vector<Obs>> rows(cs.size());
    parallel_for(cs.size(), [&](std::size_t ic) {
        const double c = cs[ic];
        auto& row = rows[ic];
        for (double x : xs) {
            double h = 1e-5 * (1.0 + x);
            if (h > 0.45 * x) h = 0.45 * x;
            for (int cond : {1, 2}) {
                const double fp = combo(cond, x + h, c);
                const double f0 = combo(cond, x, c);
                const double fm = combo(cond, x - h, c);
                row.push_back({c, x, (fp - 2.0 * f0 + fm) / (h * h), f0, cond});
            }
        }
    });
    for (const auto& row : rows)
        for (const auto& o : row)
            detail::record(rep, {o.c, o.x, double(o.cond)}, o.second, o.second, o.f0, strictness,
                           detail::locf("cond=%d c=%.17g x=%.17g", o.cond, o.c, o.x));
    return rep;
}

// ---------------------------------------------------------------------
// Named inequality functions and their stated signs.

enum class InequalityName {
    tau_alpha,
    q_alpha,
    tau1_beta,
    tau2_beta,
    d_u,
    eta,
    tau_real,
    kappa_plus_rho_concave,
};

inline const char* inequality_name_str(InequalityName n) {
    switch (n) {
        case InequalityName::tau_alpha: return "tau-alpha";
        case InequalityName::q_alpha: return "q-alpha";
        case InequalityName::tau1_beta: return "tau1-beta";
        case InequalityName::tau2_beta: return "tau2-beta";
        case InequalityName::d_u: return "d-u";
        case InequalityName::eta: return "eta";
        case InequalityName::tau_real: return "tau-real";
        case InequalityName::kappa_plus_rho_concave: return "kappa-plus-rho";
    }
    return "?";
}

inline InequalityName parse_inequality_name(const std::string& s) {
    for (InequalityName n :
         {InequalityName::tau_alpha, InequalityName::q_alpha, InequalityName::tau1_beta,
          InequalityName::tau2_beta, InequalityName::d_u, InequalityName::eta,
          InequalityName::tau_real, InequalityName::kappa_plus_rho_concave})
        if (s == inequality_name_str(n)) return n;
    throw usage_error("unknown inequality name: " + s);
}

enum class ExpectedShape { positive, non_negative, negative, decreasing, concave };

struct InequalitySpec {
    InequalityName name = InequalityName::q_alpha;
    double lo = 1e-2, hi = 1e2;
    int points = 1000;
    double collar = 1e-4; // excluded band around the removable point c = 1

    ExpectedShape shape() const {
        switch (name) {
            case InequalityName::tau_alpha: return ExpectedShape::decreasing;
            case InequalityName::q_alpha: return ExpectedShape::non_negative;
            case InequalityName::tau1_beta: return ExpectedShape::concave;
            case InequalityName::tau2_beta: return ExpectedShape::concave;
            case InequalityName::d_u: return ExpectedShape::positive;
            case InequalityName::eta: return ExpectedShape::positive;
            case InequalityName::tau_real: return ExpectedShape::negative;
            case InequalityName::kappa_plus_rho_concave: return ExpectedShape::concave;
        }
        return ExpectedShape::positive;
    }

    double eval(double c, const EvalPolicy& policy) const {
        switch (name) {
            case InequalityName::tau_alpha: return tau_alpha(c, policy);
            case InequalityName::q_alpha: return q_alpha(c, policy);
            case InequalityName::tau1_beta: return tau1_beta(c, policy);
            case InequalityName::tau2_beta: return tau2_beta(c, policy);
            case InequalityName::d_u: return d_u(c, policy);
            case InequalityName::eta: return eta_fn(c, policy);
            case InequalityName::tau_real: return tau_real(c, policy);
            case InequalityName::kappa_plus_rho_concave:
                return kappa_fn(c, policy) + rho_fn(c, policy);
        }
        throw usage_error("InequalitySpec: unknown name");
    }
};

// Domain presets: the two alpha-proof functions live on (0,1), the rest on
// the positive axis.
inline InequalitySpec default_inequality_spec(InequalityName name, int points = 1000) {
    InequalitySpec s;
    s.name = name;
    s.points = points;
    if (name == InequalityName::tau_alpha || name == InequalityName::q_alpha) {
        s.lo = 1e-3;
        s.hi = 1.0 - 1e-4;
    }
    return s;
}

inline SweepReport check_inequality(const InequalitySpec& spec, double strictness = 1e-12,
                                    const EvalPolicy& policy = default_policy()) {
    if (spec.points < 2) throw usage_error("check_inequality: need at least two grid points");
    SweepReport rep;
    const char* shape_name = nullptr;
    switch (spec.shape()) {
        case ExpectedShape::positive: shape_name = "> 0"; break;
        case ExpectedShape::non_negative: shape_name = ">= 0"; break;
        case ExpectedShape::negative: shape_name = "< 0"; break;
        case ExpectedShape::decreasing: shape_name = "decreasing"; break;
        case ExpectedShape::concave: shape_name = "concave"; break;
    }
    rep.description = detail::locf("inequality %s is %s on [%g, %g] (%d-point log grid)",
                                   inequality_name_str(spec.name), shape_name, spec.lo, spec.hi,
                                   spec.points);
    rep.claim_class = ClaimClass::proven;
    rep.coord_names = {"c"};

    std::vector<double> grid;
    grid.reserve(std::size_t(spec.points));
    for (double c : detail::log_grid(spec.lo, spec.hi, spec.points))
        if (std::fabs(c - 1.0) > spec.collar) grid.push_back(c);

    const ExpectedShape shape = spec.shape();
    std::vector<double> vals(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { vals[i] = spec.eval(grid[i], policy); });

    const char* nm = inequality_name_str(spec.name);
    if (shape == ExpectedShape::decreasing) {
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double diff = vals[i] - vals[i - 1];
            detail::record(rep, {grid[i]}, vals[i], diff, vals[i - 1], strictness,
                           detail::locf("%s c=%.17g", nm, grid[i]));
        }
    } else if (shape == ExpectedShape::concave) {
        std::vector<double> seconds(grid.size());
        parallel_for(grid.size(), [&](std::size_t i) {
            const double c = grid[i];
            const double h = 1e-4 * (1.0 + c);
            seconds[i] =
                (spec.eval(c + h, policy) - 2.0 * vals[i] + spec.eval(c - h, policy)) / (h * h);
        });
        for (std::size_t i = 0; i < grid.size(); ++i)
            detail::record(rep, {grid[i]}, seconds[i], seconds[i], vals[i], strictness,
                           detail::locf("%s c=%.17g", nm, grid[i]));
    } else {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double breach = 0.0;
            switch (shape) {
                case ExpectedShape::positive:
                case ExpectedShape::non_negative: breach = -vals[i]; break;
                case ExpectedShape::negative: breach = vals[i]; break;
                default: break;
            }
            detail::record(rep, {grid[i]}, vals[i], breach, vals[i], strictness,
                           detail::locf("%s c=%.17g", nm, grid[i]));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------
// Counterexample search over (a, b, lam_k, lam_l, x). For sub-sums the
// paper disproves, success means locating a reproducible decreasing step;
// for proven or evidenced sub-sums the same search must come back empty.

struct CounterexampleConfig {
    long samples = 100000;
    std::uint64_t seed = 1;
    int x_points = 64;
    std::vector<double> ratios = {1e3, 1e4, 1.5e4, 1e5}; // gamma-star lam_k/lam_l sweep
};

inline SweepReport find_counterexample(SubtermName name, const CounterexampleConfig& cfg,
                                       double strictness = 1e-12,
                                       const EvalPolicy& policy = default_policy()) {
    SweepReport rep;
    rep.claim_class = subterm_claim(name);
    rep.seed = cfg.seed;
    const bool is_gamma_star = name == SubtermName::gamma_star;
    rep.description = detail::locf(
        "counterexample search for %s over %ld seeded samples (%d-point x grids)%s",
        subterm_name_str(name), cfg.samples, cfg.x_points,
        is_gamma_star ? ", ratio sweep on lam_k/lam_l" : "");
    rep.coord_names = {"sample", "ratio", "x"};

    const std::vector<double> ratios = is_gamma_star ? cfg.ratios : std::vector<double>{0.0};
    const long per_ratio = cfg.samples / long(ratios.size());

    struct Found {
        double a, b, lk, ll, x, value, drop;
        long sample;
        double ratio;
    };
    std::vector<std::vector<Found>> found(ratios.size());
    std::vector<long> steps_done(ratios.size(), 0);

    parallel_for(ratios.size(), [&](std::size_t ri) {
        const double ratio = ratios[ri];
        Rng rng(cfg.seed ^ (0xD1B54A32D192ED03ull * (ri + 1)));
        long steps = 0;
        for (long s = 0; s < per_ratio; ++s) {
            double a = rng.uniform(0.01, 0.99), b = rng.uniform(0.01, 0.99);
            if (a < b) std::swap(a, b);
            if (a - b < 1e-3) continue;
            double lk = 0.0, ll = 0.0;
            if (is_gamma_star) {
                lk = rng.uniform(0.05, 0.95);
                ll = lk / ratio;
            } else {
                if (subterm_needs_lk(name)) lk = rng.uniform(0.001, 0.999);
                if (subterm_needs_ll(name)) ll = rng.uniform(0.001, 0.999);
            }
            double prev = 0.0;
            for (int i = 0; i <= cfg.x_points; ++i) {
                const double x = 0.5 * (a - b) * double(i) / double(cfg.x_points);
                const double f = subterm(name, a, b, x,
                                         subterm_needs_lk(name) ? std::optional<double>(lk)
                                                                : std::nullopt,
                                         subterm_needs_ll(name) ? std::optional<double>(ll)
                                                                : std::nullopt,
                                         policy);
                if (i > 0) {
                    ++steps;
                    const double drop = prev - f;
                    if (drop > strictness * (1.0 + std::fabs(prev))) {
                        found[ri].push_back({a, b, lk, ll, x, f, drop, s, ratio});
                        break; // one violation per sample is enough
                    }
                }
                prev = f;
            }
        }
        steps_done[ri] = steps;
    });

    long total_steps = 0;
    for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
        total_steps += steps_done[ri];
        for (const auto& f : found[ri]) {
            const double margin = -f.drop;
            rep.min_margin = std::min(rep.min_margin, margin);
            if (rep.violations.size() < 1000)
                rep.violations.push_back(
                    {detail::locf("sample=%ld ratio=%.6g a=%.17g b=%.17g lam_k=%.17g lam_l=%.17g "
                                  "x=%.17g drop=%.6g",
                                  f.sample, f.ratio, f.a, f.b, f.lk, f.ll, f.x, f.drop),
                     f.value, margin});
            rep.trace.push_back({{double(f.sample), f.ratio, f.x}, f.value, margin});
        }
    }
    rep.points_checked = total_steps;
    if (rep.violations.empty()) rep.min_margin = 0.0;
    return rep;
}

// Violations found at a given gamma-star ratio (for sweep assertions).
inline long violations_at_ratio(const SweepReport& rep, double ratio) {
    long c = 0;
    for (const auto& p : rep.trace)
        if (p.coords.size() == 3 && p.coords[1] == ratio) ++c;
    return c;
}

} // namespace kmlab
