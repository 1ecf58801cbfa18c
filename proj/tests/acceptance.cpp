// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, in code. Run through ctest ("acceptance")
// or directly; pass a criterion number to run only that one.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "kmlab/io.hpp"
#include "kmlab/oracle.hpp"
#include "kmlab/sweep.hpp"
#include "kmlab/version.hpp"
#include "support/naive_curvature.hpp"
#include "support/quadrature.hpp"

using namespace kmlab;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<bool(std::string&)> run;
};

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

Spectrum bounded_spectrum(std::size_t n, Rng& rng, double min_eig) {
    Spectrum s = sample_spectrum(n, rng);
    while (s[n - 1] < min_eig) s = sample_spectrum(n, rng);
    return s;
}

double lsq_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const double lx = std::log(hs[i]), ly = std::log(errs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = double(hs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --- 1 -----------------------------------------------------------------
bool crit_kernel_identities(std::string& detail) {
    Rng rng(1001);
    double worst_ident = 0.0;
    for (int t = 0; t < 10000; ++t) {
        double x = rng.log_uniform(1e-4, 1e4), y = rng.log_uniform(1e-4, 1e4);
        while (std::fabs(x - y) <= 1e-6 * std::max(x, y)) y = rng.log_uniform(1e-4, 1e4);
        const double lhs = (m3(x, x, y) * x + m3(x, y, y) * y) / m2(x, y);
        worst_ident = std::max(worst_ident, std::fabs(lhs - 1.0));
    }
    // phi and v cross zero, so their scaling residual is measured against
    // the coincidence scale 1/(8 min) instead of a vanishing value
    double worst_scale = 0.0;
    for (int t = 0; t < 2000; ++t) {
        const double a = rng.log_uniform(1e-2, 1e2), b = rng.log_uniform(1e-2, 1e2),
                     c = rng.log_uniform(1e-2, 1e2);
        const double scale3 = std::fabs(phi(a, b, c)) + 1.0 / (8.0 * std::min(a, std::min(b, c)));
        const double scale2 = std::fabs(v_fn(a, b)) + 1.0 / (8.0 * std::min(a, b));
        for (double mu : {1e-3, 1.0, 1e3}) {
            worst_scale = std::max(worst_scale, rel(m2(mu * a, mu * b) * mu, m2(a, b)));
            worst_scale =
                std::max(worst_scale, rel(m3(mu * a, mu * b, mu * c) * mu * mu, m3(a, b, c)));
            worst_scale = std::max(
                worst_scale, std::fabs(phi(mu * a, mu * b, mu * c) * mu - phi(a, b, c)) / scale3);
            worst_scale =
                std::max(worst_scale, std::fabs(v_fn(mu * a, mu * b) * mu - v_fn(a, b)) / scale2);
        }
    }
    bool symmetric = true;
    for (int t = 0; t < 2000 && symmetric; ++t) {
        const double x = rng.log_uniform(1e-3, 1e3), y = rng.log_uniform(1e-3, 1e3),
                     z = rng.log_uniform(1e-3, 1e3);
        const double ref = m3(x, y, z);
        symmetric = m3(x, z, y) == ref && m3(y, x, z) == ref && m3(y, z, x) == ref
                 && m3(z, x, y) == ref && m3(z, y, x) == ref;
    }
    double worst_quad = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double x = rng.log_uniform(1e-2, 1e2), y = rng.log_uniform(1e-2, 1e2),
                     z = rng.log_uniform(1e-2, 1e2);
        worst_quad = std::max(worst_quad, rel(m2(x, y), testing::m2_quad(x, y)));
        worst_quad = std::max(worst_quad, rel(m3(x, y, z), testing::m3_quad(x, y, z)));
    }
    detail = fmt("identity %.2e<=1e-10, scaling %.2e<=1e-12, perm-sym %s, quadrature %.2e<=1e-8",
                 worst_ident, worst_scale, symmetric ? "exact" : "BROKEN", worst_quad);
    return worst_ident <= 1e-10 && worst_scale <= 1e-12 && symmetric && worst_quad <= 1e-8;
}

// --- 2 -----------------------------------------------------------------
bool crit_decomposition(std::string& detail) {
    Rng rng(1002);
    double worst = 0.0;
    bool partition_ok = true;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 3 + rng.index(5); // 3..7
        Spectrum s = sample_spectrum(n, rng);
        const int i = int(rng.index(n));
        int j = int(rng.index(n));
        if (j == i) j = (i + 1) % int(n);
        auto br = decompose(s, i, j);
        worst = std::max(worst, std::fabs(br.total - scal(s)) / std::fabs(scal(s)));
        if (t % 25 == 0) {
            auto oracle = testing::regroup_oracle(s, i, j);
            if (oracle.count != long(n * n * n - n)) partition_ok = false;
            if (std::fabs(oracle.alpha + oracle.delta - br.alpha - br.delta_total)
                > 1e-9 * (1.0 + std::fabs(br.total)))
                partition_ok = false;
        }
    }
    detail = fmt("1000 spectra n=3..7: max |total-scal|/|scal| = %.2e <= 1e-9, partition %s", worst,
                 partition_ok ? "exact" : "BROKEN");
    return worst <= 1e-9 && partition_ok;
}

// --- 3 -----------------------------------------------------------------
bool crit_closed_forms(std::string& detail) {
    Rng rng(1003);
    double worst_b2 = 0.0, worst_g = 0.0;
    for (int t = 0; t < 1000; ++t) {
        double a = rng.uniform(0.01, 0.99), b = rng.uniform(0.01, 0.99);
        if (a < b) std::swap(a, b);
        if (a - b < 1e-3) { --t; continue; }
        const double lk = rng.uniform(0.01, 0.99), ll = rng.uniform(0.01, 0.99);
        const double x = 0.5 * (a - b) / lk, c = 0.5 * (a + b) / lk;
        worst_b2 = std::max(worst_b2, rel(beta2_closed(x, c), lk * beta2_group(a, b, lk)));
        worst_g = std::max(worst_g, rel(gamma_group_closed(a, b, lk, ll), gamma_group(a, b, lk, ll)));
    }
    detail = fmt("1000 random parameter sets: beta2 %.2e, gamma %.2e (<= 1e-9)", worst_b2, worst_g);
    return worst_b2 <= 1e-9 && worst_g <= 1e-9;
}

// --- 4 -----------------------------------------------------------------
bool crit_uniform_law(std::string& detail) {
    double worst = 0.0;
    for (std::size_t n = 2; n <= 8; ++n) {
        const double expect = -double(n * n) * double(n * n - 1) / 8.0;
        worst = std::max(worst, rel(scal(Spectrum::uniform(n)), expect));
    }
    detail = fmt("scal(uniform_n) vs -n^2(n^2-1)/8 for n=2..8: max rel %.2e <= 1e-10", worst);
    return worst <= 1e-10;
}

// --- 5 -----------------------------------------------------------------
bool crit_real_relation(std::string& detail) {
    Rng rng(1005);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + rng.index(5);
        Spectrum s = sample_spectrum(n, rng);
        // independent route: off-diagonal v pairs through kappa + rho
        double vsum = 0.0;
        for (std::size_t k = 0; k < n; ++k) vsum += -1.0 / (8.0 * s[k]);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l)
                vsum += (kappa_fn(s[k] / s[l]) + rho_fn(s[k] / s[l])) / s[l];
        const double reference = 0.25 * scal(s) + 0.25 * vsum;
        worst = std::max(worst, rel(scal_real(s), reference));
    }
    detail = fmt("Scal_R = Scal/4 + (1/4) sum v (v pairs via kappa/rho): max rel %.2e <= 1e-10",
                 worst);
    return worst <= 1e-10;
}

// --- 6 -----------------------------------------------------------------
bool crit_oracle_equivalence(std::string& detail) {
    Rng rng(1006);
    double worst_cplx = 0.0, worst_real = 0.0, worst_shift = 0.0;
    for (int t = 0; t < 20; ++t) {
        Spectrum s = bounded_spectrum(2, rng, 0.05);
        auto d = DensityMatrix::from(
            [&] {
                Matrix m(2);
                m(0, 0) = s[0];
                m(1, 1) = s[1];
                return m;
            }(),
            false);
        worst_cplx = std::max(worst_cplx, rel(scal_fd(cone_chart(d, 1e-3)), scal(s)));
        const double sub = scal_fd(default_chart(d, 1e-3));
        worst_shift = std::max(worst_shift, rel(sub, scal(s) + trace_one_curvature_shift(3)));

        Matrix mr(2);
        mr(0, 0) = s[0];
        mr(1, 1) = s[1];
        auto dr = DensityMatrix::from(std::move(mr), true);
        worst_real = std::max(worst_real, rel(scal_fd(cone_chart(dr, 1e-3)), scal_real_cone(s)));
    }

    double worst_metric = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + int(rng.index(3));
        auto d = random_density_matrix(n, rng, false, 0.02);
        auto x = random_tangent(n, rng), y = random_tangent(n, rng);
        x.m *= cplx(1.0 / x.m.frobenius());
        y.m *= cplx(1.0 / y.m.frobenius());
        const double g = kubo_mori(d, x, y);
        const double rich =
            (4.0 * metric_fd(d, x, y, 1e-4) - metric_fd(d, x, y, 2e-4)) / 3.0;
        worst_metric = std::max(worst_metric, std::fabs(rich - g));
    }

    // h-convergence slopes
    std::vector<double> mh = {4e-3, 2e-3, 1e-3, 5e-4};
    std::vector<double> merr(mh.size(), 0.0);
    for (int t = 0; t < 10; ++t) {
        auto d = random_density_matrix(3, rng, false, 0.05);
        auto x = random_tangent(3, rng), y = random_tangent(3, rng);
        x.m *= cplx(1.0 / x.m.frobenius());
        y.m *= cplx(1.0 / y.m.frobenius());
        const double g = kubo_mori(d, x, y);
        for (std::size_t i = 0; i < mh.size(); ++i)
            merr[i] = std::max(merr[i], std::fabs(metric_fd(d, x, y, mh[i]) - g));
    }
    const double slope_metric = lsq_slope(mh, merr);

    auto d73 = DensityMatrix::diagonal(Spectrum::from({0.7, 0.3}));
    Matrix m73(2);
    m73(0, 0) = 0.7;
    m73(1, 1) = 0.3;
    auto d73c = DensityMatrix::from(std::move(m73), false);
    const double exact = scal(Spectrum::from({0.7, 0.3}));
    std::vector<double> sh = {1.6e-2, 8e-3, 4e-3, 2e-3};
    std::vector<double> serr;
    for (double h : sh) serr.push_back(std::fabs(scal_fd(cone_chart(d73c, h)) - exact));
    const double slope_scal = lsq_slope(sh, serr);

    detail = fmt("scal-fd cone rel: cplx %.1e real %.1e (<=1e-3), trace-one shift rel %.1e, "
                 "metric-fd max %.1e<=1e-6, slopes %.2f/%.2f in [1.7,2.3]",
                 worst_cplx, worst_real, worst_shift, worst_metric, slope_metric, slope_scal);
    return worst_cplx <= 1e-3 && worst_real <= 1e-3 && worst_shift <= 1e-3
        && worst_metric <= 1e-6 && slope_metric > 1.7 && slope_metric < 2.3 && slope_scal > 1.7
        && slope_scal < 2.3;
}

// --- 7 -----------------------------------------------------------------
bool crit_conjecture(std::string& detail) {
    long links = 0, violations = 0;
    double min_margin = 1e300;
    for (int n = 2; n <= 6; ++n) {
        SweepReport rep = check_conjecture(n, 300, 1007 + std::uint64_t(n), 10);
        links += rep.points_checked / 2; // complex and real rows per link
        violations += long(rep.violations.size());
        min_margin = std::min(min_margin, rep.min_margin);
    }
    detail = fmt("%ld links over n=2..6 (need >= 10000), violations %ld, min margin %.2e", links,
                 violations, min_margin);
    return links >= 10000 && violations == 0;
}

// --- 8 -----------------------------------------------------------------
bool crit_proven_claims(std::string& detail) {
    std::vector<std::pair<std::string, SweepReport>> reps;
    reps.emplace_back("alpha", check_term_monotonicity(
                                   make_term_task(TermKind::alpha, 0.7, 0.1, {}, {}, 1000)));
    reps.emplace_back("beta1", check_term_monotonicity(
                                   make_term_task(TermKind::beta1, 0.5, 0.2, 0.3, {}, 1000)));
    reps.emplace_back("beta2-cond4", check_beta2_conditions(100, 100, 1e-2, 1e2, {4}));
    reps.emplace_back("v-pair", check_term_monotonicity(
                                    make_term_task(TermKind::v_pair, 0.8, 0.2, {}, {}, 1000)));
    reps.emplace_back("v-cross", check_term_monotonicity(
                                     make_term_task(TermKind::v_cross, 0.5, 0.2, 0.3, {}, 1000)));
    for (InequalityName name :
         {InequalityName::tau_alpha, InequalityName::q_alpha, InequalityName::tau1_beta,
          InequalityName::tau2_beta, InequalityName::d_u, InequalityName::eta,
          InequalityName::tau_real, InequalityName::kappa_plus_rho_concave})
        reps.emplace_back(inequality_name_str(name),
                          check_inequality(default_inequality_spec(name, 1000)));

    bool ok = true;
    std::string bad;
    double least = 1e300;
    for (const auto& [name, rep] : reps) {
        least = std::min(least, rep.min_margin);
        if (!rep.pass() || !(rep.min_margin > 0.0)) {
            ok = false;
            bad += " " + name;
        }
    }
    detail = fmt("%zu proven claims, least margin %.2e%s%s", reps.size(), least,
                 ok ? "" : ", FAILING:", bad.c_str());
    return ok;
}

// --- 9 -----------------------------------------------------------------
bool crit_evidenced_claims(std::string& detail) {
    SweepReport b2 = check_beta2_conditions(200, 200, 1e-2, 1e2, {1, 2, 3});
    SweepReport g = check_gamma_conditions(100, 100, 1e-3, 1e7);
    detail = fmt("beta2 conds 1-3 on 200x200: %zu violations; gamma conds on 100x100: %zu "
                 "violations (%ld ties at noise scale)",
                 b2.violations.size(), g.violations.size(), g.ties);
    return b2.pass() && g.pass();
}

// --- 10 ----------------------------------------------------------------
bool crit_counterexamples(std::string& detail) {
    CounterexampleConfig cfg;
    cfg.samples = 100000;
    cfg.seed = 1010;
    long found2 = 0, found3 = 0, found4 = 0;
    {
        SweepReport r = find_counterexample(SubtermName::item2_last, cfg);
        found2 = long(r.violations.size());
    }
    {
        SweepReport r = find_counterexample(SubtermName::item3_last, cfg);
        found3 = long(r.violations.size());
    }
    {
        SweepReport r = find_counterexample(SubtermName::item4_last, cfg);
        found4 = long(r.violations.size());
    }
    SweepReport gs = find_counterexample(SubtermName::gamma_star, cfg);
    const long at_target = violations_at_ratio(gs, 1.5e4);
    CounterexampleConfig clean_cfg = cfg;
    SweepReport clean = find_counterexample(SubtermName::item1_first, clean_cfg);
    detail = fmt("violations: item2-last %ld, item3-last %ld, item4-last %ld, gamma-star@1.5e4 "
                 "%ld (all >= 1); proven item1-first search: %zu (= 0)",
                 found2, found3, found4, at_target, clean.violations.size());
    return found2 >= 1 && found3 >= 1 && found4 >= 1 && at_target >= 1 && clean.pass();
}

// --- 11 ----------------------------------------------------------------
bool crit_gibbs_and_entropy(std::string& detail) {
    Rng rng(1011);
    bool gibbs_ok = true;
    for (int t = 0; t < 100; ++t) {
        GibbsPath path;
        const std::size_t n = 2 + rng.index(5);
        for (std::size_t i = 0; i < n; ++i)
            path.hamiltonian_eigs.push_back(rng.uniform(-2.0, 2.0));
        for (int i = 0; i < 20; ++i) path.betas.push_back(0.05 + 0.2 * i);
        if (!gibbs_path_is_monotone(path)) gibbs_ok = false;
    }
    bool entropy_ok = true;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng.index(7);
        Spectrum b = sample_spectrum(n, rng);
        Spectrum a = b;
        for (int m = 0; m < 4; ++m) {
            std::size_t k = rng.index(n), l = rng.index(n);
            if (k != l) a = t_transform(a, k, l, rng.uniform01());
        }
        auto chain = pair_chain(a, b);
        for (std::size_t z = 0; z + 1 < chain.members.size(); ++z)
            if (von_neumann_entropy(chain.members[z])
                < von_neumann_entropy(chain.members[z + 1]) - 1e-12)
                entropy_ok = false;
    }
    detail = fmt("100 Gibbs paths (n<=6, 20 betas) monotone: %s; entropy monotone along 100 "
                 "pair chains: %s",
                 gibbs_ok ? "yes" : "NO", entropy_ok ? "yes" : "NO");
    return gibbs_ok && entropy_ok;
}

// --- 12 ----------------------------------------------------------------
bool crit_stability(std::string& detail) {
    double worst = 0.0;
    const double g = 1e-9;
    for (double mu : {1e-3, 1.0, 1e3}) {
        worst = std::max(worst, rel(m2(mu, mu * (1 + g)), 1.0 / mu));
        worst = std::max(worst, rel(m3(mu, mu * (1 + g), mu * (1 + 2 * g)), 0.5 / (mu * mu)));
        worst = std::max(worst, rel(phi(mu, mu * (1 + g), mu * (1 - g)), -0.125 / mu));
        worst = std::max(worst, rel(v_fn(mu, mu * (1 + g)), -0.125 / mu));
    }
    worst = std::max(worst, rel(phi1(1.0 + g), -0.5));
    worst = std::max(worst, rel(phi2(1.0 - g), 0.5));
    worst = std::max(worst, rel(kappa_fn(1.0 + g), -0.125));
    worst = std::max(worst, rel(rho_fn(1.0 - g), -0.125));
    detail = fmt("kernels at relative gap 1e-9 vs coincidence limits: max rel %.2e <= 1e-6", worst);
    return worst <= 1e-6;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    std::vector<Criterion> criteria = {
        {1, "kernel identity suite", crit_kernel_identities},
        {2, "decomposition exactness", crit_decomposition},
        {3, "closed-form cross-validation", crit_closed_forms},
        {4, "uniform-spectrum law", crit_uniform_law},
        {5, "real/complex relation", crit_real_relation},
        {6, "oracle equivalence", crit_oracle_equivalence},
        {7, "conjecture reproduction", crit_conjecture},
        {8, "proven-claims regression", crit_proven_claims},
        {9, "evidenced-claims reproduction", crit_evidenced_claims},
        {10, "falsified-claims counterexamples", crit_counterexamples},
        {11, "gibbs/majorisation property", crit_gibbs_and_entropy},
        {12, "kernel stability at near-coincidence", crit_stability},
    };

    std::printf("kmlab acceptance suite (version %s)\n", kmlab::version);
    int failures = 0;
    for (auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d. %-38s %s [%.1f s]\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
