// kmlab - Kubo-Mori state-space geometry lab.
//
// Subcommands: scal, decompose, chain, gibbs-path,
//              oracle {metric-fd|scal-fd},
//              sweep {conjecture|term|beta2-conditions|gamma-conditions|
//                     inequality|counterexample}.
//
// Exit codes: 0 when the computed verdict matches the claim class of the
// statement under test (pass for proven/evidenced claims, violation found
// for disproven ones), 1 on a mismatch or failed self-check, 2 on usage or
// input errors. Reruns with identical flags produce byte-identical output
// files; outputs are written atomically.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmlab/io.hpp"
#include "kmlab/oracle.hpp"
#include "kmlab/sweep.hpp"
#include "kmlab/version.hpp"

namespace {

using namespace kmlab;

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size()) throw usage_error("cannot parse number: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw usage_error("empty number list");
    return out;
}

Spectrum load_spectrum(const std::string& spectrum_csv, const std::string& matrix_path,
                       bool real_only) {
    if (!spectrum_csv.empty()) return Spectrum::from(parse_doubles(spectrum_csv));
    std::ifstream f(matrix_path);
    if (!f) throw usage_error("cannot open matrix file: " + matrix_path);
    ojson j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw usage_error(std::string("malformed JSON: ") + e.what());
    }
    Matrix m = matrix_from_json(j);
    return eigvalsh(DensityMatrix::from(std::move(m), real_only));
}

void emit_report(const SweepReport& rep, const std::string& out, const std::string& format) {
    std::printf("%s\n", rep.description.c_str());
    std::printf("claim: %s  verdict: %s  points=%ld ties=%ld violations=%zu min_margin=%s\n",
                claim_class_str(rep.claim_class), rep.verdict(), rep.points_checked, rep.ties,
                rep.violations.size(), fmt17(rep.min_margin).c_str());
    for (std::size_t i = 0; i < rep.violations.size() && i < 5; ++i)
        std::printf("  violation: %s\n", rep.violations[i].location.c_str());
    if (!out.empty()) {
        if (format == "csv")
            atomic_write(out, report_to_csv(rep));
        else
            atomic_write(out, report_to_json(rep).dump(2) + "\n");
        std::printf("wrote %s\n", out.c_str());
    }
}

void echo_config(SweepReport& rep, std::initializer_list<std::pair<std::string, std::string>> kv) {
    for (const auto& p : kv) rep.config.push_back(p);
}

// the per-grid-point CSV trace exists only for sweep reports
void require_json_format(const std::string& format) {
    if (format != "json") throw usage_error("--format csv applies to sweep reports only");
}

std::string d2s(double v) { return fmt17(v); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kubo-Mori state-space geometry lab"};
    app.set_version_flag("--version", kmlab::version);
    app.require_subcommand(1);

    std::string spectrum_csv, matrix_path, out_path, format = "json";
    bool real_only = false;
    std::uint64_t seed = 1;
    double strictness = 1e-12;

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input) {
            cmd->add_option("--spectrum", spectrum_csv, "comma-separated eigenvalues");
            cmd->add_option("--matrix", matrix_path, "JSON matrix file ([re,im] pairs for complex)");
            cmd->add_flag("--real", real_only, "treat the state as a real symmetric matrix");
        }
        cmd->add_option("--out", out_path, "output file");
        cmd->add_option("--format", format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    int exit_code = 0;

    // ---------------- scal ----------------
    auto* cmd_scal = app.add_subcommand("scal", "scalar curvature of a state");
    add_common(cmd_scal, true);
    cmd_scal->callback([&] {
        require_json_format(format);
        if (spectrum_csv.empty() && matrix_path.empty())
            throw usage_error("scal: need --spectrum or --matrix");
        Spectrum s = load_spectrum(spectrum_csv, matrix_path, real_only);
        const double sc = scal(s);
        const double sr = scal_real(s);
        double vsum = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k)
            for (std::size_t l = 0; l < s.size(); ++l) vsum += v_fn(s[k], s[l]);
        const double residual = sr - (0.25 * sc + 0.25 * vsum);
        std::printf("Scal   = %s\n", fmt17(sc).c_str());
        std::printf("Scal_R = %s\n", fmt17(sr).c_str());
        std::printf("relation_residual = %s\n", fmt17(residual).c_str());
        if (!out_path.empty()) {
            ojson j;
            j["version"] = kmlab::version;
            j["spectrum"] = to_json(s);
            j["scal"] = sc;
            j["scal_real"] = sr;
            j["relation_residual"] = residual;
            atomic_write(out_path, j.dump(2) + "\n");
        }
        if (!(std::fabs(residual) <= 1e-10 * std::max(1.0, std::fabs(sc)))) exit_code = 1;
    });

    // ---------------- decompose ----------------
    int pos_i = 1, pos_j = 2;
    auto* cmd_dec = app.add_subcommand("decompose", "grouped breakdown of the curvature sum");
    add_common(cmd_dec, true);
    cmd_dec->add_option("--i", pos_i, "1-based position of eigenvalue a");
    cmd_dec->add_option("--j", pos_j, "1-based position of eigenvalue b");
    cmd_dec->callback([&] {
        require_json_format(format);
        if (spectrum_csv.empty() && matrix_path.empty())
            throw usage_error("decompose: need --spectrum or --matrix");
        Spectrum s = load_spectrum(spectrum_csv, matrix_path, real_only);
        CurvatureBreakdown br = decompose(s, pos_i - 1, pos_j - 1);
        const double sc = scal(s);
        ojson j = breakdown_to_json(br, sc);
        std::printf("alpha=%s total=%s scal=%s residual=%s\n", fmt17(br.alpha).c_str(),
                    fmt17(br.total).c_str(), fmt17(sc).c_str(), fmt17(br.total - sc).c_str());
        if (!out_path.empty()) atomic_write(out_path, j.dump(2) + "\n");
        if (!(std::fabs(br.total - sc) <= 1e-9 * std::fabs(sc))) exit_code = 1;
    });

    // ---------------- chain ----------------
    std::string chain_a, chain_b;
    auto* cmd_chain = app.add_subcommand("chain", "T-transform majorisation chain between spectra");
    cmd_chain->add_option("--a", chain_a, "target spectrum (more mixed)")->required();
    cmd_chain->add_option("--b", chain_b, "source spectrum (less mixed)")->required();
    add_common(cmd_chain, false);
    cmd_chain->callback([&] {
        require_json_format(format);
        Spectrum a = Spectrum::from(parse_doubles(chain_a));
        Spectrum b = Spectrum::from(parse_doubles(chain_b));
        auto transforms = t_transform_decompose(a, b);
        MajorisationChain chain = pair_chain(a, b);
        std::printf("chain length %zu (%zu transforms)\n", chain.members.size(), transforms.size());
        if (!out_path.empty()) {
            ojson j;
            j["version"] = kmlab::version;
            j["a"] = to_json(a);
            j["b"] = to_json(b);
            ojson tr = ojson::array();
            for (const auto& t : transforms) {
                ojson e;
                e["k"] = t.k + 1;
                e["l"] = t.l + 1;
                e["t"] = t.t;
                tr.push_back(std::move(e));
            }
            j["transforms"] = std::move(tr);
            ojson members = ojson::array();
            for (const auto& m : chain.members) members.push_back(to_json(m));
            j["members"] = std::move(members);
            atomic_write(out_path, j.dump(2) + "\n");
        }
    });

    // ---------------- gibbs-path ----------------
    std::string h_eigs_csv, betas_csv;
    double beta_min = 0.1, beta_max = 2.0;
    int beta_points = 20;
    auto* cmd_gibbs = app.add_subcommand("gibbs-path", "Gibbs spectra along a beta grid");
    cmd_gibbs->add_option("--h-eigs", h_eigs_csv, "Hamiltonian eigenvalues")->required();
    cmd_gibbs->add_option("--betas", betas_csv, "explicit inverse temperatures");
    cmd_gibbs->add_option("--beta-min", beta_min, "grid start (default 0.1)");
    cmd_gibbs->add_option("--beta-max", beta_max, "grid end (default 2.0)");
    cmd_gibbs->add_option("--beta-points", beta_points, "grid size (default 20)");
    add_common(cmd_gibbs, false);
    cmd_gibbs->callback([&] {
        require_json_format(format);
        GibbsPath path;
        path.hamiltonian_eigs = parse_doubles(h_eigs_csv);
        if (!betas_csv.empty()) {
            path.betas = parse_doubles(betas_csv);
        } else {
            if (beta_points < 2 || !(beta_min > 0.0) || !(beta_max > beta_min))
                throw usage_error("gibbs-path: need 0 < beta-min < beta-max and >= 2 points");
            for (int i = 0; i < beta_points; ++i)
                path.betas.push_back(beta_min
                                     + (beta_max - beta_min) * double(i) / double(beta_points - 1));
        }
        path.validate();
        const bool monotone = gibbs_path_is_monotone(path);
        std::printf("gibbs path: %zu points, majorisation-monotone: %s\n", path.betas.size(),
                    monotone ? "yes" : "NO");
        if (!out_path.empty()) {
            ojson j;
            j["version"] = kmlab::version;
            j["h_eigs"] = path.hamiltonian_eigs;
            j["betas"] = path.betas;
            ojson spectra = ojson::array();
            for (double b : path.betas) spectra.push_back(to_json(gibbs(path, b)));
            j["spectra"] = std::move(spectra);
            j["claim_class"] = "proven";
            j["monotone"] = monotone;
            atomic_write(out_path, j.dump(2) + "\n");
        }
        if (!monotone) exit_code = 1;
    });

    // ---------------- oracle ----------------
    auto* cmd_oracle = app.add_subcommand("oracle", "finite-difference oracles");
    cmd_oracle->require_subcommand(1);

    int oracle_n = 3;
    long oracle_trials = 100;
    double oracle_h = 1e-4, oracle_tol = 1e-6;
    auto* cmd_mfd = cmd_oracle->add_subcommand("metric-fd",
                                               "relative-entropy Hessian vs the metric");
    cmd_mfd->add_option("--n", oracle_n, "matrix dimension (<= 4)");
    cmd_mfd->add_option("--trials", oracle_trials, "random (D, X, Y) triples");
    cmd_mfd->add_option("--seed", seed, "RNG seed");
    cmd_mfd->add_option("--step", oracle_h, "base step (default 1e-4)");
    cmd_mfd->add_option("--tol", oracle_tol, "max |difference| allowed (default 1e-6)");
    add_common(cmd_mfd, false);
    cmd_mfd->callback([&] {
        require_json_format(format);
        if (oracle_n < 2 || oracle_n > 4) throw usage_error("oracle metric-fd: n must be 2..4");
        Rng rng(seed);
        double worst = 0.0;
        for (long t = 0; t < oracle_trials; ++t) {
            auto d = random_density_matrix(oracle_n, rng, false, 0.02);
            auto x = random_tangent(oracle_n, rng), y = random_tangent(oracle_n, rng);
            x.m *= cplx(1.0 / x.m.frobenius());
            y.m *= cplx(1.0 / y.m.frobenius());
            const double g = kubo_mori(d, x, y);
            const double rich = (4.0 * metric_fd(d, x, y, oracle_h)
                                 - metric_fd(d, x, y, 2.0 * oracle_h)) / 3.0;
            worst = std::max(worst, std::fabs(rich - g));
        }
        std::printf("metric-fd: %ld triples (n=%d), max |fd - metric| = %s (tol %s)\n",
                    oracle_trials, oracle_n, fmt17(worst).c_str(), fmt17(oracle_tol).c_str());
        if (!out_path.empty()) {
            ojson j;
            j["version"] = kmlab::version;
            j["seed"] = seed;
            j["n"] = oracle_n;
            j["trials"] = oracle_trials;
            j["h"] = oracle_h;
            j["max_abs_error"] = worst;
            j["tol"] = oracle_tol;
            j["claim_class"] = "proven";
            j["verdict"] = worst <= oracle_tol ? "pass" : "fail";
            atomic_write(out_path, j.dump(2) + "\n");
        }
        if (!(worst <= oracle_tol)) exit_code = 1;
    });

    std::string chart_kind = "cone";
    double sfd_h = 1e-3, sfd_tol = 1e-3;
    int sfd_n = 0;
    auto* cmd_sfd = cmd_oracle->add_subcommand("scal-fd",
                                               "intrinsic curvature vs the closed formula");
    add_common(cmd_sfd, true);
    cmd_sfd->add_option("--n", sfd_n, "expected matrix dimension (cross-checked)");
    cmd_sfd->add_option("--step", sfd_h, "finite-difference step (default 1e-3)");
    cmd_sfd->add_option("--tol", sfd_tol, "relative tolerance (default 1e-3)");
    cmd_sfd->add_option("--chart", chart_kind, "cone (matches the closed formula) or trace-one")
        ->check(CLI::IsMember({"cone", "trace-one"}));
    cmd_sfd->callback([&] {
        require_json_format(format);
        if (spectrum_csv.empty() && matrix_path.empty())
            throw usage_error("oracle scal-fd: need --spectrum or --matrix");
        Spectrum s = load_spectrum(spectrum_csv, matrix_path, real_only);
        if (sfd_n != 0 && sfd_n != int(s.size()))
            throw usage_error("oracle scal-fd: --n does not match the state dimension");
        Matrix m(int(s.size()));
        for (int i = 0; i < int(s.size()); ++i) m(i, i) = s[std::size_t(i)];
        DensityMatrix d = DensityMatrix::from(std::move(m), real_only);
        const bool cone = chart_kind == "cone";
        Chart chart = cone ? cone_chart(d, sfd_h) : default_chart(d, sfd_h);
        const double fd = scal_fd(chart);
        double ref = real_only ? scal_real_cone(s) : scal(s);
        if (!cone) ref += trace_one_curvature_shift(chart.tangent_dim());
        const double rel = std::fabs(fd - ref) / std::fabs(ref);
        std::printf("scal-fd (%s chart%s): fd=%s reference=%s rel_error=%s (tol %s)\n",
                    chart_kind.c_str(), real_only ? ", real" : "", fmt17(fd).c_str(),
                    fmt17(ref).c_str(), fmt17(rel).c_str(), fmt17(sfd_tol).c_str());
        if (!out_path.empty()) {
            ojson j;
            j["version"] = kmlab::version;
            j["spectrum"] = to_json(s);
            j["chart"] = chart_kind;
            j["real"] = real_only;
            j["h"] = sfd_h;
            j["scal_fd"] = fd;
            j["reference"] = ref;
            j["rel_error"] = rel;
            j["tol"] = sfd_tol;
            j["claim_class"] = "proven";
            j["verdict"] = rel <= sfd_tol ? "pass" : "fail";
            atomic_write(out_path, j.dump(2) + "\n");
        }
        if (!(rel <= sfd_tol)) exit_code = 1;
    });

    // ---------------- sweep ----------------
    auto* cmd_sweep = app.add_subcommand("sweep", "claim verification sweeps");
    cmd_sweep->require_subcommand(1);

    auto run_report = [&](SweepReport rep) {
        emit_report(rep, out_path, format);
        if (!rep.matches_claim()) exit_code = 1;
    };

    int sw_n = 4, sw_steps = 10, sw_grid = 1000;
    long sw_trials = 1000;
    auto* sw_conj = cmd_sweep->add_subcommand("conjecture", "curvature monotonicity along chains");
    sw_conj->add_option("--n", sw_n, "spectrum size");
    sw_conj->add_option("--trials", sw_trials, "number of chains");
    sw_conj->add_option("--steps", sw_steps, "T-transforms per chain");
    sw_conj->add_option("--seed", seed, "RNG seed");
    sw_conj->add_option("--tol", strictness, "strictness tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    add_common(sw_conj, false);
    sw_conj->callback([&] {
        SweepReport rep = check_conjecture(sw_n, sw_trials, seed, sw_steps, strictness);
        echo_config(rep, {{"n", std::to_string(sw_n)},
                          {"trials", std::to_string(sw_trials)},
                          {"steps", std::to_string(sw_steps)},
                          {"strictness", d2s(strictness)}});
        run_report(std::move(rep));
    });

    std::string term_name = "alpha";
    double term_a = 0.7, term_b = 0.1;
    double term_lk = 0.0, term_ll = 0.0;
    auto* sw_term = cmd_sweep->add_subcommand("term", "monotonicity of one grouped summand");
    sw_term->add_option("--term", term_name,
                        "alpha|beta1|beta2|gamma|v-pair|v-cross or a subterm name");
    sw_term->add_option("--a", term_a, "larger eigenvalue");
    sw_term->add_option("--b", term_b, "smaller eigenvalue");
    sw_term->add_option("--lam-k", term_lk, "spectator eigenvalue");
    sw_term->add_option("--lam-l", term_ll, "second spectator eigenvalue");
    sw_term->add_option("--grid", sw_grid, "points along x");
    sw_term->add_option("--tol", strictness, "strictness tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    add_common(sw_term, false);
    sw_term->callback([&] {
        std::optional<double> lk =
            term_lk > 0.0 ? std::optional<double>(term_lk) : std::nullopt;
        std::optional<double> ll =
            term_ll > 0.0 ? std::optional<double>(term_ll) : std::nullopt;
        GroupedTermTask task;
        if (term_name == "alpha")
            task = make_term_task(TermKind::alpha, term_a, term_b, {}, {}, sw_grid);
        else if (term_name == "beta1")
            task = make_term_task(TermKind::beta1, term_a, term_b, lk, {}, sw_grid);
        else if (term_name == "beta2")
            task = make_term_task(TermKind::beta2, term_a, term_b, lk, {}, sw_grid);
        else if (term_name == "gamma")
            task = make_term_task(TermKind::gamma, term_a, term_b, lk, ll, sw_grid);
        else if (term_name == "v-pair")
            task = make_term_task(TermKind::v_pair, term_a, term_b, {}, {}, sw_grid);
        else if (term_name == "v-cross")
            task = make_term_task(TermKind::v_cross, term_a, term_b, lk, {}, sw_grid);
        else
            task = make_term_task(TermKind::subterm, term_a, term_b, lk, ll, sw_grid,
                                  parse_subterm_name(term_name));
        SweepReport rep = check_term_monotonicity(task, strictness);
        echo_config(rep, {{"term", term_name},
                          {"a", d2s(term_a)},
                          {"b", d2s(term_b)},
                          {"lam_k", d2s(term_lk)},
                          {"lam_l", d2s(term_ll)},
                          {"grid", std::to_string(sw_grid)},
                          {"strictness", d2s(strictness)}});
        run_report(std::move(rep));
    });

    int cgrid = 200, xgrid = 200, b2cond = 0;
    double range_lo = 1e-2, range_hi = 1e2;
    auto* sw_b2 = cmd_sweep->add_subcommand("beta2-conditions", "beta2 derivative conditions");
    sw_b2->add_option("--c-grid", cgrid, "points along c");
    sw_b2->add_option("--x-grid", xgrid, "points along x");
    sw_b2->add_option("--c-min", range_lo, "lower end of the c range");
    sw_b2->add_option("--c-max", range_hi, "upper end of the c range");
    sw_b2->add_option("--condition", b2cond, "check a single condition 1..4 (default all)");
    sw_b2->add_option("--tol", strictness, "strictness tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    add_common(sw_b2, false);
    sw_b2->callback([&] {
        std::vector<int> conds = b2cond == 0 ? std::vector<int>{1, 2, 3, 4}
                                             : std::vector<int>{b2cond};
        SweepReport rep =
            check_beta2_conditions(cgrid, xgrid, range_lo, range_hi, conds, strictness);
        echo_config(rep, {{"c_grid", std::to_string(cgrid)},
                          {"x_grid", std::to_string(xgrid)},
                          {"c_min", d2s(range_lo)},
                          {"c_max", d2s(range_hi)},
                          {"condition", std::to_string(b2cond)},
                          {"strictness", d2s(strictness)}});
        run_report(std::move(rep));
    });

    double g_lo = 1e-3, g_hi = 1e7;
    auto* sw_g = cmd_sweep->add_subcommand("gamma-conditions", "gamma concavity conditions");
    sw_g->add_option("--c-grid", cgrid, "points along c");
    sw_g->add_option("--x-grid", xgrid, "points along x");
    sw_g->add_option("--lo", g_lo, "lower end of both ranges");
    sw_g->add_option("--hi", g_hi, "upper end of both ranges");
    sw_g->add_option("--tol", strictness, "strictness tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    add_common(sw_g, false);
    sw_g->callback([&] {
        SweepReport rep = check_gamma_conditions(cgrid, xgrid, g_lo, g_hi, strictness);
        echo_config(rep, {{"c_grid", std::to_string(cgrid)},
                          {"x_grid", std::to_string(xgrid)},
                          {"lo", d2s(g_lo)},
                          {"hi", d2s(g_hi)},
                          {"strictness", d2s(strictness)}});
        run_report(std::move(rep));
    });

    std::string ineq_name = "q-alpha";
    auto* sw_ineq = cmd_sweep->add_subcommand("inequality", "named inequality sign checks");
    sw_ineq->add_option("--name", ineq_name,
                        "tau-alpha|q-alpha|tau1-beta|tau2-beta|d-u|eta|tau-real|kappa-plus-rho");
    sw_ineq->add_option("--grid", sw_grid, "grid points");
    sw_ineq->add_option("--tol", strictness, "strictness tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    add_common(sw_ineq, false);
    sw_ineq->callback([&] {
        InequalitySpec spec = default_inequality_spec(parse_inequality_name(ineq_name), sw_grid);
        SweepReport rep = check_inequality(spec, strictness);
        echo_config(rep, {{"name", ineq_name},
                          {"grid", std::to_string(sw_grid)},
                          {"strictness", d2s(strictness)}});
        run_report(std::move(rep));
    });

    std::string cex_name = "gamma-star", ratios_csv;
    long cex_samples = 100000;
    int cex_xpoints = 64;
    auto* sw_cex = cmd_sweep->add_subcommand("counterexample", "search for decreasing steps");
    sw_cex->add_option("--name", cex_name, "subterm name");
    sw_cex->add_option("--samples", cex_samples, "seeded samples");
    sw_cex->add_option("--seed", seed, "RNG seed");
    sw_cex->add_option("--x-grid", cex_xpoints, "x points per sample");
    sw_cex->add_option("--ratios", ratios_csv, "gamma-star lam_k/lam_l sweep values");
    sw_cex->add_option("--tol", strictness, "strictness tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    add_common(sw_cex, false);
    sw_cex->callback([&] {
        CounterexampleConfig cfg;
        cfg.samples = cex_samples;
        cfg.seed = seed;
        cfg.x_points = cex_xpoints;
        if (!ratios_csv.empty()) cfg.ratios = parse_doubles(ratios_csv);
        SweepReport rep = find_counterexample(parse_subterm_name(cex_name), cfg, strictness);
        echo_config(rep, {{"name", cex_name},
                          {"samples", std::to_string(cex_samples)},
                          {"x_grid", std::to_string(cex_xpoints)},
                          {"strictness", d2s(strictness)}});
        run_report(std::move(rep));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    } catch (const kmlab::usage_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const kmlab::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const kmlab::boundary_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const kmlab::ordering_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
