// twocopy: exhaustive checks that two copies of a noisy entangled state
// (Werner family or noisy PR-boxes) admit no deterministic two-copy
// purification, plus the datasets behind those checks.
//
// Every subcommand is fully determined by its flags and seed: identical
// invocations produce byte-identical artifact files. Progress and timing go
// to stderr only. Exit codes: 0 all invariants hold, 1 invariant violation
// or runtime failure (with a machine-readable record), 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "twocopy/boxworld.hpp"
#include "twocopy/linalg.hpp"
#include "twocopy/nogo.hpp"
#include "twocopy/search.hpp"
#include "twocopy/werner.hpp"
#include "twocopy/wirings.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace twocopy;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> linspace01(int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
    return g;
}

struct Common {
    int grid_points = 101;
    std::uint64_t seed = 1;
    std::string output = "-";
    double tolerance = -1.0;  // negative: use the subcommand default
    int workers = std::max(1u, std::thread::hardware_concurrency());

    double tol_or(double dflt) const { return tolerance >= 0.0 ? tolerance : dflt; }
};

void add_common(CLI::App* cmd, Common& c, bool with_grid = true) {
    if (with_grid)
        cmd->add_option("--grid-points", c.grid_points, "number of grid samples")
            ->check(CLI::Range(2, 100001));
    cmd->add_option("--seed", c.seed, "seed for all randomized checks");
    cmd->add_option("-o,--output", c.output, "artifact path ('-' for stdout)");
    cmd->add_option("--tolerance", c.tolerance, "override the subcommand's pass/fail tolerance");
}

// Artifact to file (or stdout when path is "-"); the one-line summary goes to
// the other stream so stdout stays machine-parsable either way.
int finish(const Common& c, const std::string& artifact, json summary, bool ok) {
    summary["status"] = ok ? "ok" : "fail";
    if (c.output == "-") {
        std::cout << artifact;
        std::cerr << summary.dump() << '\n';
    } else {
        std::ofstream out(c.output, std::ios::trunc);
        if (!out) {
            std::cout << json{{"status", "fail"}, {"error", "cannot open " + c.output}}.dump()
                      << '\n';
            return 1;
        }
        out << artifact;
        std::cout << summary.dump() << '\n';
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- werner --

int run_werner(const Common& c, const std::string& format) {
    const double tol = c.tol_or(1e-8);
    const double threshold = werner::werner_threshold_bisect();
    const auto grid = linspace01(c.grid_points);

    // The PT minimum eigenvalue switches branches at p = 1/4 (it increases up
    // to the crossover), so the monotonicity audit starts there; the curve
    // must also change sign exactly once.
    std::vector<double> mineig(grid.size());
    bool monotone = true;
    int sign_changes = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        mineig[i] = werner::ppt_min_eigenvalue(werner::werner_state(grid[i]));
        if (i > 0) {
            if (grid[i - 1] >= 0.25 && mineig[i] > mineig[i - 1] + 1e-12) monotone = false;
            if ((mineig[i - 1] >= 0.0) != (mineig[i] >= 0.0)) ++sign_changes;
        }
    }
    if (grid.front() == 0.0 && grid.back() == 1.0 && sign_changes != 1) monotone = false;
    const bool threshold_ok = std::abs(threshold - 0.5) <= tol;

    std::string artifact;
    if (format == "csv") {
        std::ostringstream os;
        os << "p,ppt_min_eigenvalue\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << fmt17(grid[i]) << ',' << fmt17(mineig[i]) << '\n';
        artifact = os.str();
    } else {
        json j{{"schema_version", 1},
               {"kind", "werner-report"},
               {"threshold", threshold},
               {"threshold_ok", threshold_ok},
               {"monotone", monotone},
               {"p", grid},
               {"ppt_min_eigenvalue", mineig}};
        artifact = j.dump(1) + "\n";
    }

    const bool ok = threshold_ok && monotone;
    return finish(c, artifact,
                  json{{"subcommand", "werner"},
                       {"threshold", threshold},
                       {"threshold_ok", threshold_ok},
                       {"monotone", monotone}},
                  ok);
}

// ---------------------------------------------------------------- bbpssw --

int run_bbpssw(const Common& c, const std::string& format) {
    const double tol = c.tol_or(1e-12);
    const auto grid = linspace01(c.grid_points);
    bool composition_ok = true, gain_ok = true;

    std::ostringstream os;
    os << "p,success_prob,out_purity_success,out_purity_deterministic\n";
    json rows = json::array();
    for (double p : grid) {
        const auto o = werner::bbpssw_step(p);
        const double recomposed =
            o.success_prob * o.out_purity_success + (1.0 - o.success_prob) * p;
        if (std::abs(recomposed - o.out_purity_deterministic) > tol) composition_ok = false;
        if (p > 0.5 + 1e-6 && p < 1.0 - 1e-6 && !(o.out_purity_success > p)) gain_ok = false;
        os << fmt17(p) << ',' << fmt17(o.success_prob) << ',' << fmt17(o.out_purity_success)
           << ',' << fmt17(o.out_purity_deterministic) << '\n';
        rows.push_back(json{{"p", p},
                            {"success_prob", o.success_prob},
                            {"out_purity_success", o.out_purity_success},
                            {"out_purity_deterministic", o.out_purity_deterministic}});
    }

    std::string artifact = os.str();
    if (format == "json")
        artifact = json{{"schema_version", 1},
                        {"kind", "bbpssw-report"},
                        {"composition_ok", composition_ok},
                        {"postselected_gain_ok", gain_ok},
                        {"curve", rows}}
                       .dump(1) +
                   "\n";
    return finish(c, artifact,
                  json{{"subcommand", "bbpssw"},
                       {"composition_ok", composition_ok},
                       {"postselected_gain_ok", gain_ok}},
                  composition_ok && gain_ok);
}

// ------------------------------------------------------------- three-copy --

int run_three_copy(const Common& c, const std::string& format) {
    const double tol = c.tol_or(1e-9);
    const auto grid = linspace01(c.grid_points);
    double max_residual = 0.0;
    bool improves = true;

    std::ostringstream os;
    os << "p,simulated,formula,residual\n";
    json rows = json::array();
    for (double p : grid) {
        const double sim = werner::three_copy_protocol(p);
        const double ref = werner::three_copy_formula(p);
        const double res = std::abs(sim - ref);
        max_residual = std::max(max_residual, res);
        if (p > 0.5 + 1e-6 && p < 1.0 - 1e-6 && !(sim > p)) improves = false;
        os << fmt17(p) << ',' << fmt17(sim) << ',' << fmt17(ref) << ',' << fmt17(res) << '\n';
        rows.push_back(json{{"p", p}, {"simulated", sim}, {"formula", ref}, {"residual", res}});
    }

    const bool ok = max_residual <= tol && improves;
    std::string artifact = os.str();
    if (format == "json")
        artifact = json{{"schema_version", 1},
                        {"kind", "three-copy-report"},
                        {"max_residual", max_residual},
                        {"strict_improvement", improves},
                        {"curve", rows}}
                       .dump(1) +
                   "\n";
    return finish(c, artifact,
                  json{{"subcommand", "three-copy"},
                       {"max_residual", max_residual},
                       {"strict_improvement", improves}},
                  ok);
}

// ------------------------------------------------------------------ boxes --

json analyze_box(const boxworld::BoxDistribution& d) {
    const auto lhv = boxworld::lhv_membership(d);
    return json{{"chsh", boxworld::chsh_value(d)},
                {"nonsignalling", boxworld::is_nonsignalling(d)},
                {"pr_weight", boxworld::pr_weight(d)},
                {"lhv_feasible", lhv.feasible},
                {"lhv_margin", lhv.violation_margin},
                {"twirled", json::parse(boxworld::box_to_json(boxworld::box_twirl(d)))}};
}

int run_boxes(const Common& c, const std::string& format, const std::string& input) {
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) {
            std::cout << json{{"status", "fail"}, {"error", "cannot read " + input}}.dump()
                      << '\n';
            return 1;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        const auto box = boxworld::box_from_json(buf.str());
        json j{{"schema_version", 1}, {"kind", "box-report"}, {"box", analyze_box(box)}};
        return finish(c, j.dump(1) + "\n", json{{"subcommand", "boxes"}, {"input", input}}, true);
    }

    const double tol = c.tol_or(1e-12);
    const bool pr4 = boxworld::chsh_value(boxworld::pr_box()) == 4.0;
    const bool anti4 = boxworld::chsh_value(boxworld::anti_pr_box()) == -4.0;
    const auto boundary = boxworld::lhv_membership(boxworld::noisy_pr(0.75));
    const bool boundary_feasible = boundary.feasible && boundary.violation_margin == 0.0;
    const bool above_infeasible =
        !boxworld::lhv_membership(boxworld::noisy_pr(0.75 + 1e-10)).feasible;

    const auto grid = linspace01(c.grid_points);
    bool chsh_linear = true, fine_agreement = true;
    std::ostringstream os;
    os << "p,chsh,lhv_feasible,lhv_margin\n";
    for (double p : grid) {
        const auto box = boxworld::noisy_pr(p);
        const double chsh = boxworld::chsh_value(box);
        if (std::abs(chsh - (8.0 * p - 4.0)) > tol) chsh_linear = false;
        const auto lhv = boxworld::lhv_membership(box);
        if (lhv.feasible != (std::abs(chsh) <= 2.0 + 1e-9)) fine_agreement = false;
        os << fmt17(p) << ',' << fmt17(chsh) << ',' << (lhv.feasible ? 1 : 0) << ','
           << fmt17(lhv.violation_margin) << '\n';
    }

    const bool ok = pr4 && anti4 && boundary_feasible && above_infeasible && chsh_linear &&
                    fine_agreement;
    json summary{{"subcommand", "boxes"},
                 {"chsh_pr_is_4", pr4},
                 {"chsh_anti_is_minus_4", anti4},
                 {"boundary_feasible", boundary_feasible},
                 {"above_boundary_infeasible", above_infeasible},
                 {"chsh_linear", chsh_linear},
                 {"lhv_chsh_agreement", fine_agreement}};
    std::string artifact = os.str();
    if (format == "json") {
        json j = summary;
        j.erase("subcommand");
        j["schema_version"] = 1;
        j["kind"] = "boxes-report";
        artifact = j.dump(1) + "\n";
    }
    return finish(c, artifact, summary, ok);
}

// ------------------------------------------------------------ twirl-check --

int run_twirl_check(const Common& c) {
    const double tol_design = c.tol_or(1e-10);

    std::mt19937_64 rng(c.seed);
    double agree = 0, family = 0, idem = 0, fidelity = 0, linearity = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto rho = linalg::random_density_matrix(4, rng);
        const auto closed = werner::twirl_quantum(rho);
        const auto design = werner::twirl_quantum(rho, werner::TwirlMethod::two_design);
        agree = std::max(agree, linalg::max_abs_diff(closed, design));
        family = std::max(
            family, linalg::max_abs_diff(closed, werner::werner_state(werner::singlet_fidelity(rho))));
        idem = std::max(idem, linalg::max_abs_diff(werner::twirl_quantum(closed), closed));
        fidelity = std::max(fidelity, std::abs(werner::singlet_fidelity(closed) -
                                               werner::singlet_fidelity(rho)));
    }
    for (int rep = 0; rep < 50; ++rep) {
        const auto rho = linalg::random_density_matrix(4, rng);
        const auto sigma = linalg::random_density_matrix(4, rng);
        const double lam = linalg::uniform01(rng);
        linalg::ComplexMatrix mix = rho;
        mix *= linalg::cplx(lam, 0.0);
        linalg::ComplexMatrix rest = sigma;
        rest *= linalg::cplx(1.0 - lam, 0.0);
        mix += rest;
        linalg::ComplexMatrix split = werner::twirl_quantum(rho);
        split *= linalg::cplx(lam, 0.0);
        linalg::ComplexMatrix split2 = werner::twirl_quantum(sigma);
        split2 *= linalg::cplx(1.0 - lam, 0.0);
        split += split2;
        linearity = std::max(linearity, linalg::max_abs_diff(werner::twirl_quantum(mix), split));
    }

    double box_family = 0, box_idem = 0, box_linear = 0, box_invariance = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto d = boxworld::random_box(rng);
        const auto t = boxworld::box_twirl(d);
        box_family = std::max(
            box_family, boxworld::max_abs_diff(t, boxworld::noisy_pr(boxworld::pr_weight(d))));
        box_idem = std::max(box_idem, boxworld::max_abs_diff(boxworld::box_twirl(t), t));
    }
    for (int rep = 0; rep < 200; ++rep) {
        const auto d1 = boxworld::random_box(rng), d2 = boxworld::random_box(rng);
        const double lam = linalg::uniform01(rng);
        boxworld::BoxDistribution mix, split;
        const auto t1 = boxworld::box_twirl(d1), t2 = boxworld::box_twirl(d2);
        for (int i = 0; i < 16; ++i) {
            mix.table[i] = lam * d1.table[i] + (1.0 - lam) * d2.table[i];
            split.table[i] = lam * t1.table[i] + (1.0 - lam) * t2.table[i];
        }
        box_linear = std::max(box_linear, boxworld::max_abs_diff(boxworld::box_twirl(mix), split));
    }
    for (int k = 0; k <= 20; ++k) {
        const auto w = boxworld::noisy_pr(k / 20.0);
        box_invariance = std::max(box_invariance, boxworld::max_abs_diff(boxworld::box_twirl(w), w));
    }

    const bool ok = agree <= tol_design && family <= 1e-10 && idem <= 1e-10 &&
                    fidelity <= 1e-12 && linearity <= 1e-12 && box_family <= 1e-12 &&
                    box_idem <= 1e-12 && box_linear <= 1e-12 && box_invariance <= 1e-12;

    json j{{"schema_version", 1},
           {"kind", "twirl-check-report"},
           {"seed", c.seed},
           {"quantum",
            {{"design_vs_closed_form", agree},
             {"projects_into_family", family},
             {"idempotence", idem},
             {"fidelity_preservation", fidelity},
             {"linearity", linearity}}},
           {"boxworld",
            {{"maps_into_family", box_family},
             {"idempotence", box_idem},
             {"linearity", box_linear},
             {"family_invariance", box_invariance}}},
           {"all_within_tolerance", ok}};
    return finish(c, j.dump(1) + "\n", json{{"subcommand", "twirl-check"}, {"pass", ok}}, ok);
}

// ---------------------------------------------------------- wiring-search --

int run_wiring_search(const Common& c, const std::string& checkpoint, std::uint32_t class_limit,
                      std::uint32_t max_blocks) {
    const double tol = c.tol_or(1e-12);
    wirings::SearchOptions opts;
    opts.grid = wirings::default_search_grid(c.grid_points);
    opts.workers = c.workers;
    opts.checkpoint_path = checkpoint;
    opts.class_limit = class_limit;
    opts.max_blocks = max_blocks;

    const auto rep = wirings::search_all_wirings(opts);
    std::fprintf(stderr, "wiring-search: %llu pairs in %.2fs (%.1fM pairs/s), %u/%u blocks\n",
                 static_cast<unsigned long long>(rep.pairs_scanned), rep.elapsed_seconds,
                 rep.pairs_scanned / std::max(rep.elapsed_seconds, 1e-9) / 1e6, rep.blocks_done,
                 rep.blocks_total);

    const bool no_purification = rep.max_gap.value() <= tol;
    const bool ok = no_purification;  // partial runs still must show no violation so far
    json summary{{"subcommand", "wiring-search"},
                 {"complete", rep.complete},
                 {"deduped_party_count", rep.deduped_party_count},
                 {"pairs_scanned", rep.pairs_scanned},
                 {"max_gap", rep.max_gap.value()},
                 {"no_purification", no_purification}};
    return finish(c, wirings::report_to_json(rep), summary, ok);
}

// ------------------------------------------------------------------- nogo --

int run_nogo(const Common& c, std::uint64_t samples, double ps,
             const std::vector<double>& coeffs) {
    if (!coeffs.empty()) {
        // analyze one quadratic instead of scanning
        const nogo::QFunction f(
            wirings::QuadCoeffs{coeffs[0], coeffs[1], coeffs[2], coeffs[3]}, ps);
        const auto rep = nogo::check_conditions(f);
        return finish(c, nogo::report_to_json(rep),
                      json{{"subcommand", "nogo"}, {"useful", rep.useful}}, true);
    }
    const auto violations = nogo::theorem_scan(ps, samples, c.seed);
    const auto corners = nogo::corner_sweep(ps);
    const bool ok = violations == 0 && corners == 0;
    json j{{"schema_version", 1},
           {"kind", "nogo-report"},
           {"p_s", ps},
           {"samples", samples},
           {"seed", c.seed},
           {"counterexamples", violations},
           {"corner_violations", corners}};
    return finish(c, j.dump(1) + "\n",
                  json{{"subcommand", "nogo"},
                       {"counterexamples", violations},
                       {"corner_violations", corners}},
                  ok);
}

// ------------------------------------------------------------------- fig1 --

int run_fig1(const Common& c, double ps, double pe) {
    const auto data = nogo::figure1_regions(ps, pe, c.grid_points);
    const std::string base = c.output == "-" ? "fig1" : c.output;
    const std::string regions_path = base + "_regions.csv";
    const std::string curves_path = base + "_curves.csv";
    {
        std::ofstream r(regions_path, std::ios::trunc), k(curves_path, std::ios::trunc);
        if (!r || !k) {
            std::cout << json{{"status", "fail"}, {"error", "cannot write " + base + "_*.csv"}}
                             .dump()
                      << '\n';
            return 1;
        }
        r << nogo::regions_to_csv(data);
        k << nogo::curves_to_csv(data);
    }
    std::cout << json{{"status", "ok"},
                      {"subcommand", "fig1"},
                      {"regions", regions_path},
                      {"curves", curves_path}}
                     .dump()
              << '\n';
    return 0;
}

// ------------------------------------------------------------------- fig2 --

int run_fig2(const Common& c, const std::string& format) {
    const double tol = c.tol_or(1e-10);
    const auto [wa, wb] = wirings::figure2_wiring();
    const auto ba = wirings::behavior_of(wa), bb = wirings::behavior_of(wb);
    const auto coeffs = wirings::extract_quad_coeffs(ba, bb);

    const auto grid = linspace01(c.grid_points);
    const double residual = wirings::q_curve_check(ba, bb, grid);
    bool never_purifies = true;
    std::ostringstream os;
    os << "p,q,gap\n";
    for (double p : grid) {
        const double q = wirings::quad_value(coeffs, p);
        if (p > 0.75 && q - p > 0.0) never_purifies = false;
        os << fmt17(p) << ',' << fmt17(q) << ',' << fmt17(q - p) << '\n';
    }
    const bool coeffs_ok = coeffs.q00 >= 0 && coeffs.q00 <= 1 && coeffs.q01 >= 0 &&
                           coeffs.q01 <= 1 && coeffs.q10 >= 0 && coeffs.q10 <= 1 &&
                           coeffs.q11 >= 0 && coeffs.q11 <= 1;
    const bool ok = never_purifies && coeffs_ok && residual <= tol;

    char ea[16], eb[16];
    std::snprintf(ea, sizeof ea, "0x%08x", wirings::encode(wa));
    std::snprintf(eb, sizeof eb, "0x%08x", wirings::encode(wb));
    std::string artifact = os.str();
    if (format == "json") {
        const auto sample = wirings::effective_box(ba, bb, boxworld::noisy_pr(0.9),
                                                   boxworld::noisy_pr(0.9));
        json j{{"schema_version", 1},
               {"kind", "fig2-report"},
               {"wiring", {ea, eb}},
               {"coeffs", {coeffs.q00, coeffs.q01, coeffs.q10, coeffs.q11}},
               {"quadratic_residual", residual},
               {"never_purifies", never_purifies},
               {"effective_box_at_0.9", json::parse(boxworld::box_to_json(sample))}};
        artifact = j.dump(1) + "\n";
    }
    return finish(c, artifact,
                  json{{"subcommand", "fig2"},
                       {"wiring_a", ea},
                       {"wiring_b", eb},
                       {"never_purifies", never_purifies},
                       {"quadratic_residual", residual}},
                  ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-copy purification no-go: Werner states and noisy PR-boxes"};
    app.require_subcommand(1);

    Common c_werner, c_bbpssw, c_three, c_boxes, c_twirl, c_search, c_nogo, c_fig1, c_fig2;
    std::string fmt_werner = "csv", fmt_bbpssw = "csv", fmt_three = "csv", fmt_boxes = "csv",
                fmt_fig2 = "csv";
    std::string boxes_input, search_checkpoint;
    std::uint32_t search_class_limit = 0, search_max_blocks = 0;
    std::uint64_t nogo_samples = 1000000;
    double nogo_ps = 0.75, fig1_ps = 0.75, fig1_pe = 0.875;
    std::vector<double> nogo_coeffs;

    auto* werner_cmd = app.add_subcommand("werner", "separability threshold and PPT curve");
    add_common(werner_cmd, c_werner);
    werner_cmd->add_option("--format", fmt_werner)->check(CLI::IsMember({"csv", "json"}));

    auto* bbpssw_cmd = app.add_subcommand("bbpssw", "post-selected recurrence step curve");
    add_common(bbpssw_cmd, c_bbpssw);
    bbpssw_cmd->add_option("--format", fmt_bbpssw)->check(CLI::IsMember({"csv", "json"}));

    auto* three_cmd =
        app.add_subcommand("three-copy", "deterministic three-copy curve vs the cubic");
    add_common(three_cmd, c_three);
    three_cmd->add_option("--format", fmt_three)->check(CLI::IsMember({"csv", "json"}));

    auto* boxes_cmd = app.add_subcommand("boxes", "CHSH values and LHV membership");
    add_common(boxes_cmd, c_boxes);
    boxes_cmd->add_option("--format", fmt_boxes)->check(CLI::IsMember({"csv", "json"}));
    boxes_cmd->add_option("--input", boxes_input, "analyze a box from a JSON table instead");

    auto* twirl_cmd = app.add_subcommand("twirl-check", "quantum and box twirl property suite");
    add_common(twirl_cmd, c_twirl, false);

    auto* search_cmd =
        app.add_subcommand("wiring-search", "exhaustive no-purification scan of wiring pairs");
    add_common(search_cmd, c_search);
    search_cmd->add_option("--workers", c_search.workers, "worker threads")
        ->check(CLI::Range(1, 1024));
    search_cmd->add_option("--checkpoint", search_checkpoint, "JSON checkpoint path (resumable)");
    search_cmd->add_option("--class-limit", search_class_limit,
                           "restrict both parties to the first N behavior classes");
    search_cmd->add_option("--max-blocks", search_max_blocks,
                           "stop after N new blocks (for incremental runs)");

    auto* nogo_cmd = app.add_subcommand("nogo", "randomized + corner scan of the quadratic no-go");
    add_common(nogo_cmd, c_nogo, false);
    nogo_cmd->add_option("--samples", nogo_samples, "random coefficient quadruples");
    nogo_cmd->add_option("--ps", nogo_ps, "separability threshold")->check(CLI::Range(1e-9, 1.0));
    nogo_cmd
        ->add_option("--coeffs", nogo_coeffs,
                     "analyze one quadratic (q00 q01 q10 q11) instead of scanning")
        ->expected(4);

    auto* fig1_cmd = app.add_subcommand("fig1", "constraint-region dataset for the no-go figure");
    add_common(fig1_cmd, c_fig1);
    fig1_cmd->add_option("--ps", fig1_ps, "separability threshold");
    fig1_cmd->add_option("--pe", fig1_pe, "purification witness point");

    auto* fig2_cmd = app.add_subcommand("fig2", "example wiring strategy dataset");
    add_common(fig2_cmd, c_fig2);
    fig2_cmd->add_option("--format", fmt_fig2)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (werner_cmd->parsed()) return run_werner(c_werner, fmt_werner);
        if (bbpssw_cmd->parsed()) return run_bbpssw(c_bbpssw, fmt_bbpssw);
        if (three_cmd->parsed()) return run_three_copy(c_three, fmt_three);
        if (boxes_cmd->parsed()) return run_boxes(c_boxes, fmt_boxes, boxes_input);
        if (twirl_cmd->parsed()) return run_twirl_check(c_twirl);
        if (search_cmd->parsed())
            return run_wiring_search(c_search, search_checkpoint, search_class_limit,
                                     search_max_blocks);
        if (nogo_cmd->parsed()) return run_nogo(c_nogo, nogo_samples, nogo_ps, nogo_coeffs);
        if (fig1_cmd->parsed()) return run_fig1(c_fig1, fig1_ps, fig1_pe);
        if (fig2_cmd->parsed()) return run_fig2(c_fig2, fmt_fig2);
    } catch (const std::exception& e) {
        std::cout << nlohmann::ordered_json{{"status", "fail"}, {"error", e.what()}}.dump()
                  << '\n';
        return 1;
    }
    return 2;
}
