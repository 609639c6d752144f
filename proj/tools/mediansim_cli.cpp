// Command-line front end. Talks to the solver library exclusively through
// its C API (mediansim.h).

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mediansim/mediansim.h"

namespace {

struct ScenarioDeleter {
    void operator()(ms_scenario* s) const { ms_scenario_destroy(s); }
};
struct ReportDeleter {
    void operator()(ms_run_report* r) const { ms_run_report_destroy(r); }
};
struct GraphDeleter {
    void operator()(ms_graph* g) const { ms_graph_destroy(g); }
};

using ScenarioPtr = std::unique_ptr<ms_scenario, ScenarioDeleter>;
using GraphPtr = std::unique_ptr<ms_graph, GraphDeleter>;

int fail_with(ms_status status) {
    std::fprintf(stderr, "error: %s (%s)\n", ms_last_error(), ms_status_name(status));
    return 1;
}

struct CommonOpts {
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::int64_t max_iters = 0;
    double tol = -1.0;
    bool strict = false;
    bool chart = false;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-o,--out", opts.out_dir, "Output directory (default from the scenario)");
    cmd->add_option("--seed", opts.seed, "Seed for uniform-random initial states")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--max-iters", opts.max_iters, "Iteration budget override");
    cmd->add_option("--tol", opts.tol, "Convergence tolerance override");
    cmd->add_flag("--strict", opts.strict,
                  "Exit nonzero when a run fails the convergence-guarantee check");
    cmd->add_flag("--chart", opts.chart, "Also render an SVG chart per run");
    cmd->add_flag("-q,--quiet", opts.quiet, "Do not print the summary");
}

int apply_common(ms_scenario* scenario, const CommonOpts& opts) {
    ms_status s;
    if (!opts.out_dir.empty() && (s = ms_scenario_set_output_dir(scenario, opts.out_dir.c_str())))
        return fail_with(s);
    if (opts.seed_set && (s = ms_scenario_set_seed(scenario, opts.seed))) return fail_with(s);
    if (opts.max_iters > 0 && (s = ms_scenario_set_max_iters(scenario, opts.max_iters)))
        return fail_with(s);
    if (opts.tol >= 0.0 && (s = ms_scenario_set_tolerance(scenario, opts.tol)))
        return fail_with(s);
    if (opts.chart && (s = ms_scenario_set_chart(scenario, 1))) return fail_with(s);
    return 0;
}

int run_and_report(ms_scenario* scenario, const CommonOpts& opts) {
    ms_run_report* raw = nullptr;
    if (ms_status s = ms_scenario_run(scenario, &raw)) return fail_with(s);
    std::unique_ptr<ms_run_report, ReportDeleter> report(raw);

    if (!opts.quiet) {
        std::fputs(ms_run_report_summary(report.get()), stdout);
        std::printf("metrics: %s\n", ms_run_report_metrics_csv_path(report.get()));
    }
    if (opts.strict && !ms_run_report_theorem1_all_pass(report.get())) {
        std::fprintf(stderr, "strict mode: convergence-guarantee check failed\n");
        return 2;
    }
    return 0;
}

ScenarioPtr resolve(const std::string& ref, int& rc) {
    ms_scenario* raw = nullptr;
    if (ms_status s = ms_scenario_resolve(ref.c_str(), &raw)) {
        rc = fail_with(s);
        return nullptr;
    }
    rc = 0;
    return ScenarioPtr(raw);
}

std::vector<ms_edge> parse_edge_tokens(const std::vector<std::string>& tokens, bool& ok) {
    std::vector<ms_edge> edges;
    ok = true;
    for (const std::string& tok : tokens) {
        ms_edge e{0, 0, 1.0};
        char trailing = 0;
        const int got =
            std::sscanf(tok.c_str(), "%d-%d:%lf%c", &e.i, &e.j, &e.weight, &trailing);
        if (got == 3) {
            edges.push_back(e);
            continue;
        }
        e.weight = 1.0;
        if (std::sscanf(tok.c_str(), "%d-%d%c", &e.i, &e.j, &trailing) == 2) {
            edges.push_back(e);
            continue;
        }
        std::fprintf(stderr, "error: bad edge token '%s' (expected i-j or i-j:w)\n", tok.c_str());
        ok = false;
        return {};
    }
    return edges;
}

int spectral_command(int complete_n, double weight, const std::vector<std::string>& edge_tokens,
                     int edges_n, double k, int n_max, const std::string& out_dir) {
    GraphPtr graph;
    {
        ms_graph* raw = nullptr;
        if (!edge_tokens.empty()) {
            bool ok = false;
            const std::vector<ms_edge> edges = parse_edge_tokens(edge_tokens, ok);
            if (!ok) return 1;
            if (ms_status s = ms_graph_create(edges_n, edges.data(),
                                              static_cast<int32_t>(edges.size()), &raw))
                return fail_with(s);
        } else {
            if (ms_status s = ms_graph_create_complete(complete_n, weight, &raw))
                return fail_with(s);
        }
        graph.reset(raw);
    }

    const int32_t n = ms_graph_n_agents(graph.get());

    ms_spectral_scalars sc{};
    if (ms_status s = ms_spectral_scalars_compute(graph.get(), k, &sc)) return fail_with(s);

    std::vector<double> w(n), eigs(n);
    if (ms_status s = ms_spectral_matrices(graph.get(), k, nullptr, w.data(), eigs.data()))
        return fail_with(s);

    double max_ratio = 0.0;
    if (ms_status s = ms_verify_decay_bound(graph.get(), k, n_max, &max_ratio))
        return fail_with(s);

    std::printf("agents: %d, k = %.17g\n", n, k);
    std::printf("C_k = %.17g\nq_k = %.17g\nC_inf = %.17g\nq_inf = %.17g\n", sc.c_k, sc.q_k,
                sc.c_inf, sc.q_inf);
    std::printf("steady-state error bound = %.17g\n", sc.error_bound);
    std::printf("explicit T_s stability threshold = %.17g\n", sc.explicit_ts_threshold);
    std::printf("scaled-Laplacian eigenvalues:");
    for (double e : eigs) std::printf(" %.17g", e);
    std::printf("\nleft eigenvector w_k:");
    for (double v : w) std::printf(" %.17g", v);
    std::printf("\ndecay check: max ||B_k^n - 1 w_k^T|| / (C_k q_k^n) over n <= %d: %.17g\n",
                n_max, max_ratio);

    if (!out_dir.empty()) {
        const std::string path = out_dir + "/spectral_report.csv";
        std::FILE* f = std::fopen(path.c_str(), "w");
        if (!f) {
            std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
            return 1;
        }
        std::fprintf(f, "n,k,c_k,q_k,c_inf,q_inf,error_bound,explicit_ts_threshold,decay_max_ratio\n");
        std::fprintf(f, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, k, sc.c_k,
                     sc.q_k, sc.c_inf, sc.q_inf, sc.error_bound, sc.explicit_ts_threshold,
                     max_ratio);
        std::fprintf(f, "\nlambda_i_k");
        for (double e : eigs) std::fprintf(f, ",%.17g", e);
        std::fprintf(f, "\nw_k");
        for (double v : w) std::fprintf(f, ",%.17g", v);
        std::fprintf(f, "\n");
        std::fclose(f);
        std::printf("report: %s\n", path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time distributed median solver"};
    app.set_version_flag("--version", std::string("mediansim ") + ms_version());
    app.require_subcommand(1);

    // run
    std::string run_ref;
    CommonOpts run_opts;
    CLI::App* run = app.add_subcommand("run", "Run a scenario (file path or bundled name)");
    run->add_option("scenario", run_ref,
                    std::string("Scenario file or one of: ") + ms_bundled_scenario_names())
        ->required();
    add_common(run, run_opts);

    // sweep
    std::string sweep_ref;
    CommonOpts sweep_opts;
    std::vector<double> sweep_k, sweep_ts;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a scenario over lists of k and/or t_s");
    sweep->add_option("scenario", sweep_ref, "Scenario file or bundled name")->required();
    sweep->add_option("--k", sweep_k, "Gains to sweep")->delimiter(',');
    sweep->add_option("--ts", sweep_ts, "Time steps to sweep (explicit method)")->delimiter(',');
    add_common(sweep, sweep_opts);

    // compare
    std::string cmp_ref;
    CommonOpts cmp_opts;
    double cmp_ts = 0.0;
    CLI::App* compare =
        app.add_subcommand("compare", "Run both solvers on identical inputs and rank them");
    compare->add_option("scenario", cmp_ref, "Scenario file or bundled name")->required();
    compare->add_option("--ts", cmp_ts, "Time step for the explicit run");
    add_common(compare, cmp_opts);

    // spectral
    int sp_complete_n = 0;
    double sp_weight = 1.0;
    std::vector<std::string> sp_edges;
    int sp_edges_n = 0;
    double sp_k = 10.0;
    int sp_nmax = 50;
    std::string sp_out;
    CLI::App* spectral = app.add_subcommand("spectral", "Print the spectral report for a graph");
    spectral->add_option("--complete", sp_complete_n, "Complete graph on N agents");
    spectral->add_option("--weight", sp_weight, "Uniform weight for --complete (default 1)");
    spectral->add_option("--edges", sp_edges, "Edge list, tokens i-j[:w] (1-based)")
        ->delimiter(',');
    spectral->add_option("--n", sp_edges_n, "Number of agents for --edges");
    spectral->add_option("--k", sp_k, "Coupling gain (default 10)");
    spectral->add_option("--nmax", sp_nmax, "Powers checked by the decay bound (default 50)");
    spectral->add_option("-o,--out", sp_out, "Directory for spectral_report.csv");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        int rc = 0;
        ScenarioPtr scenario = resolve(run_ref, rc);
        if (!scenario) return rc;
        if ((rc = apply_common(scenario.get(), run_opts))) return rc;
        return run_and_report(scenario.get(), run_opts);
    }

    if (sweep->parsed()) {
        int rc = 0;
        ScenarioPtr scenario = resolve(sweep_ref, rc);
        if (!scenario) return rc;
        if ((rc = apply_common(scenario.get(), sweep_opts))) return rc;
        if (!sweep_k.empty()) {
            if (ms_status s = ms_scenario_set_sweep_k(scenario.get(), sweep_k.data(),
                                                      static_cast<int32_t>(sweep_k.size())))
                return fail_with(s);
        }
        if (!sweep_ts.empty()) {
            if (ms_status s = ms_scenario_set_sweep_ts(scenario.get(), sweep_ts.data(),
                                                       static_cast<int32_t>(sweep_ts.size())))
                return fail_with(s);
        }
        return run_and_report(scenario.get(), sweep_opts);
    }

    if (compare->parsed()) {
        int rc = 0;
        ScenarioPtr scenario = resolve(cmp_ref, rc);
        if (!scenario) return rc;
        if ((rc = apply_common(scenario.get(), cmp_opts))) return rc;
        if (cmp_ts > 0.0) {
            if (ms_status s = ms_scenario_set_time_step(scenario.get(), cmp_ts))
                return fail_with(s);
        }
        if (ms_status s = ms_scenario_set_method(scenario.get(), "both")) return fail_with(s);
        return run_and_report(scenario.get(), cmp_opts);
    }

    if (spectral->parsed()) {
        if (sp_edges.empty() && sp_complete_n < 1) {
            std::fprintf(stderr, "error: pass --complete N or --edges ... --n N\n");
            return 1;
        }
        if (!sp_edges.empty() && sp_edges_n < 1) {
            std::fprintf(stderr, "error: --edges needs --n N\n");
            return 1;
        }
        return spectral_command(sp_complete_n, sp_weight, sp_edges, sp_edges_n, sp_k, sp_nmax,
                                sp_out);
    }
    return 0;
}
