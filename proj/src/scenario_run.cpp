#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mediansim/error.hpp"
#include "mediansim/explicit_method.hpp"
#include "mediansim/imex.hpp"
#include "mediansim/metrics.hpp"
#include "mediansim/scenario.hpp"
#include "mediansim/spectral.hpp"

namespace mediansim {

namespace {

/// 17 significant digits: enough to round-trip a double exactly.
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string vec_to_string(const Vec& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt_short(v[i]);
    }
    return out + "]";
}

struct RunSpec {
    Method method = Method::Imex;
    double k = 0.0;
    std::optional<double> t_s;
    std::string label;
};

struct RunResult {
    RunOutcome outcome;
    Trajectory traj; // kept only until files are written
};

std::string run_label(const RunSpec& spec) {
    std::string label = std::string(method_name(spec.method)) + "_k" + fmt_short(spec.k);
    if (spec.t_s) label += "_ts" + fmt_short(*spec.t_s);
    return label;
}

RunResult execute_run(const Scenario& s, const Graph& g, const ObservationSet& obs, const Vec& x0,
                      const RunSpec& spec) {
    RunResult result;
    RunOutcome& out = result.outcome;
    out.label = spec.label;
    out.method = spec.method;
    out.k = spec.k;
    out.t_s = spec.t_s;

    if (spec.method == Method::Imex) {
        ImexConfig cfg;
        cfg.k = spec.k;
        cfg.max_iters = s.max_iters;
        cfg.convergence_tol = s.convergence_tol;
        result.traj = run_imex(g, obs, cfg, x0);
    } else {
        ExplicitConfig cfg;
        cfg.k = spec.k;
        cfg.t_s = *spec.t_s;
        cfg.max_iters = s.max_iters;
        cfg.convergence_tol = s.convergence_tol;
        cfg.divergence_threshold = s.divergence_threshold;
        result.traj = run_explicit(g, obs, cfg, x0);
    }

    const Trajectory& traj = result.traj;
    out.n_states = traj.n_states();
    out.converged_at = traj.converged_at.value_or(-1);
    out.diverged = traj.diverged;

    const SpectralReport spectral = contraction_constants(g, spec.k);
    out.c_k = spectral.c_k;
    out.q_k = spectral.q_k;
    out.c_inf = spectral.c_inf;
    out.q_inf = spectral.q_inf;
    out.error_bound = spectral.error_bound;
    out.explicit_ts_threshold = spectral.explicit_ts_threshold;

    try {
        out.metrics = compute_metrics(traj, g, obs, spec.k, s.tail_fraction, s.band);
        out.metrics_ok = true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TrajectoryTooShort) throw;
        out.metrics_ok = false;
    }

    if (out.metrics_ok && !out.diverged) {
        out.theorem1_computed = true;
        out.theorem1_allowed = 3.0 * spectral.error_bound;
        out.theorem1_measured = out.metrics.max_sup_tail_dist();
        out.theorem1_pass = out.theorem1_measured <= out.theorem1_allowed;
    }
    return result;
}

void write_trajectory_csv(const std::string& path, const Graph& g, const ObservationSet& obs,
                          const RunSpec& spec, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");

    const int n = g.n_agents();
    const bool with_drives = spec.method == Method::Imex;

    out << "step";
    for (int i = 1; i <= n; ++i) out << ",x_" << i;
    out << ",avg";
    if (with_drives)
        for (int i = 1; i <= n; ++i) out << ",shat_" << i;
    out << "\n";

    // The final row's drive column shows the drive the next transition
    // would apply; it keeps the table rectangular.
    std::vector<std::int8_t> last_drives;
    if (with_drives) last_drives = imex_step(g, obs, spec.k, traj.states.back()).second;

    for (std::int64_t t = 0; t < traj.n_states(); ++t) {
        out << t;
        for (int i = 0; i < n; ++i) out << ',' << fmt17(traj.states[t][i]);
        out << ',' << fmt17(traj.averaged[t]);
        if (with_drives) {
            const auto& drives = t < static_cast<std::int64_t>(traj.drives.size())
                                     ? traj.drives[t]
                                     : last_drives;
            for (int i = 0; i < n; ++i) out << ',' << static_cast<int>(drives[i]);
        }
        out << "\n";
    }
    if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

void write_chart_svg(const std::string& path, const Trajectory& traj) {
    const int width = 800, height = 480, margin = 45;
    const std::int64_t len = traj.n_states();
    const int n = traj.n_agents();

    double lo = traj.states[0][0], hi = lo;
    for (const Vec& x : traj.states)
        for (double v : x) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi - lo < 1e-12) {
        hi += 0.5;
        lo -= 0.5;
    }

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

    const auto px = [&](std::int64_t t) {
        return margin + (width - 2.0 * margin) * (len > 1 ? static_cast<double>(t) / (len - 1) : 0.5);
    };
    const auto py = [&](double v) {
        return height - margin - (height - 2.0 * margin) * (v - lo) / (hi - lo);
    };

    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"" << height - margin + 16
        << "\" font-size=\"11\">0</text>\n";
    out << "<text x=\"" << width - margin - 20 << "\" y=\"" << height - margin + 16
        << "\" font-size=\"11\">" << len - 1 << "</text>\n";
    out << "<text x=\"4\" y=\"" << height - margin << "\" font-size=\"11\">" << fmt_short(lo)
        << "</text>\n";
    out << "<text x=\"4\" y=\"" << margin + 4 << "\" font-size=\"11\">" << fmt_short(hi)
        << "</text>\n";

    // Cap the number of plotted points; long tails render identically.
    const std::int64_t stride = std::max<std::int64_t>(1, len / 4000);
    for (int i = 0; i < n; ++i) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[i % 8]
            << "\" stroke-width=\"1\" points=\"";
        for (std::int64_t t = 0; t < len; t += stride) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(t), py(traj.states[t][i]));
            out << buf;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", px(len - 1), py(traj.states[len - 1][i]));
        out << buf << "\"/>\n";
    }
    out << "</svg>\n";
    if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

const char* metrics_csv_header =
    "scenario,label,method,k,t_s,n_states,converged_at,diverged,"
    "final_dist_max,sup_tail_dist_max,sup_tail_avg_dist,disagreement_norm,"
    "chattering_index_max,steady_state_amplitude_max,iters_to_band,band,"
    "c_k,q_k,c_inf,q_inf,error_bound,explicit_ts_threshold,"
    "theorem1_allowed,theorem1_measured,theorem1_pass";

void append_metrics_row(std::ostream& out, const std::string& scenario, const RunOutcome& o) {
    out << scenario << ',' << o.label << ',' << method_name(o.method) << ',' << fmt17(o.k) << ',';
    if (o.t_s) out << fmt17(*o.t_s);
    out << ',' << o.n_states << ',' << o.converged_at << ',' << (o.diverged ? 1 : 0) << ',';
    if (o.metrics_ok) {
        const RunMetrics& m = o.metrics;
        out << fmt17(m.max_final_dist()) << ',' << fmt17(m.max_sup_tail_dist()) << ','
            << fmt17(m.sup_tail_avg_dist) << ',' << fmt17(m.disagreement_norm) << ','
            << fmt17(m.max_chattering_index()) << ',' << fmt17(m.max_amplitude()) << ','
            << m.iters_to_band << ',' << fmt17(m.band);
    } else {
        out << ",,,,,,,";
    }
    out << ',' << fmt17(o.c_k) << ',' << fmt17(o.q_k) << ',' << fmt17(o.c_inf) << ','
        << fmt17(o.q_inf) << ',' << fmt17(o.error_bound) << ',' << fmt17(o.explicit_ts_threshold)
        << ',';
    if (o.theorem1_computed)
        out << fmt17(o.theorem1_allowed) << ',' << fmt17(o.theorem1_measured) << ','
            << (o.theorem1_pass ? 1 : 0);
    else
        out << ",,";
    out << "\n";
}

std::string build_summary(const Scenario& s, const Graph& g, const ObservationSet& obs,
                          const Vec& x0, const std::vector<RunOutcome>& outcomes) {
    std::ostringstream out;
    const MedianSet med = median_set(obs);

    out << "scenario: " << s.name << "\n";
    out << "graph: " << (s.complete ? "complete" : "edge list") << ", n = " << g.n_agents()
        << ", degrees " << vec_to_string(g.degrees()) << "\n";
    out << "observations: " << vec_to_string(obs.values()) << "\n";
    out << "median set: [" << fmt_short(med.lo) << ", " << fmt_short(med.hi) << "]\n";
    out << "initial state: " << vec_to_string(x0) << "\n\n";

    for (const RunOutcome& o : outcomes) {
        out << "run " << o.label << ": ";
        if (o.diverged)
            out << "DIVERGED after " << o.n_states - 1 << " steps";
        else if (o.converged_at >= 0)
            out << "converged at n = " << o.converged_at;
        else
            out << "stopped at the iteration budget (" << o.n_states - 1 << " steps)";
        out << "\n";
        out << "  spectral: C_k = " << fmt_short(o.c_k) << ", q_k = " << fmt_short(o.q_k)
            << ", C_inf = " << fmt_short(o.c_inf) << ", q_inf = " << fmt_short(o.q_inf) << "\n"
            << "            error bound = " << fmt_short(o.error_bound)
            << ", explicit T_s threshold = " << fmt_short(o.explicit_ts_threshold) << "\n";
        if (o.metrics_ok) {
            const RunMetrics& m = o.metrics;
            out << "  metrics: sup tail dist = " << fmt_short(m.max_sup_tail_dist())
                << " (averaged value: " << fmt_short(m.sup_tail_avg_dist) << ")"
                << ", chattering index = " << fmt_short(m.max_chattering_index()) << "\n"
                << "           amplitude = " << fmt_short(m.max_amplitude())
                << ", disagreement = " << fmt_short(m.disagreement_norm)
                << ", iters to band(" << fmt_short(m.band) << ") = " << m.iters_to_band << "\n";
        } else {
            out << "  metrics: skipped (trajectory shorter than 10 states)\n";
        }
        if (o.theorem1_computed) {
            out << "  theorem check: measured " << fmt_short(o.theorem1_measured)
                << (o.theorem1_pass ? " <= " : " > ") << "allowed "
                << fmt_short(o.theorem1_allowed) << " -> " << (o.theorem1_pass ? "PASS" : "FAIL")
                << "\n";
        }
        out << "\n";
    }

    if (outcomes.size() > 1) {
        std::vector<const RunOutcome*> order;
        for (const RunOutcome& o : outcomes) order.push_back(&o);
        std::stable_sort(order.begin(), order.end(), [](const RunOutcome* a, const RunOutcome* b) {
            const double ca = a->metrics_ok ? a->metrics.max_chattering_index() : 2.0;
            const double cb = b->metrics_ok ? b->metrics.max_chattering_index() : 2.0;
            if (ca != cb) return ca < cb;
            const auto ia = a->metrics_ok && a->metrics.iters_to_band >= 0
                                ? a->metrics.iters_to_band
                                : std::numeric_limits<std::int64_t>::max();
            const auto ib = b->metrics_ok && b->metrics.iters_to_band >= 0
                                ? b->metrics.iters_to_band
                                : std::numeric_limits<std::int64_t>::max();
            return ia < ib;
        });
        out << "ranking (chattering index, then iterations to band):\n";
        int rank = 1;
        for (const RunOutcome* o : order) {
            out << "  " << rank++ << ". " << o->label;
            if (o->diverged) {
                out << "  diverged\n";
                continue;
            }
            if (o->metrics_ok)
                out << "  chattering = " << fmt_short(o->metrics.max_chattering_index())
                    << ", iters to band = " << o->metrics.iters_to_band;
            out << "\n";
        }
    }
    return out.str();
}

} // namespace

RunReport run_scenario(const Scenario& s) {
    const Graph g = s.build_graph();
    const ObservationSet obs(s.observations);
    const Vec x0 = s.initial_state();
    if (static_cast<int>(x0.size()) != g.n_agents())
        fail(ErrorCode::ValidationError, "initial state length does not match the graph");

    std::vector<RunSpec> specs;
    const std::vector<double> ks = s.sweep_k.empty() ? std::vector<double>{s.k} : s.sweep_k;
    std::vector<double> tss;
    if (s.method != Method::Imex)
        tss = s.sweep_ts.empty() ? std::vector<double>{*s.t_s} : s.sweep_ts;
    for (double k : ks) {
        if (s.method != Method::Explicit) {
            RunSpec spec{Method::Imex, k, std::nullopt, ""};
            spec.label = run_label(spec);
            specs.push_back(spec);
        }
        if (s.method != Method::Imex) {
            for (double ts : tss) {
                RunSpec spec{Method::Explicit, k, ts, ""};
                spec.label = run_label(spec);
                specs.push_back(spec);
            }
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(s.output_dir, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create output directory '" + s.output_dir + "'");

    const auto csv_path = [&](const RunSpec& spec) {
        return (std::filesystem::path(s.output_dir) / (s.prefix + "_" + spec.label + "_traj.csv"))
            .string();
    };

    // Each worker owns its trajectory and writes only its own files; the
    // aggregation below runs single-threaded in spec order.
    const auto work = [&](const RunSpec& spec) {
        RunResult r = execute_run(s, g, obs, x0, spec);
        r.outcome.trajectory_csv = csv_path(spec);
        write_trajectory_csv(r.outcome.trajectory_csv, g, obs, spec, r.traj);
        if (s.chart) {
            const std::string svg =
                (std::filesystem::path(s.output_dir) / (s.prefix + "_" + spec.label + "_traj.svg"))
                    .string();
            write_chart_svg(svg, r.traj);
        }
        r.traj = Trajectory{};
        return r.outcome;
    };

    RunReport report;
    if (specs.size() == 1) {
        report.outcomes.push_back(work(specs[0]));
    } else {
        std::vector<std::future<RunOutcome>> futures;
        futures.reserve(specs.size());
        for (const RunSpec& spec : specs)
            futures.push_back(std::async(std::launch::async, work, spec));
        for (auto& f : futures) report.outcomes.push_back(f.get());
    }

    for (const RunOutcome& o : report.outcomes) {
        report.any_diverged = report.any_diverged || o.diverged;
        if (o.method == Method::Imex && o.theorem1_computed && !o.theorem1_pass)
            report.theorem1_all_pass = false;
    }

    report.metrics_csv =
        (std::filesystem::path(s.output_dir) / (s.prefix + "_metrics.csv")).string();
    {
        std::ofstream out(report.metrics_csv);
        if (!out) fail(ErrorCode::IoError, "cannot write '" + report.metrics_csv + "'");
        out << metrics_csv_header << "\n";
        for (const RunOutcome& o : report.outcomes) append_metrics_row(out, s.name, o);
        if (!out) fail(ErrorCode::IoError, "write failed for '" + report.metrics_csv + "'");
    }

    report.summary = build_summary(s, g, obs, x0, report.outcomes);
    report.summary_path =
        (std::filesystem::path(s.output_dir) / (s.prefix + "_summary.txt")).string();
    {
        std::ofstream out(report.summary_path);
        if (!out) fail(ErrorCode::IoError, "cannot write '" + report.summary_path + "'");
        out << report.summary;
        if (!out) fail(ErrorCode::IoError, "write failed for '" + report.summary_path + "'");
    }
    return report;
}

} // namespace mediansim
