#pragma once

// Scenario files drive everything: an INI-style key/value format with
// [graph], [observations], [initial], [solver], [metrics], [sweep] and
// [output] sections (schema documented in the README). A scenario expands
// into one run per method / sweep point; run_scenario executes them, writes
// the trajectory and metrics CSVs plus a human-readable summary, and reports
// the verdicts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mediansim/graph.hpp"
#include "mediansim/imex.hpp"
#include "mediansim/metrics.hpp"
#include "mediansim/spectral.hpp"

namespace mediansim {

enum class Method { Imex, Explicit, Both };

const char* method_name(Method m);

struct Scenario {
    std::string name = "scenario";

    // graph
    bool complete = false;
    int n_agents = 0;
    double complete_weight = 1.0;
    std::vector<Edge> edges; // 0-based endpoints

    // observations
    Vec observations;

    // initial state: explicit vector, or uniform-random in [init_min, init_max]
    Vec x0;
    bool random_init = false;
    std::uint64_t seed = 0;
    double init_min = -10.0;
    double init_max = 10.0;

    // solver
    Method method = Method::Imex;
    double k = 10.0;
    std::optional<double> t_s;
    std::int64_t max_iters = 10000;
    double convergence_tol = 1e-12;
    double divergence_threshold = 0.0; // <= 0: auto

    // metrics
    double tail_fraction = 0.25;
    double band = 0.0; // <= 0: auto

    // sweep (optional; cartesian product where both apply)
    std::vector<double> sweep_k;
    std::vector<double> sweep_ts;

    // output
    std::string output_dir = "out";
    std::string prefix; // defaults to name
    bool chart = false;

    Graph build_graph() const;
    Vec initial_state() const;
};

/// Parses and validates scenario text. Parse problems carry the line number;
/// validation problems name the offending field.
Scenario parse_scenario(const std::string& text, const std::string& default_name = "scenario");

/// Loads a scenario from a file; the default name is the file stem.
Scenario load_scenario_file(const std::string& path);

std::vector<std::string> bundled_scenario_names();

/// Canonical scenario texts shipped with the library (fig1, fig2,
/// fig2-unstable, fig3). Returns nullopt for unknown names.
std::optional<std::string> bundled_scenario_text(const std::string& name);

/// Resolves `ref` as a file path first, then as a bundled name.
Scenario resolve_scenario(const std::string& ref);

struct RunOutcome {
    std::string label;   // e.g. "imex_k10" or "explicit_k10_ts0.05"
    Method method = Method::Imex;
    double k = 0.0;
    std::optional<double> t_s;

    std::int64_t n_states = 0;
    std::int64_t converged_at = -1;
    bool diverged = false;

    bool metrics_ok = false; // false when the trajectory was too short to analyze
    RunMetrics metrics;

    double c_k = 0.0, q_k = 0.0, c_inf = 0.0, q_inf = 0.0;
    double error_bound = 0.0, explicit_ts_threshold = 0.0;

    bool theorem1_computed = false;
    double theorem1_allowed = 0.0;
    double theorem1_measured = 0.0;
    bool theorem1_pass = false;

    std::string trajectory_csv;
};

struct RunReport {
    std::vector<RunOutcome> outcomes;
    std::string summary;
    std::string metrics_csv;
    std::string summary_path;
    bool any_diverged = false;
    /// All imex runs passed the convergence-guarantee check (vacuously true
    /// when there are none).
    bool theorem1_all_pass = true;
};

/// Runs every (method, sweep point) combination, writing one trajectory CSV
/// per run plus a shared metrics CSV and summary file under
/// scenario.output_dir. Sweep points execute in parallel workers; outputs
/// are byte-deterministic for identical inputs. Explicit-method divergence
/// is a normal outcome, not an error.
RunReport run_scenario(const Scenario& s);

} // namespace mediansim
