#include "mediansim/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "mediansim/error.hpp"

namespace mediansim {

const char* method_name(Method m) {
    switch (m) {
        case Method::Imex: return "imex";
        case Method::Explicit: return "explicit";
        case Method::Both: return "both";
    }
    return "?";
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void validation_fail(const std::string& field, const std::string& msg) {
    fail(ErrorCode::ValidationError, field + ": " + msg);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct KeyValue {
    std::string value;
    int line = 0;
};

/// Sections in file order; keys unique per section.
using SectionMap = std::map<std::string, std::map<std::string, KeyValue>>;

SectionMap parse_ini(const std::string& text) {
    SectionMap sections;
    std::string current; // "" = top level
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t cut = raw.find_first_of("#;");
        std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(lineno, "unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) parse_fail(lineno, "empty section name");
            sections[current]; // section may be empty
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos) parse_fail(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) parse_fail(lineno, "empty key");
        auto [it, inserted] = sections[current].emplace(key, KeyValue{value, lineno});
        if (!inserted) parse_fail(lineno, "duplicate key '" + key + "'");
    }
    return sections;
}

double to_double(const KeyValue& kv, const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(kv.value.c_str(), &end);
    if (end == kv.value.c_str() || *end != '\0' || !std::isfinite(v))
        parse_fail(kv.line, field + ": '" + kv.value + "' is not a finite number");
    return v;
}

std::int64_t to_int(const KeyValue& kv, const std::string& field) {
    char* end = nullptr;
    const long long v = std::strtoll(kv.value.c_str(), &end, 10);
    if (end == kv.value.c_str() || *end != '\0')
        parse_fail(kv.line, field + ": '" + kv.value + "' is not an integer");
    return v;
}

bool to_bool(const KeyValue& kv, const std::string& field) {
    const std::string& v = kv.value;
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    parse_fail(kv.line, field + ": '" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Vec to_double_list(const KeyValue& kv, const std::string& field) {
    Vec out;
    for (const std::string& tok : split_list(kv.value)) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
            parse_fail(kv.line, field + ": '" + tok + "' is not a finite number");
        out.push_back(v);
    }
    if (out.empty()) parse_fail(kv.line, field + ": empty list");
    return out;
}

/// Edge token: "i-j" or "i-j:w" with 1-based endpoints.
std::vector<Edge> to_edge_list(const KeyValue& kv, const std::string& field) {
    std::vector<Edge> out;
    for (const std::string& tok : split_list(kv.value)) {
        const size_t dash = tok.find('-');
        if (dash == std::string::npos || dash == 0)
            parse_fail(kv.line, field + ": '" + tok + "' is not of the form i-j[:w]");
        const size_t colon = tok.find(':', dash);
        const std::string si = tok.substr(0, dash);
        const std::string sj = tok.substr(dash + 1, colon == std::string::npos
                                                        ? std::string::npos
                                                        : colon - dash - 1);
        char* end = nullptr;
        const long i = std::strtol(si.c_str(), &end, 10);
        if (end == si.c_str() || *end != '\0')
            parse_fail(kv.line, field + ": bad endpoint in '" + tok + "'");
        const long j = std::strtol(sj.c_str(), &end, 10);
        if (end == sj.c_str() || *end != '\0')
            parse_fail(kv.line, field + ": bad endpoint in '" + tok + "'");
        double w = 1.0;
        if (colon != std::string::npos) {
            const std::string sw = tok.substr(colon + 1);
            w = std::strtod(sw.c_str(), &end);
            if (end == sw.c_str() || *end != '\0' || !std::isfinite(w))
                parse_fail(kv.line, field + ": bad weight in '" + tok + "'");
        }
        out.push_back({static_cast<int>(i) - 1, static_cast<int>(j) - 1, w});
    }
    if (out.empty()) parse_fail(kv.line, field + ": empty edge list");
    return out;
}

class SectionReader {
public:
    SectionReader(const SectionMap& map, std::string section)
        : section_(std::move(section)) {
        auto it = map.find(section_);
        if (it != map.end()) keys_ = &it->second;
    }

    bool present() const { return keys_ != nullptr; }

    const KeyValue* find(const std::string& key) {
        if (!keys_) return nullptr;
        auto it = keys_->find(key);
        if (it == keys_->end()) return nullptr;
        seen_.push_back(key);
        return &it->second;
    }

    /// Every key must have been consumed by find().
    void check_unknown() const {
        if (!keys_) return;
        for (const auto& [key, kv] : *keys_) {
            bool known = false;
            for (const std::string& s : seen_)
                if (s == key) known = true;
            if (!known)
                parse_fail(kv.line, "unknown key '" + key + "' in section [" + section_ + "]");
        }
    }

private:
    std::string section_;
    const std::map<std::string, KeyValue>* keys_ = nullptr;
    std::vector<std::string> seen_;
};

} // namespace

Graph Scenario::build_graph() const {
    if (complete) return Graph::complete(n_agents, complete_weight);
    return Graph::from_edges(n_agents, edges);
}

Vec Scenario::initial_state() const {
    if (!random_init) return x0;
    std::mt19937_64 rng(seed);
    Vec out(n_agents);
    for (double& v : out) {
        // top 53 bits -> [0, 1)
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = init_min + u * (init_max - init_min);
    }
    return out;
}

Scenario parse_scenario(const std::string& text, const std::string& default_name) {
    const SectionMap map = parse_ini(text);

    for (const auto& [name, keys] : map) {
        (void)keys;
        if (name != "" && name != "graph" && name != "observations" && name != "initial" &&
            name != "solver" && name != "metrics" && name != "sweep" && name != "output")
            fail(ErrorCode::ParseError, "unknown section [" + name + "]");
    }

    Scenario s;
    s.name = default_name;

    SectionReader top(map, "");
    if (const KeyValue* kv = top.find("name")) s.name = kv->value;
    top.check_unknown();

    SectionReader graph(map, "graph");
    if (!graph.present()) validation_fail("graph", "section missing");
    std::string gtype = "complete";
    if (const KeyValue* kv = graph.find("type")) gtype = kv->value;
    if (const KeyValue* kv = graph.find("n")) s.n_agents = static_cast<int>(to_int(*kv, "graph.n"));
    if (gtype == "complete") {
        s.complete = true;
        if (const KeyValue* kv = graph.find("weight"))
            s.complete_weight = to_double(*kv, "graph.weight");
        graph.find("edges"); // consume so the error below is the specific one
        if (!(s.complete_weight > 0.0)) validation_fail("graph.weight", "must be > 0");
    } else if (gtype == "edges") {
        const KeyValue* kv = graph.find("edges");
        if (!kv) validation_fail("graph.edges", "required for type = edges");
        s.edges = to_edge_list(*kv, "graph.edges");
        graph.find("weight");
    } else {
        validation_fail("graph.type", "'" + gtype + "' is neither 'complete' nor 'edges'");
    }
    graph.check_unknown();
    if (s.n_agents < 1) validation_fail("graph.n", "must be a positive integer");

    SectionReader obs(map, "observations");
    if (!obs.present()) validation_fail("observations", "section missing");
    if (const KeyValue* kv = obs.find("values"))
        s.observations = to_double_list(*kv, "observations.values");
    else
        validation_fail("observations.values", "required");
    obs.check_unknown();
    if (static_cast<int>(s.observations.size()) != s.n_agents)
        validation_fail("observations.values",
                        "length " + std::to_string(s.observations.size()) +
                            " does not match graph.n = " + std::to_string(s.n_agents));

    SectionReader init(map, "initial");
    if (!init.present()) validation_fail("initial", "section missing");
    std::string itype;
    if (const KeyValue* kv = init.find("type")) itype = kv->value;
    const KeyValue* init_values = init.find("values");
    if (itype.empty()) itype = init_values ? "vector" : "uniform-random";
    if (itype == "vector") {
        if (!init_values) validation_fail("initial.values", "required for type = vector");
        s.x0 = to_double_list(*init_values, "initial.values");
        if (static_cast<int>(s.x0.size()) != s.n_agents)
            validation_fail("initial.values",
                            "length " + std::to_string(s.x0.size()) +
                                " does not match graph.n = " + std::to_string(s.n_agents));
    } else if (itype == "uniform-random") {
        if (init_values)
            validation_fail("initial.values", "not allowed with type = uniform-random");
        s.random_init = true;
        if (const KeyValue* kv = init.find("seed"))
            s.seed = static_cast<std::uint64_t>(to_int(*kv, "initial.seed"));
        if (const KeyValue* kv = init.find("min")) s.init_min = to_double(*kv, "initial.min");
        if (const KeyValue* kv = init.find("max")) s.init_max = to_double(*kv, "initial.max");
        if (!(s.init_min < s.init_max)) validation_fail("initial.min", "min must be < max");
    } else {
        validation_fail("initial.type", "'" + itype + "' is neither 'vector' nor 'uniform-random'");
    }
    init.check_unknown();

    SectionReader solver(map, "solver");
    if (const KeyValue* kv = solver.find("method")) {
        if (kv->value == "imex")
            s.method = Method::Imex;
        else if (kv->value == "explicit")
            s.method = Method::Explicit;
        else if (kv->value == "both")
            s.method = Method::Both;
        else
            validation_fail("solver.method", "'" + kv->value + "' is not imex/explicit/both");
    }
    if (const KeyValue* kv = solver.find("k")) s.k = to_double(*kv, "solver.k");
    if (const KeyValue* kv = solver.find("t_s")) s.t_s = to_double(*kv, "solver.t_s");
    if (const KeyValue* kv = solver.find("max_iters"))
        s.max_iters = to_int(*kv, "solver.max_iters");
    if (const KeyValue* kv = solver.find("convergence_tol"))
        s.convergence_tol = to_double(*kv, "solver.convergence_tol");
    if (const KeyValue* kv = solver.find("divergence_threshold"))
        s.divergence_threshold = to_double(*kv, "solver.divergence_threshold");
    solver.check_unknown();
    if (!(s.k > 0.0)) validation_fail("solver.k", "must be > 0");
    if (s.t_s && !(*s.t_s > 0.0)) validation_fail("solver.t_s", "must be > 0");
    if (s.max_iters < 1) validation_fail("solver.max_iters", "must be >= 1");
    if (!(s.convergence_tol >= 0.0)) validation_fail("solver.convergence_tol", "must be >= 0");

    SectionReader metrics(map, "metrics");
    if (const KeyValue* kv = metrics.find("tail_fraction"))
        s.tail_fraction = to_double(*kv, "metrics.tail_fraction");
    if (const KeyValue* kv = metrics.find("band")) s.band = to_double(*kv, "metrics.band");
    metrics.check_unknown();
    if (!(s.tail_fraction > 0.0) || s.tail_fraction > 0.5)
        validation_fail("metrics.tail_fraction", "must be in (0, 0.5]");

    SectionReader sweep(map, "sweep");
    if (const KeyValue* kv = sweep.find("k")) s.sweep_k = to_double_list(*kv, "sweep.k");
    if (const KeyValue* kv = sweep.find("t_s")) s.sweep_ts = to_double_list(*kv, "sweep.t_s");
    sweep.check_unknown();
    for (double v : s.sweep_k)
        if (!(v > 0.0)) validation_fail("sweep.k", "entries must be > 0");
    for (double v : s.sweep_ts)
        if (!(v > 0.0)) validation_fail("sweep.t_s", "entries must be > 0");

    SectionReader output(map, "output");
    if (const KeyValue* kv = output.find("dir")) s.output_dir = kv->value;
    if (const KeyValue* kv = output.find("prefix")) s.prefix = kv->value;
    if (const KeyValue* kv = output.find("chart")) s.chart = to_bool(*kv, "output.chart");
    output.check_unknown();
    if (s.prefix.empty()) s.prefix = s.name;

    const bool needs_ts = s.method != Method::Imex;
    if (needs_ts && !s.t_s && s.sweep_ts.empty())
        validation_fail("solver.t_s", "required for the explicit method");

    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), std::filesystem::path(path).stem().string());
}

Scenario resolve_scenario(const std::string& ref) {
    std::error_code ec;
    if (std::filesystem::exists(ref, ec)) return load_scenario_file(ref);
    if (auto text = bundled_scenario_text(ref)) return parse_scenario(*text, ref);
    fail(ErrorCode::ValidationError,
         "'" + ref + "' is neither a scenario file nor a bundled scenario name");
}

} // namespace mediansim
