#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mediansim/scenario.hpp"

namespace mediansim {

namespace {

struct Bundled {
    const char* name;
    const char* text;
};

// Canonical three-agent experiment: complete unitary graph, one far outlier
// observation. The four variants contrast the IMEX solver with the explicit
// baseline at a stable, an unstable and a conservative time step.
constexpr const char* fig1_text = R"(name = fig1

[graph]
type = complete
n = 3
weight = 1

[observations]
values = 0, 1, 100

[initial]
values = 0, 1, 1.5

[solver]
method = imex
k = 10

[output]
prefix = fig1
)";

constexpr const char* fig2_text = R"(name = fig2

[graph]
type = complete
n = 3
weight = 1

[observations]
values = 0, 1, 100

[initial]
values = 0, 1, 1.5

[solver]
method = explicit
k = 10
t_s = 0.05

[output]
prefix = fig2
)";

constexpr const char* fig2_unstable_text = R"(name = fig2-unstable

[graph]
type = complete
n = 3
weight = 1

[observations]
values = 0, 1, 100

[initial]
values = 0, 1, 1.5

[solver]
method = explicit
k = 10
t_s = 0.07

[output]
prefix = fig2-unstable
)";

constexpr const char* fig3_text = R"(name = fig3

[graph]
type = complete
n = 3
weight = 1

[observations]
values = 0, 1, 100

[initial]
values = 0, 1, 1.5

[solver]
method = explicit
k = 10
t_s = 0.005
max_iters = 20000

[output]
prefix = fig3
)";

constexpr std::array<Bundled, 4> bundled = {{
    {"fig1", fig1_text},
    {"fig2", fig2_text},
    {"fig2-unstable", fig2_unstable_text},
    {"fig3", fig3_text},
}};

} // namespace

std::vector<std::string> bundled_scenario_names() {
    std::vector<std::string> names;
    for (const Bundled& b : bundled) names.emplace_back(b.name);
    return names;
}

std::optional<std::string> bundled_scenario_text(const std::string& name) {
    for (const Bundled& b : bundled)
        if (name == b.name) return std::string(b.text);
    return std::nullopt;
}

} // namespace mediansim
