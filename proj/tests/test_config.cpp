#include <doctest.h>

#include <filesystem>

#include "baga/config.hpp"
#include "baga/errors.hpp"

using namespace baga;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(BAGA_SOURCE_DIR) / "configs";

constexpr const char* kMinimal = R"(
[problem]
name = "sine_ratio"

[protocol]
variant = "SP"
p_m = 0.3

[circuit]
response = "linear"
gain = 10.0
scale = 60.0
m = 150.0
theta_gfp = 149.0
k0 = 0.03
alpha = 0.8
beta = 10.0

[sim]
seed = 3
capacity = 100
t_max = 50.0
sample_dt = 5.0

[detection]
rule = "gfp_threshold"
theta = 149.0
)";

std::string key_path_of(const std::string& text) {
  try {
    config::to_colony_config(config::parse(text));
  } catch (const ConfigError& e) {
    return e.key_path();
  }
  return "<no error>";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("bundled configs round trip and convert") {
  REQUIRE(config::bundled_config_names().size() == 5);
  for (const auto& name : config::bundled_config_names()) {
    INFO(name);
    const auto cfg = config::load(kConfigs / name);
    const auto again = config::parse(config::serialize(cfg));
    CHECK(again == cfg);
    CHECK(config::serialize(again) == config::serialize(cfg));
    CHECK_NOTHROW(config::to_colony_config(cfg));
  }
}

TEST_CASE("bundled configs carry the experiment parameters") {
  const auto sine = config::to_colony_config(config::load(kConfigs / "sine_ratio_sp.toml"));
  CHECK(sine.protocol == Protocol::SP);
  CHECK(sine.p_m == 0.3);
  CHECK(sine.problem.circuit.selection == circuit::SelectionParams{0.03, 0.8, 10.0});
  CHECK(std::get<circuit::LinearResponse>(sine.problem.circuit.response) == circuit::LinearResponse{10, 60});
  CHECK(sine.problem.circuit.reporter.m == 150.0);

  const auto booth = config::to_colony_config(config::load(kConfigs / "booth_sp.toml"));
  CHECK(booth.p_m == 0.5);
  CHECK(booth.problem.circuit.selection == circuit::SelectionParams{0.03, 0.8, 1.0});
  CHECK(booth.problem.y_ceiling == std::optional<double>(452.0));

  const auto ks = config::to_colony_config(config::load(kConfigs / "knapsack_standard.toml"));
  CHECK(std::get<circuit::HillResponse>(ks.problem.circuit.response) == circuit::HillResponse{1, 27, 6});
  CHECK(ks.problem.circuit.selection == circuit::SelectionParams{0.03, 2.0, 10.0});
  CHECK(ks.problem.circuit.reporter.theta_gfp == 145.0);

  const auto ki = config::to_colony_config(config::load(kConfigs / "knapsack_improved.toml"));
  const auto hill = std::get<circuit::HillResponse>(ki.problem.circuit.response);
  CHECK(hill.exponent == 3.0);
  CHECK(hill.half_saturation == doctest::Approx(140.0 / 3.0));
  REQUIRE(ki.problem.circuit.transport.has_value());
  CHECK(ki.problem.circuit.transport->michaelis == doctest::Approx(140.0 / 3.0));
  CHECK(ki.problem.circuit.transport->inhibitor_constant == 0.02);
  CHECK(ki.problem.circuit.normalization == Normalization::OracleMax);

  const auto ham = config::to_colony_config(config::load(kConfigs / "hamiltonian3.toml"));
  CHECK(ham.protocol == Protocol::P);
  CHECK(ham.hix.p_hix == 0.3);
  CHECK(ham.hix.p_accept == 0.5);
  CHECK(ham.hix.mode == HixMode::Segment);
  CHECK(effective_selection(ham).alpha == 0.0);
}

TEST_CASE("minimal config") {
  const auto cfg = config::parse(kMinimal);
  CHECK(cfg.sim.seed == 3);
  const auto c = config::to_colony_config(cfg);
  CHECK(c.capacity == 100);
  CHECK(c.t_max == 50.0);
  CHECK(c.seed == 3);
  CHECK(std::get<GfpThreshold>(c.problem.detection).theta == 149.0);
}

TEST_CASE("errors name the offending key") {
  const std::string base = kMinimal;
  CHECK(key_path_of(replace(base, "p_m = 0.3", "p_m = 0.3\nbogus = 1")) == "protocol.bogus");
  CHECK(key_path_of(replace(base, "k0 = 0.03\n", "")) == "circuit.k0");
  CHECK(key_path_of(replace(base, "seed = 3\n", "")) == "sim.seed");
  CHECK(key_path_of(replace(base, "name = \"sine_ratio\"", "name = \"tsp\"")) == "problem.name");
  CHECK(key_path_of(replace(base, "variant = \"SP\"", "variant = \"SPE\"")) == "protocol.theta_e");
  CHECK(key_path_of(replace(base, "variant = \"SP\"", "variant = \"XX\"")) == "protocol.variant");
  CHECK(key_path_of(replace(base, "t_max = 50.0", "t_max = \"long\"")) == "sim.t_max");
  CHECK(key_path_of(replace(base, "gain = 10.0\n", "")) == "circuit.gain");
  CHECK(key_path_of(replace(base, "[sim]", "[extra]\nx = 1\n\n[sim]")) == "extra");
  CHECK(key_path_of(replace(base, "rule = \"gfp_threshold\"", "rule = \"magic\"")) == "detection.rule");
  CHECK(key_path_of(replace(base, "[detection]\nrule = \"gfp_threshold\"\ntheta = 149.0\n", "")) == "detection");
  CHECK_THROWS_AS(config::parse("[problem\nname = 1"), ConfigError);
  CHECK_THROWS_AS(config::load("/nonexistent/config.toml"), ConfigError);
}

TEST_CASE("plasmid match genomes must fit the schema") {
  const auto text = replace(replace(kMinimal, "rule = \"gfp_threshold\"", "rule = \"plasmid_match\""),
                            "theta = 149.0", "genomes = [\"10110\"]");
  CHECK(key_path_of(text) == "detection.genomes");
}
