#include "baga/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <toml.hpp>

#include "baga/errors.hpp"

namespace baga::config {

namespace {

std::string join(const std::string& prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
}

// Typed access to one TOML table; remembers consumed keys so leftovers can
// be reported as unknown.
class TableReader {
 public:
  TableReader(const toml::table& table, std::string path) : table_(table), path_(std::move(path)) {}

  const toml::node* node(std::string_view key) {
    seen_.insert(std::string(key));
    return table_.get(key);
  }

  std::optional<double> number(std::string_view key) {
    const auto* n = node(key);
    if (n == nullptr) return std::nullopt;
    if (auto v = n->value_exact<double>()) return *v;
    if (auto v = n->value_exact<std::int64_t>()) return static_cast<double>(*v);
    throw ConfigError(join(path_, key), "expected a number");
  }

  std::optional<std::int64_t> integer(std::string_view key) {
    const auto* n = node(key);
    if (n == nullptr) return std::nullopt;
    if (auto v = n->value_exact<std::int64_t>()) return *v;
    throw ConfigError(join(path_, key), "expected an integer");
  }

  std::optional<std::string> string(std::string_view key) {
    const auto* n = node(key);
    if (n == nullptr) return std::nullopt;
    if (auto v = n->value_exact<std::string>()) return *v;
    throw ConfigError(join(path_, key), "expected a string");
  }

  std::optional<bool> boolean(std::string_view key) {
    const auto* n = node(key);
    if (n == nullptr) return std::nullopt;
    if (auto v = n->value_exact<bool>()) return *v;
    throw ConfigError(join(path_, key), "expected a boolean");
  }

  std::optional<std::vector<double>> numbers(std::string_view key) {
    const auto* n = node(key);
    if (n == nullptr) return std::nullopt;
    const auto* arr = n->as_array();
    if (arr == nullptr) throw ConfigError(join(path_, key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& el : *arr) {
      if (auto v = el.value_exact<double>()) out.push_back(*v);
      else if (auto i = el.value_exact<std::int64_t>()) out.push_back(static_cast<double>(*i));
      else throw ConfigError(join(path_, key), "expected an array of numbers");
    }
    return out;
  }

  std::optional<std::vector<std::string>> strings(std::string_view key) {
    const auto* n = node(key);
    if (n == nullptr) return std::nullopt;
    const auto* arr = n->as_array();
    if (arr == nullptr) throw ConfigError(join(path_, key), "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& el : *arr) {
      auto v = el.value_exact<std::string>();
      if (!v) throw ConfigError(join(path_, key), "expected an array of strings");
      out.push_back(*v);
    }
    return out;
  }

  const toml::table* subtable(std::string_view key) {
    const auto* n = node(key);
    if (n == nullptr) return nullptr;
    if (const auto* t = n->as_table()) return t;
    throw ConfigError(join(path_, key), "expected a table");
  }

  template <typename T>
  T required(std::optional<T> v, std::string_view key) {
    if (!v) throw ConfigError(join(path_, key), "missing required key");
    return std::move(*v);
  }

  void reject_unknown() const {
    for (const auto& [k, v] : table_) {
      if (!seen_.contains(std::string(k.str())))
        throw ConfigError(join(path_, k.str()), "unknown key");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const toml::table& table_;
  std::string path_;
  std::set<std::string> seen_;
};

const toml::table& section(TableReader& root, std::string_view name) {
  const auto* t = root.subtable(name);
  if (t == nullptr) throw ConfigError(std::string(name), "missing required section");
  return *t;
}

RunConfig read(const toml::table& doc) {
  TableReader root(doc, "");
  RunConfig cfg;

  {
    TableReader r(section(root, "problem"), "problem");
    cfg.problem.name = r.required(r.string("name"), "name");
    cfg.problem.values = r.numbers("values");
    cfg.problem.weights = r.numbers("weights");
    cfg.problem.capacity = r.number("capacity");
    cfg.problem.y_ceiling = r.number("y_ceiling");
    r.reject_unknown();
  }
  {
    TableReader r(section(root, "protocol"), "protocol");
    cfg.protocol.variant = r.required(r.string("variant"), "variant");
    cfg.protocol.p_m = r.number("p_m");
    cfg.protocol.p_hix = r.number("p_hix");
    cfg.protocol.p_accept = r.number("p_accept");
    cfg.protocol.hix_mode = r.string("hix_mode");
    cfg.protocol.segment_inversion = r.boolean("segment_inversion");
    if (auto v = r.string("mutation_target")) cfg.protocol.mutation_target = *v;
    if (auto v = r.string("initial_plasmid")) cfg.protocol.initial_plasmid = *v;
    cfg.protocol.initial_order = r.string("initial_order");
    cfg.protocol.theta_e = r.number("theta_e");
    r.reject_unknown();
  }
  {
    TableReader r(section(root, "circuit"), "circuit");
    auto& c = cfg.circuit;
    c.response = r.required(r.string("response"), "response");
    c.gain = r.number("gain");
    c.scale = r.number("scale");
    c.vmax = r.number("vmax");
    c.half_saturation = r.number("half_saturation");
    c.hill_n = r.number("hill_n");
    c.m = r.required(r.number("m"), "m");
    c.theta_gfp = r.required(r.number("theta_gfp"), "theta_gfp");
    c.k0 = r.required(r.number("k0"), "k0");
    c.alpha = r.required(r.number("alpha"), "alpha");
    c.beta = r.required(r.number("beta"), "beta");
    if (auto v = r.string("normalize")) c.normalize = *v;
    if (const auto* t = r.subtable("transport")) {
      TableReader tr(*t, "circuit.transport");
      TransportSection ts;
      ts.vmax = tr.required(tr.number("vmax"), "vmax");
      ts.michaelis = tr.number("michaelis");
      ts.k2 = tr.required(tr.number("k2"), "k2");
      tr.reject_unknown();
      c.transport = ts;
    }
    r.reject_unknown();
  }
  {
    TableReader r(section(root, "sim"), "sim");
    const auto seed = r.required(r.integer("seed"), "seed");
    const auto capacity = r.required(r.integer("capacity"), "capacity");
    if (seed < 0) throw ConfigError("sim.seed", "must be >= 0");
    if (capacity < 0) throw ConfigError("sim.capacity", "must be >= 0");
    cfg.sim.seed = static_cast<std::uint64_t>(seed);
    cfg.sim.capacity = static_cast<std::uint64_t>(capacity);
    cfg.sim.t_max = r.required(r.number("t_max"), "t_max");
    cfg.sim.sample_dt = r.required(r.number("sample_dt"), "sample_dt");
    r.reject_unknown();
  }
  {
    TableReader r(section(root, "detection"), "detection");
    cfg.detection.rule = r.required(r.string("rule"), "rule");
    cfg.detection.theta = r.number("theta");
    cfg.detection.genomes = r.strings("genomes");
    cfg.detection.color = r.string("color");
    r.reject_unknown();
  }
  root.reject_unknown();
  return cfg;
}

template <typename T>
void put(toml::table& t, std::string_view key, const std::optional<T>& v) {
  if (v) t.insert(key, *v);
}

toml::array to_array(const std::vector<double>& v) {
  toml::array a;
  for (double x : v) a.push_back(x);
  return a;
}

toml::array to_array(const std::vector<std::string>& v) {
  toml::array a;
  for (const auto& x : v) a.push_back(x);
  return a;
}

std::optional<SegmentOrder> parse_order(const std::string& text) {
  SegmentOrder order{};
  std::size_t n = 0;
  std::set<char> used;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (ch < 'A' || ch > 'C' || n >= 3 || used.contains(ch)) return std::nullopt;
    used.insert(ch);
    order[n++] = static_cast<Edge>(ch - 'A');
  }
  if (n != 3) return std::nullopt;
  return order;
}

}  // namespace

RunConfig parse(std::string_view toml_text) {
  toml::table doc;
  try {
    doc = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    const auto& src = e.source();
    throw ConfigError("", fmt::format("TOML syntax error at line {}: {}", src.begin.line,
                                      std::string(e.description())));
  }
  return read(doc);
}

RunConfig load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string serialize(const RunConfig& cfg) {
  toml::table problem;
  problem.insert("name", cfg.problem.name);
  if (cfg.problem.values) problem.insert("values", to_array(*cfg.problem.values));
  if (cfg.problem.weights) problem.insert("weights", to_array(*cfg.problem.weights));
  put(problem, "capacity", cfg.problem.capacity);
  put(problem, "y_ceiling", cfg.problem.y_ceiling);

  toml::table protocol;
  protocol.insert("variant", cfg.protocol.variant);
  put(protocol, "p_m", cfg.protocol.p_m);
  put(protocol, "p_hix", cfg.protocol.p_hix);
  put(protocol, "p_accept", cfg.protocol.p_accept);
  put(protocol, "hix_mode", cfg.protocol.hix_mode);
  put(protocol, "segment_inversion", cfg.protocol.segment_inversion);
  protocol.insert("mutation_target", cfg.protocol.mutation_target);
  protocol.insert("initial_plasmid", cfg.protocol.initial_plasmid);
  put(protocol, "initial_order", cfg.protocol.initial_order);
  put(protocol, "theta_e", cfg.protocol.theta_e);

  toml::table circuit;
  const auto& c = cfg.circuit;
  circuit.insert("response", c.response);
  put(circuit, "gain", c.gain);
  put(circuit, "scale", c.scale);
  put(circuit, "vmax", c.vmax);
  put(circuit, "half_saturation", c.half_saturation);
  put(circuit, "hill_n", c.hill_n);
  circuit.insert("m", c.m);
  circuit.insert("theta_gfp", c.theta_gfp);
  circuit.insert("k0", c.k0);
  circuit.insert("alpha", c.alpha);
  circuit.insert("beta", c.beta);
  circuit.insert("normalize", c.normalize);
  if (c.transport) {
    toml::table t;
    t.insert("vmax", c.transport->vmax);
    put(t, "michaelis", c.transport->michaelis);
    t.insert("k2", c.transport->k2);
    circuit.insert("transport", std::move(t));
  }

  toml::table sim;
  sim.insert("seed", static_cast<std::int64_t>(cfg.sim.seed));
  sim.insert("capacity", static_cast<std::int64_t>(cfg.sim.capacity));
  sim.insert("t_max", cfg.sim.t_max);
  sim.insert("sample_dt", cfg.sim.sample_dt);

  toml::table detection;
  detection.insert("rule", cfg.detection.rule);
  put(detection, "theta", cfg.detection.theta);
  if (cfg.detection.genomes) detection.insert("genomes", to_array(*cfg.detection.genomes));
  put(detection, "color", cfg.detection.color);

  toml::table doc;
  doc.insert("problem", std::move(problem));
  doc.insert("protocol", std::move(protocol));
  doc.insert("circuit", std::move(circuit));
  doc.insert("sim", std::move(sim));
  doc.insert("detection", std::move(detection));
  std::ostringstream out;
  out << doc << '\n';
  return out.str();
}

ColonyConfig to_colony_config(const RunConfig& cfg) {
  const auto kind = parse_problem_name(cfg.problem.name);
  if (!kind) throw ConfigError("problem.name", "unknown problem '" + cfg.problem.name + "'");

  ColonyConfig out;
  ProblemSpec spec = make_problem(*kind);

  // Instance overrides.
  if (cfg.problem.values || cfg.problem.weights || cfg.problem.capacity) {
    if (!spec.knapsack) throw ConfigError("problem.values", "instance overrides apply to knapsack problems only");
    if (cfg.problem.values) spec.knapsack->values = *cfg.problem.values;
    if (cfg.problem.weights) spec.knapsack->weights = *cfg.problem.weights;
    if (cfg.problem.capacity) spec.knapsack->capacity = *cfg.problem.capacity;
    try {
      validate(*spec.knapsack);
    } catch (const ParameterError& e) {
      throw ConfigError("problem.values", e.what());
    }
    spec.schema = BinarySchema{spec.knapsack->values.size()};
  }
  spec.y_ceiling = cfg.problem.y_ceiling;
  if (cfg.problem.y_ceiling && spec.direction != Direction::Minimize)
    throw ConfigError("problem.y_ceiling", "only minimization problems take a y ceiling");

  const auto& c = cfg.circuit;
  auto need = [&](const std::optional<double>& v, std::string_view key) {
    if (!v) throw ConfigError(join("circuit", key), "missing required key for " + c.response + " response");
    return *v;
  };
  auto michaelis_default = [&](std::string_view key) {
    if (!spec.knapsack) throw ConfigError(join("circuit", key), "missing required key");
    return circuit::michaelis_from_values(spec.knapsack->values, spec.knapsack->values.size());
  };
  if (c.response == "linear") {
    spec.circuit.response = circuit::LinearResponse{need(c.gain, "gain"), need(c.scale, "scale")};
  } else if (c.response == "hill") {
    const double half = c.half_saturation ? *c.half_saturation : michaelis_default("half_saturation");
    spec.circuit.response = circuit::HillResponse{need(c.vmax, "vmax"), half, need(c.hill_n, "hill_n")};
  } else {
    throw ConfigError("circuit.response", "expected 'linear' or 'hill', got '" + c.response + "'");
  }
  if (c.transport) {
    const double km = c.transport->michaelis ? *c.transport->michaelis : michaelis_default("transport.michaelis");
    spec.circuit.transport = circuit::TransportParams{c.transport->vmax, km, c.transport->k2};
  } else {
    spec.circuit.transport.reset();
  }
  spec.circuit.selection = {c.k0, c.alpha, c.beta};
  spec.circuit.reporter = {c.m, c.theta_gfp};
  if (c.normalize == "none") spec.circuit.normalization = Normalization::None;
  else if (c.normalize == "oracle_max") spec.circuit.normalization = Normalization::OracleMax;
  else throw ConfigError("circuit.normalize", "expected 'none' or 'oracle_max'");

  const auto& d = cfg.detection;
  if (d.rule == "gfp_threshold") {
    spec.detection = GfpThreshold{d.theta ? *d.theta : c.theta_gfp};
  } else if (d.rule == "plasmid_match") {
    PlasmidMatch match;
    if (d.genomes) match.genomes.insert(d.genomes->begin(), d.genomes->end());
    spec.detection = std::move(match);
  } else if (d.rule == "fluorescence") {
    const std::string color = d.color.value_or("Yellow");
    FluorescenceMatch fm;
    if (color == "Yellow") fm.color = Fluorescence::Yellow;
    else if (color == "Red") fm.color = Fluorescence::Red;
    else if (color == "Green") fm.color = Fluorescence::Green;
    else throw ConfigError("detection.color", "expected Yellow, Red or Green");
    spec.detection = fm;
  } else {
    throw ConfigError("detection.rule", "expected gfp_threshold, plasmid_match or fluorescence");
  }

  try {
    finalize(spec);
  } catch (const ParameterError& e) {
    throw ConfigError("circuit", e.what());
  } catch (const SchemaError& e) {
    throw ConfigError("problem", e.what());
  }
  if (const auto* match = std::get_if<PlasmidMatch>(&spec.detection)) {
    for (const auto& g : match->genomes) {
      const bool ok = g.size() == std::visit([](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, BinarySchema>) return s.length;
        else return s.total_length();
      }, spec.schema);
      if (!ok) throw ConfigError("detection.genomes", "genome '" + g + "' has the wrong length");
    }
  }
  out.problem = std::move(spec);

  const auto& p = cfg.protocol;
  const auto protocol = parse_protocol(p.variant);
  if (!protocol) throw ConfigError("protocol.variant", "expected SP, SPE, P or PE");
  out.protocol = *protocol;
  if (p.p_m) out.p_m = *p.p_m;
  if (p.p_hix) out.hix.p_hix = *p.p_hix;
  if (p.p_accept) out.hix.p_accept = *p.p_accept;
  if (p.hix_mode) {
    if (*p.hix_mode == "segment") out.hix.mode = HixMode::Segment;
    else if (*p.hix_mode == "element") out.hix.mode = HixMode::Element;
    else throw ConfigError("protocol.hix_mode", "expected 'segment' or 'element'");
  }
  if (p.segment_inversion) out.hix.invert_segments = *p.segment_inversion;
  if (p.mutation_target == "daughter") out.mutation_target = MutationTarget::DaughterOnly;
  else if (p.mutation_target == "both") out.mutation_target = MutationTarget::Both;
  else throw ConfigError("protocol.mutation_target", "expected 'daughter' or 'both'");
  if (p.initial_plasmid == "random") out.initial.policy = InitPolicy::RandomUniform;
  else if (p.initial_plasmid == "zeros") out.initial.policy = InitPolicy::Zeros;
  else throw ConfigError("protocol.initial_plasmid", "expected 'random' or 'zeros'");
  if (p.initial_order) {
    out.initial.order = parse_order(*p.initial_order);
    if (!out.initial.order) throw ConfigError("protocol.initial_order", "expected a permutation such as \"A,B,C\"");
  }
  out.theta_e = p.theta_e;

  out.seed = cfg.sim.seed;
  out.capacity = cfg.sim.capacity;
  out.t_max = cfg.sim.t_max;
  out.sample_dt = cfg.sim.sample_dt;

  validate(out);
  return out;
}

const std::vector<std::string>& bundled_config_names() {
  static const std::vector<std::string> names = {
      "sine_ratio_sp.toml", "booth_sp.toml", "knapsack_standard.toml", "knapsack_improved.toml",
      "hamiltonian3.toml"};
  return names;
}

}  // namespace baga::config
