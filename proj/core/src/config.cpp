#include "fracdyn/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fracdyn/error.hpp"
#include "fracdyn/integrate.hpp"
#include "fracdyn/mechanics.hpp"
#include "fracdyn/processes.hpp"
#include "json.hpp"

namespace fracdyn {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::HybridSde, "hybrid_sde"},   {ExperimentKind::StockStochastic, "stock_stochastic"},
    {ExperimentKind::StockFuzzy, "stock_fuzzy"}, {ExperimentKind::Hp, "hp"},
    {ExperimentKind::Hamiltonian, "hamiltonian"}, {ExperimentKind::Metric, "metric"},
    {ExperimentKind::Pendulum, "pendulum"},
};

bool is_stock(ExperimentKind k) {
  return k == ExperimentKind::StockStochastic || k == ExperimentKind::StockFuzzy;
}

// Typed access to one JSON object that remembers which keys were read so
// leftovers can be reported as unknown fields.
class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    if (!node_.contains(key)) throw ConfigError(field(key), "missing required field");
    return node_.at(key);
  }

  Reader object(const std::string& key) { return Reader(raw(key), field(key)); }

  double number(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key), "must be finite");
    return d;
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::uint64_t unsigned_integer(const std::string& key) {
    const Json& v = raw(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw ConfigError(field(key), "expected a non-negative integer");
  }
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    return has(key) ? unsigned_integer(key) : fallback;
  }

  std::string string(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    return has(key) ? numbers(key) : fallback;
  }

  std::vector<std::uint64_t> unsigned_integers(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array of integers");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool ok = v[i].is_number_unsigned() ||
                      (v[i].is_number_integer() && v[i].get<std::int64_t>() >= 0);
      if (!ok) throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a non-negative integer");
      out.push_back(v[i].get<std::uint64_t>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown field");
    }
  }

 private:
  const Json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

AlphaFunction parse_alpha(Reader r) {
  const std::string family = r.string("family");
  AlphaFunction alpha;
  try {
    if (family == "constant") {
      alpha = AlphaFunction::constant(r.number("a"));
    } else if (family == "affine") {
      alpha = AlphaFunction::affine(r.number("a0"), r.number("a1"));
    } else if (family == "logistic") {
      alpha = AlphaFunction::logistic(r.number("lo"), r.number("hi"), r.number("center"),
                                      r.number("width"));
    } else {
      throw ConfigError(r.field("family"), "unknown alpha family '" + family +
                                               "' (expected constant, affine or logistic)");
    }
  } catch (const DomainError& e) {
    throw ConfigError(r.field("family"), e.what());
  }
  r.finish();
  return alpha;
}

OrderedJson alpha_json(const AlphaFunction& alpha) {
  OrderedJson j;
  std::visit(
      [&](const auto& form) {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, AlphaFunction::Constant>) {
          j["family"] = "constant";
          j["a"] = form.a;
        } else if constexpr (std::is_same_v<T, AlphaFunction::Affine>) {
          j["family"] = "affine";
          j["a0"] = form.a0;
          j["a1"] = form.a1;
        } else {
          j["family"] = "logistic";
          j["lo"] = form.lo;
          j["hi"] = form.hi;
          j["center"] = form.center;
          j["width"] = form.width;
        }
      },
      alpha.form());
  return j;
}

SingularityPolicy parse_policy(Reader r) {
  SingularityPolicy p;
  const std::string mode = r.string("mode", "error");
  if (mode == "error") {
    p.mode = SingularityPolicy::Mode::Error;
  } else if (mode == "clamp") {
    p.mode = SingularityPolicy::Mode::ClampToEpsilon;
  } else {
    throw ConfigError(r.field("mode"), "expected 'error' or 'clamp'");
  }
  p.epsilon = r.number("epsilon", p.epsilon);
  r.finish();
  return p;
}

// Stock presets fix the orders, so their kernel block carries only the
// observation time and the singularity policy.
KernelConfig parse_kernel(Reader r, bool orders_fixed) {
  KernelConfig k;
  if (!orders_fixed) {
    k.spec.alpha = parse_alpha(r.object("alpha"));
    k.spec.rho = r.number("rho", 0.0);
    const std::string conv = r.string("h_convention", "plus_rho");
    if (conv == "plus_rho") {
      k.convention = HConvention::PlusRho;
    } else if (conv == "log_derivative") {
      k.convention = HConvention::LogDerivative;
    } else {
      throw ConfigError(r.field("h_convention"), "expected 'plus_rho' or 'log_derivative'");
    }
  }
  k.spec.observed_time = r.number("observed_time");
  if (r.has("singularity")) k.policy = parse_policy(r.object("singularity"));
  r.finish();
  return k;
}

OrderedJson kernel_json(const KernelConfig& k, bool orders_fixed) {
  OrderedJson j;
  if (!orders_fixed) {
    j["alpha"] = alpha_json(k.spec.alpha);
    j["rho"] = k.spec.rho;
    j["h_convention"] = k.convention == HConvention::PlusRho ? "plus_rho" : "log_derivative";
  }
  j["observed_time"] = k.spec.observed_time;
  j["singularity"] = {
      {"mode", k.policy.mode == SingularityPolicy::Mode::Error ? "error" : "clamp"},
      {"epsilon", k.policy.epsilon}};
  return j;
}

AffineFieldConfig parse_field(Reader r, std::size_t dim) {
  AffineFieldConfig f;
  f.offset = r.numbers("offset", std::vector<double>(dim, 0.0));
  f.slope = r.numbers("slope", std::vector<double>(dim, 0.0));
  r.finish();
  return f;
}

SystemConfig parse_system(Reader r, ExperimentKind kind) {
  SystemConfig s;
  switch (kind) {
    case ExperimentKind::Pendulum:
    case ExperimentKind::Hp:
    case ExperimentKind::Hamiltonian:
    case ExperimentKind::Metric: {
      const std::string fallback = kind == ExperimentKind::Metric ? "euclidean" : "pendulum";
      s.preset = r.string("preset", fallback);
      s.dimension = r.unsigned_integer("dimension", s.preset == "polar" ? 2 : 1);
      s.alpha1 = r.number("alpha1", 0.0);
      s.alpha2 = r.number("alpha2", 0.0);
      std::vector<double> q0_default(s.dimension, 0.0);
      if (!q0_default.empty()) q0_default[0] = 1.0;
      s.q0 = r.numbers("q0", q0_default);
      s.p0 = r.numbers("p0", std::vector<double>(s.dimension, 0.0));
      if (kind != ExperimentKind::Metric) s.scheme = r.string("scheme", "equation");
      break;
    }
    case ExperimentKind::HybridSde: {
      s.x0 = r.numbers("x0");
      const std::size_t dim = s.x0.size();
      auto field = [&](const std::string& key) {
        if (r.has(key)) return parse_field(r.object(key), dim);
        return AffineFieldConfig{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
      };
      s.drift = field("drift");
      s.diffusion = field("diffusion");
      s.fuzzy = field("fuzzy");
      s.volterra = r.boolean("volterra", false);
      break;
    }
    case ExperimentKind::StockStochastic:
    case ExperimentKind::StockFuzzy:
      s.mu = r.number("mu");
      s.sigma = r.number("sigma");
      if (kind == ExperimentKind::StockStochastic) {
        s.alpha1 = r.number("alpha1");
      } else {
        s.beta1 = r.number("beta1");
      }
      s.x0 = {r.number("x0")};
      break;
  }
  r.finish();
  return s;
}

OrderedJson system_json(const SystemConfig& s, ExperimentKind kind) {
  OrderedJson j;
  auto field_json = [](const AffineFieldConfig& f) {
    return OrderedJson{{"offset", f.offset}, {"slope", f.slope}};
  };
  switch (kind) {
    case ExperimentKind::Pendulum:
    case ExperimentKind::Hp:
    case ExperimentKind::Hamiltonian:
    case ExperimentKind::Metric:
      j["preset"] = s.preset;
      j["dimension"] = s.dimension;
      j["alpha1"] = s.alpha1;
      j["alpha2"] = s.alpha2;
      j["q0"] = s.q0;
      j["p0"] = s.p0;
      if (kind != ExperimentKind::Metric) j["scheme"] = s.scheme;
      break;
    case ExperimentKind::HybridSde:
      j["x0"] = s.x0;
      j["drift"] = field_json(s.drift);
      j["diffusion"] = field_json(s.diffusion);
      j["fuzzy"] = field_json(s.fuzzy);
      j["volterra"] = s.volterra;
      break;
    case ExperimentKind::StockStochastic:
    case ExperimentKind::StockFuzzy:
      j["mu"] = s.mu;
      j["sigma"] = s.sigma;
      if (kind == ExperimentKind::StockStochastic) {
        j["alpha1"] = s.alpha1;
      } else {
        j["beta1"] = s.beta1;
      }
      j["x0"] = s.x0.empty() ? 0.0 : s.x0.front();
      break;
  }
  return j;
}

[[noreturn]] void rethrow_as_config(const std::string& field, const std::exception& e) {
  throw ConfigError(field, e.what());
}

void validate_kernel_on_grid(const KernelConfig& k, const GridSpec& grid, const std::string& field,
                             bool volterra) {
  try {
    k.spec.validate();
  } catch (const DomainError& e) {
    rethrow_as_config(field + (k.spec.rho < 0.0 || !std::isfinite(k.spec.rho) ? ".rho" : ".observed_time"), e);
  }
  try {
    k.policy.validate();
  } catch (const DomainError& e) {
    rethrow_as_config(field + ".singularity.epsilon", e);
  }

  if (volterra) {
    // Observation moves to each node; offsets s_k - s_n cover -jK, j = 1..N.
    const double step = grid.step();
    for (std::size_t j = 1; j <= grid.N; ++j) {
      const double a = k.spec.alpha.value(-static_cast<double>(j) * step);
      if (!(a > 0.0 && a <= 1.0)) {
        throw ConfigError(field + ".alpha", "order leaves (0, 1] at lag " + std::to_string(j));
      }
    }
    return;
  }

  const std::vector<double> nodes = grid.evaluation_nodes();
  try {
    check_order_range(k.spec, nodes);
  } catch (const DomainError& e) {
    rethrow_as_config(field + ".alpha", e);
  }
  if (k.policy.mode == SingularityPolicy::Mode::Error) {
    const auto hits = validate_grid(k.spec, nodes, k.policy);
    if (!hits.empty()) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "grid node " << hits.front() << " (s=" << grid.node(hits.front())
          << ") lies within epsilon of the observed time";
      throw ConfigError(field + ".observed_time", msg.str());
    }
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentConfig parse_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  Reader r(root, "");
  ExperimentConfig c;
  c.name = r.string("name", "run");

  const std::string kind = r.string("experiment");
  bool found = false;
  for (const auto& [k, name] : kKindNames) {
    if (name == kind) {
      c.kind = k;
      found = true;
    }
  }
  if (!found) throw ConfigError("experiment", "unknown experiment kind '" + kind + "'");

  {
    Reader g = r.object("grid");
    c.grid.t0 = g.number("t0", 0.0);
    c.grid.T = g.number("T");
    c.grid.N = static_cast<std::size_t>(g.unsigned_integer("N"));
    g.finish();
  }

  const bool orders_fixed = is_stock(c.kind);
  if (orders_fixed && !r.has("kernel")) {
    c.kernel.spec.observed_time = c.grid.T;
  } else {
    c.kernel = parse_kernel(r.object("kernel"), orders_fixed);
  }
  if (c.kind == ExperimentKind::HybridSde) {
    if (r.has("kernel_beta")) c.kernel_beta = parse_kernel(r.object("kernel_beta"), false);
    if (r.has("kernel_gamma")) c.kernel_gamma = parse_kernel(r.object("kernel_gamma"), false);
  }

  if (r.has("noise")) {
    Reader n = r.object("noise");
    c.noise.seed = n.unsigned_integer("seed", c.noise.seed);
    c.noise.z = n.number("z", c.noise.z);
    c.noise.e = n.number("e", c.noise.e);
    c.noise.sigma_liu = n.number("sigma_liu", c.noise.sigma_liu);
    n.finish();
  }

  c.system = parse_system(r.object("system"), c.kind);

  if (r.has("output")) {
    Reader o = r.object("output");
    c.output.directory = o.string("directory", c.output.directory);
    c.output.prefix = o.string("prefix", "");
    c.output.plot = o.boolean("plot", false);
    c.output.per_run = o.boolean("per_run", false);
    o.finish();
  }
  if (c.output.prefix.empty()) c.output.prefix = c.name;

  if (r.has("ensemble")) {
    Reader e = r.object("ensemble");
    if (e.has("seeds")) c.ensemble.seeds = e.unsigned_integers("seeds");
    if (e.has("z")) c.ensemble.z = e.numbers("z");
    if (e.has("credibility")) c.ensemble.credibility = e.numbers("credibility");
    c.ensemble.workers = static_cast<std::size_t>(e.unsigned_integer("workers", 1));
    e.finish();
  }
  r.finish();
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  OrderedJson j;
  j["name"] = c.name;
  j["experiment"] = std::string(to_string(c.kind));
  j["grid"] = {{"t0", c.grid.t0}, {"T", c.grid.T}, {"N", c.grid.N}};
  j["kernel"] = kernel_json(c.kernel, is_stock(c.kind));
  if (c.kernel_beta) j["kernel_beta"] = kernel_json(*c.kernel_beta, false);
  if (c.kernel_gamma) j["kernel_gamma"] = kernel_json(*c.kernel_gamma, false);
  j["noise"] = {{"seed", c.noise.seed}, {"z", c.noise.z}, {"e", c.noise.e}, {"sigma_liu", c.noise.sigma_liu}};
  j["system"] = system_json(c.system, c.kind);
  j["output"] = {{"directory", c.output.directory},
                 {"prefix", c.output.prefix},
                 {"plot", c.output.plot},
                 {"per_run", c.output.per_run}};
  if (!c.ensemble.empty() || c.ensemble.workers != 1) {
    OrderedJson e;
    if (!c.ensemble.seeds.empty()) e["seeds"] = c.ensemble.seeds;
    if (!c.ensemble.z.empty()) e["z"] = c.ensemble.z;
    if (!c.ensemble.credibility.empty()) e["credibility"] = c.ensemble.credibility;
    e["workers"] = c.ensemble.workers;
    j["ensemble"] = e;
  }
  return j.dump(2) + "\n";
}

void validate_config(const ExperimentConfig& c) {
  try {
    c.grid.validate();
  } catch (const DomainError& e) {
    rethrow_as_config(c.grid.N < 1 ? "grid.N" : "grid.T", e);
  }

  const SystemConfig& s = c.system;
  const bool volterra = c.kind == ExperimentKind::HybridSde && s.volterra;
  validate_kernel_on_grid(c.kernel, c.grid, "kernel", volterra);
  if (c.kernel_beta) validate_kernel_on_grid(*c.kernel_beta, c.grid, "kernel_beta", volterra);
  if (c.kernel_gamma) validate_kernel_on_grid(*c.kernel_gamma, c.grid, "kernel_gamma", volterra);

  if (!(c.noise.sigma_liu > 0.0)) throw ConfigError("noise.sigma_liu", "must be > 0");

  switch (c.kind) {
    case ExperimentKind::Pendulum:
    case ExperimentKind::Hp:
    case ExperimentKind::Hamiltonian:
    case ExperimentKind::Metric: {
      std::set<std::string> allowed =
          c.kind == ExperimentKind::Metric ? std::set<std::string>{"euclidean", "polar"}
          : c.kind == ExperimentKind::Pendulum ? std::set<std::string>{"pendulum"}
                                               : std::set<std::string>{"pendulum", "harmonic", "free"};
      if (!allowed.count(s.preset)) throw ConfigError("system.preset", "unknown preset '" + s.preset + "'");
      if (s.dimension < 1) throw ConfigError("system.dimension", "must be >= 1");
      if ((s.preset == "pendulum" && s.dimension != 1) || (s.preset == "polar" && s.dimension != 2)) {
        throw ConfigError("system.dimension", "preset '" + s.preset + "' has fixed dimension");
      }
      if (s.q0.size() != s.dimension) throw ConfigError("system.q0", "length must equal system.dimension");
      if (s.p0.size() != s.dimension) throw ConfigError("system.p0", "length must equal system.dimension");
      if (c.kind != ExperimentKind::Metric && s.scheme != "equation" && s.scheme != "verbatim") {
        throw ConfigError("system.scheme", "expected 'equation' or 'verbatim'");
      }
      if (c.kind == ExperimentKind::Metric) {
        const MetricSystem metric = s.preset == "polar" ? polar_metric() : euclidean_metric(s.dimension);
        try {
          metric_at(metric, s.q0);
        } catch (const MetricError& e) {
          rethrow_as_config("system.q0", e);
        }
        if (s.preset == "polar" && s.q0[0] == 0.0) {
          throw ConfigError("system.q0", "polar metric is degenerate at r = 0");
        }
      }
      break;
    }
    case ExperimentKind::HybridSde: {
      const std::size_t dim = s.x0.size();
      if (dim == 0) throw ConfigError("system.x0", "must not be empty");
      const std::pair<const AffineFieldConfig*, const char*> fields[] = {
          {&s.drift, "system.drift"}, {&s.diffusion, "system.diffusion"}, {&s.fuzzy, "system.fuzzy"}};
      for (const auto& [f, name] : fields) {
        if (f->offset.size() != dim) throw ConfigError(std::string(name) + ".offset", "length must equal x0");
        if (f->slope.size() != dim) throw ConfigError(std::string(name) + ".slope", "length must equal x0");
      }
      break;
    }
    case ExperimentKind::StockStochastic:
      if (!(s.alpha1 > 0.0 && s.alpha1 <= 1.0)) throw ConfigError("system.alpha1", "must lie in (0, 1]");
      break;
    case ExperimentKind::StockFuzzy:
      if (!(s.beta1 > 0.0 && s.beta1 <= 1.0)) throw ConfigError("system.beta1", "must lie in (0, 1]");
      break;
  }

  if (!c.ensemble.z.empty() && !c.ensemble.credibility.empty()) {
    throw ConfigError("ensemble.credibility", "give either ensemble.z or ensemble.credibility, not both");
  }
  for (std::size_t i = 0; i < c.ensemble.credibility.size(); ++i) {
    const double level = c.ensemble.credibility[i];
    if (!(level > 0.0 && level < 1.0)) {
      throw ConfigError("ensemble.credibility[" + std::to_string(i) + "]", "must lie in (0, 1)");
    }
  }
  if (c.ensemble.workers < 1) throw ConfigError("ensemble.workers", "must be >= 1");
  if (c.output.prefix.empty()) throw ConfigError("output.prefix", "must not be empty");
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace fracdyn
