#include "structbandit/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "structbandit/errors.hpp"

namespace structbandit {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (trim(s.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "': not a number: '" + s + "'");
}

std::vector<double> number_list(const std::string& s, const std::string& key) {
  std::string text = s;
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(tok, key));
  return out;
}

std::vector<std::string> word_list(const std::string& s) {
  std::string text = s;
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::optional<std::string> get(const pt::ptree& tree, const std::string& key) {
  if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '/')))
    return trim(*v);
  return std::nullopt;
}

double get_number(const pt::ptree& tree, const std::string& key, double fallback) {
  auto v = get(tree, key);
  return v ? to_double(*v, key) : fallback;
}

std::int64_t get_integer(const pt::ptree& tree, const std::string& key,
                         std::int64_t fallback) {
  double v = get_number(tree, key, static_cast<double>(fallback));
  if (v != std::floor(v)) throw ConfigError("'" + key + "' must be an integer");
  return static_cast<std::int64_t>(v);
}

Structure parse_structure(const pt::ptree& tree, std::size_t arms,
                          std::vector<double>& means) {
  std::string kind = get(tree, "structure/kind").value_or("unconstrained");
  std::optional<Box> box;
  if (auto b = get(tree, "structure/box")) {
    auto v = number_list(*b, "structure/box");
    if (v.size() != 2) throw ConfigError("'structure/box' needs two numbers");
    box = Box{v[0], v[1]};
  }
  Structure::Spec spec = Unconstrained{};
  if (kind == "unconstrained") {
  } else if (kind == "unimodal") {
    spec = Unimodal{};
  } else if (kind == "sparse") {
    spec = Sparse{static_cast<std::size_t>(get_integer(tree, "structure/support", 1)),
                  get_number(tree, "structure/level", 0.0)};
  } else if (kind == "lipschitz") {
    spec = Lipschitz{get_number(tree, "structure/lipschitz", 1.0)};
  } else if (kind == "categorised") {
    auto c = get(tree, "structure/categories");
    if (!c) throw ConfigError("categorised structure needs 'categories'");
    std::vector<int> ids;
    for (double x : number_list(*c, "structure/categories")) ids.push_back(static_cast<int>(x));
    spec = Categorised{ids};
  } else if (kind == "linear") {
    auto a = get(tree, "structure/arms");
    if (!a) throw ConfigError("linear structure needs 'arms'");
    Linear lin;
    std::istringstream rows(*a);
    std::string row;
    while (std::getline(rows, row, '|')) lin.arms.push_back(number_list(row, "structure/arms"));
    if (auto th = get(tree, "structure/theta"); th && means.empty()) {
      auto theta = number_list(*th, "structure/theta");
      for (const auto& r : lin.arms) {
        if (r.size() != theta.size()) throw ConfigError("theta and arm vectors differ in length");
        double m = 0.0;
        for (std::size_t c = 0; c < r.size(); ++c) m += r[c] * theta[c];
        means.push_back(m);
      }
    }
    spec = lin;
  } else {
    throw ConfigError("unknown structure kind '" + kind + "'");
  }
  std::size_t k = arms ? arms : means.size();
  try {
    return Structure(k, std::move(spec), box);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("structure: ") + e.what());
  }
}

}  // namespace

Instance ExperimentConfig::instance() const { return Instance(family, structure, means); }

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  ExperimentConfig cfg;
  std::string family = get(tree, "family").value_or("gaussian");
  if (family == "gaussian")
    cfg.family = Family::gaussian(get_number(tree, "variance", 1.0));
  else if (family == "bernoulli")
    cfg.family = Family::bernoulli();
  else
    throw ConfigError("unknown family '" + family + "'");

  if (auto m = get(tree, "means")) cfg.means = number_list(*m, "means");
  cfg.structure = parse_structure(tree, cfg.means.size(), cfg.means);
  if (cfg.means.empty()) throw ConfigError("config needs 'means' (or linear 'theta')");

  cfg.horizon = get_integer(tree, "horizon", cfg.horizon);
  cfg.repetitions = get_integer(tree, "repetitions", cfg.repetitions);
  double seed = get_number(tree, "seed", 1.0);
  if (seed < 0 || seed != std::floor(seed)) throw ConfigError("'seed' must be a nonnegative integer");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.algorithms = word_list(get(tree, "algorithms").value_or("spk, splambda, ucb"));
  cfg.checkpoint_count = static_cast<std::size_t>(get_integer(tree, "checkpoints", 50));

  EpsilonSchedule& eps = cfg.options.saddle.schedule;
  std::string mode = get(tree, "epsilon/mode").value_or("harmonic");
  if (mode == "harmonic")
    eps.mode = EpsilonSchedule::Mode::Harmonic;
  else if (mode == "power")
    eps.mode = EpsilonSchedule::Mode::Power;
  else if (mode == "constant")
    eps.mode = EpsilonSchedule::Mode::Constant;
  else
    throw ConfigError("unknown epsilon mode '" + mode + "'");
  eps.eps0 = get_number(tree, "epsilon/eps0", eps.eps0);
  eps.c = get_number(tree, "epsilon/c", eps.c);
  eps.power = get_number(tree, "epsilon/power", eps.power);

  std::string ci = get(tree, "confidence/mode").value_or("experiment");
  if (ci == "experiment")
    cfg.options.saddle.ci_mode = CiMode::Experiment;
  else if (ci == "theory")
    cfg.options.saddle.ci_mode = CiMode::Theory;
  else
    throw ConfigError("unknown confidence mode '" + ci + "'");
  cfg.options.saddle.eta = get_number(tree, "confidence/eta", 0.5);

  cfg.options.ossb.gamma = get_number(tree, "ossb/gamma", 0.0);
  cfg.options.ossb.solver_iterations =
      static_cast<std::size_t>(get_integer(tree, "ossb/iterations", 50));
  cfg.options.ossb.solver_eps = get_number(tree, "ossb/eps", 1e-3);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return parse_config(in);
}

void validate(const ExperimentConfig& cfg) {
  try {
    cfg.instance();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  }
  const auto K = static_cast<std::int64_t>(cfg.means.size());
  if (cfg.horizon < K) throw ConfigError("horizon must be at least the number of arms");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (cfg.algorithms.empty()) throw ConfigError("no algorithms listed");
  static const std::set<std::string> known = {"spk", "splambda", "ossb", "ucb"};
  for (const auto& a : cfg.algorithms)
    if (!known.count(a)) throw ConfigError("unknown algorithm '" + a + "'");
  if (cfg.checkpoint_count < 1) throw ConfigError("checkpoints must be at least 1");
  const EpsilonSchedule& e = cfg.options.saddle.schedule;
  if (!(e.eps0 > 0.0) || !(e.c > 0.0)) throw ConfigError("epsilon parameters must be positive");
  if (e.mode == EpsilonSchedule::Mode::Power && !(e.power > 2.0))
    throw ConfigError("epsilon power must exceed 2");
  if (!(cfg.options.saddle.eta > 0.0)) throw ConfigError("confidence eta must be positive");
}

std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon, std::size_t count) {
  std::vector<std::int64_t> grid;
  const double lo = horizon >= 10 ? 10.0 : 1.0;
  const double hi = static_cast<double>(horizon);
  for (std::size_t i = 0; i < count; ++i) {
    double frac = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 1.0;
    auto t = static_cast<std::int64_t>(std::llround(lo * std::pow(hi / lo, frac)));
    grid.push_back(std::clamp<std::int64_t>(t, 1, horizon));
  }
  grid.push_back(horizon);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace structbandit
