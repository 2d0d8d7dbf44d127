#include "fraclap/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

#include "fraclap/csv.hpp"

namespace fraclap {

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Solve: return "SOLVE";
    case Scenario::SweepBeta: return "SWEEP_BETA";
    case Scenario::Diagnose: return "DIAGNOSE";
    case Scenario::Exponents: return "EXPONENTS";
    case Scenario::BarrierCheck: return "BARRIER_CHECK";
  }
  return "?";
}

std::optional<Scenario> scenario_from_name(const std::string& name) {
  std::string up;
  for (char ch : name) up += static_cast<char>(std::toupper(ch));
  if (up == "SOLVE") return Scenario::Solve;
  if (up == "SWEEP_BETA") return Scenario::SweepBeta;
  if (up == "DIAGNOSE") return Scenario::Diagnose;
  if (up == "EXPONENTS") return Scenario::Exponents;
  if (up == "BARRIER_CHECK") return Scenario::BarrierCheck;
  return std::nullopt;
}

ConfigError::ConfigError(int line_, const std::string& field_,
                         const std::string& msg)
    : std::runtime_error("config line " + std::to_string(line_) + ", field '" +
                         field_ + "': " + msg),
      line(line_),
      field(field_) {}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Entry {
  std::string value;
  int line;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

double to_double(const Entry& e, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *trim(end).c_str() != '\0')
    throw ConfigError(e.line, key, "expected a number, got '" + e.value + "'");
  return v;
}

long to_long(const Entry& e, const std::string& key) {
  char* end = nullptr;
  const long v = std::strtol(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *trim(end).c_str() != '\0')
    throw ConfigError(e.line, key, "expected an integer, got '" + e.value + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<double> to_doubles(const Entry& e, const std::string& key) {
  std::vector<double> out;
  for (const auto& tok : split_ws(e.value)) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw ConfigError(e.line, key, "expected numbers, got '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(e.line, key, "empty list");
  return out;
}

ReactionSpec parse_reaction(const Entry& e, const std::string& key) {
  auto toks = split_ws(e.value);
  if (toks.empty()) throw ConfigError(e.line, key, "empty reaction spec");
  std::string fam;
  for (char ch : toks[0]) fam += static_cast<char>(std::toupper(ch));
  auto num = [&](size_t idx, const char* what) {
    if (idx >= toks.size())
      throw ConfigError(e.line, key, std::string("missing ") + what);
    char* end = nullptr;
    const double v = std::strtod(toks[idx].c_str(), &end);
    if (end == toks[idx].c_str() || *end != '\0')
      throw ConfigError(e.line, key, std::string("bad ") + what);
    return v;
  };
  if (fam == "ZERO") {
    if (toks.size() > 1)
      throw ConfigError(e.line, key, "ZERO takes no arguments");
    return ReactionSpec::zero();
  }
  if (fam == "CONSTANT") return ReactionSpec::constant(num(1, "lambda"));
  if (fam == "LOGISTIC")
    return ReactionSpec::logistic(num(1, "lambda"), num(2, "kappa"));
  throw ConfigError(e.line, key, "unknown reaction family '" + toks[0] + "'");
}

class Reader {
 public:
  explicit Reader(const SectionMap& m) : map_(m) {}

  const Entry* find(const std::string& sec, const std::string& key) {
    used_.insert(sec + "." + key);
    auto s = map_.find(sec);
    if (s == map_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
  }
  double num(const std::string& sec, const std::string& key, double dflt) {
    const Entry* e = find(sec, key);
    return e ? to_double(*e, key) : dflt;
  }
  long integer(const std::string& sec, const std::string& key, long dflt) {
    const Entry* e = find(sec, key);
    return e ? to_long(*e, key) : dflt;
  }
  std::string text(const std::string& sec, const std::string& key,
                   const std::string& dflt) {
    const Entry* e = find(sec, key);
    return e ? e->value : dflt;
  }
  std::vector<double> numbers(const std::string& sec, const std::string& key,
                              std::vector<double> dflt) {
    const Entry* e = find(sec, key);
    return e ? to_doubles(*e, key) : dflt;
  }

  void check_all_used() const {
    for (const auto& [sec, entries] : map_)
      for (const auto& [key, entry] : entries)
        if (!used_.count(sec + "." + key))
          throw ConfigError(entry.line, key,
                            "unknown key in section [" + sec + "]");
  }

 private:
  const SectionMap& map_;
  std::set<std::string> used_;
};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  SectionMap sections;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(lineno, line, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(lineno, line, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, line, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, line, "empty key");
    if (section.empty())
      throw ConfigError(lineno, key, "key outside any [section]");
    sections[section][key] = Entry{value, lineno};
  }

  Reader rd(sections);
  RunConfig cfg;

  if (const Entry* e = rd.find("run", "scenario")) {
    auto sc = scenario_from_name(e->value);
    if (!sc)
      throw ConfigError(e->line, "scenario",
                        "unknown scenario '" + e->value + "'");
    cfg.scenario = sc;
  }

  // [problem]
  const double s = rd.num("problem", "s", 0.5);
  const int k = static_cast<int>(rd.integer("problem", "k", 1));
  const double p = rd.num("problem", "p", 1.0);
  const double q = rd.num("problem", "q", p);
  const double beta = rd.num("problem", "beta", 0.0);
  try {
    cfg.params = ProblemParams::make(s, k, p, q, beta);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(0, "problem", err.what());
  }
  if (const Entry* e = rd.find("problem", "interaction")) {
    std::vector<double> rows;
    std::string row_text = e->value;
    std::replace(row_text.begin(), row_text.end(), ';', ' ');
    rows = to_doubles(Entry{row_text, e->line}, "interaction");
    if (rows.size() != static_cast<size_t>(k) * k)
      throw ConfigError(e->line, "interaction",
                        "expected k*k entries (rows separated by ';')");
    cfg.params.interaction = rows;
  }
  for (int c = 0; c < k; ++c) {
    const std::string key = "reaction_" + std::to_string(c + 1);
    if (const Entry* e = rd.find("problem", key))
      cfg.params.reactions[c] = parse_reaction(*e, key);
  }
  if (const Entry* e = rd.find("problem", "cutoff_theta")) {
    auto thetas = to_doubles(*e, "cutoff_theta");
    if (thetas.size() == 1) thetas.assign(k, thetas[0]);
    if (thetas.size() != static_cast<size_t>(k))
      throw ConfigError(e->line, "cutoff_theta", "expected 1 or k values");
    for (int c = 0; c < k; ++c) cfg.params.reactions[c].cutoff_theta = thetas[c];
  }
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(0, "problem", err.what());
  }

  // [grid]
  cfg.x_lo = rd.num("grid", "x_lo", cfg.x_lo);
  cfg.x_hi = rd.num("grid", "x_hi", cfg.x_hi);
  cfg.height = rd.num("grid", "height", cfg.height);
  cfg.nx = static_cast<int>(rd.integer("grid", "nx", cfg.nx));
  cfg.ny = static_cast<int>(rd.integer("grid", "ny", cfg.ny));
  if (const Entry* e = rd.find("grid", "grading")) {
    if (e->value == "auto")
      cfg.grading = 0.0;
    else
      cfg.grading = to_double(*e, "grading");
  }

  // [boundary]
  {
    const std::string preset = rd.text("boundary", "preset", "CONSTANT");
    std::string up;
    for (char ch : preset) up += static_cast<char>(std::toupper(ch));
    if (up == "CONSTANT")
      cfg.preset = BoundaryPreset::Constant;
    else if (up == "MIRROR_CROSSING")
      cfg.preset = BoundaryPreset::MirrorCrossing;
    else if (up == "CUSTOM_SAMPLES")
      cfg.preset = BoundaryPreset::CustomSamples;
    else {
      const Entry* e = rd.find("boundary", "preset");
      throw ConfigError(e ? e->line : 0, "preset",
                        "unknown boundary preset '" + preset + "'");
    }
    cfg.amplitude = rd.num("boundary", "amplitude", 1.0);
    cfg.samples_file = rd.text("boundary", "samples_file", "");
    if (cfg.preset == BoundaryPreset::CustomSamples && cfg.samples_file.empty())
      throw ConfigError(0, "samples_file",
                        "CUSTOM_SAMPLES requires samples_file");
  }

  // [solver]
  cfg.solver.tolerance = rd.num("solver", "tolerance", 1e-8);
  cfg.solver.max_sweeps = rd.integer("solver", "max_sweeps", 100000);
  cfg.solver.damping = rd.num("solver", "damping", 1.0);
  {
    const std::string order = rd.text("solver", "sweep_order", "RED_BLACK");
    std::string up;
    for (char ch : order) up += static_cast<char>(std::toupper(ch));
    if (up == "RED_BLACK")
      cfg.solver.sweep_order = SweepOrder::RedBlack;
    else if (up == "LEXICOGRAPHIC")
      cfg.solver.sweep_order = SweepOrder::Lexicographic;
    else {
      const Entry* e = rd.find("solver", "sweep_order");
      throw ConfigError(e ? e->line : 0, "sweep_order",
                        "unknown sweep order '" + order + "'");
    }
  }

  // [ladder]
  cfg.ladder.beta0 = rd.num("ladder", "beta0", 1.0);
  cfg.ladder.ratio = rd.num("ladder", "ratio", 10.0);
  cfg.ladder.steps = static_cast<int>(rd.integer("ladder", "steps", 7));

  // [diagnostics]
  {
    const std::string which = rd.text("diagnostics", "enable", "");
    for (const auto& tok : split_ws(which)) cfg.diagnostics.push_back(tok);
    cfg.field_file = rd.text("diagnostics", "field_file", "");
    cfg.center_x = rd.num("diagnostics", "center_x", 0.0);
    cfg.radii = rd.numbers("diagnostics", "radii", cfg.radii);
    cfg.holder_alpha = rd.num("diagnostics", "holder_alpha", 0.5);
    cfg.morrey_eps = rd.num("diagnostics", "morrey_eps", 0.25);
    cfg.acf_mu = rd.num("diagnostics", "acf_mu", 1.0);
    cfg.fb_threshold = rd.num("diagnostics", "fb_threshold", 0.0);
  }

  // [exponents]
  cfg.s_grid = rd.numbers("exponents", "s_grid", cfg.s_grid);
  cfg.resolution = static_cast<int>(
      rd.integer("exponents", "resolution", cfg.resolution));

  // [barrier]
  cfg.barrier_M = rd.numbers("barrier", "M_grid", cfg.barrier_M);
  cfg.barrier_p = rd.numbers("barrier", "p_grid", cfg.barrier_p);
  cfg.barrier_s = rd.numbers("barrier", "s_grid", cfg.barrier_s);
  cfg.barrier_delta = rd.num("barrier", "delta", 0.0);
  cfg.barrier_nx = static_cast<int>(rd.integer("barrier", "nx", cfg.barrier_nx));
  cfg.barrier_ny = static_cast<int>(rd.integer("barrier", "ny", cfg.barrier_ny));

  // [output]
  cfg.output_dir = rd.text("output", "dir", cfg.output_dir);

  rd.check_all_used();

  if (!(cfg.x_lo < cfg.x_hi))
    throw ConfigError(0, "x_lo", "require x_lo < x_hi");
  if (cfg.nx < 3 || cfg.ny < 3)
    throw ConfigError(0, "nx", "require nx, ny >= 3");
  if (!(cfg.solver.tolerance > 0.0))
    throw ConfigError(0, "tolerance", "must be positive");
  if (!(cfg.solver.damping > 0.0 && cfg.solver.damping <= 1.0))
    throw ConfigError(0, "damping", "must be in (0,1]");
  (void)name;
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  return parse_config_text(read_file(path), path);
}

}  // namespace fraclap
