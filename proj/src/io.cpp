#include "etk/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace etk::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("bad number '" + t + "' in " + what);
  }
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("bad integer '" + t + "' in " + what);
  }
  return v;
}

// Runs a json accessor, turning library errors into ParseError.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string full(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << (v == 0 ? 0.0 : v);
  return s.str();
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

json to_json(const SetFunction& h) {
  json values = json::object();
  for (Subset s = 0; s <= h.ground().full(); ++s) values[h.ground().format_subset(s)] = h(s);
  return {{"labels", h.ground().labels()}, {"values", values}};
}

SetFunction set_function_from_json(const json& j) {
  return guarded("set function", [&] {
    if (!j.is_object() || !j.contains("labels") || !j.contains("values")) {
      throw ParseError("set function needs 'labels' and 'values'");
    }
    GroundSet ground;
    try {
      ground = GroundSet(j.at("labels").get<std::vector<std::string>>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    const auto& values = j.at("values");
    if (!values.is_object()) throw ParseError("'values' must be an object");
    Eigen::VectorXd v = Eigen::VectorXd::Constant(ground.power_size(), std::nan(""));
    std::vector<bool> seen(ground.power_size(), false);
    for (const auto& [key, value] : values.items()) {
      const Subset s = ground.parse_subset(key);
      if (seen[s]) throw ParseError("subset '" + key + "' given twice");
      if (!value.is_number()) throw ParseError("value of '" + key + "' is not a number");
      seen[s] = true;
      v[s] = value.get<double>();
    }
    if (!seen[0]) v[0] = 0;
    if (v[0] != 0) throw ParseError("value of the empty set must be 0");
    for (Subset s = 1; s <= ground.full(); ++s) {
      if (!seen[s]) throw ParseError("missing value for subset '" + ground.format_subset(s) + "'");
    }
    try {
      return SetFunction(ground, v);
    } catch (const std::domain_error& e) {
      throw ParseError(e.what());
    }
  });
}

SetFunction load_set_function(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return set_function_from_json(j);
}

void write_distribution_csv(std::ostream& out, const JointDistribution& d) {
  for (const auto& label : d.ground().labels()) out << "x_" << label << ',';
  out << "prob\n";
  for (const auto& a : d.atoms()) {
    for (int s : a.symbols) out << s << ',';
    out << full(a.prob) << '\n';
  }
}

JointDistribution read_distribution_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("distribution CSV is empty");
  const auto header = split(trim(line), ',');
  if (header.size() < 2 || trim(header.back()) != "prob") {
    throw ParseError("distribution CSV header must end with 'prob'");
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c + 1 < header.size(); ++c) {
    const std::string h = trim(header[c]);
    if (h.size() < 3 || h.rfind("x_", 0) != 0) throw ParseError("column '" + h + "' must be x_<label>");
    labels.push_back(h.substr(2));
  }
  GroundSet ground;
  try {
    ground = GroundSet(labels);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  std::vector<Atom> atoms;
  std::vector<int> sizes(labels.size(), 1);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    const std::string where = "distribution row " + std::to_string(row);
    if (cells.size() != header.size()) throw ParseError(where + " has the wrong number of fields");
    Atom a;
    for (std::size_t c = 0; c < labels.size(); ++c) {
      const int s = parse_int(cells[c], where);
      if (s < 0) throw ParseError(where + " has a negative symbol");
      a.symbols.push_back(s);
      sizes[c] = std::max(sizes[c], s + 1);
    }
    a.prob = parse_double(cells.back(), where);
    atoms.push_back(std::move(a));
  }
  try {
    return JointDistribution(ground, sizes, atoms);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(e.what());
  }
}

json to_json(const JointDistribution& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms()) atoms.push_back({{"x", a.symbols}, {"prob", a.prob}});
  return {{"labels", d.ground().labels()}, {"alphabet_sizes", d.alphabet_sizes()}, {"atoms", atoms}};
}

JointDistribution distribution_from_json(const json& j) {
  return guarded("distribution", [&] {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at("x").get<std::vector<int>>(), a.at("prob").get<double>()});
    try {
      return JointDistribution(GroundSet(j.at("labels").get<std::vector<std::string>>()),
                               j.at("alphabet_sizes").get<std::vector<int>>(), atoms);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    } catch (const std::domain_error& e) {
      throw ParseError(e.what());
    }
  });
}

JointDistribution load_distribution(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (path.extension() == ".json") {
    try {
      return distribution_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  std::istringstream in(text);
  return read_distribution_csv(in);
}

void write_points_csv(std::ostream& out, const std::vector<CrossSectionPoint>& points) {
  out << "alpha,beta,gamma,delta,source\n";
  for (const auto& p : points) {
    out << full(p.alpha_w) << ',' << full(p.beta_w) << ',' << full(p.gamma_w) << ',' << full(p.delta_w) << ','
        << p.source_tag << '\n';
  }
}

std::vector<CrossSectionPoint> read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("point CSV is empty");
  const auto header = split(trim(line), ',');
  if (header.size() < 4 || trim(header[0]) != "alpha" || trim(header[1]) != "beta" || trim(header[2]) != "gamma" ||
      trim(header[3]) != "delta") {
    throw ParseError("point CSV header must start with alpha,beta,gamma,delta");
  }
  std::vector<CrossSectionPoint> points;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    const std::string where = "point row " + std::to_string(row);
    if (cells.size() < 4) throw ParseError(where + " has fewer than four weights");
    CrossSectionPoint p;
    p.alpha_w = parse_double(cells[0], where);
    p.beta_w = parse_double(cells[1], where);
    p.gamma_w = parse_double(cells[2], where);
    p.delta_w = parse_double(cells[3], where);
    if (cells.size() > 4) p.source_tag = trim(cells[4]);
    if (std::abs(p.sum() - 1) > 1e-6) throw ParseError(where + " weights do not sum to 1");
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<CrossSectionHalfspace> halfspaces_from_json(const json& j, const GroundSet& ground,
                                                        const IngletonFrame& fr) {
  if (j.is_array()) {
    std::vector<CrossSectionHalfspace> out;
    for (const auto& item : j) {
      auto part = halfspaces_from_json(item, ground, fr);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  return guarded("inequality", [&]() -> std::vector<CrossSectionHalfspace> {
    if (!j.is_object()) throw ParseError("inequality must be an object");
    const std::string name = j.value("name", std::string("unnamed"));
    try {
      if (j.contains("abcd")) {
        const auto abcd = j.at("abcd").get<std::vector<double>>();
        if (abcd.size() != 4) throw ParseError("'abcd' needs four numbers");
        return {CrossSectionHalfspace(name, {abcd[0], abcd[1], abcd[2], abcd[3]})};
      }
      if (!j.contains("coefficients")) throw ParseError("inequality needs 'abcd' or 'coefficients'");
      Eigen::VectorXd c = Eigen::VectorXd::Zero(ground.power_size());
      for (const auto& [key, value] : j.at("coefficients").items()) {
        const Subset s = ground.parse_subset(key);
        if (s == 0) throw ParseError("coefficient of the empty set is not allowed");
        c[s] += value.get<double>();
      }
      return {to_halfspace(LinearInequality(name, ground, c), fr)};
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  });
}

json to_json(const LinearInequality& ineq) {
  json c = json::object();
  for (Subset s = 1; s <= ineq.ground.full(); ++s) {
    if (ineq.coefficients[s] != 0) c[ineq.ground.format_subset(s)] = ineq.coefficients[s];
  }
  return {{"name", ineq.name}, {"coefficients", c}};
}

json to_json(const CrossSectionHalfspace& hs) { return {{"name", hs.name}, {"abcd", hs.abcd}}; }

json to_json(const SearchConfig& cfg) {
  json j = {{"alphabet_sizes", cfg.alphabet_sizes},
            {"restarts", cfg.restarts},
            {"budget_evals", cfg.budget_evals},
            {"master_seed", cfg.master_seed},
            {"objective", to_string(cfg.objective)},
            {"direction", {cfg.direction[0], cfg.direction[1], cfg.direction[2]}},
            {"initial_step", cfg.initial_step},
            {"threads", cfg.threads}};
  if (cfg.initial) j["initial"] = to_json(*cfg.initial);
  return j;
}

SearchConfig search_config_from_json(const json& j) {
  return guarded("search config", [&] {
    if (!j.is_object()) throw ParseError("search config must be an object");
    SearchConfig cfg;
    if (j.contains("alphabet_sizes")) {
      const auto a = j.at("alphabet_sizes").get<std::vector<int>>();
      if (a.size() != 4) throw ParseError("'alphabet_sizes' needs four entries");
      std::copy(a.begin(), a.end(), cfg.alphabet_sizes.begin());
    }
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.budget_evals = j.value("budget_evals", cfg.budget_evals);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.initial_step = j.value("initial_step", cfg.initial_step);
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("objective")) {
      try {
        cfg.objective = objective_from_string(j.at("objective").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    if (j.contains("direction")) {
      const auto d = j.at("direction").get<std::vector<double>>();
      if (d.size() != 3) throw ParseError("'direction' needs three entries");
      cfg.direction = {d[0], d[1], d[2]};
    }
    if (j.contains("initial")) cfg.initial = distribution_from_json(j.at("initial"));
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return cfg;
  });
}

void write_obj(std::ostream& out, const Polytope3& poly) {
  out << "# beta gamma delta\n";
  for (const auto& w : poly.vertices) out << "v " << full(w[1]) << ' ' << full(w[2]) << ' ' << full(w[3]) << '\n';
  for (const auto& f : poly.facets) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

json region_to_json(const Polytope3& poly) {
  json vertices = json::array();
  for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
    const auto& w = poly.vertices[v];
    json entry = {{"weights", {w[0], w[1], w[2], w[3]}}};
    if (v < poly.active.size()) entry["active"] = poly.active[v];
    vertices.push_back(entry);
  }
  return {{"empty", poly.empty}, {"degenerate", poly.degenerate}, {"vertices", vertices}, {"facets", poly.facets},
          {"volume", poly.volume()}};
}

}  // namespace etk::io
