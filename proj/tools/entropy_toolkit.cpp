#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "etk/entropy.hpp"
#include "etk/four_frame.hpp"
#include "etk/geometry.hpp"
#include "etk/inequality.hpp"
#include "etk/io.hpp"
#include "etk/optimize.hpp"
#include "etk/polymatroid.hpp"
#include "etk/search.hpp"

namespace {

using namespace etk;
using io::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << (v == 0 ? 0.0 : v);
  return s.str();
}

void line(const std::string& key, double v) { std::cout << key << ": " << num(v) << '\n'; }
void line(const std::string& key, const std::string& v) { std::cout << key << ": " << v << '\n'; }

IngletonFrame frame_for(const GroundSet& ground, const std::string& spec) {
  if (ground.size() != 4) throw std::invalid_argument("an Ingleton frame needs exactly four labels");
  std::array<std::string, 4> labels;
  if (spec.empty()) {
    for (int b = 0; b < 4; ++b) labels[b] = ground.label(b);
  } else {
    std::istringstream in(spec);
    std::string part;
    int n = 0;
    while (std::getline(in, part, ',')) {
      if (n == 4) throw std::invalid_argument("--frame takes four labels");
      labels[n++] = part;
    }
    if (n != 4) throw std::invalid_argument("--frame takes four labels");
  }
  return IngletonFrame::from_labels(ground, labels);
}

// A set function file, or a distribution file whose entropy is taken.
SetFunction load_entropy_or_function(const std::string& path) {
  if (std::filesystem::path(path).extension() == ".json") {
    json j;
    try {
      j = json::parse(io::read_text(path));
    } catch (const json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    if (j.is_object() && j.contains("atoms")) return entropy_function(io::distribution_from_json(j));
    return io::set_function_from_json(j);
  }
  return entropy_function(io::load_distribution(path));
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) out.push_back(std::stoi(part));
  return out;
}

std::string format_point(const CrossSectionPoint& w) {
  return num(w.alpha_w) + " " + num(w.beta_w) + " " + num(w.gamma_w) + " " + num(w.delta_w);
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& path, double tol) {
  const auto f = io::load_set_function(path);
  const auto report = check_axioms(f, tol);
  const auto& g = f.ground();
  line("polymatroid", report.is_polymatroid() ? "yes" : "no");
  line("monotone", report.is_monotone ? "yes" : "no");
  line("submodular", report.is_submodular ? "yes" : "no");
  line("modular", is_modular(f, tol) ? "yes" : "no");
  line("tight", is_tight(f, tol) ? "yes" : "no");
  if (!report.is_monotone) {
    const auto& w = report.monotone_witnesses.front();
    line("worst_monotone_violation", report.worst_monotone_violation);
    line("monotone_witness", "{" + g.format_subset(w.first) + "} {" + g.format_subset(w.second) + "}");
  }
  if (!report.is_submodular) {
    const auto& w = report.submodular_witnesses.front();
    line("worst_submodular_violation", report.worst_submodular_violation);
    line("submodular_witness", "{" + g.format_subset(w.first) + "} {" + g.format_subset(w.second) + "}");
  }
  return report.is_polymatroid() ? kOk : kCheckFailed;
}

int cmd_entropy(const std::string& path, bool bits, const std::string& out_path) {
  const auto d = io::load_distribution(path);
  auto h = entropy_function(d);
  if (bits) h = h / std::numbers::ln2;
  for (Subset s = 1; s <= h.ground().full(); ++s) line("h(" + h.ground().format_subset(s) + ")", h(s));
  if (!out_path.empty()) io::write_text(out_path, io::to_json(h).dump(2) + "\n");
  return kOk;
}

int cmd_score(const std::string& path, const std::string& frame_spec) {
  const auto h = load_entropy_or_function(path);
  const auto fr = frame_for(h.ground(), frame_spec);
  const auto& g = h.ground();
  line("ingleton_value", ingleton_value(h, fr));
  line("score", h.rank() > 0 ? ingleton_score(h, fr) : 0.0);
  std::string violated;
  for (const auto& [a, b] : violated_instances(h)) {
    if (!violated.empty()) violated += ' ';
    violated += g.format_subset(singleton(a) | singleton(b));
  }
  line("violated_instances", violated.empty() ? "none" : violated);
  if (ingleton_value(h, fr) < 0) {
    try {
      line("cross_section", format_point(cross_section_point(h, fr).point));
    } catch (const DegeneratePoint&) {
      line("cross_section", "degenerate");
    }
  }
  return kOk;
}

int cmd_fouratom(std::optional<double> p, bool minimize) {
  if (minimize) {
    const auto m = minimize_scalar([](double x) { return four_atom_score({x}); }, 0.0, 0.5, 1e-7);
    line("p*", m.x);
    line("score", m.value);
    return kOk;
  }
  if (!p) throw std::invalid_argument("fouratom needs --p or --minimize");
  if (!(*p >= 0 && *p <= 0.5)) throw std::domain_error("--p must lie in [0, 1/2]");
  const double closed = four_atom_score({*p});
  const auto h = entropy_function(four_atom_distribution({*p}));
  const double oracle = ingleton_score(h, IngletonFrame());
  line("p", *p);
  line("closed_form", closed);
  line("oracle", oracle);
  line("difference", std::abs(closed - oracle));
  return kOk;
}

int cmd_exl(const ExLParams& params) {
  const IngletonFrame fr;
  const auto f = exl_closed_form(params);
  const auto table = entropy_function(exl_distribution(params));
  const auto ti = tight_part(f);
  const auto ab = a_map(b_map(ti, fr), fr);
  line("score_f", ingleton_score(f, fr));
  line("score_tight", ingleton_score(ti, fr));
  line("score_pipeline", ab.rank() > 0 ? ingleton_score(ab, fr) : 0.0);
  if (ingleton_value(f, fr) < 0) {
    try {
      const auto w = cross_section_point(f, fr).point;
      line("alpha", w.alpha_w);
      line("beta", w.beta_w);
      line("gamma", w.gamma_w);
      line("delta", w.delta_w);
    } catch (const DegeneratePoint&) {
      line("cross_section", "degenerate");
    }
  } else {
    line("cross_section", "none (Ingleton holds)");
  }
  line("max_deviation", max_abs_diff(f, table));
  return kOk;
}

SearchConfig search_config(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                           const std::optional<int>& restarts, const std::optional<long>& budget,
                           const std::string& objective, const std::string& alphabet,
                           const std::string& initial_path, const std::optional<int>& threads) {
  SearchConfig cfg;
  if (!config_path.empty()) {
    json j;
    try {
      j = json::parse(io::read_text(config_path));
    } catch (const json::parse_error& e) {
      throw ParseError(config_path + ": " + e.what());
    }
    cfg = io::search_config_from_json(j);
  }
  if (seed) cfg.master_seed = *seed;
  if (restarts) cfg.restarts = *restarts;
  if (budget) cfg.budget_evals = *budget;
  if (threads) cfg.threads = *threads;
  if (!objective.empty()) cfg.objective = objective_from_string(objective);
  if (!alphabet.empty()) {
    const auto a = parse_ints(alphabet);
    if (a.size() != 4) throw std::invalid_argument("--alphabet takes four sizes");
    std::copy(a.begin(), a.end(), cfg.alphabet_sizes.begin());
  }
  if (!initial_path.empty()) cfg.initial = io::load_distribution(initial_path);
  cfg.validate();
  return cfg;
}

int cmd_minimize(const SearchConfig& cfg, const std::string& frame_spec, const std::string& out_path) {
  const auto fr = frame_for(GroundSet::ijkl(), frame_spec);
  const auto start = std::chrono::steady_clock::now();
  const auto r = optimize_distribution(cfg, fr);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  line("objective", to_string(cfg.objective));
  line("best_value", r.best_value);
  line("best_restart", std::to_string(r.best_restart));
  line("evaluations", std::to_string(r.eval_count));
  line("budget_exhausted", r.budget_exhausted ? "yes" : "no");
  if (r.best_point) line("cross_section", format_point(*r.best_point));
  std::cerr << "elapsed_seconds: " << num(secs) << '\n';
  if (!out_path.empty()) {
    std::ostringstream s;
    if (std::filesystem::path(out_path).extension() == ".json") {
      s << io::to_json(r.best_distribution).dump(2) << '\n';
    } else {
      io::write_distribution_csv(s, r.best_distribution);
    }
    io::write_text(out_path, s.str());
  }
  return kOk;
}

int cmd_cloud(const SearchConfig& cfg, const std::string& frame_spec, int direction_count,
              std::uint64_t direction_seed, bool optima_only, const std::string& out_path) {
  const auto fr = frame_for(GroundSet::ijkl(), frame_spec);
  const auto dirs = sample_directions(direction_count, direction_seed);
  const auto cloud = generate_cloud(dirs, cfg, fr, optima_only);
  std::ofstream file;
  io::write_points_csv(open_out(out_path, file), cloud);
  if (!out_path.empty() && out_path != "-") {
    line("directions", std::to_string(dirs.size()));
    line("points", std::to_string(cloud.size()));
    double best = 0;
    for (const auto& p : cloud) best = std::max(best, p.alpha_w);
    line("max_alpha", best);
  }
  return kOk;
}

void report_polytope(const Polytope3& poly) {
  line("vertices", std::to_string(poly.vertices.size()));
  line("facets", std::to_string(poly.facets.size()));
  line("degenerate", poly.degenerate ? "yes" : "no");
  line("volume", poly.volume());
}

int cmd_hull(const std::string& path, const std::string& obj_path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<Weights> pts;
  for (const auto& p : io::read_points_csv(in)) pts.push_back(p.weights());
  const auto hull = convex_hull_3d(pts);
  report_polytope(hull);
  if (!obj_path.empty()) {
    std::ostringstream s;
    io::write_obj(s, hull);
    io::write_text(obj_path, s.str());
  }
  return kOk;
}

int cmd_outer(int dfz_max_s, bool zy, const std::string& ineq_path, const std::string& frame_spec,
              const std::string& out_path, const std::string& obj_path) {
  std::vector<CrossSectionHalfspace> bank;
  if (dfz_max_s < 0 || dfz_max_s > 20) throw std::invalid_argument("--dfz-max-s must lie in 0..20");
  if (dfz_max_s > 0) bank = dfz_bank(dfz_max_s);
  if (zy) bank.push_back(zhang_yeung_halfspace());
  if (!ineq_path.empty()) {
    json j;
    try {
      j = json::parse(io::read_text(ineq_path));
    } catch (const json::parse_error& e) {
      throw ParseError(ineq_path + ": " + e.what());
    }
    const auto ground = GroundSet::ijkl();
    const auto extra = io::halfspaces_from_json(j, ground, frame_for(ground, frame_spec));
    bank.insert(bank.end(), extra.begin(), extra.end());
  }
  const auto region = outer_region(bank);
  line("halfspaces", std::to_string(bank.size()));
  if (region.empty) {
    line("region", "empty");
    return kOk;
  }
  report_polytope(region);
  line("max_alpha", max_alpha(region));
  line("max_alpha_beta_edge", max_alpha_on_edge(region, 1));
  line("max_alpha_gamma_edge", max_alpha_on_edge(region, 2));
  line("max_alpha_delta_edge", max_alpha_on_edge(region, 3));
  for (std::size_t v = 0; v < region.vertices.size(); ++v) {
    const auto& w = region.vertices[v];
    std::string names;
    for (const auto& n : region.active[v]) names += (names.empty() ? "" : ",") + n;
    std::cout << "vertex: " << num(w[0]) << ' ' << num(w[1]) << ' ' << num(w[2]) << ' ' << num(w[3]) << " ["
              << names << "]\n";
  }
  if (!out_path.empty()) io::write_text(out_path, io::region_to_json(region).dump(2) + "\n");
  if (!obj_path.empty()) {
    std::ostringstream s;
    io::write_obj(s, region);
    io::write_text(obj_path, s.str());
  }
  return kOk;
}

int cmd_export(const std::string& what, const std::string& out_path, const std::string& frame_spec, double p,
               int dfz_max_s) {
  const auto ground = GroundSet::ijkl();
  const auto fr = frame_for(ground, frame_spec);
  std::ofstream file;
  std::ostream& out = open_out(out_path, file);
  if (what == "rbar") {
    out << io::to_json(ingleton_base<double>(ground, fr)).dump(2) << '\n';
  } else if (what == "vertices") {
    std::vector<CrossSectionPoint> v{{1, 0, 0, 0, "alpha"}, {0, 1, 0, 0, "beta"}, {0, 0, 1, 0, "gamma"},
                                     {0, 0, 0, 1, "delta"}};
    io::write_points_csv(out, v);
  } else if (what == "fouratom") {
    io::write_distribution_csv(out, four_atom_distribution({p}));
  } else if (what == "exl") {
    io::write_distribution_csv(out, exl_distribution(ExLParams::reference()));
  } else if (what == "fouratom-curve") {
    out << "p,score\n";
    for (int n = 0; n <= 100; ++n) {
      const double x = 0.005 * n;
      out << std::setprecision(17) << x << ',' << four_atom_score({x}) << '\n';
    }
  } else if (what == "dfz") {
    json bank = json::array();
    for (const auto& hs : dfz_bank(dfz_max_s)) bank.push_back(io::to_json(hs));
    out << bank.dump(2) << '\n';
  } else if (what == "config") {
    out << io::to_json(SearchConfig{}).dump(2) << '\n';
  } else {
    throw std::invalid_argument("unknown export '" + what + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy functions, Ingleton scores and cross-section geometry of four random variables"};
  app.require_subcommand(1);

  std::string path, frame_spec, out_path, obj_path;
  double tol = kAnalyticTol;
  auto* check = app.add_subcommand("check", "Check the polymatroid axioms of a set function JSON file");
  check->add_option("file", path, "set function JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--tol", tol, "tolerance");

  bool bits = false;
  auto* entropy = app.add_subcommand("entropy", "Entropy function of a distribution (CSV or JSON)");
  entropy->add_option("file", path)->required()->check(CLI::ExistingFile);
  entropy->add_flag("--bits", bits, "report in bits instead of nats");
  entropy->add_option("--out", out_path, "write the entropy function as JSON");

  auto* score = app.add_subcommand("score", "Ingleton value and score of a set function or distribution");
  score->add_option("file", path)->required()->check(CLI::ExistingFile);
  score->add_option("--frame", frame_spec, "labels i,j,k,l");

  std::optional<double> four_p;
  bool four_min = false;
  auto* fouratom = app.add_subcommand("fouratom", "Four-atom family");
  auto* p_opt = fouratom->add_option("--p", four_p, "probability of the 00 atom");
  fouratom->add_flag("--minimize", four_min, "minimize the score over p")->excludes(p_opt);

  ExLParams exl_params;
  bool exl_default = false;
  auto* exl = app.add_subcommand("exl", "Forty-configuration family");
  auto* def = exl->add_flag("--default", exl_default, "use p=0.09524 q=0.02494 r=0.00160 s=t=0.00161");
  for (auto [name, ref] : {std::pair{"--p", &exl_params.p}, {"--q", &exl_params.q}, {"--r", &exl_params.r},
                           {"--s", &exl_params.s}, {"--t", &exl_params.t}}) {
    exl->add_option(name, *ref)->excludes(def);
  }

  std::string config_path, objective, alphabet, initial_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts, threads;
  std::optional<long> budget;
  auto add_search_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "search config JSON")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--restarts", restarts);
    sub->add_option("--budget", budget, "evaluations per restart");
    sub->add_option("--alphabet", alphabet, "four sizes, e.g. 2,2,2,2");
    sub->add_option("--initial", initial_path, "start distribution")->check(CLI::ExistingFile);
    sub->add_option("--threads", threads);
    sub->add_option("--frame", frame_spec, "labels i,j,k,l");
  };
  auto* minimize = app.add_subcommand("minimize", "Minimize an Ingleton objective over distributions");
  add_search_options(minimize);
  minimize->add_option("--objective", objective, "raw_score | tight_score | pipeline_score");
  minimize->add_option("--out", out_path, "write the best distribution (CSV, or JSON by extension)");

  int direction_count = 8;
  std::uint64_t direction_seed = 7;
  bool optima_only = false;
  auto* cloud = app.add_subcommand("cloud", "Cross-section points from directional searches");
  add_search_options(cloud);
  cloud->add_option("--directions", direction_count, "number of random directions");
  cloud->add_option("--direction-seed", direction_seed);
  cloud->add_flag("--optima-only", optima_only, "emit only the best point of each direction");
  cloud->add_option("--out", out_path, "points CSV (default stdout)");

  auto* hull = app.add_subcommand("hull", "Convex hull of a cross-section points CSV");
  hull->add_option("file", path)->required()->check(CLI::ExistingFile);
  hull->add_option("--obj", obj_path, "write v/f text");

  int dfz_max_s = 0;
  bool zy = false;
  std::string ineq_path;
  auto* outer = app.add_subcommand("outer", "Region cut out of the weight simplex by halfspaces");
  outer->add_option("--dfz-max-s", dfz_max_s, "include DFZ halfspaces s = 1..k");
  outer->add_flag("--zy", zy, "include the symmetrized Zhang-Yeung halfspace");
  outer->add_option("--ineq-file", ineq_path, "inequality JSON")->check(CLI::ExistingFile);
  outer->add_option("--frame", frame_spec, "labels i,j,k,l for coefficient-form inequalities");
  outer->add_option("--out", out_path, "region JSON");
  outer->add_option("--obj", obj_path, "write v/f text");

  std::string what;
  double export_p = 0.350457;
  auto* exp = app.add_subcommand("export", "Write reference data");
  exp->add_option("what", what, "rbar | vertices | fouratom | exl | fouratom-curve | dfz | config")->required();
  exp->add_option("--out", out_path, "output path (default stdout)");
  exp->add_option("--frame", frame_spec, "labels i,j,k,l");
  exp->add_option("--p", export_p, "parameter of the four-atom distribution");
  int export_dfz = 10;
  exp->add_option("--dfz-max-s", export_dfz, "largest s for dfz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    auto search = [&] {
      return search_config(config_path, seed, restarts, budget, objective, alphabet, initial_path, threads);
    };
    if (check->parsed()) return cmd_check(path, tol);
    if (entropy->parsed()) return cmd_entropy(path, bits, out_path);
    if (score->parsed()) return cmd_score(path, frame_spec);
    if (fouratom->parsed()) return cmd_fouratom(four_p, four_min);
    if (exl->parsed()) return cmd_exl(exl_default ? ExLParams::reference() : exl_params);
    if (minimize->parsed()) return cmd_minimize(search(), frame_spec, out_path);
    if (cloud->parsed()) {
      return cmd_cloud(search(), frame_spec, direction_count, direction_seed, optima_only, out_path);
    }
    if (hull->parsed()) return cmd_hull(path, obj_path);
    if (outer->parsed()) return cmd_outer(dfz_max_s, zy, ineq_path, frame_spec, out_path, obj_path);
    if (exp->parsed()) return cmd_export(what, out_path, frame_spec, export_p, export_dfz);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
