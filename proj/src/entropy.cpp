#include "etk/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace etk {

namespace {

constexpr double kMassTol = 1e-12;

double kappa_clamped(double u) {
  if (u < kProbabilityFloor) return 0.0;
  if (u >= 1.0) return 0.0;
  return -u * std::log(u);
}

std::vector<std::size_t> strides_of(std::span<const int> alphabet_sizes) {
  std::vector<std::size_t> strides(alphabet_sizes.size());
  std::size_t stride = 1;
  for (std::size_t b = 0; b < alphabet_sizes.size(); ++b) {
    strides[b] = stride;
    stride *= static_cast<std::size_t>(alphabet_sizes[b]);
  }
  return strides;
}

}  // namespace

JointDistribution::JointDistribution(GroundSet ground, std::vector<int> alphabet_sizes,
                                     std::vector<Atom> atoms)
    : ground_(std::move(ground)), alphabet_sizes_(std::move(alphabet_sizes)) {
  const auto n = static_cast<std::size_t>(ground_.size());
  if (alphabet_sizes_.size() != n) {
    throw std::domain_error("need one alphabet size per variable");
  }
  double cells = 1;
  for (int a : alphabet_sizes_) {
    if (a < 1) throw std::domain_error("alphabet sizes must be positive");
    cells *= a;
  }
  if (cells > kMaxCells) throw std::domain_error("distribution spans more than 1e7 cells");

  std::map<std::vector<int>, double> merged;
  double total = 0;
  for (auto& atom : atoms) {
    if (atom.symbols.size() != n) throw std::domain_error("atom has the wrong number of coordinates");
    for (std::size_t b = 0; b < n; ++b) {
      if (atom.symbols[b] < 0 || atom.symbols[b] >= alphabet_sizes_[b]) {
        throw std::domain_error("atom symbol outside its alphabet");
      }
    }
    if (!(atom.prob >= 0) || !std::isfinite(atom.prob)) {
      throw std::domain_error("probabilities must be finite and nonnegative");
    }
    merged[atom.symbols] += atom.prob;
    total += atom.prob;
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw std::domain_error("probabilities sum to " + std::to_string(total) + ", not 1");
  }
  atoms_.reserve(merged.size());
  for (auto& [symbols, prob] : merged) atoms_.push_back({symbols, prob});
}

JointDistribution JointDistribution::from_cells(GroundSet ground, std::vector<int> alphabet_sizes,
                                                std::span<const double> cells) {
  std::vector<Atom> atoms;
  const std::size_t n = alphabet_sizes.size();
  std::vector<int> symbols(n, 0);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c] != 0.0) atoms.push_back({symbols, cells[c]});
    for (std::size_t b = 0; b < n; ++b) {
      if (++symbols[b] < alphabet_sizes[b]) break;
      symbols[b] = 0;
    }
  }
  return JointDistribution(std::move(ground), std::move(alphabet_sizes), std::move(atoms));
}

std::size_t JointDistribution::cell_count() const {
  std::size_t cells = 1;
  for (int a : alphabet_sizes_) cells *= static_cast<std::size_t>(a);
  return cells;
}

std::vector<double> JointDistribution::to_cells() const {
  std::vector<double> cells(cell_count(), 0.0);
  const auto strides = strides_of(alphabet_sizes_);
  for (const auto& atom : atoms_) {
    std::size_t c = 0;
    for (std::size_t b = 0; b < strides.size(); ++b) c += strides[b] * atom.symbols[b];
    cells[c] += atom.prob;
  }
  return cells;
}

double kappa(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("kappa is defined on [0, 1]");
  if (u == 0.0) return 0.0;
  return -u * std::log(u);
}

SetFunction entropy_function(const JointDistribution& d) {
  const auto& ground = d.ground();
  const auto& atoms = d.atoms();
  const auto strides = strides_of(d.alphabet_sizes());
  std::vector<std::pair<std::size_t, double>> keyed(atoms.size());

  return SetFunction::generate(ground, [&](Subset s) {
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      std::size_t key = 0;
      for (int b = 0; b < ground.size(); ++b) {
        if (contains(s, b)) key += strides[b] * atoms[a].symbols[b];
      }
      keyed[a] = {key, atoms[a].prob};
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    double h = 0;
    for (std::size_t a = 0; a < keyed.size();) {
      double mass = 0;
      std::size_t b = a;
      for (; b < keyed.size() && keyed[b].first == keyed[a].first; ++b) mass += keyed[b].second;
      h += kappa_clamped(mass);
      a = b;
    }
    return h;
  });
}

SetFunction entropy_from_cells(const GroundSet& ground, std::span<const int> alphabet_sizes,
                               std::span<const double> cells) {
  const int n = ground.size();
  const auto strides = strides_of(alphabet_sizes);
  std::vector<double> marginal;
  std::vector<int> symbols(n);

  return SetFunction::generate(ground, [&](Subset s) {
    // Marginal index uses only the variables of s, first one least significant.
    std::vector<std::size_t> sub_stride(n, 0);
    std::size_t size = 1;
    for (int b = 0; b < n; ++b) {
      if (contains(s, b)) {
        sub_stride[b] = size;
        size *= static_cast<std::size_t>(alphabet_sizes[b]);
      }
    }
    marginal.assign(size, 0.0);
    std::fill(symbols.begin(), symbols.end(), 0);
    std::size_t index = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      marginal[index] += cells[c];
      for (int b = 0; b < n; ++b) {
        index += sub_stride[b];
        if (++symbols[b] < alphabet_sizes[b]) break;
        index -= sub_stride[b] * static_cast<std::size_t>(alphabet_sizes[b]);
        symbols[b] = 0;
      }
    }
    double h = 0;
    for (double m : marginal) h += kappa_clamped(m);
    return h;
  });
}

// ---------------------------------------------------------------------------

JointDistribution four_atom_distribution(FourAtomParams params) {
  const double p = params.p;
  if (!(p >= 0.0 && p <= 0.5)) throw std::domain_error("four-atom parameter p must lie in [0, 1/2]");
  std::vector<Atom> atoms;
  auto add = [&](std::vector<int> x, double prob) {
    if (prob > 0) atoms.push_back({std::move(x), prob});
  };
  add({0, 0, 0, 0}, p);
  add({0, 1, 0, 1}, 0.5 - p);
  add({1, 0, 0, 1}, 0.5 - p);
  add({1, 1, 1, 1}, p);
  return JointDistribution(GroundSet::ijkl(), {2, 2, 2, 2}, std::move(atoms));
}

double four_atom_score(FourAtomParams params) {
  const double p = params.p;
  if (!(p >= 0.0 && p <= 0.5)) throw std::domain_error("four-atom parameter p must lie in [0, 1/2]");
  const double numerator = (2 * p + 1) * std::numbers::ln2 - 2 * kappa(p) - 2 * kappa(1 - p);
  const double denominator = 2 * kappa(p) + 2 * kappa(0.5 - p);
  if (!(denominator > 0)) throw std::domain_error("four-atom entropy vanishes");
  return numerator / denominator;
}

// ---------------------------------------------------------------------------

ExLParams ExLParams::reference() { return {0.09524, 0.02494, 0.00160, 0.00161, 0.00161}; }

void ExLParams::validate() const {
  for (double x : {p, q, r, s, t}) {
    if (!(x >= 0) || !std::isfinite(x)) throw std::domain_error("parameters must be nonnegative");
  }
  if (std::abs(p + q + r + s + t - 0.125) > kMassTol) {
    throw std::domain_error("parameters p+q+r+s+t must sum to 1/8");
  }
}

const std::array<std::array<const char*, 5>, 8>& exl_table() {
  //                                                 p       q       r       s       t
  static const std::array<std::array<const char*, 5>, 8> table{{
      {"0000", "0210", "0011", "0010", "0001"},
      {"0101", "0321", "0120", "0121", "0100"},
      {"1010", "1100", "1002", "1000", "1012"},
      {"1212", "1332", "1230", "1232", "1210"},
      {"2121", "2001", "2103", "2101", "2123"},
      {"2323", "2233", "2331", "2333", "2321"},
      {"3232", "3012", "3213", "3212", "3233"},
      {"3333", "3123", "3322", "3323", "3332"},
  }};
  return table;
}

JointDistribution exl_distribution(const ExLParams& params) {
  params.validate();
  const std::array<double, 5> weight{params.p, params.q, params.r, params.s, params.t};
  std::vector<Atom> atoms;
  for (const auto& row : exl_table()) {
    for (std::size_t col = 0; col < 5; ++col) {
      if (weight[col] == 0) continue;
      std::vector<int> x;
      for (const char* c = row[col]; *c; ++c) x.push_back(*c - '0');
      atoms.push_back({std::move(x), weight[col]});
    }
  }
  return JointDistribution(GroundSet::ijkl(), {4, 4, 4, 4}, std::move(atoms));
}

SetFunction exl_closed_form(const ExLParams& params) {
  params.validate();
  const auto [p, q, r, s, t] = params;
  const auto ground = GroundSet::ijkl();
  const double ln2 = std::numbers::ln2;
  auto k = [](double u) { return kappa(std::min(u, 1.0)); };

  SetFunction::Vector v = SetFunction::Vector::Zero(16);
  auto at = [&](const char* key) -> double& { return v[ground.parse_subset(key)]; };
  for (const char* x : {"i", "j", "k", "l"}) at(x) = 2 * ln2;
  at("il") = 3 * ln2;
  at("jk") = 3 * ln2;
  at("ij") = 8 * k(q) + 8 * k(p + r + s + t);
  at("kl") = 8 * k(r) + 8 * k(p + q + s + t);
  at("ik") = 4 * k(2 * p + 2 * t) + 8 * k(q + r + s);
  at("jl") = 4 * k(2 * p + 2 * s) + 8 * k(q + r + t);
  at("ikl") = 8 * k(p + t) + 8 * k(q + s) + 8 * k(r);
  at("jkl") = 8 * k(p + s) + 8 * k(q + t) + 8 * k(r);
  at("ijk") = 8 * k(p + t) + 8 * k(r + s) + 8 * k(q);
  at("ijl") = 8 * k(p + s) + 8 * k(r + t) + 8 * k(q);
  at("ijkl") = 8 * (k(p) + k(q) + k(r) + k(s) + k(t));
  return SetFunction(ground, std::move(v));
}

}  // namespace etk
