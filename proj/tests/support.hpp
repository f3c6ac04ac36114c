#ifndef ETK_TESTS_SUPPORT_HPP
#define ETK_TESTS_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "etk/entropy.hpp"
#include "etk/four_frame.hpp"
#include "etk/polymatroid.hpp"

namespace etk::testing {

inline GroundSet ground_of_size(int n) {
  std::vector<std::string> labels;
  for (int b = 0; b < n; ++b) labels.push_back(std::string(1, static_cast<char>('a' + b)));
  return GroundSet(labels);
}

inline double uniform(std::mt19937_64& rng, double lo = 0, double hi = 1) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Nonnegative combination of uniform matroid ranks with random loops, plus a
/// random modular part.
inline SetFunction random_polymatroid(const GroundSet& ground, std::mt19937_64& rng, int terms = 5) {
  SetFunction f(ground);
  std::uniform_int_distribution<Subset> subset(0, ground.full());
  for (int t = 0; t < terms; ++t) {
    const Subset loops = subset(rng) & ~singleton(0);
    const int free = ground.size() - cardinality(loops);
    const int m = std::uniform_int_distribution<int>(1, free)(rng);
    f = f + uniform(rng) * matroid_rank<double>(ground, m, loops);
  }
  std::vector<double> single(ground.size());
  for (double& v : single) v = uniform(rng);
  return f + modular_from<double>(ground, single);
}

inline SetFunction random_modular(const GroundSet& ground, std::mt19937_64& rng, double hi = 1) {
  std::vector<double> single(ground.size());
  for (double& v : single) v = uniform(rng, 0, hi);
  return modular_from<double>(ground, single);
}

/// Arbitrary (generally non-polymatroid) set function with f(empty) = 0.
inline SetFunction random_set_function(const GroundSet& ground, std::mt19937_64& rng) {
  return SetFunction::generate(ground, [&](Subset) { return uniform(rng, -2, 2); });
}

/// Random distribution on {0..a-1}^4 with `support` atoms.
inline JointDistribution random_distribution(std::mt19937_64& rng, int alphabet = 3, int support = 12) {
  std::vector<Atom> atoms;
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  double total = 0;
  for (int a = 0; a < support; ++a) {
    Atom atom{{sym(rng), sym(rng), sym(rng), sym(rng)}, uniform(rng, 0.01, 1)};
    total += atom.prob;
    atoms.push_back(std::move(atom));
  }
  for (auto& a : atoms) a.prob /= total;
  return JointDistribution(GroundSet::ijkl(), {alphabet, alphabet, alphabet, alphabet}, atoms);
}

/// Parameters of the forty-configuration family summing to 1/8.
inline ExLParams random_exl(std::mt19937_64& rng) {
  std::array<double, 5> w{};
  double sum = 0;
  for (double& x : w) sum += x = uniform(rng);
  for (double& x : w) x /= 8 * sum;
  w[0] = 0.125 - (w[1] + w[2] + w[3] + w[4]);
  return {w[0], w[1], w[2], w[3], w[4]};
}

/// Distribution on 4x4x4x4 near one of the two Ingleton-violating families,
/// mixed with a little noise.
inline JointDistribution near_violator(std::mt19937_64& rng) {
  const auto base = rng() % 2 ? four_atom_distribution({uniform(rng, 0.2, 0.5)})
                              : exl_distribution(random_exl(rng));
  const std::vector<int> sizes{4, 4, 4, 4};
  std::vector<double> padded(256, 0.0);
  // Re-index onto the 4x4x4x4 alphabet.
  for (const auto& a : base.atoms()) {
    long idx = 0, stride = 1;
    for (int v = 0; v < 4; ++v) {
      idx += a.symbols[v] * stride;
      stride *= 4;
    }
    padded[idx] += a.prob;
  }
  const double eps = uniform(rng, 0, 0.03);
  double total = 0;
  for (double& p : padded) total += p = (1 - eps) * p + eps * uniform(rng) / 128;
  for (double& p : padded) p /= total;
  return JointDistribution::from_cells(GroundSet::ijkl(), sizes, padded);
}

/// Frame whose Ingleton instance is violated by h, if any.
inline std::optional<IngletonFrame> violated_frame(const SetFunction& h, double tol = 1e-9) {
  for (const auto& fr : all_pair_frames()) {
    if (ingleton_value(h, fr) < -tol * std::max(1.0, h.rank())) return fr;
  }
  return std::nullopt;
}

}  // namespace etk::testing

#endif  // ETK_TESTS_SUPPORT_HPP
