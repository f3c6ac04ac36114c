#ifndef ETK_ENTROPY_HPP
#define ETK_ENTROPY_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "etk/set_function.hpp"

namespace etk {

/// Largest number of cells (product of alphabet sizes) a distribution may span.
inline constexpr double kMaxCells = 1e7;
/// Probabilities below this are treated as zero inside kappa.
inline constexpr double kProbabilityFloor = 1e-15;

struct Atom {
  std::vector<int> symbols;
  double prob = 0;
};

/// Probability mass function over a finite product alphabet.
class JointDistribution {
 public:
  JointDistribution() = default;
  /// Validates alphabet ranges and total mass (1 within 1e-12). Atoms with the
  /// same configuration are merged.
  JointDistribution(GroundSet ground, std::vector<int> alphabet_sizes, std::vector<Atom> atoms);

  /// Dense form: `cells[c]` is the mass of the configuration whose mixed-radix
  /// index (first variable least significant) is c. Zero cells are dropped.
  static JointDistribution from_cells(GroundSet ground, std::vector<int> alphabet_sizes,
                                      std::span<const double> cells);

  const GroundSet& ground() const { return ground_; }
  const std::vector<int>& alphabet_sizes() const { return alphabet_sizes_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t cell_count() const;

  std::vector<double> to_cells() const;

 private:
  GroundSet ground_;
  std::vector<int> alphabet_sizes_;
  std::vector<Atom> atoms_;
};

/// -u ln u, with kappa(0) = 0. Throws std::domain_error outside [0, 1].
double kappa(double u);

/// Shannon entropies (nats) of all marginals.
SetFunction entropy_function(const JointDistribution& d);

/// Entropy function of a dense distribution (see JointDistribution::from_cells).
/// `cells` must be nonnegative and sum to 1; no further validation is done.
SetFunction entropy_from_cells(const GroundSet& ground, std::span<const int> alphabet_sizes,
                               std::span<const double> cells);

// ---------------------------------------------------------------------------
// Four-atom family

struct FourAtomParams {
  double p = 0.25;  ///< probability of xi_i xi_j = 00, in [0, 1/2]
};

/// xi_i, xi_j exchangeable fair bits, xi_k = min, xi_l = max; variables in
/// ground order i, j, k, l.
JointDistribution four_atom_distribution(FourAtomParams params);

/// Closed-form Ingleton score of the four-atom family.
double four_atom_score(FourAtomParams params);

// ---------------------------------------------------------------------------
// Forty-configuration family

struct ExLParams {
  double p = 0.125, q = 0, r = 0, s = 0, t = 0;

  /// p=0.09524, q=0.02494, r=0.00160, s=t=0.00161.
  static ExLParams reference();
  /// Throws std::domain_error unless all are nonnegative and sum to 1/8.
  void validate() const;
};

/// The configuration table: eight rows by five columns (p, q, r, s, t); each
/// entry lists the symbols of xi_i xi_j xi_k xi_l.
const std::array<std::array<const char*, 5>, 8>& exl_table();

JointDistribution exl_distribution(const ExLParams& params);

/// Entropy function of exl_distribution from the closed-form expressions.
SetFunction exl_closed_form(const ExLParams& params);

}  // namespace etk

#endif  // ETK_ENTROPY_HPP
