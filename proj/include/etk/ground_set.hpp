#ifndef ETK_GROUND_SET_HPP
#define ETK_GROUND_SET_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace etk {

/// Subset of a ground set, bit b set iff label b is a member.
using Subset = std::uint32_t;

inline constexpr int kMaxGroundSize = 8;

/// Raised by file readers for malformed input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int cardinality(Subset s) { return std::popcount(s); }
inline Subset singleton(int bit) { return Subset{1} << bit; }
inline bool contains(Subset s, int bit) { return (s >> bit) & 1u; }

/// Labeled finite set of 1..8 elements. Label b owns bit b of every Subset.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  /// The labels "i","j","k","l".
  static GroundSet ijkl();

  int size() const { return static_cast<int>(labels_.size()); }
  std::size_t power_size() const { return std::size_t{1} << labels_.size(); }
  Subset full() const { return static_cast<Subset>(power_size() - 1); }
  bool valid(Subset s) const { return (s & ~full()) == 0; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int bit) const { return labels_.at(bit); }

  std::optional<int> find(std::string_view label) const;
  /// Bit position of `label`; throws std::invalid_argument when absent.
  int index_of(std::string_view label) const;

  /// Parses a concatenation of labels ("ik"). The parse must be unique.
  Subset parse_subset(std::string_view key) const;
  /// Concatenated labels in ground order; "" for the empty set.
  std::string format_subset(Subset s) const;

  /// Ground set with `label` appended as the highest bit.
  GroundSet with(std::string label) const;
  /// Ground set restricted to the complement of `removed`, order kept.
  GroundSet without(Subset removed) const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Spreads the low bits of `compact` onto the set bits of `mask`.
inline Subset deposit_bits(Subset compact, Subset mask) {
  Subset out = 0;
  for (int b = 0; mask != 0; mask &= mask - 1) {
    if ((compact >> b++) & 1u) out |= mask & (~mask + 1);
  }
  return out;
}

}  // namespace etk

#endif  // ETK_GROUND_SET_HPP
