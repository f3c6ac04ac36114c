#include "etk/ground_set.hpp"

#include <algorithm>

namespace etk {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() > kMaxGroundSize) {
    throw std::invalid_argument("ground set must have between 1 and 8 labels, got " +
                                std::to_string(labels_.size()));
  }
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    if (labels_[a].empty()) throw std::invalid_argument("empty label in ground set");
    for (std::size_t b = 0; b < a; ++b) {
      if (labels_[a] == labels_[b]) {
        throw std::invalid_argument("duplicate label '" + labels_[a] + "'");
      }
    }
  }
}

GroundSet GroundSet::ijkl() { return GroundSet({"i", "j", "k", "l"}); }

std::optional<int> GroundSet::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int GroundSet::index_of(std::string_view label) const {
  if (auto b = find(label)) return *b;
  throw std::invalid_argument("unknown label '" + std::string(label) + "'");
}

namespace {

// Counts parses of key[pos..] as distinct labels, stopping at two.
int count_parses(const std::vector<std::string>& labels, std::string_view key,
                 std::size_t pos, Subset used, Subset& first) {
  if (pos == key.size()) {
    first = used;
    return 1;
  }
  int total = 0;
  for (std::size_t b = 0; b < labels.size() && total < 2; ++b) {
    if (contains(used, static_cast<int>(b))) continue;
    if (key.substr(pos, labels[b].size()) != labels[b]) continue;
    Subset found = 0;
    int n = count_parses(labels, key, pos + labels[b].size(), used | singleton(b), found);
    if (n > 0 && total == 0) first = found;
    total += n;
  }
  return total;
}

}  // namespace

Subset GroundSet::parse_subset(std::string_view key) const {
  Subset result = 0;
  int n = count_parses(labels_, key, 0, 0, result);
  if (n == 0) throw ParseError("'" + std::string(key) + "' is not a subset of the ground set");
  if (n > 1) throw ParseError("subset key '" + std::string(key) + "' is ambiguous");
  return result;
}

std::string GroundSet::format_subset(Subset s) const {
  std::string out;
  for (int b = 0; b < size(); ++b) {
    if (contains(s, b)) out += labels_[b];
  }
  return out;
}

GroundSet GroundSet::with(std::string label) const {
  auto labels = labels_;
  labels.push_back(std::move(label));
  return GroundSet(std::move(labels));
}

GroundSet GroundSet::without(Subset removed) const {
  std::vector<std::string> labels;
  for (int b = 0; b < size(); ++b) {
    if (!contains(removed, b)) labels.push_back(labels_[b]);
  }
  return GroundSet(std::move(labels));
}

}  // namespace etk
