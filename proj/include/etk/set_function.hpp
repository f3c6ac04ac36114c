#ifndef ETK_SET_FUNCTION_HPP
#define ETK_SET_FUNCTION_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "etk/ground_set.hpp"

namespace etk {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Real function on the power set of a ground set, stored densely by subset
/// bitmask. The value at the empty set is zero and every value is finite.
template <typename Scalar>
class SetFunctionT {
 public:
  using Vector = VectorX<Scalar>;

  SetFunctionT() = default;

  /// Zero function on `ground`.
  explicit SetFunctionT(GroundSet ground)
      : ground_(std::move(ground)), values_(Vector::Zero(ground_.power_size())) {}

  SetFunctionT(GroundSet ground, Vector values)
      : ground_(std::move(ground)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != ground_.power_size()) {
      throw std::invalid_argument("set function needs " + std::to_string(ground_.power_size()) +
                                  " values, got " + std::to_string(values_.size()));
    }
    if (values_[0] != Scalar(0)) {
      throw std::domain_error("set function must vanish at the empty set");
    }
    for (Eigen::Index s = 0; s < values_.size(); ++s) {
      if (!std::isfinite(static_cast<double>(values_[s]))) {
        throw std::domain_error("set function value at '" +
                                ground_.format_subset(static_cast<Subset>(s)) +
                                "' is not finite");
      }
    }
  }

  /// Builds f(S) = fn(S) for every nonempty S.
  template <typename Fn>
  static SetFunctionT generate(GroundSet ground, Fn&& fn) {
    Vector v(ground.power_size());
    v[0] = Scalar(0);
    for (Subset s = 1; s <= ground.full(); ++s) v[s] = static_cast<Scalar>(fn(s));
    return SetFunctionT(std::move(ground), std::move(v));
  }

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  const Vector& values() const { return values_; }

  Scalar operator()(Subset s) const {
    if (!ground_.valid(s)) {
      throw std::domain_error("subset bitmask " + std::to_string(s) + " is outside the ground set");
    }
    return values_[s];
  }
  Scalar operator()(std::string_view key) const { return values_[ground_.parse_subset(key)]; }

  /// Value at the whole ground set.
  Scalar rank() const { return values_[ground_.full()]; }

  template <typename Other>
  SetFunctionT<Other> cast() const {
    return SetFunctionT<Other>(ground_, values_.template cast<Other>());
  }

  friend SetFunctionT operator+(const SetFunctionT& a, const SetFunctionT& b) {
    require_same_ground(a, b);
    return SetFunctionT(a.ground_, a.values_ + b.values_);
  }
  friend SetFunctionT operator-(const SetFunctionT& a, const SetFunctionT& b) {
    require_same_ground(a, b);
    return SetFunctionT(a.ground_, a.values_ - b.values_);
  }
  friend SetFunctionT operator-(const SetFunctionT& a) {
    return SetFunctionT(a.ground_, -a.values_);
  }
  friend SetFunctionT operator*(Scalar c, const SetFunctionT& a) {
    return SetFunctionT(a.ground_, c * a.values_);
  }
  friend SetFunctionT operator*(const SetFunctionT& a, Scalar c) { return c * a; }
  friend SetFunctionT operator/(const SetFunctionT& a, Scalar c) {
    return SetFunctionT(a.ground_, a.values_ / c);
  }

  friend bool operator==(const SetFunctionT& a, const SetFunctionT& b) {
    return a.ground_ == b.ground_ && a.values_ == b.values_;
  }

 private:
  static void require_same_ground(const SetFunctionT& a, const SetFunctionT& b) {
    if (a.ground_ != b.ground_) throw std::invalid_argument("set functions live on different ground sets");
  }

  GroundSet ground_;
  Vector values_;
};

using SetFunction = SetFunctionT<double>;

/// Largest coordinatewise absolute difference.
template <typename Scalar>
Scalar max_abs_diff(const SetFunctionT<Scalar>& a, const SetFunctionT<Scalar>& b) {
  if (a.ground() != b.ground()) throw std::invalid_argument("set functions live on different ground sets");
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

/// h_pi(S) = h(pi(S)) where `perm[b]` is the image of bit b.
template <typename Scalar, typename Perm>
SetFunctionT<Scalar> permute(const SetFunctionT<Scalar>& h, const Perm& perm) {
  return SetFunctionT<Scalar>::generate(h.ground(), [&](Subset s) {
    Subset image = 0;
    for (int b = 0; b < h.size(); ++b) {
      if (contains(s, b)) image |= singleton(perm[b]);
    }
    return h.values()[image];
  });
}

}  // namespace etk

#endif  // ETK_SET_FUNCTION_HPP
