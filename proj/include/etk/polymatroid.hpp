#ifndef ETK_POLYMATROID_HPP
#define ETK_POLYMATROID_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "etk/set_function.hpp"

namespace etk {

/// Tolerance for axiom checks on analytically constructed functions.
inline constexpr double kAnalyticTol = 1e-9;
/// Tolerance for axiom checks on entropy functions.
inline constexpr double kEntropicTol = 1e-7;

// ---------------------------------------------------------------------------
// Scalar functionals

/// f(I) + f(J) - f(I u J) - f(I n J).
template <typename Scalar>
Scalar delta(const SetFunctionT<Scalar>& f, Subset I, Subset J) {
  return f(I) + f(J) - f(I | J) - f(I & J);
}

/// Conditional form Delta_{ab|L}: delta along aL and bL.
template <typename Scalar>
Scalar cond_delta(const SetFunctionT<Scalar>& f, int a, int b, Subset L = 0) {
  return delta(f, singleton(a) | L, singleton(b) | L);
}

// ---------------------------------------------------------------------------
// Axioms

struct SubsetPair {
  Subset first = 0;
  Subset second = 0;
  friend bool operator==(const SubsetPair&, const SubsetPair&) = default;
};

/// Outcome of the polymatroid axiom check.
///
/// A monotone witness (A, B) has A = B minus one element and reports
/// f(A) - f(B). A submodular witness (iK, jK) reports -delta(f, iK, jK).
/// Worst violations are these magnitudes (zero when nothing is violated) and
/// the first witness of each list reproduces the worst one.
template <typename Scalar>
struct AxiomReportT {
  bool is_monotone = true;
  bool is_submodular = true;
  Scalar worst_monotone_violation = 0;
  Scalar worst_submodular_violation = 0;
  std::vector<SubsetPair> monotone_witnesses;
  std::vector<SubsetPair> submodular_witnesses;

  bool is_polymatroid() const { return is_monotone && is_submodular; }
};

using AxiomReport = AxiomReportT<double>;

namespace detail {

template <typename Scalar>
void collect(std::vector<std::pair<Scalar, SubsetPair>>& found, std::vector<SubsetPair>& out,
             Scalar& worst) {
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  worst = found.empty() ? Scalar(0) : found.front().first;
  out.clear();
  for (const auto& item : found) out.push_back(item.second);
}

}  // namespace detail

/// Checks f(S - i) <= f(S) for every S and i in S, and the elemental
/// submodular inequalities Delta_{ij|K} >= 0, both up to `tol`.
///
/// Monotonicity is checked on all covering pairs rather than only at the top
/// so that the flag is meaningful for functions that are not submodular.
template <typename Scalar>
AxiomReportT<Scalar> check_axioms(const SetFunctionT<Scalar>& f, Scalar tol = Scalar(kAnalyticTol)) {
  if (tol < Scalar(0)) throw std::domain_error("tolerance must be nonnegative");
  const int n = f.size();
  const Subset full = f.ground().full();
  const auto& v = f.values();

  std::vector<std::pair<Scalar, SubsetPair>> mono;
  for (Subset s = 1; s <= full; ++s) {
    for (int i = 0; i < n; ++i) {
      if (!contains(s, i)) continue;
      const Subset below = s & ~singleton(i);
      const Scalar violation = v[below] - v[s];
      if (violation > tol) mono.push_back({violation, {below, s}});
    }
  }

  std::vector<std::pair<Scalar, SubsetPair>> sub;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Subset rest = full & ~(singleton(i) | singleton(j));
      // Enumerate K over all subsets of `rest`.
      for (Subset k = rest;; k = (k - 1) & rest) {
        const Subset a = singleton(i) | k;
        const Subset b = singleton(j) | k;
        const Scalar violation = -(v[a] + v[b] - v[a | b] - v[k]);
        if (violation > tol) sub.push_back({violation, {a, b}});
        if (k == 0) break;
      }
    }
  }

  AxiomReportT<Scalar> report;
  detail::collect(mono, report.monotone_witnesses, report.worst_monotone_violation);
  detail::collect(sub, report.submodular_witnesses, report.worst_submodular_violation);
  report.is_monotone = report.monotone_witnesses.empty();
  report.is_submodular = report.submodular_witnesses.empty();
  return report;
}

template <typename Scalar>
bool is_polymatroid(const SetFunctionT<Scalar>& f, Scalar tol = Scalar(kAnalyticTol)) {
  return check_axioms(f, tol).is_polymatroid();
}

// ---------------------------------------------------------------------------
// Generators

/// Rank function of the uniform matroid of rank m with loops `loops`:
/// r(I) = min{m, |I - loops|}.
template <typename Scalar = double>
SetFunctionT<Scalar> matroid_rank(const GroundSet& ground, int m, Subset loops = 0) {
  if (!ground.valid(loops)) throw std::domain_error("loop set is outside the ground set");
  const int free_elements = ground.size() - cardinality(loops);
  if (m < 0 || m > free_elements) {
    throw std::domain_error("matroid rank " + std::to_string(m) + " outside [0, " +
                            std::to_string(free_elements) + "]");
  }
  return SetFunctionT<Scalar>::generate(
      ground, [&](Subset s) { return std::min(m, cardinality(s & ~loops)); });
}

/// Additive extension of per-element values given in ground order.
template <typename Scalar>
SetFunctionT<Scalar> modular_from(const GroundSet& ground, std::span<const Scalar> singletons) {
  if (static_cast<int>(singletons.size()) != ground.size()) {
    throw std::invalid_argument("modular_from needs one value per ground element");
  }
  for (Scalar x : singletons) {
    if (!(x >= Scalar(0))) throw std::domain_error("modular values must be nonnegative");
  }
  return SetFunctionT<Scalar>::generate(ground, [&](Subset s) {
    Scalar sum = 0;
    for (int b = 0; b < ground.size(); ++b) {
      if (contains(s, b)) sum += singletons[b];
    }
    return sum;
  });
}

template <typename Scalar>
SetFunctionT<Scalar> modular_from(const GroundSet& ground, std::initializer_list<Scalar> singletons) {
  return modular_from(ground, std::span<const Scalar>(singletons.begin(), singletons.size()));
}

// ---------------------------------------------------------------------------
// Modularity, tightness and the tight + modular decomposition

template <typename Scalar>
bool is_modular(const SetFunctionT<Scalar>& f, Scalar tol = Scalar(kAnalyticTol)) {
  Scalar sum = 0;
  for (int b = 0; b < f.size(); ++b) sum += f(singleton(b));
  return std::abs(f.rank() - sum) <= tol && is_polymatroid(f, tol);
}

template <typename Scalar>
bool is_tight(const SetFunctionT<Scalar>& f, Scalar tol = Scalar(kAnalyticTol)) {
  const Subset full = f.ground().full();
  for (int b = 0; b < f.size(); ++b) {
    if (std::abs(f(full) - f(full & ~singleton(b))) > tol) return false;
  }
  return true;
}

/// h^m(I) = sum over i in I of h(N) - h(N - i).
template <typename Scalar>
SetFunctionT<Scalar> modular_part(const SetFunctionT<Scalar>& h) {
  const Subset full = h.ground().full();
  VectorX<Scalar> top_gain(h.size());
  for (int b = 0; b < h.size(); ++b) top_gain[b] = h(full) - h(full & ~singleton(b));
  return SetFunctionT<Scalar>::generate(h.ground(), [&](Subset s) {
    Scalar sum = 0;
    for (int b = 0; b < h.size(); ++b) {
      if (contains(s, b)) sum += top_gain[b];
    }
    return sum;
  });
}

/// h^ti = h - h^m.
///
/// Each coordinate is the floating-point neighbour of h(I) - h^m(I) for which
/// adding h^m(I) back reproduces h(I) exactly, so the decomposition
/// tight_part(h) + modular_part(h) == h holds bit for bit whenever such a
/// neighbour exists (always for polymatroids, where 0 <= h^m <= h).
template <typename Scalar>
SetFunctionT<Scalar> tight_part(const SetFunctionT<Scalar>& h) {
  const auto mod = modular_part(h);
  VectorX<Scalar> out = h.values() - mod.values();
  for (Eigen::Index s = 1; s < out.size(); ++s) {
    const Scalar target = h.values()[s];
    const Scalar m = mod.values()[s];
    for (int step = 0; step < 4 && out[s] + m != target; ++step) {
      const Scalar dir = (out[s] + m < target) ? std::numeric_limits<Scalar>::infinity()
                                               : -std::numeric_limits<Scalar>::infinity();
      out[s] = std::nextafter(out[s], dir);
    }
    if (out[s] + m != target) out[s] = target - m;
  }
  return SetFunctionT<Scalar>(h.ground(), std::move(out));
}

// ---------------------------------------------------------------------------
// Convolution

/// (f * g)(I) = min over J in I of f(J) + g(I - J), by enumeration of all
/// subset pairs.
template <typename Scalar>
SetFunctionT<Scalar> convolution(const SetFunctionT<Scalar>& f, const SetFunctionT<Scalar>& g) {
  if (f.ground() != g.ground()) throw std::invalid_argument("convolution of functions on different ground sets");
  const auto& fv = f.values();
  const auto& gv = g.values();
  return SetFunctionT<Scalar>::generate(f.ground(), [&](Subset I) {
    Scalar best = fv[I] + gv[0];
    for (Subset J = (I - 1) & I;; J = (J - 1) & I) {
      best = std::min(best, fv[J] + gv[I & ~J]);
      if (J == 0) break;
    }
    return best;
  });
}

/// Convolution with a modular g computed one element at a time.
///
/// g is written as the convolution of modular g_i that agree with g at i and
/// take a value above every singleton of f and g elsewhere. Each factor acts by
/// the closed form (h * g_i)(iI) = min{h(I) + g(i), h(iI)}, I in N - i, which
/// is valid for polymatroidal h.
template <typename Scalar>
SetFunctionT<Scalar> convolve_modular_iterative(const SetFunctionT<Scalar>& f,
                                                const SetFunctionT<Scalar>& g) {
  if (f.ground() != g.ground()) throw std::invalid_argument("convolution of functions on different ground sets");
  const Scalar scale = std::max(Scalar(1), std::abs(g.rank()));
  if (!is_modular(g, Scalar(kAnalyticTol) * scale)) {
    throw std::domain_error("convolve_modular_iterative requires a modular second argument");
  }
  VectorX<Scalar> h = f.values();
  const Subset full = f.ground().full();
  for (int i = 0; i < f.size(); ++i) {
    const Subset bit = singleton(i);
    const Scalar gi = g(bit);
    const Subset rest = full & ~bit;
    for (Subset I = rest;; I = (I - 1) & rest) {
      h[I | bit] = std::min(h[I] + gi, h[I | bit]);
      if (I == 0) break;
    }
  }
  return SetFunctionT<Scalar>(f.ground(), std::move(h));
}

// ---------------------------------------------------------------------------
// Contraction and extensions

/// h(J) = f(J u I) - f(I) on the ground set N - I.
template <typename Scalar>
SetFunctionT<Scalar> contraction(const SetFunctionT<Scalar>& f, Subset I) {
  if (!f.ground().valid(I)) throw std::domain_error("contraction set is outside the ground set");
  if (I == f.ground().full()) throw std::domain_error("cannot contract the whole ground set");
  const Subset kept = f.ground().full() & ~I;
  const Scalar base = f(I);
  return SetFunctionT<Scalar>::generate(f.ground().without(I), [&](Subset J) {
    return f.values()[deposit_bits(J, kept) | I] - base;
  });
}

/// Adds `label` as a new top element parallel to L: h(J) = f(J),
/// h(0 u J) = f(L u J).
template <typename Scalar>
SetFunctionT<Scalar> parallel_extension(const SetFunctionT<Scalar>& f, Subset L, const std::string& label) {
  if (!f.ground().valid(L)) throw std::domain_error("parallel set is outside the ground set");
  const Subset full = f.ground().full();
  const Subset added = singleton(f.size());
  return SetFunctionT<Scalar>::generate(f.ground().with(label), [&](Subset s) {
    return (s & added) ? f.values()[(s & full) | L] : f.values()[s];
  });
}

namespace detail {

template <typename Scalar>
void require_principal_value(const SetFunctionT<Scalar>& f, Subset L, Scalar t) {
  if (!f.ground().valid(L)) throw std::domain_error("principal set is outside the ground set");
  if (!(t >= Scalar(0) && t <= f(L))) {
    throw std::domain_error("principal extension value must lie in [0, f(L)]");
  }
}

}  // namespace detail

/// Principal extension on L with value t: the parallel extension convolved
/// with a modular function that is t at the new element,
/// f_{L,t}(J) = f(J), f_{L,t}(0 u I) = min{f(I) + t, f(L u I)}.
template <typename Scalar>
SetFunctionT<Scalar> principal_extension(const SetFunctionT<Scalar>& f, Subset L, Scalar t,
                                         const std::string& label = "0") {
  detail::require_principal_value(f, L, t);
  const Subset full = f.ground().full();
  const Subset added = singleton(f.size());
  return SetFunctionT<Scalar>::generate(f.ground().with(label), [&](Subset s) {
    if (!(s & added)) return f.values()[s];
    const Subset I = s & full;
    return std::min(f.values()[I] + t, f.values()[I | L]);
  });
}

/// Contraction of the principal extension by its new element:
/// f*_{L,t}(I) = min{f(I), f(L u I) - t}. With L = N this is truncation by t.
template <typename Scalar>
SetFunctionT<Scalar> pe_contract(const SetFunctionT<Scalar>& f, Subset L, Scalar t) {
  detail::require_principal_value(f, L, t);
  return SetFunctionT<Scalar>::generate(f.ground(), [&](Subset I) {
    return std::min(f.values()[I], f.values()[I | L] - t);
  });
}

/// {i : f(iI) <= f(I) + tol}.
template <typename Scalar>
Subset closure_of(const SetFunctionT<Scalar>& f, Subset I, Scalar tol = Scalar(kAnalyticTol)) {
  if (tol < Scalar(0)) throw std::domain_error("tolerance must be nonnegative");
  const Scalar base = f(I);
  Subset out = 0;
  for (int b = 0; b < f.size(); ++b) {
    if (f.values()[I | singleton(b)] <= base + tol) out |= singleton(b);
  }
  return out;
}

}  // namespace etk

#endif  // ETK_POLYMATROID_HPP
