#ifndef ETK_FOUR_FRAME_HPP
#define ETK_FOUR_FRAME_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etk/polymatroid.hpp"

namespace etk {

/// Ordered role assignment (i, j, k, l) of the four elements of a ground set.
/// The pair {i, j} selects the Ingleton instance; k and l are the others.
class IngletonFrame {
 public:
  IngletonFrame() = default;
  IngletonFrame(int i, int j, int k, int l) : bits_{i, j, k, l} {
    unsigned seen = 0;
    for (int b : bits_) {
      if (b < 0 || b > 3) throw std::invalid_argument("frame bits must lie in 0..3");
      seen |= 1u << b;
    }
    if (seen != 0xFu) throw std::invalid_argument("frame roles must be four distinct elements");
  }

  /// Frame from labels of `ground`, e.g. {"i","j","k","l"}.
  static IngletonFrame from_labels(const GroundSet& ground, const std::array<std::string, 4>& labels) {
    if (ground.size() != 4) throw std::invalid_argument("an Ingleton frame needs a four-element ground set");
    return IngletonFrame(ground.index_of(labels[0]), ground.index_of(labels[1]),
                         ground.index_of(labels[2]), ground.index_of(labels[3]));
  }

  int i() const { return bits_[0]; }
  int j() const { return bits_[1]; }
  int k() const { return bits_[2]; }
  int l() const { return bits_[3]; }

  /// Subset of roles given as a string over "ijkl", e.g. set("ikl").
  Subset set(std::string_view roles) const {
    Subset s = 0;
    for (char c : roles) {
      switch (c) {
        case 'i': s |= singleton(i()); break;
        case 'j': s |= singleton(j()); break;
        case 'k': s |= singleton(k()); break;
        case 'l': s |= singleton(l()); break;
        default: throw std::invalid_argument("role must be one of i, j, k, l");
      }
    }
    return s;
  }

  /// Frame with roles of i and j exchanged.
  IngletonFrame swap_ij() const { return IngletonFrame(j(), i(), k(), l()); }
  /// Frame with roles of k and l exchanged.
  IngletonFrame swap_kl() const { return IngletonFrame(i(), j(), l(), k()); }

  friend bool operator==(const IngletonFrame&, const IngletonFrame&) = default;

 private:
  std::array<int, 4> bits_{0, 1, 2, 3};
};

namespace detail {

template <typename Scalar>
void require_four(const SetFunctionT<Scalar>& h) {
  if (h.size() != 4) throw std::invalid_argument("four-variable operation on a ground set of size " +
                                                 std::to_string(h.size()));
}

}  // namespace detail

/// Delta_{ab|L} with roles named by frame letters: frame_delta(h, fr, 'k', 'l', "ij").
template <typename Scalar>
Scalar frame_delta(const SetFunctionT<Scalar>& h, const IngletonFrame& fr, char a, char b,
                   std::string_view given = "") {
  return delta(h, fr.set(std::string(1, a)) | fr.set(given), fr.set(std::string(1, b)) | fr.set(given));
}

// ---------------------------------------------------------------------------
// Ingleton functional

/// Coefficient vector of the Ingleton expression for the frame's pair {i, j}.
template <typename Scalar = double>
VectorX<Scalar> ingleton_functional(const IngletonFrame& fr) {
  VectorX<Scalar> c = VectorX<Scalar>::Zero(16);
  for (const char* s : {"ik", "jk", "il", "jl", "kl"}) c[fr.set(s)] += Scalar(1);
  for (const char* s : {"ij", "k", "l", "ikl", "jkl"}) c[fr.set(s)] -= Scalar(1);
  return c;
}

/// h(ik)+h(jk)+h(il)+h(jl)+h(kl)-h(ij)-h(k)-h(l)-h(ikl)-h(jkl).
template <typename Scalar>
Scalar ingleton_value(const SetFunctionT<Scalar>& h, const IngletonFrame& fr) {
  detail::require_four(h);
  const auto& v = h.values();
  return v[fr.set("ik")] + v[fr.set("jk")] + v[fr.set("il")] + v[fr.set("jl")] + v[fr.set("kl")] -
         v[fr.set("ij")] - v[fr.set("k")] - v[fr.set("l")] - v[fr.set("ikl")] - v[fr.set("jkl")];
}

/// Ingleton value divided by h(N).
template <typename Scalar>
Scalar ingleton_score(const SetFunctionT<Scalar>& h, const IngletonFrame& fr) {
  detail::require_four(h);
  if (!(h.rank() > Scalar(0))) throw std::domain_error("Ingleton score needs h(N) > 0");
  return ingleton_value(h, fr) / h.rank();
}

/// The six frames, one per unordered pair {a, b}, with the remaining two
/// elements in increasing order.
inline std::array<IngletonFrame, 6> all_pair_frames() {
  std::array<IngletonFrame, 6> out;
  int n = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      int rest[2];
      int r = 0;
      for (int c = 0; c < 4; ++c) {
        if (c != a && c != b) rest[r++] = c;
      }
      out[n++] = IngletonFrame(a, b, rest[0], rest[1]);
    }
  }
  return out;
}

/// Unordered pairs {a, b} (as bit pairs, a < b) whose Ingleton value is below -tol.
template <typename Scalar>
std::vector<std::pair<int, int>> violated_instances(const SetFunctionT<Scalar>& h,
                                                    Scalar tol = Scalar(kAnalyticTol)) {
  detail::require_four(h);
  std::vector<std::pair<int, int>> out;
  for (const auto& fr : all_pair_frames()) {
    if (ingleton_value(h, fr) < -tol) out.emplace_back(fr.i(), fr.j());
  }
  return out;
}

// ---------------------------------------------------------------------------
// The eleven generators of the tight Ingleton-violating cone

/// Rank function equal to 3 on ik, jk, il, jl, kl and min{4, 2|K|} elsewhere.
template <typename Scalar = double>
SetFunctionT<Scalar> ingleton_base(const GroundSet& ground, const IngletonFrame& fr) {
  if (ground.size() != 4) throw std::invalid_argument("ingleton_base needs a four-element ground set");
  const std::array<Subset, 5> threes{fr.set("ik"), fr.set("jk"), fr.set("il"), fr.set("jl"), fr.set("kl")};
  return SetFunctionT<Scalar>::generate(ground, [&](Subset s) {
    for (Subset t : threes) {
      if (s == t) return 3;
    }
    return std::min(4, 2 * cardinality(s));
  });
}

/// Coordinates of a function in the basis {r_bar, r_1, r_3, r_1^i, r_1^j,
/// r_2^l, r_2^k, r_1^ik, r_1^jk, r_1^il, r_1^jl}, in that order.
template <typename Scalar>
struct BasisCoefficientsT {
  Scalar c_bar = 0;     // on r_bar
  Scalar c_ij = 0;      // Delta_{ij|},  on r_1
  Scalar c_kl_ij = 0;   // Delta_{kl|ij}, on r_3
  Scalar c_kl_i = 0;    // Delta_{kl|i},  on r_1^i
  Scalar c_kl_j = 0;    // Delta_{kl|j},  on r_1^j
  Scalar c_ij_k = 0;    // Delta_{ij|k},  on r_2^l
  Scalar c_ij_l = 0;    // Delta_{ij|l},  on r_2^k
  Scalar c_jl_k = 0;    // Delta_{jl|k},  on r_1^ik
  Scalar c_il_k = 0;    // Delta_{il|k},  on r_1^jk
  Scalar c_jk_l = 0;    // Delta_{jk|l},  on r_1^il
  Scalar c_ik_l = 0;    // Delta_{ik|l},  on r_1^jl

  std::array<Scalar, 11> as_array() const {
    return {c_bar, c_ij, c_kl_ij, c_kl_i, c_kl_j, c_ij_k, c_ij_l, c_jl_k, c_il_k, c_jk_l, c_ik_l};
  }
  static BasisCoefficientsT from_array(const std::array<Scalar, 11>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9], a[10]};
  }
};

using BasisCoefficients = BasisCoefficientsT<double>;

/// The eleven generators in the order of BasisCoefficientsT.
template <typename Scalar = double>
std::array<SetFunctionT<Scalar>, 11> basis_generators(const GroundSet& ground, const IngletonFrame& fr) {
  auto r = [&](int m, const char* loops) { return matroid_rank<Scalar>(ground, m, fr.set(loops)); };
  return {ingleton_base<Scalar>(ground, fr), r(1, ""), r(3, ""), r(1, "i"), r(1, "j"),
          r(2, "l"), r(2, "k"), r(1, "ik"), r(1, "jk"), r(1, "il"), r(1, "jl")};
}

/// Reads off the coordinate functionals of the unique expansion of a tight
/// function in the eleven generators.
template <typename Scalar>
BasisCoefficientsT<Scalar> basis_coefficients(const SetFunctionT<Scalar>& g, const IngletonFrame& fr) {
  detail::require_four(g);
  BasisCoefficientsT<Scalar> c;
  c.c_bar = -ingleton_value(g, fr);
  c.c_ij = frame_delta(g, fr, 'i', 'j');
  c.c_kl_ij = frame_delta(g, fr, 'k', 'l', "ij");
  c.c_kl_i = frame_delta(g, fr, 'k', 'l', "i");
  c.c_kl_j = frame_delta(g, fr, 'k', 'l', "j");
  c.c_ij_k = frame_delta(g, fr, 'i', 'j', "k");
  c.c_ij_l = frame_delta(g, fr, 'i', 'j', "l");
  c.c_jl_k = frame_delta(g, fr, 'j', 'l', "k");
  c.c_il_k = frame_delta(g, fr, 'i', 'l', "k");
  c.c_jk_l = frame_delta(g, fr, 'j', 'k', "l");
  c.c_ik_l = frame_delta(g, fr, 'i', 'k', "l");
  return c;
}

template <typename Scalar>
SetFunctionT<Scalar> reconstruct(const BasisCoefficientsT<Scalar>& c, const GroundSet& ground,
                                 const IngletonFrame& fr) {
  const auto gens = basis_generators<Scalar>(ground, fr);
  const auto coeffs = c.as_array();
  VectorX<Scalar> v = VectorX<Scalar>::Zero(ground.power_size());
  for (std::size_t n = 0; n < gens.size(); ++n) v += coeffs[n] * gens[n].values();
  return SetFunctionT<Scalar>(ground, std::move(v));
}

// ---------------------------------------------------------------------------
// The maps A_{i,j}, B_{ij,k}, C_ij

/// g + Delta_{ij|}(g) (r_1^i - r_1). Zeroes Delta_{ij|} and keeps the
/// Ingleton value.
template <typename Scalar>
SetFunctionT<Scalar> a_map(const SetFunctionT<Scalar>& g, const IngletonFrame& fr) {
  detail::require_four(g);
  const Scalar c = frame_delta(g, fr, 'i', 'j');
  const VectorX<Scalar> shift = matroid_rank<Scalar>(g.ground(), 1, fr.set("i")).values() -
                     matroid_rank<Scalar>(g.ground(), 1).values();
  return SetFunctionT<Scalar>(g.ground(), g.values() + c * shift);
}

/// g + Delta_{kl|ij}(g) (r_2^k - r_3). Zeroes Delta_{kl|ij} and keeps the
/// Ingleton value.
template <typename Scalar>
SetFunctionT<Scalar> b_map(const SetFunctionT<Scalar>& g, const IngletonFrame& fr) {
  detail::require_four(g);
  const Scalar c = frame_delta(g, fr, 'k', 'l', "ij");
  const VectorX<Scalar> shift = matroid_rank<Scalar>(g.ground(), 2, fr.set("k")).values() -
                     matroid_rank<Scalar>(g.ground(), 3).values();
  return SetFunctionT<Scalar>(g.ground(), g.values() + c * shift);
}

/// Average of h over the four permutations fixing the pair {i, j}.
template <typename Scalar>
SetFunctionT<Scalar> c_sym(const SetFunctionT<Scalar>& h, const IngletonFrame& fr) {
  detail::require_four(h);
  auto perm_of = [&](bool swap_ij, bool swap_kl) {
    std::array<int, 4> p{0, 1, 2, 3};
    if (swap_ij) p[fr.i()] = fr.j(), p[fr.j()] = fr.i();
    if (swap_kl) p[fr.k()] = fr.l(), p[fr.l()] = fr.k();
    return p;
  };
  VectorX<Scalar> sum = h.values();
  sum += permute(h, perm_of(true, false)).values();
  sum += permute(h, perm_of(false, true)).values();
  sum += permute(h, perm_of(true, true)).values();
  return SetFunctionT<Scalar>(h.ground(), sum / Scalar(4));
}

/// True when the five functionals Delta_{ij|k}, Delta_{ij|l}, Delta_{kl|i},
/// Delta_{kl|j} and Delta_{kl|ij} all vanish within tol.
template <typename Scalar>
bool on_special_face(const SetFunctionT<Scalar>& h, const IngletonFrame& fr,
                     Scalar tol = Scalar(kAnalyticTol)) {
  detail::require_four(h);
  for (Scalar v : {frame_delta(h, fr, 'i', 'j', "k"), frame_delta(h, fr, 'i', 'j', "l"),
                   frame_delta(h, fr, 'k', 'l', "i"), frame_delta(h, fr, 'k', 'l', "j"),
                   frame_delta(h, fr, 'k', 'l', "ij")}) {
    if (std::abs(v) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cross-section coordinates

/// Barycentric weights of a point of the symmetrized cross-section in the
/// tetrahedron alpha, beta, gamma, delta.
template <typename Scalar>
struct CrossSectionPointT {
  Scalar alpha_w = 0;
  Scalar beta_w = 0;
  Scalar gamma_w = 0;
  Scalar delta_w = 0;
  std::string source_tag;

  Scalar sum() const { return alpha_w + beta_w + gamma_w + delta_w; }
  Eigen::Matrix<Scalar, 4, 1> weights() const { return {alpha_w, beta_w, gamma_w, delta_w}; }
};

using CrossSectionPoint = CrossSectionPointT<double>;

template <typename Scalar>
struct TetraVerticesT {
  SetFunctionT<Scalar> alpha, beta, gamma, delta;
};

/// alpha = r_bar/4, beta = (r_1^i + r_1^j)/2, gamma = (r_2^k + r_2^l)/4,
/// delta = (r_1^ik + r_1^jk + r_1^il + r_1^jl)/4.
template <typename Scalar = double>
TetraVerticesT<Scalar> tetra_vertices(const GroundSet& ground, const IngletonFrame& fr) {
  auto r = [&](int m, const char* loops) { return matroid_rank<Scalar>(ground, m, fr.set(loops)); };
  return {ingleton_base<Scalar>(ground, fr) / Scalar(4),
          (r(1, "i") + r(1, "j")) / Scalar(2),
          (r(2, "k") + r(2, "l")) / Scalar(4),
          (r(1, "ik") + r(1, "jk") + r(1, "il") + r(1, "jl")) / Scalar(4)};
}

/// The four bracketed functionals: alpha = -4 stv, beta = Delta_{kl|i} +
/// Delta_{kl|j}, gamma = 2 Delta_{ij|k} + 2 Delta_{ij|l}, delta = Delta_{jl|k} +
/// Delta_{il|k} + Delta_{jk|l} + Delta_{ik|l}. They sum to h(N) on the
/// symmetrized face.
template <typename Scalar>
CrossSectionPointT<Scalar> cross_section_weights(const SetFunctionT<Scalar>& h, const IngletonFrame& fr) {
  detail::require_four(h);
  CrossSectionPointT<Scalar> w;
  w.alpha_w = Scalar(-4) * ingleton_value(h, fr);
  w.beta_w = frame_delta(h, fr, 'k', 'l', "i") + frame_delta(h, fr, 'k', 'l', "j");
  w.gamma_w = Scalar(2) * frame_delta(h, fr, 'i', 'j', "k") + Scalar(2) * frame_delta(h, fr, 'i', 'j', "l");
  w.delta_w = frame_delta(h, fr, 'j', 'l', "k") + frame_delta(h, fr, 'i', 'l', "k") +
              frame_delta(h, fr, 'j', 'k', "l") + frame_delta(h, fr, 'i', 'k', "l");
  return w;
}

/// Raised when the reduced function vanishes at N and has no cross-section point.
class DegeneratePoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Scalar>
struct CrossSectionResultT {
  CrossSectionPointT<Scalar> point;
  SetFunctionT<Scalar> h;
};

/// Tightens f, applies B then A then C, and normalizes by the value at N.
/// Throws DegeneratePoint when that value is at most `tol`, and
/// std::domain_error when f satisfies the frame's Ingleton inequality
/// strictly (its reduction is not in the cross-section).
template <typename Scalar>
CrossSectionResultT<Scalar> cross_section_point(const SetFunctionT<Scalar>& f, const IngletonFrame& fr,
                                                Scalar tol = Scalar(kAnalyticTol)) {
  detail::require_four(f);
  const Scalar scale = std::max(Scalar(1), std::abs(f.rank()));
  if (ingleton_value(f, fr) > tol * scale) {
    throw std::domain_error("function satisfies the Ingleton inequality of the frame strictly");
  }
  const auto g = c_sym(a_map(b_map(tight_part(f), fr), fr), fr);
  if (!(g.rank() > tol * scale)) {
    throw DegeneratePoint("reduced function vanishes at N; the score is 0 there");
  }
  auto h = g / g.rank();
  auto w = cross_section_weights(h, fr);
  return {std::move(w), std::move(h)};
}

/// Convex combination of the tetrahedron vertices with the given weights.
template <typename Scalar>
SetFunctionT<Scalar> point_from_weights(const CrossSectionPointT<Scalar>& w, const GroundSet& ground,
                                        const IngletonFrame& fr) {
  if (std::abs(w.sum() - Scalar(1)) > Scalar(1e-6)) {
    throw std::domain_error("cross-section weights must sum to 1");
  }
  const auto v = tetra_vertices<Scalar>(ground, fr);
  return SetFunctionT<Scalar>(ground, w.alpha_w * v.alpha.values() + w.beta_w * v.beta.values() +
                                          w.gamma_w * v.gamma.values() + w.delta_w * v.delta.values());
}

}  // namespace etk

#endif  // ETK_FOUR_FRAME_HPP
