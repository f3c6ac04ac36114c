#include <doctest.h>

#include <random>

#include "etk/entropy.hpp"
#include "etk/four_frame.hpp"
#include "support.hpp"

using namespace etk;

namespace {

const GroundSet G = GroundSet::ijkl();
const IngletonFrame F;

SetFunction r(int m, const char* loops) { return matroid_rank<double>(G, m, F.set(loops)); }

BasisCoefficients random_conic(std::mt19937_64& rng) {
  std::array<double, 11> a{};
  for (double& x : a) x = testing::uniform(rng);
  return BasisCoefficients::from_array(a);
}

}  // namespace

TEST_CASE("frame construction") {
  CHECK(IngletonFrame::from_labels(G, {"k", "l", "i", "j"}) == IngletonFrame(2, 3, 0, 1));
  CHECK_THROWS_AS(IngletonFrame(0, 0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(IngletonFrame::from_labels(G, {"i", "j", "k", "z"}), std::invalid_argument);
  CHECK(F.set("ikl") == G.parse_subset("ikl"));
}

TEST_CASE("ingleton value and score") {
  CHECK(ingleton_value(modular_from<double>(G, {1, 2, 3, 4}), F) == 0);
  const auto rbar = ingleton_base<double>(G, F);
  CHECK(ingleton_value(rbar, F) == -1);
  CHECK(ingleton_score(rbar, F) == -0.25);
  CHECK(ingleton_score(modular_from<double>(G, {1, 2, 3, 4}), F) == 0);
  CHECK_THROWS_AS(ingleton_score(SetFunction(G), F), std::domain_error);
  CHECK_THROWS_AS(ingleton_value(matroid_rank<double>(testing::ground_of_size(3), 1), F), std::invalid_argument);

  // stv = D_{kl|i} + D_{kl|j} + D_{ij|} - D_{kl|}.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = testing::random_set_function(G, rng);
    const double identity = frame_delta(h, F, 'k', 'l', "i") + frame_delta(h, F, 'k', 'l', "j") +
                            frame_delta(h, F, 'i', 'j') - frame_delta(h, F, 'k', 'l');
    CHECK(ingleton_value(h, F) == doctest::Approx(identity).epsilon(1e-12));
    CHECK(ingleton_value(tight_part(h), F) == doctest::Approx(ingleton_value(h, F)).epsilon(1e-12));
  }
}

TEST_CASE("violated instances") {
  CHECK(violated_instances(matroid_rank<double>(G, 2)).empty());
  const auto v = violated_instances(ingleton_base<double>(G, F));
  REQUIRE(v.size() == 1);
  CHECK(v.front() == std::pair{0, 1});

  // A polymatroid violates at most one instance.
  std::mt19937_64 rng(32);
  int violating = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = entropy_function(testing::random_distribution(rng, 2 + trial % 3, 4 + trial % 9));
    const auto found = violated_instances(h, 1e-9);
    CHECK(found.size() <= 1);
    violating += static_cast<int>(found.size());
  }
  CHECK(violating > 0);
  for (const auto& fr : all_pair_frames()) {
    const auto found = violated_instances(ingleton_base<double>(G, fr));
    REQUIRE(found.size() == 1);
    CHECK(found.front() == std::pair{fr.i(), fr.j()});
  }
}

TEST_CASE("basis coefficients of the generators") {
  const auto gens = basis_generators<double>(G, F);
  for (std::size_t n = 0; n < gens.size(); ++n) {
    const auto c = basis_coefficients(gens[n], F).as_array();
    for (std::size_t m = 0; m < c.size(); ++m) CHECK(c[m] == (m == n ? 1.0 : 0.0));
    CHECK(is_tight(gens[n]));
  }
  const auto rbar = basis_coefficients(ingleton_base<double>(G, F), F);
  CHECK(rbar.c_bar == 1);
  CHECK(basis_coefficients(r(1, ""), F).c_ij == 1);
}

TEST_CASE("basis round trip") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_conic(rng);
    const auto g = reconstruct(c, G, F);
    CHECK(max_abs_diff(reconstruct(basis_coefficients(g, F), G, F), g) < 1e-9);
    const auto back = basis_coefficients(g, F).as_array();
    for (std::size_t m = 0; m < back.size(); ++m) CHECK(back[m] == doctest::Approx(c.as_array()[m]).epsilon(1e-12));
  }
}

TEST_CASE("maps A and B") {
  CHECK(a_map(r(1, ""), F) == r(1, "i"));
  CHECK(b_map(r(3, ""), F) == r(2, "k"));
  const auto rbar = ingleton_base<double>(G, F);
  CHECK(a_map(rbar, F) == rbar);
  CHECK(b_map(rbar, F) == rbar);

  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_set_function(G, rng);
    const auto ab = a_map(b_map(g, F), F);
    CHECK(ab == b_map(a_map(g, F), F));
    CHECK(std::abs(ingleton_value(a_map(g, F), F) - ingleton_value(g, F)) < 1e-12);
    CHECK(std::abs(ingleton_value(b_map(g, F), F) - ingleton_value(g, F)) < 1e-12);
    CHECK(std::abs(frame_delta(a_map(g, F), F, 'i', 'j')) < 1e-12);
    CHECK(std::abs(frame_delta(b_map(g, F), F, 'k', 'l', "ij")) < 1e-12);
  }
}

TEST_CASE("maps keep tight reversed-Ingleton polymatroids polymatroidal") {
  std::mt19937_64 rng(35);
  int tried = 0;
  for (int trial = 0; trial < 400 && tried < 100; ++trial) {
    const auto h = tight_part(entropy_function(testing::near_violator(rng)));
    if (!(ingleton_value(h, F) < -1e-9)) continue;
    ++tried;
    CHECK(is_polymatroid(a_map(h, F), kEntropicTol));
    CHECK(is_polymatroid(b_map(h, F), kEntropicTol));
  }
  CHECK(tried > 10);
}

TEST_CASE("symmetrization") {
  CHECK(max_abs_diff(c_sym(r(1, "ik"), F), (r(1, "ik") + r(1, "jk") + r(1, "il") + r(1, "jl")) / 4.0) < 1e-15);
  CHECK(max_abs_diff(c_sym(r(1, "i"), F), (r(1, "i") + r(1, "j")) / 2.0) < 1e-15);
  CHECK(c_sym(r(3, ""), F) == r(3, ""));

  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = testing::random_set_function(G, rng);
    const auto s = c_sym(h, F);
    CHECK(std::abs(ingleton_value(s, F) - ingleton_value(h, F)) < 1e-12);
    CHECK(std::abs(s.rank() - h.rank()) < 1e-12);
    CHECK(max_abs_diff(c_sym(s, F), s) < 1e-12);
    CHECK(max_abs_diff(permute(s, std::array<int, 4>{1, 0, 2, 3}), s) < 1e-12);
    CHECK(max_abs_diff(permute(s, std::array<int, 4>{0, 1, 3, 2}), s) < 1e-12);
  }
}

TEST_CASE("tetrahedron vertices") {
  const auto v = tetra_vertices<double>(G, F);
  for (const auto* h : {&v.alpha, &v.beta, &v.gamma, &v.delta}) {
    CHECK(h->rank() == 1);
    CHECK(is_tight(*h));
  }
  CHECK(ingleton_value(v.alpha, F) == -0.25);
  CHECK(ingleton_value(v.beta, F) == 0);
  CHECK(ingleton_value(v.gamma, F) == 0);
  CHECK(ingleton_value(v.delta, F) == 0);
  for (const auto* h : {&v.beta, &v.gamma, &v.delta}) CHECK(is_polymatroid(*h));

  const auto wa = cross_section_weights(v.alpha, F);
  CHECK(wa.weights() == Eigen::Vector4d(1, 0, 0, 0));
  CHECK(cross_section_weights(v.beta, F).weights() == Eigen::Vector4d(0, 1, 0, 0));
  CHECK(cross_section_weights(v.gamma, F).weights() == Eigen::Vector4d(0, 0, 1, 0));
  CHECK(cross_section_weights(v.delta, F).weights() == Eigen::Vector4d(0, 0, 0, 1));
}

TEST_CASE("weights of convex combinations round trip") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector4d w;
    for (int c = 0; c < 4; ++c) w[c] = testing::uniform(rng);
    w /= w.sum();
    const CrossSectionPoint p{w[0], w[1], w[2], w[3], ""};
    const auto h = point_from_weights(p, G, F);
    CHECK((cross_section_weights(h, F).weights() - w).cwiseAbs().maxCoeff() < 1e-12);
  }
  const CrossSectionPoint quarter{0.25, 0.25, 0.25, 0.25, ""};
  CHECK((cross_section_weights(point_from_weights(quarter, G, F), F).weights() - quarter.weights()).norm() < 1e-15);
  CHECK(point_from_weights(CrossSectionPoint{0, 0, 0, 1, ""}, G, F) == tetra_vertices<double>(G, F).delta);
  CHECK_THROWS_AS(point_from_weights(CrossSectionPoint{0.5, 0, 0, 0, ""}, G, F), std::domain_error);
}

TEST_CASE("cross-section pipeline") {
  const auto vb = cross_section_point(tetra_vertices<double>(G, F).beta, F);
  CHECK((vb.point.weights() - Eigen::Vector4d(0, 1, 0, 0)).norm() < 1e-15);

  const auto f = exl_closed_form(ExLParams::reference());
  const auto res = cross_section_point(f, F);
  const auto& w = res.point;
  CHECK(w.sum() == doctest::Approx(1).epsilon(1e-12));
  CHECK(w.alpha_w == doctest::Approx(0.36973583115).epsilon(1e-9));
  CHECK(w.beta_w == doctest::Approx(0.17326605827).epsilon(1e-9));
  CHECK(w.gamma_w == doctest::Approx(0.15535313818).epsilon(1e-9));
  CHECK(w.delta_w == doctest::Approx(0.30164497240).epsilon(1e-9));
  // The rounded score -0.09243 gives 0.36972.
  CHECK(std::abs(w.alpha_w - 0.36972) < 2e-4);
  CHECK(max_abs_diff(point_from_weights(w, G, F), res.h) < 1e-9);
  CHECK(std::abs(frame_delta(res.h, F, 'i', 'j')) < 1e-12);
  CHECK(std::abs(frame_delta(res.h, F, 'k', 'l', "ij")) < 1e-12);
  CHECK_FALSE(on_special_face(res.h, F));
  CHECK(on_special_face(tetra_vertices<double>(G, F).alpha, F));

  const auto p1 = cross_section_point(entropy_function(four_atom_distribution({0.350457})), F);
  CHECK(p1.point.sum() == doctest::Approx(1).epsilon(1e-12));
  CHECK(p1.point.alpha_w > 0);

  CHECK_THROWS_AS(cross_section_point(matroid_rank<double>(G, 2), F), std::domain_error);
  CHECK_THROWS_AS(cross_section_point(modular_from<double>(G, {1, 1, 1, 1}), F), DegeneratePoint);
}

TEST_CASE("frame symmetry of scores and weights") {
  const auto f = exl_closed_form(ExLParams::reference());
  const auto base = cross_section_point(f, F).point.weights();
  for (const auto& fr : {F.swap_ij(), F.swap_kl(), F.swap_ij().swap_kl()}) {
    CHECK(ingleton_score(f, fr) == doctest::Approx(ingleton_score(f, F)).epsilon(1e-14));
    CHECK((cross_section_point(f, fr).point.weights() - base).cwiseAbs().maxCoeff() < 1e-12);
  }
}
