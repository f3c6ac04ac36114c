#include <doctest.h>

#include <cmath>
#include <random>

#include "etk/entropy.hpp"
#include "etk/inequality.hpp"
#include "support.hpp"

using namespace etk;

namespace {

const GroundSet G = GroundSet::ijkl();
const IngletonFrame F;

std::array<double, 4> sum_of(const CrossSectionHalfspace& a, const CrossSectionHalfspace& b) {
  return {a.abcd[0] + b.abcd[0], a.abcd[1] + b.abcd[1], a.abcd[2] + b.abcd[2], a.abcd[3] + b.abcd[3]};
}

void check_abcd(const std::array<double, 4>& got, const std::array<double, 4>& want, double tol = 1e-12) {
  for (int c = 0; c < 4; ++c) CHECK(std::abs(got[c] - want[c]) <= tol * std::max(1.0, std::abs(want[c])));
}

}  // namespace

TEST_CASE("inequality construction") {
  CHECK_THROWS_AS(LinearInequality("x", G, Eigen::VectorXd::Zero(16)), std::invalid_argument);
  CHECK_THROWS_AS(LinearInequality("x", G, Eigen::VectorXd::Ones(8)), std::invalid_argument);
  CHECK_THROWS_AS(LinearInequality("x", G, Eigen::VectorXd::Ones(16)), std::invalid_argument);
  CHECK_THROWS_AS(CrossSectionHalfspace("x", {0, 0, 0, 0}), std::invalid_argument);
  const auto ing = ingleton_inequality(G, F);
  CHECK_THROWS_AS(evaluate(ing, matroid_rank<double>(testing::ground_of_size(4), 1)), std::invalid_argument);
}

TEST_CASE("Ingleton and ZY on the base rank") {
  const auto rbar = ingleton_base<double>(G, F);
  CHECK(evaluate(ingleton_inequality(G, F), rbar) == -1);
  const auto zy = symmetrized_zhang_yeung(G, F);
  CHECK(evaluate(zy, rbar) == -2);
  CHECK(evaluate(zy, tetra_vertices<double>(G, F).alpha) == -0.5);
  CHECK(zhang_yeung_halfspace().margin({1, 0, 0, 0, ""}) == -0.5);
}

TEST_CASE("balancedness") {
  CHECK(is_balanced(ingleton_inequality(G, F)));
  CHECK(is_balanced(symmetrized_zhang_yeung(G, F)));
  for (int s = 0; s <= 8; ++s) CHECK(is_balanced(dfz_inequality(G, F, s)));
  Eigen::VectorXd c = Eigen::VectorXd::Zero(16);
  c[1] = 1;
  CHECK_FALSE(is_balanced(LinearInequality("h(i)", G, c)));
}

TEST_CASE("DFZ halfspace coefficients") {
  check_abcd(dfz_halfspace(1).abcd, {-0.5, 1, 0, 1});
  check_abcd(dfz_halfspace(2).abcd, {-1.5, 1, 0, 5});
  check_abcd(dfz_halfspace(3).abcd, {-3.5, 1, 0, 17});
  CHECK(dfz_halfspace(1).abcd == zhang_yeung_halfspace().abcd);
  CHECK_THROWS_AS(dfz_halfspace(0), std::domain_error);
  CHECK_THROWS_AS(dfz_halfspace(21), std::domain_error);
  CHECK(dfz_bank(6).size() == 6);

  // The pair of instances i <-> j evaluated on the four vertices.
  for (int s = 1; s <= 10; ++s) {
    const auto pair = sum_of(to_halfspace(dfz_inequality(G, F, s), F),
                             to_halfspace(dfz_inequality(G, F.swap_ij(), s), F));
    check_abcd(pair, dfz_halfspace(s).abcd);
  }
  check_abcd(to_halfspace(symmetrized_zhang_yeung(G, F), F).abcd, {-0.5, 1, 0, 1});
  check_abcd(to_halfspace(ingleton_inequality(G, F), F).abcd, {-0.25, 0, 0, 0});
}

TEST_CASE("halfspaces agree with inequalities on the cross-section") {
  std::mt19937_64 rng(41);
  const auto ineq = dfz_inequality(G, F, 3);
  const auto hs = to_halfspace(ineq, F);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector4d w;
    for (int c = 0; c < 4; ++c) w[c] = testing::uniform(rng);
    w /= w.sum();
    const CrossSectionPoint p{w[0], w[1], w[2], w[3], ""};
    CHECK(hs.margin(p) == doctest::Approx(evaluate(ineq, point_from_weights(p, G, F))).epsilon(1e-12));
  }
}

TEST_CASE("inequalities hold on entropic points") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = entropy_function(testing::random_distribution(rng, 2 + trial % 3, 4 + trial % 13));
    for (const auto& fr : all_pair_frames()) {
      CHECK(evaluate(symmetrized_zhang_yeung(G, fr), h) >= -1e-12);
      for (int s = 1; s <= 4; ++s) CHECK(evaluate(dfz_inequality(G, fr, s), h) >= -1e-12);
    }
  }
}

TEST_CASE("checking points") {
  const auto bank = dfz_bank(3);
  const auto alpha = check_point({1, 0, 0, 0, ""}, bank);
  REQUIRE(alpha.checks.size() == 3);
  CHECK_FALSE(alpha.all_satisfied());
  CHECK(alpha.checks[0].margin == -0.5);
  CHECK(alpha.checks[2].margin == -3.5);

  const auto inside = check_point({0.5, 0.25, 0, 0.25, ""}, {zhang_yeung_halfspace()});
  CHECK(inside.all_satisfied());
  CHECK(inside.checks[0].margin == 0.25);

  CHECK(check_point({2.0 / 3, 1.0 / 3, 0, 0, ""}, {zhang_yeung_halfspace()}).all_satisfied());
  CHECK_FALSE(check_point({2.0 / 3 + 1e-6, 1.0 / 3 - 1e-6, 0, 0, ""}, {zhang_yeung_halfspace()}).all_satisfied());
  CHECK(check_point({2.0 / 3 + 1e-8, 1.0 / 3 - 1e-8, 0, 0, ""}, {zhang_yeung_halfspace()}).all_satisfied());
}
