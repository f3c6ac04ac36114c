#include "etk/inequality.hpp"

#include <cmath>
#include <stdexcept>

namespace etk {

LinearInequality::LinearInequality(std::string name_, GroundSet ground_, Eigen::VectorXd coefficients_)
    : name(std::move(name_)), ground(std::move(ground_)), coefficients(std::move(coefficients_)) {
  if (static_cast<std::size_t>(coefficients.size()) != ground.power_size()) {
    throw std::invalid_argument("inequality '" + name + "' has the wrong number of coefficients");
  }
  if (coefficients[0] != 0.0) throw std::invalid_argument("empty-set coefficient must be zero");
  if (coefficients.isZero(0.0)) throw std::invalid_argument("inequality '" + name + "' is identically zero");
}

CrossSectionHalfspace::CrossSectionHalfspace(std::string name_, std::array<double, 4> abcd_)
    : name(std::move(name_)), abcd(abcd_) {
  if (abcd[0] == 0 && abcd[1] == 0 && abcd[2] == 0 && abcd[3] == 0) {
    throw std::invalid_argument("halfspace '" + name + "' has no nonzero coefficient");
  }
}

double evaluate(const LinearInequality& ineq, const SetFunction& h) {
  if (ineq.ground != h.ground()) {
    throw std::invalid_argument("inequality '" + ineq.name + "' and set function use different labels");
  }
  return ineq.coefficients.dot(h.values());
}

bool is_balanced(const LinearInequality& ineq) {
  for (int b = 0; b < ineq.ground.size(); ++b) {
    double sum = 0;
    for (Subset s = 1; s <= ineq.ground.full(); ++s) {
      if (contains(s, b)) sum += ineq.coefficients[s];
    }
    if (std::abs(sum) > 1e-12) return false;
  }
  return true;
}

namespace {

void require_four(const GroundSet& ground) {
  if (ground.size() != 4) throw std::invalid_argument("four-variable inequality needs four labels");
}

// Adds c * Delta_{ab|given} to the coefficient vector.
void add_delta(Eigen::VectorXd& v, const IngletonFrame& fr, double c, char a, char b,
               std::string_view given = "") {
  const Subset L = fr.set(given);
  const Subset A = fr.set(std::string(1, a)) | L;
  const Subset B = fr.set(std::string(1, b)) | L;
  v[A] += c;
  v[B] += c;
  v[A | B] -= c;
  v[A & B] -= c;
}

}  // namespace

LinearInequality ingleton_inequality(const GroundSet& ground, const IngletonFrame& fr) {
  require_four(ground);
  return LinearInequality("ingleton", ground, ingleton_functional<double>(fr));
}

LinearInequality symmetrized_zhang_yeung(const GroundSet& ground, const IngletonFrame& fr) {
  require_four(ground);
  Eigen::VectorXd v = 2.0 * ingleton_functional<double>(fr);
  add_delta(v, fr, 1, 'i', 'k', "l");
  add_delta(v, fr, 1, 'i', 'l', "k");
  add_delta(v, fr, 1, 'k', 'l', "i");
  add_delta(v, fr, 1, 'j', 'k', "l");
  add_delta(v, fr, 1, 'j', 'l', "k");
  add_delta(v, fr, 1, 'k', 'l', "j");
  return LinearInequality("symmetrized-zhang-yeung", ground, std::move(v));
}

LinearInequality dfz_inequality(const GroundSet& ground, const IngletonFrame& fr, int s) {
  require_four(ground);
  if (s < 0 || s > 20) throw std::domain_error("DFZ index must lie in 0..20");
  const double pow2 = std::ldexp(1.0, s);
  const double half = std::ldexp(1.0, s - 1);
  Eigen::VectorXd v = (pow2 - 1) * ingleton_functional<double>(fr);
  add_delta(v, fr, 1, 'k', 'l', "i");
  add_delta(v, fr, s * half, 'i', 'k', "l");
  add_delta(v, fr, s * half, 'i', 'l', "k");
  add_delta(v, fr, (s - 2) * half + 1, 'j', 'k', "l");
  add_delta(v, fr, (s - 2) * half + 1, 'j', 'l', "k");
  return LinearInequality("dfz-" + std::to_string(s), ground, std::move(v));
}

CrossSectionHalfspace dfz_halfspace(int s) {
  if (s < 1 || s > 20) throw std::domain_error("DFZ index must lie in 1..20");
  const double pow2 = std::ldexp(1.0, s);
  return CrossSectionHalfspace("dfz-" + std::to_string(s),
                               {-(pow2 - 1) / 2, 1.0, 0.0, (s - 1) * pow2 + 1});
}

CrossSectionHalfspace zhang_yeung_halfspace() {
  return CrossSectionHalfspace("symmetrized-zhang-yeung", {-0.5, 1.0, 0.0, 1.0});
}

CrossSectionHalfspace to_halfspace(const LinearInequality& ineq, const IngletonFrame& fr) {
  require_four(ineq.ground);
  const auto v = tetra_vertices<double>(ineq.ground, fr);
  return CrossSectionHalfspace(ineq.name, {evaluate(ineq, v.alpha), evaluate(ineq, v.beta),
                                           evaluate(ineq, v.gamma), evaluate(ineq, v.delta)});
}

std::vector<CrossSectionHalfspace> dfz_bank(int max_s) {
  std::vector<CrossSectionHalfspace> bank;
  for (int s = 1; s <= max_s; ++s) bank.push_back(dfz_halfspace(s));
  return bank;
}

bool PointReport::all_satisfied() const {
  for (const auto& c : checks) {
    if (!c.satisfied) return false;
  }
  return true;
}

PointReport check_point(const CrossSectionPoint& w, const std::vector<CrossSectionHalfspace>& bank,
                        double tol) {
  PointReport report;
  for (const auto& hs : bank) {
    const double m = hs.margin(w);
    report.checks.push_back({hs.name, m, m >= -tol});
  }
  return report;
}

}  // namespace etk
