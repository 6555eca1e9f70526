#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ergopose/error.hpp"
#include "ergopose/objectives.hpp"

using namespace ergopose;
using doctest::Approx;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Posture posture(std::initializer_list<double> v) { return {vec(v)}; }

// Reference penalty base evaluated directly from the sinusoid, ratio clamped
// to [0, pi/5] where the base bottoms out at 0.5.
double base_penalty(double ratio) {
  const double r = std::min(std::max(ratio, 0.0), std::numbers::pi / 5);
  return std::pow(0.5 * std::cos(5 * r) + 1.0, 100);
}

DiscomfortParams one_joint(double lower, double upper, double gamma = 1.0) {
  DiscomfortParams p;
  p.joints.push_back({lower, upper, 0.5 * (lower + upper), gamma});
  return p;
}

}  // namespace

TEST_CASE("fatigue measure values") {
  CHECK(fatigue_measure(vec({0, 0}), vec({40, 40})) == 0.0);
  CHECK(fatigue_measure(vec({20, 10}), vec({40, 40})) == Approx(0.3125).epsilon(1e-12));
  const double fatigued = fatigue_measure(vec({20, 10}), vec({30, 30}));
  CHECK(fatigued == Approx(0.5556).epsilon(1e-4));
  CHECK(fatigued > 0.3125);
  for (double p : {0.5, 1.0, 2.0, 3.7}) {
    CHECK(fatigue_measure(vec({25}), vec({25}), {p}) == Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("fatigue measure symmetry and monotonicity") {
  const Eigen::VectorXd t = vec({12, -7, 3});
  const Eigen::VectorXd c = vec({40, 30, 20});
  const double base = fatigue_measure(t, c);
  CHECK(fatigue_measure(-t, c) == base);
  CHECK(fatigue_measure(vec({3, 12, -7}), vec({20, 40, 30})) == Approx(base).epsilon(1e-15));
  CHECK(fatigue_measure(vec({13, -7, 3}), c) > base);
  CHECK(fatigue_measure(t, vec({41, 30, 20})) < base);
}

TEST_CASE("fatigue measure rejects non-positive capacity") {
  CHECK_THROWS_AS(fatigue_measure(vec({1}), vec({0})), InvalidState);
  CHECK_THROWS_AS(fatigue_measure(vec({1, 2}), vec({1})), InvalidParameter);
}

TEST_CASE("limit penalties") {
  const LimitPenalties at_upper = limit_penalties(2.0, 2.0, -1.0);
  CHECK(at_upper.upper == Approx(std::pow(1.5, 100)).epsilon(1e-12));
  CHECK(at_upper.upper == Approx(4.066e17).epsilon(1e-3));
  const LimitPenalties at_lower = limit_penalties(-1.0, 2.0, -1.0);
  CHECK(at_lower.lower == Approx(std::pow(1.5, 100)).epsilon(1e-12));
  // Ratio 1 to the upper limit is past the cap and held at the base minimum.
  CHECK(at_lower.upper == Approx(std::pow(0.5, 100)).epsilon(1e-12));
  const LimitPenalties mid = limit_penalties(0.5, 2.0, -1.0);
  CHECK(mid.upper < 1e-20);
  CHECK(mid.lower < 1e-20);
  CHECK(mid.upper == Approx(std::pow(0.5 * std::cos(2.5) + 1, 100)).epsilon(1e-12));
  CHECK_THROWS_AS(limit_penalties(0.0, 1.0, 1.0), InvalidParameter);
}

TEST_CASE("limit penalty follows the sinusoid below the cap and is flat above") {
  for (double r = 0.0; r <= 1.0; r += 0.01) {
    const double q = 1.0 - r;  // limits [0, 1]
    CHECK(limit_penalties(q, 1.0, 0.0).upper == Approx(base_penalty(r)).epsilon(1e-12));
  }
  CHECK(limit_penalties(0.2, 1.0, 0.0).upper == limit_penalties(0.0, 1.0, 0.0).upper);
}

TEST_CASE("discomfort at neutral and at a limit") {
  DiscomfortParams p;
  p.joints = {{-1, 2, 0.5, 1}, {0, 2.5, 1.25, 1}, {-1.5, 1.5, 0, 1}};
  CHECK(discomfort_measure(posture({0.5, 1.25, 0}), p) < 1e-19);
  CHECK(discomfort_measure(posture({2.0, 1.25, 0}), p) >= std::pow(1.5, 100));
  CHECK(max_limit_penalty(posture({2.0, 1.25, 0}), p) == Approx(std::pow(1.5, 100)));
}

TEST_CASE("discomfort single-joint slice is minimized at neutral") {
  const DiscomfortParams p = one_joint(-0.5, 2.3);
  const double neutral = p.joints[0].neutral;
  double prev = discomfort_measure(posture({neutral}), p);
  CHECK(prev <= 1e-19);
  for (double q = neutral + 1e-3; q <= 2.3; q += 1e-3) {
    const double v = discomfort_measure(posture({q}), p);
    CHECK(v > prev);
    prev = v;
  }
  prev = discomfort_measure(posture({neutral}), p);
  for (double q = neutral - 1e-3; q >= -0.5; q -= 1e-3) {
    const double v = discomfort_measure(posture({q}), p);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("gamma scales only the displacement term") {
  const DiscomfortParams a = one_joint(0, 2, 1.0);
  const DiscomfortParams b = one_joint(0, 2, 2.0);
  const Posture q = posture({1.2});
  const auto pen = limit_penalties(1.2, 2, 0);
  const double penalties = pen.upper + pen.lower;
  const double disp_a = discomfort_measure(q, a) - penalties;
  const double disp_b = discomfort_measure(q, b) - penalties;
  CHECK(disp_a == Approx(0.1 * 0.1 / 1e6).epsilon(1e-6));
  CHECK(disp_b == Approx(2 * disp_a).epsilon(1e-6));
}

TEST_CASE("discomfort is symmetric under joint permutation") {
  DiscomfortParams p;
  p.joints = {{-1, 2, 0.5, 1}, {0, 2.5, 1.0, 3}};
  DiscomfortParams swapped;
  swapped.joints = {p.joints[1], p.joints[0]};
  CHECK(discomfort_measure(posture({1.7, 0.3}), p) ==
        Approx(discomfort_measure(posture({0.3, 1.7}), swapped)).epsilon(1e-15));
}

TEST_CASE("discomfort parameters from a chain") {
  const KinematicChain c = build_arm_chain({});
  const DiscomfortParams p = discomfort_params(c, 1e5);
  REQUIRE(p.joints.size() == 5);
  CHECK(p.penalty_constant == 1e5);
  CHECK(p.joints[3].upper == c.joint(3).upper);
  CHECK_THROWS_AS(discomfort_params(c, 0.0), InvalidParameter);
}
