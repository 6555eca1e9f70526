#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// None of these call into the library code they are used to check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace oracle {

/// Classic fixed-step fourth-order Runge-Kutta for a scalar autonomous ODE.
inline double rk4(const std::function<double(double)>& f, double y0, double t_end, double dt) {
  const auto n = static_cast<long>(std::llround(t_end / dt));
  double y = y0;
  for (long i = 0; i < n; ++i) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * dt * k1);
    const double k3 = f(y + 0.5 * dt * k2);
    const double k4 = f(y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

/// Grip position of a two-link arm in the sagittal plane, shoulder at the
/// origin, angles measured from the downward vertical (x anterior, z up).
inline Eigen::Vector3d planar_grip(double upper, double lower, double shoulder, double elbow) {
  return {upper * std::sin(shoulder) + lower * std::sin(shoulder + elbow), 0.0,
          -upper * std::cos(shoulder) - lower * std::cos(shoulder + elbow)};
}

struct Pt {
  double fd;
  double ff;
};

/// Indices of the non-dominated points (minimization). Exact duplicates
/// survive only at their first occurrence.
inline std::vector<std::size_t> brute_force_front(const std::vector<Pt>& pts) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool out = false;
    for (std::size_t j = 0; j < pts.size() && !out; ++j) {
      if (j == i) continue;
      const bool weakly = pts[j].fd <= pts[i].fd && pts[j].ff <= pts[i].ff;
      const bool strictly = pts[j].fd < pts[i].fd || pts[j].ff < pts[i].ff;
      if (weakly && strictly) out = true;
      if (j < i && pts[j].fd == pts[i].fd && pts[j].ff == pts[i].ff) out = true;
    }
    if (!out) keep.push_back(i);
  }
  return keep;
}

/// Random angle vector inside the given per-joint bounds [rad].
inline Eigen::VectorXd random_in(std::mt19937_64& rng, const Eigen::VectorXd& lo,
                                 const Eigen::VectorXd& hi) {
  Eigen::VectorXd q(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    q(i) = std::uniform_real_distribution<double>(lo(i), hi(i))(rng);
  }
  return q;
}

}  // namespace oracle
