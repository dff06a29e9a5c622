#pragma once

#include "cslrot/planar.hpp"
#include "cslrot/params.hpp"

#include <chrono>
#include <cmath>

namespace cslrot::testing {

inline double silicon() { return material_density("silicon"); }

/// Non-symmetric state on even ladder rungs: von Mises in alpha with a
/// cos(2 alpha) ripple, Gaussian in m. Its <exp(i alpha)> is nonzero.
inline PlanarWignerState lopsided_state(std::size_t n_alpha, int m_max, double inertia) {
  PlanarWignerState w(n_alpha, m_max, inertia);
  double tot = 0.0;
  for (int m = -m_max; m <= m_max; m += 2)
    for (std::size_t j = 0; j < n_alpha; ++j) {
      const double a = w.alpha(j);
      const double v = std::exp(0.7 * std::cos(a - 0.3)) * (1.0 + 0.1 * std::cos(2.0 * a)) * std::exp(-m * m / 50.0);
      w.at(j, m) = v;
      tot += v;
    }
  for (int m = -m_max; m <= m_max; ++m)
    for (std::size_t j = 0; j < n_alpha; ++j) w.at(j, m) /= tot * w.d_alpha();
  return w;
}

inline double sup_diff(const PlanarWignerState& a, const PlanarWignerState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace cslrot::testing
