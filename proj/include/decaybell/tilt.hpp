#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace decaybell {

/// Detuning/Rabi pair (delta, Omega) of the tilted rotation axis that
/// emulates a CP-violation parameter epsilon at oscillation frequency omega:
///   delta / sqrt(delta^2 + Omega^2) = (1 - eps) / (1 + eps),
///   sqrt(delta^2 + Omega^2) = omega.
inline std::pair<double, double> tilt_from_epsilon(double epsilon, double omega) {
  if (epsilon < 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("tilt_from_epsilon: epsilon must lie in [0, 1)");
  }
  if (omega <= 0.0) throw std::invalid_argument("tilt_from_epsilon: omega must be positive");
  const double ratio = (1.0 - epsilon) / (1.0 + epsilon);
  const double delta = omega * ratio;
  const double rabi = omega * std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  return {delta, rabi};
}

/// Inverse map: eps = (omega - delta) / (omega + delta) with omega = |(delta, Omega)|.
inline double epsilon_from_tilt(double delta, double rabi) {
  const double omega = std::hypot(delta, rabi);
  if (omega == 0.0) throw std::invalid_argument("epsilon_from_tilt: zero axis");
  return (omega - delta) / (omega + delta);
}

}  // namespace decaybell
