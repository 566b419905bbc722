#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "decaybell/linalg.hpp"
#include "decaybell/liouville.hpp"
#include "decaybell/tilt.hpp"

namespace decaybell {

// Units: hbar = 1, time in ns, rates and frequencies in 1/ns.

/// Measured lifetimes of the short- and long-lived neutral-kaon states.
inline constexpr double kKaonTauShortNs = 8.95e-11 * 1e9;  // 0.0895 ns
inline constexpr double kKaonTauLongNs = 5.11e-8 * 1e9;    // 51.1 ns

/// Mass splitting expressed as a fraction of Gamma_S. The splitting is an
/// external measured input, not derivable from the widths; it is exposed as
/// a plain config parameter everywhere.
inline constexpr double kKaonOmegaOverGammaS = 0.474;

/// Full parametrization of the decaying two-state kaon system.
struct KaonParams {
  double gamma_S;  // width of the short-lived state, 1/ns
  double gamma_L;  // width of the long-lived state, 1/ns
  double omega;    // oscillation frequency m_L - m_S, 1/ns
  double epsilon;  // CP-violation parameter, dimensionless

  KaonParams(double gamma_S_, double gamma_L_, double omega_, double epsilon_)
      : gamma_S(gamma_S_), gamma_L(gamma_L_), omega(omega_), epsilon(epsilon_) {
    if (!(gamma_L >= 0.0) || !(gamma_L < gamma_S)) {
      throw std::invalid_argument("KaonParams: require 0 <= gamma_L < gamma_S");
    }
    if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
      throw std::invalid_argument("KaonParams: require 0 <= epsilon < 1");
    }
  }

  double gamma_bar() const { return 0.5 * (gamma_S + gamma_L); }

  static KaonParams defaults(double epsilon = 0.0) {
    const double gs = 1.0 / kKaonTauShortNs;
    const double gl = 1.0 / kKaonTauLongNs;
    return {gs, gl, kKaonOmegaOverGammaS * gs, epsilon};
  }
};

/// A quasi-spin measurement direction |k> = cos(a/2)|K_S> + sin(a/2)e^{i phi}|K_L>.
struct QuasiSpin {
  double alpha;
  double phi;

  QuasiSpin(double alpha_, double phi_) : alpha(alpha_), phi(phi_) {
    const double pi = std::acos(-1.0);
    if (alpha < 0.0 || alpha > pi) {
      throw std::invalid_argument("QuasiSpin: alpha must lie in [0, pi]");
    }
    if (phi < 0.0 || phi >= 2.0 * pi) {
      throw std::invalid_argument("QuasiSpin: phi must lie in [0, 2 pi)");
    }
  }

  /// The |K0bar> direction: (K_S - K_L)/sqrt(2) up to a global sign, at any epsilon.
  static QuasiSpin k0bar() { return {std::acos(-1.0) / 2.0, std::acos(-1.0)}; }
  static QuasiSpin k_short() { return {0.0, 0.0}; }
  static QuasiSpin k_long() { return {std::acos(-1.0), 0.0}; }
};

/// Basis conventions used throughout:
///   strangeness basis {K0, K0bar} (component order),
///   CP basis K1 = (K0 - K0bar)/sqrt2, K2 = (K0 + K0bar)/sqrt2,
///   lifetime basis {K_S, K_L} (see eigenstates()),
///   three-level embedding order |0> = decayed, |1> = long-lived, |2> = short-lived.
struct KaonBasis {
  static constexpr std::size_t decayed = 0;
  static constexpr std::size_t long_lived = 1;
  static constexpr std::size_t short_lived = 2;

  static ComplexMatrix k0() { return ComplexMatrix::column({1.0, 0.0}); }
  static ComplexMatrix k0bar() { return ComplexMatrix::column({0.0, 1.0}); }
  static ComplexMatrix k1() {
    const double r = 1.0 / std::sqrt(2.0);
    return ComplexMatrix::column({r, -r});
  }
  static ComplexMatrix k2() {
    const double r = 1.0 / std::sqrt(2.0);
    return ComplexMatrix::column({r, r});
  }
  static QubitFrame frame() { return {short_lived, long_lived}; }
};

/// Hamiltonian eigenstates in the {K0, K0bar} basis:
///   K_S = (K1 + eps K2)/sqrt(1 + eps^2),  K_L = (K2 + eps K1)/sqrt(1 + eps^2).
/// Normalized, with <K_S|K_L> = 2 eps/(1 + eps^2) real and nonnegative.
inline std::pair<ComplexMatrix, ComplexMatrix> eigenstates(const KaonParams& p) {
  const double norm = std::sqrt(2.0 * (1.0 + p.epsilon * p.epsilon));
  const double comp_p = (1.0 + p.epsilon) / norm;
  const double comp_q = (1.0 - p.epsilon) / norm;
  const ComplexMatrix k_short = ComplexMatrix::column({comp_p, -comp_q});
  const ComplexMatrix k_long = ComplexMatrix::column({comp_p, comp_q});
  return {k_short, k_long};
}

/// Non-unitary single-particle propagator G(t) in the {K0, K0bar} basis:
///   G = [[g+, (p/q) g-], [(q/p) g-, g+]]
///   g+-(t) = (+-exp(-i lambda_S t) + exp(-i lambda_L t))/2,
///   lambda_{S,L} = m_{S,L} - i Gamma_{S,L}/2, with m_S = 0, m_L = omega.
/// Columns are the evolved basis states; psi(t) = G(t) psi(0).
inline ComplexMatrix ww_propagator(const KaonParams& p, double t) {
  if (t < 0.0) throw std::invalid_argument("ww_propagator: negative time");
  const Complex lambda_s{0.0, -0.5 * p.gamma_S};
  const Complex lambda_l{p.omega, -0.5 * p.gamma_L};
  const Complex minus_i{0.0, -1.0};
  const Complex es = std::exp(minus_i * lambda_s * t);
  const Complex el = std::exp(minus_i * lambda_l * t);
  const Complex g_plus = 0.5 * (es + el);
  const Complex g_minus = 0.5 * (-es + el);
  const double p_over_q = (1.0 + p.epsilon) / (1.0 - p.epsilon);

  ComplexMatrix g(2, 2);
  g(0, 0) = g_plus;
  g(0, 1) = p_over_q * g_minus;
  g(1, 0) = g_minus / p_over_q;
  g(1, 1) = g_plus;
  return g;
}

/// The antisymmetric two-particle state (|K0>|K0bar> - |K0bar>|K0>)/sqrt(2)
/// produced at t = 0, as a pure density matrix on {K0, K0bar} x {K0, K0bar}.
inline ComplexMatrix singlet_state() {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix psi = ComplexMatrix::column({0.0, r, -r, 0.0});
  return psi * psi.adjoint();
}

/// Quasi-spin state in the {K0, K0bar} basis. Renormalized after
/// construction: for epsilon > 0 the eigenstates are not orthogonal, so the
/// raw combination is not a unit vector.
inline ComplexMatrix quasi_spin_state(const KaonParams& p, const QuasiSpin& q) {
  const auto [k_short, k_long] = eigenstates(p);
  const Complex phase = std::exp(Complex{0.0, q.phi});
  ComplexMatrix v = std::cos(q.alpha / 2.0) * k_short + std::sin(q.alpha / 2.0) * phase * k_long;
  const double norm = v.frobenius_norm();
  return v * (1.0 / norm);
}

/// Closed-form effective operator O(t) = 2 K(t) - 1 in the {K_S, K_L} basis,
/// valid only without CP violation:
///   diagonal  2 cos^2(a/2) e^{-Gamma_S t} - 1,  2 sin^2(a/2) e^{-Gamma_L t} - 1,
///   off-diagonal  sin(a) e^{-+i(phi + omega t)} e^{-Gamma t},
/// with Gamma = (Gamma_S + Gamma_L)/2. Derived by conjugating the projector
/// with the diagonal propagator, which fixes the off-diagonal phase sign.
inline ComplexMatrix closed_form_effop(const KaonParams& p, const QuasiSpin& q, double t) {
  if (p.epsilon != 0.0) {
    throw std::invalid_argument("closed_form_effop: closed form requires epsilon = 0");
  }
  if (t < 0.0) throw std::invalid_argument("closed_form_effop: negative time");
  const double c = std::cos(q.alpha / 2.0);
  const double s = std::sin(q.alpha / 2.0);
  ComplexMatrix o(2, 2);
  o(0, 0) = 2.0 * c * c * std::exp(-p.gamma_S * t) - 1.0;
  o(1, 1) = 2.0 * s * s * std::exp(-p.gamma_L * t) - 1.0;
  const Complex off = std::sin(q.alpha) * std::exp(Complex{0.0, -(q.phi + p.omega * t)}) *
                      std::exp(-p.gamma_bar() * t);
  o(0, 1) = off;
  o(1, 0) = std::conj(off);
  return o;
}

/// Three-level open system for the kaon pair dynamics, basis
/// (|0> = decayed, |1> = long-lived, |2> = short-lived):
///   channels |0><2| at Gamma_S, |0><1| at Gamma_L, |1><2| at rate 0,
///   Hamiltonian on the {|1>,|2>} block from the tilted-axis map, reducing to
///   diag(m_L = omega, m_S = 0) at epsilon = 0. For epsilon > 0 this is the
///   Hermitian-Hamiltonian emulation of CP violation; the exact epsilon
///   dynamics lives in ww_propagator and the two are compared, not conflated.
inline OpenSystem kaon_open_system(const KaonParams& p) {
  const auto [delta, rabi] = tilt_from_epsilon(p.epsilon, p.omega);

  // Tilt sign: with the long-lived level first, the coupling must enter with
  // a minus sign so that K0 = (|1> + |2>)/sqrt2 picks up extra short-lived
  // weight and decays faster than K0bar, matching the exact dynamics.
  ComplexMatrix h(3, 3);
  h(KaonBasis::long_lived, KaonBasis::long_lived) = 0.5 * (p.omega + delta);
  h(KaonBasis::short_lived, KaonBasis::short_lived) = 0.5 * (p.omega - delta);
  h(KaonBasis::long_lived, KaonBasis::short_lived) = -0.5 * rabi;
  h(KaonBasis::short_lived, KaonBasis::long_lived) = -0.5 * rabi;

  ComplexMatrix decay_short(3, 3);
  decay_short(KaonBasis::decayed, KaonBasis::short_lived) = 1.0;
  ComplexMatrix decay_long(3, 3);
  decay_long(KaonBasis::decayed, KaonBasis::long_lived) = 1.0;
  ComplexMatrix short_to_long(3, 3);
  short_to_long(KaonBasis::long_lived, KaonBasis::short_lived) = 1.0;

  std::vector<JumpChannel> channels{{decay_short, p.gamma_S},
                                    {decay_long, p.gamma_L},
                                    {short_to_long, 0.0}};
  return OpenSystem{h, std::move(channels), KaonBasis::frame()};
}

}  // namespace decaybell
