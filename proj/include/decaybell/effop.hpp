#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "decaybell/kaon.hpp"
#include "decaybell/linalg.hpp"
#include "decaybell/liouville.hpp"

namespace decaybell {

/// How a measurement outcome is propagated back to t = 0.
///   analytic: conjugation with the non-unitary two-level propagator G(t);
///             exact for kaons at every epsilon.
///   lindblad: Heisenberg evolution under the vectorized Lindblad generator;
///             the general route, emulating epsilon via the tilted axis.
enum class EvolutionMode { analytic, lindblad };

/// One measurement: a quasi-spin direction (or an explicit projector), a
/// measurement time, and the evolution mode used to fold the time evolution
/// into the operator.
struct MeasurementSetting {
  QuasiSpin direction{0.0, 0.0};
  double time_ns = 0.0;
  EvolutionMode mode = EvolutionMode::lindblad;
  std::optional<ComplexMatrix> projector;  // overrides direction when present

  MeasurementSetting(QuasiSpin dir, double t, EvolutionMode m)
      : direction(dir), time_ns(t), mode(m) {
    if (t < 0.0) throw std::invalid_argument("MeasurementSetting: negative time");
  }

  MeasurementSetting(ComplexMatrix proj, double t, EvolutionMode m)
      : time_ns(t), mode(m), projector(std::move(proj)) {
    if (t < 0.0) throw std::invalid_argument("MeasurementSetting: negative time");
    const ComplexMatrix& k = *projector;
    if (!k.is_square()) throw std::invalid_argument("MeasurementSetting: projector not square");
    if (hermiticity_defect(k) > 1e-10 * std::max(1.0, k.max_abs()) ||
        (k * k - k).max_abs() > 1e-10) {
      throw std::invalid_argument("MeasurementSetting: K must satisfy K = K^dag and K^2 = K");
    }
  }
};

/// O(t) = 2 K(t) - 1 with K(t) the backward-evolved yes-projector. Satisfies
/// Tr[O rho0] = 2 P(yes) - 1, the "no" outcome absorbing both the orthogonal
/// result and every non-detection (decayed) event.
struct EffectiveOperator {
  ComplexMatrix matrix;
  std::size_t dim = 0;
  MeasurementSetting setting;
};

namespace detail {

/// Quasi-spin state written in a system's qubit frame: the short-lived axis
/// carries cos(a/2), the long-lived axis sin(a/2) e^{i phi}, every other
/// level zero. Exact for kaons at epsilon = 0; the emulation convention
/// otherwise.
inline ComplexMatrix embed_quasi_spin(const QuasiSpin& q, const QubitFrame& frame,
                                      std::size_t dim) {
  ComplexMatrix v(dim, 1);
  v(frame.short_lived, 0) = std::cos(q.alpha / 2.0);
  v(frame.long_lived, 0) = std::sin(q.alpha / 2.0) * std::exp(Complex{0.0, q.phi});
  return v;
}

inline ComplexMatrix embed_projector(const ComplexMatrix& proj, const QubitFrame& frame,
                                     std::size_t dim) {
  if (proj.rows() == dim) return proj;
  if (proj.rows() != 2) {
    throw std::invalid_argument("effective_operator: projector dimension mismatch");
  }
  // 2x2 projector on the (short, long) block, zero on every other level.
  ComplexMatrix k(dim, dim);
  const std::size_t idx[2] = {frame.short_lived, frame.long_lived};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) k(idx[a], idx[b]) = proj(a, b);
  return k;
}

}  // namespace detail

/// General construction on an open system (lindblad mode only).
inline EffectiveOperator effective_operator(const OpenSystem& sys,
                                            const MeasurementSetting& setting) {
  if (setting.mode != EvolutionMode::lindblad) {
    throw std::invalid_argument(
        "effective_operator: analytic mode needs kaon parameters, not a raw OpenSystem");
  }
  ComplexMatrix k(0, 0);
  if (setting.projector) {
    if (setting.projector->rows() != sys.dim() && !sys.frame()) {
      throw std::invalid_argument("effective_operator: projector dimension mismatch");
    }
    k = setting.projector->rows() == sys.dim()
            ? *setting.projector
            : detail::embed_projector(*setting.projector, *sys.frame(), sys.dim());
  } else {
    if (!sys.frame()) {
      throw std::invalid_argument(
          "effective_operator: system has no qubit frame; pass an explicit projector");
    }
    const ComplexMatrix v = detail::embed_quasi_spin(setting.direction, *sys.frame(), sys.dim());
    k = v * v.adjoint();
  }

  const ComplexMatrix k_t = heisenberg_evolve(build_liouvillian(sys), k, setting.time_ns);
  ComplexMatrix o = 2.0 * k_t - ComplexMatrix::identity(sys.dim());
  return EffectiveOperator{hermitize(o), sys.dim(), setting};
}

/// Kaon dispatch: analytic mode works on the two-level strangeness basis with
/// the exact propagator; lindblad mode goes through the three-level system.
inline EffectiveOperator effective_operator(const KaonParams& params,
                                            const MeasurementSetting& setting) {
  if (setting.mode == EvolutionMode::lindblad) {
    return effective_operator(kaon_open_system(params), setting);
  }
  ComplexMatrix k(2, 2);
  if (setting.projector) {
    if (setting.projector->rows() != 2) {
      throw std::invalid_argument("effective_operator: analytic mode projector must be 2x2");
    }
    k = *setting.projector;
  } else {
    const ComplexMatrix v = quasi_spin_state(params, setting.direction);
    k = v * v.adjoint();
  }
  const ComplexMatrix g = ww_propagator(params, setting.time_ns);
  ComplexMatrix o = 2.0 * (g.adjoint() * k * g) - ComplexMatrix::identity(2);
  return EffectiveOperator{hermitize(o), 2, setting};
}

/// Multi-particle witness: Kronecker product of the operators in list order.
inline ComplexMatrix tensor_witness(const std::vector<EffectiveOperator>& ops) {
  if (ops.empty()) throw std::invalid_argument("tensor_witness: empty operator list");
  ComplexMatrix w = ops.front().matrix;
  for (std::size_t i = 1; i < ops.size(); ++i) w = kron(w, ops[i].matrix);
  return w;
}

/// E = Re Tr[W rho0]. The imaginary residual is a sanity guard: both factors
/// are Hermitian, so anything beyond roundoff indicates a broken input.
inline double expectation(const ComplexMatrix& w, const ComplexMatrix& rho0) {
  if (w.rows() != rho0.rows() || w.cols() != rho0.cols() || !w.is_square()) {
    throw std::invalid_argument("expectation: shape mismatch");
  }
  if (hermiticity_defect(rho0) > 1e-10 * std::max(1.0, rho0.max_abs())) {
    throw std::invalid_argument("expectation: rho0 is not Hermitian");
  }
  const Complex tr = (w * rho0).trace();
  if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr))) {
    throw std::domain_error("expectation: imaginary residual exceeds tolerance");
  }
  return tr.real();
}

}  // namespace decaybell
