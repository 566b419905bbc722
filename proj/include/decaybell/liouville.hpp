#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "decaybell/linalg.hpp"

namespace decaybell {

/// One Lindblad jump channel: operator L and rate gamma >= 0 (1/ns).
struct JumpChannel {
  ComplexMatrix op;
  double rate = 0.0;
};

/// Which basis levels play the short-lived / long-lived roles for quasi-spin
/// embeddings (see effop.hpp). Systems without such a convention leave it unset.
struct QubitFrame {
  std::size_t short_lived;
  std::size_t long_lived;
};

/// Hamiltonian (Hermitian, 1/ns with hbar = 1) plus jump channels on an
/// N-level space. The anti-Hermitian part of any effective Hamiltonian enters
/// only through the channels.
class OpenSystem {
 public:
  OpenSystem(ComplexMatrix hamiltonian, std::vector<JumpChannel> channels,
             std::optional<QubitFrame> frame = std::nullopt)
      : hamiltonian_(std::move(hamiltonian)),
        channels_(std::move(channels)),
        frame_(frame) {
    if (!hamiltonian_.is_square()) {
      throw std::invalid_argument("OpenSystem: Hamiltonian must be square");
    }
    if (hermiticity_defect(hamiltonian_) > 1e-12 * std::max(1.0, hamiltonian_.max_abs())) {
      throw std::invalid_argument("OpenSystem: Hamiltonian must be Hermitian");
    }
    for (const auto& ch : channels_) {
      if (ch.rate < 0.0) throw std::invalid_argument("OpenSystem: negative channel rate");
      if (ch.op.rows() != dim() || ch.op.cols() != dim()) {
        throw std::invalid_argument("OpenSystem: channel dimension mismatch");
      }
    }
    if (frame_ && (frame_->short_lived >= dim() || frame_->long_lived >= dim() ||
                   frame_->short_lived == frame_->long_lived)) {
      throw std::invalid_argument("OpenSystem: invalid qubit frame");
    }
  }

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<JumpChannel>& channels() const { return channels_; }
  std::size_t dim() const { return hamiltonian_.rows(); }
  const std::optional<QubitFrame>& frame() const { return frame_; }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<JumpChannel> channels_;
  std::optional<QubitFrame> frame_;
};

/// Vectorized Lindblad generator A (N^2 x N^2, 1/ns) acting on row-major
/// vec(rho): d vec(rho)/dt = A vec(rho).
struct Liouvillian {
  ComplexMatrix generator;
  std::size_t dim = 0;
};

/// Assemble the Liouvillian
///   A = -i (H kron I - I kron H^T)
///       - sum_i gamma_i/2 [ (L_i^dag L_i) kron I + I kron (L_i^dag L_i)^T
///                           - 2 L_i kron (L_i^dag)^T ]
/// in the fully general transposed form, valid for jump operators that are
/// not self-transpose (dephasing projectors, for instance).
inline Liouvillian build_liouvillian(const OpenSystem& sys) {
  const std::size_t n = sys.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const Complex minus_i{0.0, -1.0};

  ComplexMatrix a = minus_i * (kron(sys.hamiltonian(), id) -
                               kron(id, sys.hamiltonian().transpose()));
  for (const auto& ch : sys.channels()) {
    if (ch.rate == 0.0) continue;
    const ComplexMatrix ldl = ch.op.adjoint() * ch.op;
    ComplexMatrix dissipator = kron(ldl, id) + kron(id, ldl.transpose()) -
                               2.0 * kron(ch.op, ch.op.adjoint().transpose());
    a -= (0.5 * ch.rate) * dissipator;
  }
  return Liouvillian{std::move(a), n};
}

namespace detail {

inline void require_density_matrix(const ComplexMatrix& rho, std::size_t dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("propagate: state dimension mismatch");
  }
  const double scale = std::max(1.0, rho.max_abs());
  if (hermiticity_defect(rho) > 1e-10 * scale) {
    throw std::invalid_argument("propagate: state is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-9) {
    throw std::invalid_argument("propagate: state does not have unit trace");
  }
  const auto spec = eig_hermitian(hermitize(rho));
  if (spec.eigenvalues.front() < -1e-10 * scale) {
    throw std::invalid_argument("propagate: state is not positive semidefinite");
  }
}

}  // namespace detail

/// Schroedinger picture: rho(t) = unvec(expm(A t) vec(rho0)).
inline ComplexMatrix propagate(const Liouvillian& liouvillian, const ComplexMatrix& rho0,
                               double t) {
  if (t < 0.0) throw std::invalid_argument("propagate: negative time");
  detail::require_density_matrix(rho0, liouvillian.dim);
  const ComplexMatrix rho_t =
      unvec(expm(liouvillian.generator * t) * vec(rho0), liouvillian.dim);
  return hermitize(rho_t);
}

/// Heisenberg picture: K(t) with Tr[K(t) rho0] = Tr[K rho(t)] for every rho0.
/// Under row-major vec and the Hilbert-Schmidt pairing this is the adjoint
/// propagator, vec(K(t)) = expm(A t)^dag vec(K). The dual of a
/// trace-preserving map is unital, so K = I stays I for all t.
inline ComplexMatrix heisenberg_evolve(const Liouvillian& liouvillian, const ComplexMatrix& k,
                                       double t) {
  if (t < 0.0) throw std::invalid_argument("heisenberg_evolve: negative time");
  if (k.rows() != liouvillian.dim || k.cols() != liouvillian.dim) {
    throw std::invalid_argument("heisenberg_evolve: observable dimension mismatch");
  }
  if (hermiticity_defect(k) > 1e-10 * std::max(1.0, k.max_abs())) {
    throw std::invalid_argument("heisenberg_evolve: observable is not Hermitian");
  }
  const ComplexMatrix k_t =
      unvec(expm(liouvillian.generator * t).adjoint() * vec(k), liouvillian.dim);
  return hermitize(k_t);
}

}  // namespace decaybell
