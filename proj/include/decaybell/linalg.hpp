#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace decaybell {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage. The single value type used for
/// states, density matrices, observables and superoperators throughout the
/// library. Row-major is load-bearing: vec() below is defined as the
/// row-by-row flattening, and every superoperator identity in liouville.hpp
/// assumes that ordering.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  /// Column vector from components.
  static ComplexMatrix column(std::vector<Complex> entries) {
    const std::size_t n = entries.size();
    return {n, 1, std::move(entries)};
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex{s, 0.0}; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex{s, 0.0}; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex{-1.0, 0.0}; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("ComplexMatrix: product shape mismatch");
    }
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix c = *this;
    for (auto& e : c.entries_) e = std::conj(e);
    return c;
  }

  ComplexMatrix adjoint() const { return transpose().conjugate(); }

  Complex trace() const {
    if (!is_square()) throw std::invalid_argument("ComplexMatrix: trace of non-square matrix");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Maximum column sum of absolute values (induced 1-norm).
  double one_norm() const {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
      best = std::max(best, s);
    }
    return best;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& e : entries_) best = std::max(best, std::abs(e));
    return best;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e);
    return std::sqrt(s);
  }

  bool all_finite() const {
    for (const auto& e : entries_) {
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    }
    return true;
  }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + what);
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Largest entrywise deviation from Hermiticity.
inline double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermiticity_defect: non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12) {
  return m.is_square() && hermiticity_defect(m) <= tol * std::max(1.0, m.max_abs());
}

/// (M + M^dagger)/2, scrubs roundoff from operators Hermitian by construction.
inline ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix h = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h(i, i) = Complex{m(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  }
  return h;
}

/// Kronecker product, dims (rA*rB, cA*cB).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

/// Row-major vectorization of a square matrix:
/// vec(M) = (M_11, ..., M_1N, M_21, ..., M_NN) as a column vector.
/// Under this ordering vec(A X B) = (A kron B^T) vec(X).
inline ComplexMatrix vec(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("vec: matrix must be square");
  return ComplexMatrix(m.rows() * m.cols(), 1, m.entries());
}

/// Inverse of vec: row-major reshape of a length-n^2 column vector.
inline ComplexMatrix unvec(const ComplexMatrix& v, std::size_t n) {
  if (v.cols() != 1 || v.rows() != n * n) {
    throw std::invalid_argument("unvec: vector length does not equal n^2");
  }
  return ComplexMatrix(n, n, v.entries());
}

namespace detail {

/// Solve A X = B by LU decomposition with partial pivoting; A square.
inline ComplexMatrix lu_solve(ComplexMatrix a, ComplexMatrix b) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.rows() != n) {
    throw std::invalid_argument("lu_solve: shape mismatch");
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) throw std::domain_error("lu_solve: singular matrix");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(pivot, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  // back substitution
  for (std::size_t col = 0; col < b.cols(); ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = b(ii, col);
      for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * b(j, col);
      b(ii, col) = s / a(ii, ii);
    }
  }
  return b;
}

// Pade numerator/denominator pairs for exp(A) around A = 0; after each
// helper, (V - U)^{-1} (V + U) is the approximant.
inline void expm_pade3(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
  static const double b[] = {120.0, 60.0, 12.0, 1.0};
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  const ComplexMatrix a2 = a * a;
  u = a * (b[3] * a2 + b[1] * id);
  v = b[2] * a2 + b[0] * id;
}

inline void expm_pade5(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
  static const double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[4] * a4 + b[2] * a2 + b[0] * id;
}

inline void expm_pade7(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
  static const double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                             25200.0,    1512.0,    56.0,      1.0};
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

inline void expm_pade9(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
  static const double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                             30270240.0,    2162160.0,    110880.0,     3960.0,
                             90.0,          1.0};
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix a8 = a6 * a2;
  u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

inline void expm_pade13(const ComplexMatrix& a, ComplexMatrix& u, ComplexMatrix& v) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
           b[1] * id);
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace detail

/// Matrix exponential by scaling-and-squaring with Pade approximants
/// (orders 3/5/7/9/13 chosen from the 1-norm, Higham's thresholds).
/// Valid for arbitrary complex square matrices; Liouvillians are non-normal,
/// so no eigendecomposition shortcut is taken.
inline ComplexMatrix expm(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("expm: matrix must be square");
  if (!a.all_finite()) throw std::invalid_argument("expm: non-finite entries");
  if (a.rows() == 0) return a;

  const double norm = a.one_norm();
  ComplexMatrix u, v;
  int squarings = 0;
  if (norm < 1.495585217958292e-2) {
    detail::expm_pade3(a, u, v);
  } else if (norm < 2.539398330063230e-1) {
    detail::expm_pade5(a, u, v);
  } else if (norm < 9.504178996162932e-1) {
    detail::expm_pade7(a, u, v);
  } else if (norm < 2.097847961257068) {
    detail::expm_pade9(a, u, v);
  } else {
    const double theta13 = 5.371920351148152;
    std::frexp(norm / theta13, &squarings);
    if (squarings < 0) squarings = 0;
    const ComplexMatrix scaled = a * std::ldexp(1.0, -squarings);
    detail::expm_pade13(scaled, u, v);
  }
  ComplexMatrix result = detail::lu_solve(v - u, v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

/// Eigendecomposition result of a Hermitian matrix: real eigenvalues sorted
/// ascending, eigenvectors as the corresponding orthonormal columns.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Hermitian eigensolver: cyclic Jacobi with complex plane rotations.
/// The input is symmetrized internally; inputs further than `tol` (scaled by
/// the largest entry) from Hermitian are rejected.
inline Spectrum eig_hermitian(const ComplexMatrix& m, double tol = 1e-10) {
  if (!m.is_square()) throw std::invalid_argument("eig_hermitian: matrix must be square");
  const std::size_t n = m.rows();
  const double scale = std::max(1.0, m.max_abs());
  if (hermiticity_defect(m) > tol * scale) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within tolerance");
  }

  ComplexMatrix a = hermitize(m);
  ComplexMatrix vecs = ComplexMatrix::identity(n);

  const double stop = 1e-15 * std::max(1.0, a.frobenius_norm());
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        // Phase-rotate the pivot entry onto the real axis, then apply the
        // classic symmetric Jacobi rotation that annihilates it.
        const Complex phase = apq / mag;  // e^{i theta}
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U restricted to (p,q): [[c, -s], [conj(phase) s, conj(phase) c]]
        const Complex upp{c, 0.0}, upq{-s, 0.0};
        const Complex uqp = std::conj(phase) * s, uqq = std::conj(phase) * c;
        for (std::size_t k = 0; k < n; ++k) {  // A <- A U, column update
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A, row update
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // accumulate eigenvectors
          const Complex vkp = vecs(k, p), vkq = vecs(k, q);
          vecs(k, p) = vkp * upp + vkq * uqp;
          vecs(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Spectrum spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    spec.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) spec.eigenvectors(i, j) = vecs(i, order[j]);
  }
  return spec;
}

}  // namespace decaybell
