#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "satsec/types.hpp"

namespace satsec::solvers {

/// Dense complex matrix, row-major. Sized for the small Hermitian systems
/// that appear in beamformer design (feed counts up to 64).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n);
  /// v v^H for a column vector v.
  static Matrix outer(std::span<const cx> v);
  /// h* h^T: the Gram matrix of the conjugated channel vector.
  static Matrix conj_outer(std::span<const cx> h);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const cx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  Matrix adjoint() const;
  double frobenius_norm() const;
  double trace_real() const;
  bool is_hermitian(double tol) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cx> data_;
};

CVec matvec(const Matrix& m, std::span<const cx> v);
/// a^H b
cx inner(std::span<const cx> a, std::span<const cx> b);
double norm_sq(std::span<const cx> v);
CVec scaled(std::span<const cx> v, cx s);

struct NotPositiveDefinite : std::runtime_error {
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

/// Lower-triangular L with E = L L^H. Throws NotPositiveDefinite when a
/// pivot falls at or below the tolerance; the input is never regularized.
Matrix cholesky(const Matrix& e);

/// Solves L x = b for lower-triangular L.
CVec forward_solve(const Matrix& l, std::span<const cx> b);
/// Solves L^H x = b for lower-triangular L.
CVec adjoint_solve(const Matrix& l, std::span<const cx> b);

struct EigDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // unitary, columns match values
};

/// Cyclic complex Jacobi eigendecomposition. Input must be Hermitian
/// within hermitian_tol relative to its Frobenius norm.
EigDecomposition hermitian_eig(const Matrix& m, double hermitian_tol = 1e-12);

struct EigPair {
  double value = 0.0;
  CVec vector;  // unit norm
};

EigPair hermitian_eig_max(const Matrix& m);

/// Top eigenpair of the pencil (U, E) with E Hermitian positive definite:
/// largest lambda with U v = lambda E v. Solved by Cholesky whitening
/// C = L^-1 U L^-H followed by a Hermitian eigendecomposition; the returned
/// vector is L^-H applied to the top whitened eigenvector, unit-normalized.
EigPair gen_eig_max(const Matrix& u, const Matrix& e);

}  // namespace satsec::solvers
