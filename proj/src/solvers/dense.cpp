#include "satsec/solvers/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace satsec::solvers {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::outer(std::span<const cx> v) {
  const int n = static_cast<int>(v.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

Matrix Matrix::conj_outer(std::span<const cx> h) {
  const int n = static_cast<int>(h.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::conj(h[i]) * h[j];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const cx& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double Matrix::trace_real() const {
  double s = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i).real();
  return s;
}

bool Matrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  const double scale = std::max(frobenius_norm(), 1e-300);
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol * scale) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (cx& z : data_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const cx aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

CVec matvec(const Matrix& m, std::span<const cx> v) {
  CVec out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    cx s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

cx inner(std::span<const cx> a, std::span<const cx> b) {
  cx s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double norm_sq(std::span<const cx> v) {
  double s = 0.0;
  for (const cx& z : v) s += std::norm(z);
  return s;
}

CVec scaled(std::span<const cx> v, cx s) {
  CVec out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = v[k] * s;
  return out;
}

Matrix cholesky(const Matrix& e) {
  const int n = e.rows();
  if (n != e.cols()) throw std::invalid_argument("cholesky: matrix not square");
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(e(i, i).real()));
  const double pivot_tol = n * 1e-15 * std::max(max_diag, 1e-300);

  Matrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = e(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d <= pivot_tol)
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(d) + " at index " +
                                std::to_string(j) + " is not positive");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      cx s = e(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / l(j, j).real();
    }
  }
  return l;
}

CVec forward_solve(const Matrix& l, std::span<const cx> b) {
  const int n = l.rows();
  CVec x(n);
  for (int i = 0; i < n; ++i) {
    cx s = b[i];
    for (int j = 0; j < i; ++j) s -= l(i, j) * x[j];
    x[i] = s / l(i, i);
  }
  return x;
}

CVec adjoint_solve(const Matrix& l, std::span<const cx> b) {
  const int n = l.rows();
  CVec x(n);
  for (int i = n - 1; i >= 0; --i) {
    cx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= std::conj(l(j, i)) * x[j];
    x[i] = s / std::conj(l(i, i));
  }
  return x;
}

namespace {

double off_diag_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace

EigDecomposition hermitian_eig(const Matrix& m, double hermitian_tol) {
  const int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  if (!m.is_hermitian(hermitian_tol)) throw std::invalid_argument("hermitian_eig: input not Hermitian");

  Matrix a = m;
  // Symmetrize away roundoff so the iteration sees an exactly Hermitian matrix.
  for (int i = 0; i < n; ++i) {
    a(i, i) = cx(a(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }

  Matrix v = Matrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  constexpr int kMaxSweeps = 60;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diag_norm(a) <= 1e-14 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;

        // 2x2 block [[app, apq], [conj(apq), aqq]] is diagonalized by the
        // unitary [[c, -conj(s)], [s, c]] with c real, s = t*c*exp(-i*arg(apq)),
        // tan(2*theta) = 2|apq| / (app - aqq).
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (app - aqq) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cx phase = apq / mag;
        const cx s = t * c * std::conj(phase);

        // Rows p and q of A (J^H applied on the left).
        for (int k = 0; k < n; ++k) {
          const cx akp = a(p, k);
          const cx akq = a(q, k);
          a(p, k) = c * akp + std::conj(s) * akq;
          a(q, k) = -s * akp + c * akq;
        }
        // Columns p and q of A (J applied on the right).
        for (int k = 0; k < n; ++k) {
          const cx akp = a(k, p);
          const cx akq = a(k, q);
          a(k, p) = c * akp + s * akq;
          a(k, q) = -std::conj(s) * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cx vkp = v(k, p);
          const cx vkq = v(k, q);
          v(k, p) = c * vkp + s * vkq;
          v(k, q) = -std::conj(s) * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cx(a(p, p).real(), 0.0);
        a(q, q) = cx(a(q, q).real(), 0.0);
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

EigPair hermitian_eig_max(const Matrix& m) {
  const EigDecomposition d = hermitian_eig(m);
  const int n = m.rows();
  EigPair top;
  top.value = d.values[n - 1];
  top.vector.resize(n);
  for (int i = 0; i < n; ++i) top.vector[i] = d.vectors(i, n - 1);
  return top;
}

EigPair gen_eig_max(const Matrix& u, const Matrix& e) {
  const int n = u.rows();
  const Matrix l = cholesky(e);

  // C = L^-1 U L^-H, assembled column by column through triangular solves.
  Matrix z(n, n);
  CVec col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = u(i, j);
    const CVec y = forward_solve(l, col);
    for (int i = 0; i < n; ++i) z(i, j) = y[i];
  }
  Matrix c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) col[j] = std::conj(z(i, j));
    const CVec y = forward_solve(l, col);
    for (int j = 0; j < n; ++j) c(i, j) = std::conj(y[j]);
  }
  // Roundoff in the two solves breaks exact symmetry.
  for (int i = 0; i < n; ++i) {
    c(i, i) = cx(c(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cx v = 0.5 * (c(i, j) + std::conj(c(j, i)));
      c(i, j) = v;
      c(j, i) = std::conj(v);
    }
  }

  const EigPair whitened = hermitian_eig_max(c);
  CVec v = adjoint_solve(l, whitened.vector);
  const double nrm = std::sqrt(norm_sq(v));
  for (cx& x : v) x /= nrm;
  return EigPair{whitened.value, std::move(v)};
}

}  // namespace satsec::solvers
