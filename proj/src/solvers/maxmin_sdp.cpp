#include "satsec/solvers/maxmin_sdp.hpp"

#include <algorithm>
#include <cmath>

namespace satsec::solvers {

namespace {

struct Reduction {
  int dim = 0;      // 1 or 2
  CVec q1, q2;      // orthonormal basis of span{a, b}
  double a1 = 0.0;  // q1^H a (real by construction, = ||a||)
  cx b1;            // q1^H b
  double b2 = 0.0;  // q2^H b (real >= 0 by construction)
};

Reduction reduce_span(const CVec& a, const CVec& b) {
  Reduction r;
  r.q1 = scaled(a, 1.0 / std::sqrt(norm_sq(a)));
  r.a1 = std::sqrt(norm_sq(a));
  r.b1 = inner(r.q1, b);
  CVec resid(b.size());
  for (size_t k = 0; k < b.size(); ++k) resid[k] = b[k] - r.b1 * r.q1[k];
  const double rn = std::sqrt(norm_sq(resid));
  // Gram condition: a residual this small means the channels are parallel
  // and the span is one-dimensional.
  if (rn <= 1e-8 * std::sqrt(norm_sq(b))) {
    r.dim = 1;
    return r;
  }
  r.dim = 2;
  r.q2 = scaled(resid, 1.0 / rn);
  r.b2 = rn;
  return r;
}

struct TracePoint {
  double trace = 0.0;
  double x1 = 0.0;  // coordinate along q1 (real)
  cx x2;            // coordinate along q2
};

/// Minimum ||x||^2 over x in C^2 with |a~^H x| >= s1 and |b~^H x| >= s2,
/// where a~ = (a1, 0) and b~ = (b1, b2). The minimizer is closed form: fix
/// x1 real, align the phase of x2 with b1* x1 and solve the remaining
/// two-variable quadratic over a half-plane.
TracePoint min_trace_point(const Reduction& r, double s1, double s2) {
  const double p = s1 / r.a1;
  const double u = std::abs(r.b1);
  const double v = r.b2;
  const cx phase = (u > 0.0) ? std::conj(r.b1) / u : cx(1.0, 0.0);

  double r1, r2;
  if (u * p >= s2) {
    r1 = p;
    r2 = 0.0;
  } else {
    const double line_r1 = s2 * u / (u * u + v * v);
    if (line_r1 >= p) {
      r1 = line_r1;
      r2 = s2 * v / (u * u + v * v);
    } else {
      r1 = p;
      r2 = (s2 - u * p) / v;
    }
  }
  TracePoint out;
  out.x1 = r1;
  out.x2 = r2 * phase;
  out.trace = r1 * r1 + r2 * r2;
  return out;
}

CVec assemble(const Reduction& r, double x1, cx x2) {
  CVec w(r.q1.size());
  for (size_t k = 0; k < w.size(); ++k) {
    w[k] = x1 * r.q1[k];
    if (r.dim == 2) w[k] += x2 * r.q2[k];
  }
  return w;
}

double quotient(const CVec& w, const CVec& f, double sigma2) {
  return std::norm(inner(f, w)) / sigma2;
}

// Real-coordinate view of Hermitian r x r matrices: r diagonal entries plus
// (re, im) pairs of the strict upper triangle, scaled so the Frobenius inner
// product becomes the Euclidean dot product.
std::vector<double> herm_coords(const Matrix& m) {
  const int n = m.rows();
  std::vector<double> c;
  c.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) c.push_back(m(i, i).real());
  const double rt2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      c.push_back(rt2 * m(i, j).real());
      c.push_back(rt2 * m(i, j).imag());
    }
  return c;
}

Matrix herm_from_coords(const std::vector<double>& c, int n) {
  Matrix m(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) m(i, i) = c[k++];
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double re = c[k++] * inv_rt2;
      const double im = c[k++] * inv_rt2;
      m(i, j) = cx(re, im);
      m(j, i) = cx(re, -im);
    }
  return m;
}

}  // namespace

CVec rank_one_factor(const Matrix& m, double tol) {
  const int n = m.rows();
  const double tr = m.trace_real();
  if (tr <= 0.0) return CVec(n, 0.0);

  int jmax = 0;
  for (int j = 1; j < n; ++j)
    if (m(j, j).real() > m(jmax, jmax).real()) jmax = j;

  // For M = v v^H any nonzero column is proportional to v; rescale the
  // strongest one so its self-outer-product reproduces M.
  CVec v(n);
  for (int i = 0; i < n; ++i) v[i] = m(i, jmax);
  const double cn = std::sqrt(norm_sq(v));
  const double s = std::sqrt(tr) / cn;
  for (cx& z : v) z *= s;

  double resid = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) resid += std::norm(m(i, j) - v[i] * std::conj(v[j]));
  if (std::sqrt(resid) > tol * tr)
    throw std::invalid_argument("rank_one_factor: matrix is not rank one");
  return v;
}

MaxMinSdpResult maxmin_sdp(const Matrix& a_mat, const Matrix& b_mat, double sigma2_1,
                           double sigma2_2, double p_total) {
  if (!(p_total > 0.0)) throw std::invalid_argument("maxmin_sdp: p_total must be positive");
  if (!(sigma2_1 > 0.0) || !(sigma2_2 > 0.0))
    throw std::invalid_argument("maxmin_sdp: noise variances must be positive");

  const int n = a_mat.rows();
  const CVec a = rank_one_factor(a_mat);
  const CVec b = rank_one_factor(b_mat);
  const double na2 = norm_sq(a);
  const double nb2 = norm_sq(b);

  MaxMinSdpResult out;
  out.gram = Matrix(n, n);
  out.beamformer = CVec(n, 0.0);
  if (na2 <= 0.0 || nb2 <= 0.0) return out;  // one trace term is identically zero

  const Reduction red = reduce_span(a, b);

  CVec w;
  if (red.dim == 1) {
    w = scaled(red.q1, std::sqrt(p_total));
  } else {
    // Bisection on gamma; feasibility via the closed-form minimum trace.
    const double gamma_hi = p_total * std::min(na2 / sigma2_1, nb2 / sigma2_2);
    const auto feasible = [&](double g) {
      return min_trace_point(red, std::sqrt(g * sigma2_1), std::sqrt(g * sigma2_2)).trace <=
             p_total * (1.0 + 1e-12);
    };
    double lo = 0.0, hi = gamma_hi;
    if (feasible(gamma_hi)) {
      lo = gamma_hi;
    } else {
      for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
      }
    }
    const TracePoint pt = min_trace_point(red, std::sqrt(lo * sigma2_1), std::sqrt(lo * sigma2_2));
    // Scaling the feasible point to the full budget raises both SNRs by the
    // same factor, landing on the optimum regardless of bisection resolution.
    const double scale = std::sqrt(p_total / pt.trace);
    w = assemble(red, pt.x1 * scale, pt.x2 * scale);
  }

  out.gamma_star = std::min(quotient(w, a, sigma2_1), quotient(w, b, sigma2_2));
  out.gram = Matrix::outer(w);
  out.power_used = norm_sq(w);
  out.beamformer = std::move(w);
  return out;
}

CVec rank_one_extract(const MaxMinSdpResult& result, const Matrix& a_mat, const Matrix& b_mat,
                      double sigma2_1, double sigma2_2, double p_total) {
  Matrix w = result.gram;
  const int n = w.rows();
  const double tr0 = w.trace_real();
  if (tr0 <= 0.0) return CVec(n, 0.0);

  constexpr double kRankTol = 1e-8;
  constexpr int kMaxSteps = 80;
  const Matrix constraints[3] = {Matrix::identity(n), a_mat, b_mat};

  for (int step = 0; step <= kMaxSteps; ++step) {
    const EigDecomposition d = hermitian_eig(w);
    const double tr = w.trace_real();

    std::vector<int> keep;
    for (int j = 0; j < n; ++j)
      if (d.values[j] > kRankTol * tr) keep.push_back(j);
    const int r = static_cast<int>(keep.size());

    if (r <= 1) {
      const int j = keep.empty() ? n - 1 : keep.front();
      CVec v(n);
      const double s = std::sqrt(std::max(d.values[j], 0.0));
      for (int i = 0; i < n; ++i) v[i] = s * d.vectors(i, j);
      const double snr = std::min(std::norm(inner(rank_one_factor(a_mat), v)) / sigma2_1,
                                  std::norm(inner(rank_one_factor(b_mat), v)) / sigma2_2);
      if (norm_sq(v) > p_total * (1.0 + 1e-9) ||
          snr < result.gamma_star * (1.0 - 1e-5))
        throw RankReductionError("rank_one_extract: extracted vector violates the contract (snr " +
                                 std::to_string(snr) + " vs gamma " +
                                 std::to_string(result.gamma_star) + ")");
      return v;
    }
    if (step == kMaxSteps)
      throw RankReductionError("rank_one_extract: purification did not converge");

    // W = V V^H with V n x r; any Hermitian Delta orthogonal to all three
    // projected constraints V^H C V yields a feasible step V (I - t Delta) V^H.
    Matrix vfac(n, r);
    for (int j = 0; j < r; ++j) {
      const double s = std::sqrt(d.values[keep[j]]);
      for (int i = 0; i < n; ++i) vfac(i, j) = s * d.vectors(i, keep[j]);
    }
    const Matrix vadj = vfac.adjoint();

    std::vector<std::vector<double>> basis;
    for (const Matrix& c : constraints) {
      std::vector<double> coords = herm_coords(vadj * (c * vfac));
      for (const auto& e : basis) {
        double dot = 0.0;
        for (size_t k = 0; k < coords.size(); ++k) dot += coords[k] * e[k];
        for (size_t k = 0; k < coords.size(); ++k) coords[k] -= dot * e[k];
      }
      double nrm = 0.0;
      for (double x : coords) nrm += x * x;
      nrm = std::sqrt(nrm);
      if (nrm > 1e-12) {
        for (double& x : coords) x /= nrm;
        basis.push_back(std::move(coords));
      }
    }

    const size_t dim = static_cast<size_t>(r) * r;
    std::vector<double> delta_coords;
    for (size_t cand = 0; cand < dim; ++cand) {
      std::vector<double> c(dim, 0.0);
      c[cand] = 1.0;
      for (const auto& e : basis) {
        double dot = 0.0;
        for (size_t k = 0; k < dim; ++k) dot += c[k] * e[k];
        for (size_t k = 0; k < dim; ++k) c[k] -= dot * e[k];
      }
      double nrm = 0.0;
      for (double x : c) nrm += x * x;
      if (std::sqrt(nrm) > 1e-7) {
        delta_coords = std::move(c);
        break;
      }
    }
    if (delta_coords.empty())
      throw RankReductionError("rank_one_extract: no purification direction found at rank " +
                               std::to_string(r));

    const Matrix delta = herm_from_coords(delta_coords, r);
    const EigDecomposition de = hermitian_eig(delta);
    double lam = de.values.front();
    if (std::abs(de.values.back()) > std::abs(lam)) lam = de.values.back();
    const double t = 1.0 / lam;

    Matrix core = Matrix::identity(r);
    core -= t * delta;
    w = vfac * (core * vadj);
    // Clean up hermiticity drift before the next spectral step.
    for (int i = 0; i < n; ++i) {
      w(i, i) = cx(w(i, i).real(), 0.0);
      for (int j = i + 1; j < n; ++j) {
        const cx v2 = 0.5 * (w(i, j) + std::conj(w(j, i)));
        w(i, j) = v2;
        w(j, i) = std::conj(v2);
      }
    }
  }
  throw RankReductionError("rank_one_extract: unreachable");
}

}  // namespace satsec::solvers
