#ifndef PAIRALG_EIGENSOLVE_HPP
#define PAIRALG_EIGENSOLVE_HPP

// Real symmetric eigensolvers: implicit-shift QL for tridiagonal matrices and
// cyclic Jacobi for dense ones. Complex Hermitian problems go through the
// real embedding [[Re, -Im], [Im, Re]].

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pairalg/system.hpp"

namespace pairalg {

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, int index) : std::runtime_error(what), index_(index) {}
  int index() const { return index_; }

private:
  int index_;
};

struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;

  int size() const { return static_cast<int>(diag.size()); }

  void validate() const {
    if (diag.empty()) throw InvalidArgument("tridiagonal matrix must have n >= 1");
    if (offdiag.size() + 1 != diag.size()) throw InvalidArgument("tridiagonal offdiag must have length n-1");
    for (double x : diag)
      if (!std::isfinite(x)) throw InvalidArgument("non-finite tridiagonal entry");
    for (double x : offdiag)
      if (!std::isfinite(x)) throw InvalidArgument("non-finite tridiagonal entry");
  }

  Eigen::MatrixXd dense() const {
    const int n = size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = offdiag[i];
    return a;
  }
};

/// Ascending eigenvalues; eigenvectors (when requested) are the columns of
/// `vectors`, each with its largest-magnitude component positive.
struct EigenResult {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
};

struct HermitianEigenResult {
  std::vector<double> values;
  Eigen::MatrixXcd vectors;
};

namespace detail {

inline void sort_and_fix_signs(std::vector<double>& values, Eigen::MatrixXd* vectors) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = values[order[i]];
  values = std::move(sorted);
  if (!vectors) return;
  Eigen::MatrixXd v(vectors->rows(), n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd col = vectors->col(order[i]);
    int best = 0;
    for (int k = 1; k < col.size(); ++k)
      if (std::abs(col[k]) > std::abs(col[best]) + 1e-12) best = k;
    if (col.size() > 0 && col[best] < 0) col = -col;
    v.col(i) = col;
  }
  *vectors = std::move(v);
}

}  // namespace detail

/// Implicit QL with Wilkinson shift; at most 50 iterations per eigenvalue.
inline EigenResult eig_tridiag(const SymTridiag& t, bool want_vectors) {
  t.validate();
  const int n = t.size();
  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];

  Eigen::MatrixXd z;
  if (want_vectors) z = Eigen::MatrixXd::Identity(n, n);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == 50) throw ConvergenceError("tridiagonal QL failed to converge", l);

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double zf = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * zf;
            z(k, i) = c * z(k, i) - s * zf;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (true);
  }

  EigenResult res;
  res.values = std::move(d);
  if (want_vectors) {
    detail::sort_and_fix_signs(res.values, &z);
    res.vectors = std::move(z);
  } else {
    detail::sort_and_fix_signs(res.values, nullptr);
  }
  return res;
}

/// Cyclic Jacobi. Sweeps until the off-diagonal Frobenius norm drops below
/// 1e-12 of the full norm.
inline EigenResult eig_dense_sym(const Eigen::MatrixXd& input, bool want_vectors) {
  const int n = static_cast<int>(input.rows());
  if (input.cols() != n) throw InvalidArgument("matrix must be square");
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  if (n > 0 && (input - input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("matrix is not symmetric within 1e-12");

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v;
  if (want_vectors) v = Eigen::MatrixXd::Identity(n, n);

  const double total = a.norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (int q = 1; q < n; ++q)
      for (int p = 0; p < q; ++p) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_norm() > 1e-12 * total) {
    if (sweep++ == kMaxSweeps) throw ConvergenceError("Jacobi sweeps exhausted", sweep);
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double th = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, th) / (std::abs(th) + std::sqrt(th * th + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  EigenResult res;
  res.values.resize(n);
  for (int i = 0; i < n; ++i) res.values[i] = a(i, i);
  if (want_vectors) {
    detail::sort_and_fix_signs(res.values, &v);
    res.vectors = std::move(v);
  } else {
    detail::sort_and_fix_signs(res.values, nullptr);
  }
  return res;
}

/// [[Re, -Im], [Im, Re]]; each eigenvalue of h appears twice.
inline Eigen::MatrixXd hermitian_embedding(const Eigen::MatrixXcd& h) {
  const int n = static_cast<int>(h.rows());
  Eigen::MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = h.real();
  m.topRightCorner(n, n) = -h.imag();
  m.bottomLeftCorner(n, n) = h.imag();
  m.bottomRightCorner(n, n) = h.real();
  return m;
}

/// Complex Hermitian eigenproblem via the real embedding. Returns n eigenpairs.
inline HermitianEigenResult eig_hermitian(const Eigen::MatrixXcd& h, bool want_vectors) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n) throw InvalidArgument("matrix must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (n > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("matrix is not Hermitian within 1e-12");

  const auto real = eig_dense_sym(hermitian_embedding(h), true);
  HermitianEigenResult res;
  if (n == 0) return res;

  // Walk clusters of (near-)equal eigenvalues; each 2k-dimensional real
  // cluster spans a k-dimensional complex eigenspace.
  const double tol = 1e-8 * scale;
  std::vector<Eigen::VectorXcd> kept;
  std::vector<double> values;
  int start = 0;
  while (start < 2 * n) {
    int stop = start + 1;
    while (stop < 2 * n && real.values[stop] - real.values[stop - 1] <= tol) ++stop;
    std::vector<Eigen::VectorXcd> cluster;
    for (int c = start; c < stop; ++c) {
      Eigen::VectorXcd u(n);
      for (int k = 0; k < n; ++k) u[k] = {real.vectors(k, c), real.vectors(k + n, c)};
      for (const auto& w : cluster) u -= w.dot(u) * w;
      const double norm = u.norm();
      if (norm > 0.5) cluster.push_back(u / norm);
    }
    for (auto& u : cluster) {
      values.push_back((u.dot(h * u)).real());
      kept.push_back(std::move(u));
    }
    start = stop;
  }
  if (static_cast<int>(kept.size()) != n)
    throw ConvergenceError("Hermitian embedding produced " + std::to_string(kept.size()) + " vectors for n=" +
                               std::to_string(n),
                           0);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  res.values.resize(n);
  if (want_vectors) res.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    res.values[i] = values[order[i]];
    if (want_vectors) res.vectors.col(i) = kept[order[i]];
  }
  return res;
}

}  // namespace pairalg

#endif
