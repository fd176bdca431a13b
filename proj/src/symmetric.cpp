#include "sogdd/symmetric.hpp"

#include <algorithm>
#include <cmath>

#include "sogdd/errors.hpp"

namespace sogdd {

SymmetricMatrix::SymmetricMatrix(int n, std::vector<double> rowmajor) : n_(n), a_(std::move(rowmajor)) {
  if (n < 0 || a_.size() != static_cast<std::size_t>(n) * n) {
    throw ParameterError("matrix data does not match its dimension");
  }
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> values) {
  SymmetricMatrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.size(); ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

bool SymmetricMatrix::is_symmetric(double relative_tol) const noexcept {
  double largest = 0.0;
  for (double v : a_) largest = std::max(largest, std::abs(v));
  const double tol = relative_tol * std::max(largest, 1e-300);
  for (int r = 0; r < n_; ++r)
    for (int c = r + 1; c < n_; ++c)
      if (std::abs((*this)(r, c) - (*this)(c, r)) > tol) return false;
  return true;
}

std::vector<double> jacobi_eigenvalues(const SymmetricMatrix& m) {
  SymmetricMatrix a = m;
  const int n = a.size();
  const double norm = a.frobenius_norm();
  if (norm == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);
  const double target = 1e-12 * norm;

  auto off_norm = [&] {
    double s = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) s += 2.0 * a(r, c) * a(r, c);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 64 && off_norm() > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double ldlt_determinant(const SymmetricMatrix& m) {
  const int n = m.size();
  SymmetricMatrix l(n);
  std::vector<double> d(static_cast<std::size_t>(n));
  double det = 1.0;
  for (int j = 0; j < n; ++j) {
    double dj = m(j, j);
    for (int k = 0; k < j; ++k) dj -= l(j, k) * l(j, k) * d[static_cast<std::size_t>(k)];
    if (!(dj > 0.0)) return 0.0;
    d[static_cast<std::size_t>(j)] = dj;
    det *= dj;
    for (int i = j + 1; i < n; ++i) {
      double v = m(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k) * d[static_cast<std::size_t>(k)];
      l(i, j) = v / dj;
    }
  }
  return det;
}

}  // namespace sogdd
