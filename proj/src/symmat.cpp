#include "nlexit/symmat.hpp"

#include <algorithm>
#include <cmath>

namespace nlexit {

SymMat SymMat::plus(const SymMat& o, double w) const {
  if (o.n_ != n_) throw DimensionError("SymMat::plus: dimension mismatch");
  SymMat m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += w * o.a_[i];
  return m;
}

double SymMat::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

bool SymMat::is_symmetric(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::fabs(at(i, j) - at(j, i)) > tol) return false;
  return true;
}

// Cyclic Jacobi with optional eigenvector accumulation. Plenty for n <= 8.
void SymMat::jacobi(std::vector<double>& eigvals,
                    std::vector<double>* eigvecs) const {
  const int n = n_;
  std::vector<double> a = a_;
  std::vector<double> v;
  if (eigvecs) {
    v.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
  }
  auto A = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };
  const double scale = std::max(max_abs(), 1e-300);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(A(i, j)));
    if (off <= 1e-15 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(A(p, q)) <= 1e-18 * scale) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        if (eigvecs) {
          for (int k = 0; k < n; ++k) {
            const double vkp = v[static_cast<std::size_t>(k) * n + p];
            const double vkq = v[static_cast<std::size_t>(k) * n + q];
            v[static_cast<std::size_t>(k) * n + p] = c * vkp - s * vkq;
            v[static_cast<std::size_t>(k) * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  eigvals.resize(n);
  for (int i = 0; i < n; ++i) eigvals[i] = A(i, i);
  if (eigvecs) *eigvecs = std::move(v);
}

std::vector<double> SymMat::eigenvalues() const {
  std::vector<double> vals;
  jacobi(vals, nullptr);
  std::sort(vals.begin(), vals.end());
  return vals;
}

double SymMat::min_eigenvalue() const {
  if (n_ == 1) return at(0, 0);
  return eigenvalues().front();
}

SymMat SymMat::psd_factor(double tol) const {
  if (!is_symmetric(1e-12 * std::max(1.0, max_abs())))
    throw ArgumentError("psd_factor: matrix not symmetric");
  if (n_ == 1) {
    const double v = at(0, 0);
    if (v < -tol) throw ArgumentError("psd_factor: negative 1x1 entry");
    return SymMat::scalar(std::sqrt(std::max(v, 0.0)));
  }
  std::vector<double> vals;
  std::vector<double> vecs;
  jacobi(vals, &vecs);
  const double scale = std::max(max_abs(), 1.0);
  SymMat b(n_);
  for (int j = 0; j < n_; ++j) {
    if (vals[static_cast<std::size_t>(j)] < -tol * scale)
      throw ArgumentError("psd_factor: eigenvalue below -tolerance");
    const double s = std::sqrt(std::max(vals[static_cast<std::size_t>(j)], 0.0));
    for (int i = 0; i < n_; ++i)
      b.at(i, j) = s * vecs[static_cast<std::size_t>(i) * n_ + j];
  }
  return b;
}

SymMat SymMat::sandwich(std::span<const double> sigma, int d) const {
  const int k = n_;
  if (sigma.size() != static_cast<std::size_t>(d) * k)
    throw DimensionError("sandwich: sigma has wrong shape");
  // tmp = sigma * this  (d x k)
  std::vector<double> tmp(static_cast<std::size_t>(d) * k, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l)
        s += sigma[static_cast<std::size_t>(i) * k + l] * at(l, j);
      tmp[static_cast<std::size_t>(i) * k + j] = s;
    }
  SymMat out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l)
        s += tmp[static_cast<std::size_t>(i) * k + l] *
             sigma[static_cast<std::size_t>(j) * k + l];
      out.at(i, j) = s;
    }
  return out;
}

void mat_vec(const SymMat& m, std::span<const double> x, std::span<double> y) {
  const int n = m.dim();
  if (x.size() != static_cast<std::size_t>(n) ||
      y.size() != static_cast<std::size_t>(n))
    throw DimensionError("mat_vec: size mismatch");
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += m.at(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
}

}  // namespace nlexit
