#pragma once

#include <span>
#include <vector>

#include "nlexit/errors.hpp"

namespace nlexit {

/// Small dense symmetric matrix (control-set elements, quadratic-variation
/// increments). Dimensions here are tiny (1-3 in practice), so everything is
/// done with plain loops and a Jacobi eigensolver.
class SymMat {
 public:
  explicit SymMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1) throw ArgumentError("SymMat: dimension must be >= 1");
  }

  static SymMat identity(int n) {
    SymMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
  static SymMat zero(int n) { return SymMat(n); }
  static SymMat diag(std::span<const double> d) {
    SymMat m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }
  static SymMat scalar(double v) {
    SymMat m(1);
    m.at(0, 0) = v;
    return m;
  }

  int dim() const { return n_; }
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  const std::vector<double>& raw() const { return a_; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  SymMat scaled(double s) const {
    SymMat m = *this;
    for (auto& v : m.a_) v *= s;
    return m;
  }

  SymMat plus(const SymMat& o, double w = 1.0) const;

  double max_abs() const;
  bool is_symmetric(double tol = 1e-12) const;

  /// Eigenvalues in ascending order (cyclic Jacobi).
  std::vector<double> eigenvalues() const;
  double min_eigenvalue() const;

  /// A factor B (n x n, column j = sqrt(lambda_j) v_j) with B B^T == this,
  /// for PSD input. Eigenvalues in [-tol, 0) are clamped to 0; an eigenvalue
  /// below -tol is an error. Handles singular matrices (rank-deficient
  /// controls) where a Cholesky factorization would fail.
  SymMat psd_factor(double tol = 1e-12) const;

  /// sigma * this * sigma^T for a d x k matrix sigma (row-major), this k x k.
  SymMat sandwich(std::span<const double> sigma, int d) const;

  bool operator==(const SymMat& o) const { return n_ == o.n_ && a_ == o.a_; }

 private:
  void jacobi(std::vector<double>& eigvals, std::vector<double>* eigvecs) const;

  int n_;
  std::vector<double> a_;  // row-major, full storage
};

/// y = M x for the square matrix stored in m (row-major n x n).
void mat_vec(const SymMat& m, std::span<const double> x, std::span<double> y);

}  // namespace nlexit
