#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gcoarse {

/// Square row-major matrix of doubles for the dense embedding and
/// verification paths. Sizes stay in the low thousands.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);

  std::size_t size() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  std::span<const double> data() const { return data_; }

  bool is_symmetric(double tol = 0.0) const;
  bool all_finite() const;

  DenseMatrix transposed() const;

  /// Replaces the matrix by (M + M^T) / 2.
  void symmetrize();

  /// Rows and columns picked by `indices`, in the given order.
  DenseMatrix submatrix(std::span<const std::size_t> indices) const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Plain i-k-j product; each output entry is summed in increasing k.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& m);
double max_abs_difference(const DenseMatrix& a, const DenseMatrix& b);

/// ||a - b||_F / ||b||_F (or the absolute distance when b is zero).
double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace gcoarse
