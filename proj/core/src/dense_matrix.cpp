#include "gcoarse/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "gcoarse/errors.hpp"

namespace gcoarse {

namespace {

void require_same_size(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.size() != b.size()) {
    throw DomainError("matrix dimension mismatch: " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
  }
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(i, i) = diag[i];
  }
  return m;
}

bool DenseMatrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

void DenseMatrix::symmetrize() {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double avg = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = avg;
      (*this)(j, i) = avg;
    }
  }
}

DenseMatrix DenseMatrix::submatrix(std::span<const std::size_t> indices) const {
  DenseMatrix s(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      s(i, j) = (*this)(indices[i], indices[j]);
    }
  }
  return s;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] += other.data_[k];
  }
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] -= other.data_[k];
  }
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& x : data_) {
    x *= s;
  }
  return *this;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> out = c.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) {
        continue;
      }
      std::span<const double> bk = b.row(k);
      for (std::size_t j = 0; j < n; ++j) {
        out[j] += aik * bk[j];
      }
    }
  }
  return c;
}

double frobenius_norm(const DenseMatrix& m) {
  double sum = 0.0;
  for (double x : m.data()) {
    sum += x * x;
  }
  return std::sqrt(sum);
}

double max_abs_difference(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_size(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  }
  return worst;
}

double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b) {
  const double diff = frobenius_norm(a - b);
  const double ref = frobenius_norm(b);
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace gcoarse
