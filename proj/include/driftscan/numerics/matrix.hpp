#pragma once

#include <cstddef>
#include <vector>

#include "driftscan/numerics/rng.hpp"

namespace driftscan::num {

// Dense row-major matrix of 64-bit floats. All model math runs in doubles;
// gradient checks at 1e-3 relative tolerance are not reliable in 32-bit.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix random_uniform(std::size_t rows, std::size_t cols, Rng& rng,
                               double lo, double hi);
  static Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  const double* row(std::size_t r) const { return data_.data() + r * cols_; }
  double* row(std::size_t r) { return data_.data() + r * cols_; }

  bool is_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// C = alpha * op(A) * op(B) + beta * C, row-major raw buffers.
// op(X) is X or X^T per the trans flags; m/n/k describe op(A) (m x k) and
// op(B) (k x n). Large products are split into fixed 128-row chunks that are
// farmed out to worker threads; the chunking depends only on the problem
// size, so results are bit-identical for any thread count.
void gemm(bool trans_a, bool trans_b, std::size_t m, std::size_t n, std::size_t k,
          double alpha, const double* a, std::size_t lda, const double* b,
          std::size_t ldb, double beta, double* c, std::size_t ldc);

// Global cap on worker threads used by gemm (default: hardware concurrency).
void set_max_threads(int n);
int max_threads();

Matrix multiply(const Matrix& a, const Matrix& b);
// a * b^T
Matrix multiply_nt(const Matrix& a, const Matrix& b);
// a^T * b
Matrix multiply_tn(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

double dot(const double* a, const double* b, std::size_t n);
double norm2(const double* a, std::size_t n);
// Cosine similarity; either vector having zero norm yields 0.
double cosine(const double* a, const double* b, std::size_t n);

}  // namespace driftscan::num
