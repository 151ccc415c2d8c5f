#include "driftscan/numerics/matrix.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#ifdef DRIFTSCAN_USE_CBLAS
#include <cblas.h>
extern "C" void openblas_set_num_threads(int);
#endif

namespace driftscan::num {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("Matrix: data length does not match rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::random_uniform(std::size_t rows, std::size_t cols, Rng& rng,
                              double lo, double hi) {
  Matrix m(rows, cols);
  for (auto& x : m.data_) x = rng.uniform(lo, hi);
  return m;
}

Matrix Matrix::random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (auto& x : m.data_) x = rng.normal();
  return m;
}

bool Matrix::is_finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

namespace {

std::atomic<int> g_max_threads{0};  // 0 = use hardware concurrency

int effective_threads() {
  int n = g_max_threads.load(std::memory_order_relaxed);
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

#ifdef DRIFTSCAN_USE_CBLAS
void blas_init_once() {
  // gemm does its own chunk-level threading; BLAS itself must stay serial
  // or results would depend on its internal scheduling.
  static const bool done = [] {
    openblas_set_num_threads(1);
    return true;
  }();
  (void)done;
}
#endif

// Single-chunk kernel: C = alpha * op(A) * op(B) + beta * C.
void gemm_chunk(bool trans_a, bool trans_b, std::size_t m, std::size_t n,
                std::size_t k, double alpha, const double* a, std::size_t lda,
                const double* b, std::size_t ldb, double beta, double* c,
                std::size_t ldc) {
#ifdef DRIFTSCAN_USE_CBLAS
  blas_init_once();
  cblas_dgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans,
              trans_b ? CblasTrans : CblasNoTrans, static_cast<int>(m),
              static_cast<int>(n), static_cast<int>(k), alpha, a,
              static_cast<int>(lda), b, static_cast<int>(ldb), beta, c,
              static_cast<int>(ldc));
#else
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * ldc;
    if (beta == 0.0) {
      for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    } else if (beta != 1.0) {
      for (std::size_t j = 0; j < n; ++j) crow[j] *= beta;
    }
    for (std::size_t p = 0; p < k; ++p) {
      double av = trans_a ? a[p * lda + i] : a[i * lda + p];
      av *= alpha;
      const double* brow = trans_b ? nullptr : b + p * ldb;
      if (trans_b) {
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * b[j * ldb + p];
      } else {
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
#endif
}

constexpr std::size_t kChunkRows = 128;
constexpr std::size_t kParallelFlops = 1u << 24;  // ~16 MFLOP

}  // namespace

void set_max_threads(int n) { g_max_threads.store(n, std::memory_order_relaxed); }

int max_threads() { return effective_threads(); }

void gemm(bool trans_a, bool trans_b, std::size_t m, std::size_t n, std::size_t k,
          double alpha, const double* a, std::size_t lda, const double* b,
          std::size_t ldb, double beta, double* c, std::size_t ldc) {
  // Chunking is decided from the problem size alone, never the thread count.
  bool chunked = m >= 2 * kChunkRows && m * n * k * 2 >= kParallelFlops;
  if (!chunked) {
    gemm_chunk(trans_a, trans_b, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
    return;
  }

  std::size_t nchunks = (m + kChunkRows - 1) / kChunkRows;
  auto run_chunk = [&](std::size_t ci) {
    std::size_t r0 = ci * kChunkRows;
    std::size_t rows = std::min(kChunkRows, m - r0);
    // Row block of op(A): offset into A differs with the trans flag.
    const double* ablock = trans_a ? a + r0 : a + r0 * lda;
    gemm_chunk(trans_a, trans_b, rows, n, k, alpha, ablock, lda, b, ldb, beta,
               c + r0 * ldc, ldc);
  };

  int workers = std::min<int>(effective_threads(), static_cast<int>(nchunks));
  if (workers <= 1) {
    for (std::size_t ci = 0; ci < nchunks; ++ci) run_chunk(ci);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t ci = next.fetch_add(1, std::memory_order_relaxed);
        if (ci >= nchunks) break;
        run_chunk(ci);
      }
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

Matrix multiply_impl(const Matrix& a, const Matrix& b, bool ta, bool tb) {
  std::size_t m = ta ? a.cols() : a.rows();
  std::size_t k = ta ? a.rows() : a.cols();
  std::size_t kb = tb ? b.cols() : b.rows();
  std::size_t n = tb ? b.rows() : b.cols();
  if (k != kb) throw std::invalid_argument("multiply: inner dimensions differ");
  Matrix c(m, n);
  gemm(ta, tb, m, n, k, 1.0, a.data(), a.cols(), b.data(), b.cols(), 0.0,
       c.data(), n);
  return c;
}

}  // namespace

Matrix multiply(const Matrix& a, const Matrix& b) { return multiply_impl(a, b, false, false); }
Matrix multiply_nt(const Matrix& a, const Matrix& b) { return multiply_impl(a, b, false, true); }
Matrix multiply_tn(const Matrix& a, const Matrix& b) { return multiply_impl(a, b, true, false); }

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm2(const double* a, std::size_t n) { return std::sqrt(dot(a, a, n)); }

double cosine(const double* a, const double* b, std::size_t n) {
  double na = norm2(a, n);
  double nb = norm2(b, n);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b, n) / (na * nb);
}

}  // namespace driftscan::num
