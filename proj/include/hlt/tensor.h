#ifndef HLT_TENSOR_H_
#define HLT_TENSOR_H_

#include <cmath>
#include <initializer_list>
#include <vector>

#include "hlt/errors.h"

namespace hlt {

// Dense row-major matrix of doubles. Vectors are 1 x n or n x 1 tensors.
struct Tensor2 {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Tensor2() = default;
  Tensor2(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  static Tensor2 row(std::initializer_list<double> vals) {
    Tensor2 t(1, static_cast<int>(vals.size()));
    int i = 0;
    for (double v : vals) t.data[i++] = v;
    return t;
  }

  static Tensor2 from_rows(int r, int c, std::vector<double> d) {
    Tensor2 t;
    t.rows = r;
    t.cols = c;
    t.data = std::move(d);
    if (static_cast<int>(t.data.size()) != r * c)
      throw DimensionError("Tensor2::from_rows: data length != rows*cols");
    return t;
  }

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  int size() const { return rows * cols; }

  bool same_shape(const Tensor2& o) const { return rows == o.rows && cols == o.cols; }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  void fill(double v) {
    for (double& x : data) x = v;
  }
};

// C = A * B, plain triple loop in ikj order.
inline void matmul_into(const Tensor2& a, const Tensor2& b, Tensor2& c) {
  if (a.cols != b.rows) throw DimensionError("matmul: inner dimensions differ");
  c.rows = a.rows;
  c.cols = b.cols;
  c.data.assign(static_cast<std::size_t>(a.rows) * b.cols, 0.0);
  const int n = a.rows, k = a.cols, m = b.cols;
  for (int i = 0; i < n; ++i) {
    const double* arow = &a.data[static_cast<std::size_t>(i) * k];
    double* crow = &c.data[static_cast<std::size_t>(i) * m];
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = &b.data[static_cast<std::size_t>(p) * m];
      for (int j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
  }
}

inline Tensor2 matmul(const Tensor2& a, const Tensor2& b) {
  Tensor2 c;
  matmul_into(a, b, c);
  return c;
}

// C += A^T * B (used by backward passes).
inline void matmul_at_b_accum(const Tensor2& a, const Tensor2& b, Tensor2& c) {
  if (a.rows != b.rows) throw DimensionError("matmul_at_b: row counts differ");
  if (c.rows != a.cols || c.cols != b.cols) throw DimensionError("matmul_at_b: bad output shape");
  const int n = a.rows, k = a.cols, m = b.cols;
  for (int i = 0; i < n; ++i) {
    const double* arow = &a.data[static_cast<std::size_t>(i) * k];
    const double* brow = &b.data[static_cast<std::size_t>(i) * m];
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      double* crow = &c.data[static_cast<std::size_t>(p) * m];
      for (int j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
  }
}

// C += A * B^T.
inline void matmul_a_bt_accum(const Tensor2& a, const Tensor2& b, Tensor2& c) {
  if (a.cols != b.cols) throw DimensionError("matmul_a_bt: col counts differ");
  if (c.rows != a.rows || c.cols != b.rows) throw DimensionError("matmul_a_bt: bad output shape");
  const int n = a.rows, k = a.cols, m = b.rows;
  for (int i = 0; i < n; ++i) {
    const double* arow = &a.data[static_cast<std::size_t>(i) * k];
    double* crow = &c.data[static_cast<std::size_t>(i) * m];
    for (int j = 0; j < m; ++j) {
      const double* brow = &b.data[static_cast<std::size_t>(j) * k];
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] += acc;
    }
  }
}

}  // namespace hlt

#endif  // HLT_TENSOR_H_
