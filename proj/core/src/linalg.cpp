#include "nilbm/linalg.hpp"

#include <stdexcept>

namespace nilbm {

Mat identity_mat(int n) {
  Mat m(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Rref rref(Mat rows) {
  Rref out;
  if (rows.empty()) return out;
  const int ncols = static_cast<int>(rows[0].size());
  int pivot_row = 0;
  for (int col = 0; col < ncols && pivot_row < static_cast<int>(rows.size()); ++col) {
    int sel = -1;
    for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[pivot_row], rows[sel]);
    Rat inv = 1 / rows[pivot_row][col];
    for (int c = col; c < ncols; ++c) rows[pivot_row][c] = Rat(rows[pivot_row][c] * inv);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == pivot_row || rows[r][col] == 0) continue;
      Rat f = rows[r][col];
      for (int c = col; c < ncols; ++c) rows[r][c] = Rat(rows[r][c] - f * rows[pivot_row][c]);
    }
    out.pivots.push_back(col);
    ++pivot_row;
  }
  rows.resize(out.pivots.size());
  out.basis = std::move(rows);
  return out;
}

int rank(const Mat& rows) { return static_cast<int>(rref(rows).pivots.size()); }

bool in_span(const Rref& span, const RatVec& v) {
  RatVec r = v;
  for (std::size_t i = 0; i < span.pivots.size(); ++i) {
    int col = span.pivots[i];
    if (r[col] != 0) {
      Rat f = r[col];
      for (std::size_t c = col; c < r.size(); ++c) r[c] = Rat(r[c] - f * span.basis[i][c]);
    }
  }
  for (const Rat& x : r)
    if (x != 0) return false;
  return true;
}

bool span_equal(const Rref& a, const Rref& b) {
  return a.pivots == b.pivots && a.basis == b.basis;
}

Mat inverse(const Mat& m) {
  const int n = static_cast<int>(m.size());
  Mat work = m;
  Mat inv = identity_mat(n);
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int r = col; r < n; ++r) {
      if (work[r][col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) throw std::domain_error("inverse: singular matrix");
    std::swap(work[col], work[sel]);
    std::swap(inv[col], inv[sel]);
    Rat piv = 1 / work[col][col];
    for (int c = 0; c < n; ++c) {
      work[col][c] = Rat(work[col][c] * piv);
      inv[col][c] = Rat(inv[col][c] * piv);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || work[r][col] == 0) continue;
      Rat f = work[r][col];
      for (int c = 0; c < n; ++c) {
        work[r][c] = Rat(work[r][c] - f * work[col][c]);
        inv[r][c] = Rat(inv[r][c] - f * inv[col][c]);
      }
    }
  }
  return inv;
}

RatVec mat_vec(const Mat& m, const RatVec& v) {
  RatVec out(m.size(), Rat(0));
  for (std::size_t r = 0; r < m.size(); ++r) {
    Rat acc(0);
    for (std::size_t c = 0; c < v.size(); ++c) acc += m[r][c] * v[c];
    out[r] = acc;
  }
  return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat out(n, RatVec(m, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rat acc(0);
      for (std::size_t t = 0; t < k; ++t) acc += a[i][t] * b[t][j];
      out[i][j] = acc;
    }
  return out;
}

}  // namespace nilbm
