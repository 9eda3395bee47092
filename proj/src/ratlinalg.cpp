#include "cylsym/ratlinalg.hpp"

#include <stdexcept>

namespace cylsym {

RatVec rat_vec(std::size_t n) { return RatVec(n, Rational(0)); }

RatMat rat_mat(std::size_t rows, std::size_t cols) { return RatMat(rows, rat_vec(cols)); }

RatMat identity(std::size_t n) {
  RatMat m = rat_mat(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  RatMat c = rat_mat(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t l = 0; l < p; ++l) c[i][l] += a[i][j] * b[j][l];
    }
  return c;
}

RatMat transpose(const RatMat& a) {
  if (a.empty()) return a;
  RatMat t = rat_mat(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Rational trace(const RatMat& a) {
  Rational t(0);
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

Rational determinant(RatMat a) {
  std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rational inv = Rational(1) / a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(pivots.size(), rat_vec(cols));
  return pivots;
}

bool in_span(const RatMat& rows, const RatVec& v) {
  RatMat m = rows;
  auto pivots = rref(m);
  RatVec w = v;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Rational& f = w[pivots[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= f * m[i][j];
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

RatMat row_basis(const RatMat& rows) {
  RatMat m = rows;
  rref(m);
  return m;
}

std::size_t rank(RatMat m) { return rref(m).size(); }

std::optional<RatVec> solve(RatMat a, RatVec b) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a);
  RatVec x = rat_vec(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return std::nullopt;  // 0 = nonzero row
    x[pivots[i]] = a[i][cols];
  }
  return x;
}

}  // namespace cylsym
