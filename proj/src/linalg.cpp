#include "tva/linalg.hpp"

namespace tva {

QMatrix identity_matrix(int n) {
  QMatrix m(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

int rank(QMatrix m) {
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(m[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = r + 1; i < rows; ++i) {
      if (is_zero(m[i][c])) continue;
      Rational f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  int n = static_cast<int>(m.size());
  QMatrix a = m;
  QMatrix inv = identity_matrix(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(a[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Rational d = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || is_zero(a[i][c])) continue;
      Rational f = a[i][c];
      for (int j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace tva
