#include "tfab/linalg.hpp"

#include <algorithm>

#include "tfab/errors.hpp"

namespace tfab {

Echelon rref(RatMatrix m) {
  Echelon out;
  if (m.empty()) return out;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rows.size(); }

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) fail(Errc::invalid_argument, "inverse of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Echelon e = rref(aug);
  if (e.rows.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
  return inv;
}

BigInt determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt common_denominator(const RatMatrix& m) {
  BigInt d = 1;
  for (const auto& row : m)
    for (const auto& v : row) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.den().get_mpz_t());
  return d;
}

IntMatrix scale_to_integer(const RatMatrix& m, const BigInt& d) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& v : m[i]) {
      Rational s = v * Rational(d);
      if (!s.is_integer()) fail(Errc::invalid_argument, "scale does not clear denominators");
      out[i].push_back(s.num());
    }
  }
  return out;
}

Rational determinant(const RatMatrix& m) {
  // Scaling each row by the same d multiplies det by d^n.
  BigInt d = common_denominator(m);
  BigInt det = determinant(scale_to_integer(m, d));
  return Rational(det, pow(d, m.size()));
}

std::optional<RatMatrix> inverse_by_adjugate(const RatMatrix& m) {
  const std::size_t n = m.size();
  Rational det = determinant(m);
  if (det.is_zero()) return std::nullopt;
  RatMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RatMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Rational> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Rational cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      out[i][j] = cof / det;
    }
  }
  return out;
}

RatMatrix left_nullspace(const RatMatrix& m) {
  // c * m = 0  <=>  m^T c^T = 0
  if (m.empty()) return {};
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  RatMatrix t(cols, std::vector<Rational>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  Echelon e = rref(t);
  std::vector<bool> is_pivot(rows, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < rows; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(rows);
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntMatrix hnf(IntMatrix m) {
  if (m.empty()) return m;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid down column c until a single nonzero entry remains at row r.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        if (best == rows || abs(m[i][c]) < abs(m[best][c])) best = i;
      }
      if (best == rows) break;
      std::swap(m[r], m[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows || m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (std::size_t j = c; j < cols; ++j) m[r][j] = -m[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

RatMatrix lattice_basis(const RatMatrix& rows) {
  if (rows.empty()) return {};
  BigInt d = common_denominator(rows);
  IntMatrix h = hnf(scale_to_integer(rows, d));
  RatMatrix out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    for (const auto& v : h[i]) out[i].push_back(Rational(v, d));
  return out;
}

std::vector<std::vector<std::uint64_t>> left_nullspace_mod(const IntMatrix& m, std::uint64_t p) {
  if (m.empty()) return {};
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  // Gaussian elimination on [m | I] mod p; rows that vanish on the left
  // carry their combination on the right.
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols + rows, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      BigInt r;
      BigInt pp(static_cast<unsigned long>(p));
      mpz_fdiv_r(r.get_mpz_t(), m[i][j].get_mpz_t(), pp.get_mpz_t());
      a[i][j] = r.get_ui();
    }
    a[i][cols + i] = 1;
  }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
  };
  auto inv = [&](std::uint64_t x) {
    BigInt r, xx(static_cast<unsigned long>(x)), pp(static_cast<unsigned long>(p));
    mpz_invert(r.get_mpz_t(), xx.get_mpz_t(), pp.get_mpz_t());
    return r.get_ui();
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t iv = inv(a[r][c]);
    for (auto& v : a[r]) v = mulmod(v, iv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = 0; j < cols + rows; ++j) a[i][j] = (a[i][j] + p - mulmod(f, a[r][j])) % p;
    }
    ++r;
  }
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t i = r; i < rows; ++i) basis.emplace_back(a[i].begin() + cols, a[i].end());
  // reduced echelon form of the basis for a canonical listing
  std::size_t br = 0;
  for (std::size_t c = 0; c < rows && br < basis.size(); ++c) {
    std::size_t piv = br;
    while (piv < basis.size() && basis[piv][c] == 0) ++piv;
    if (piv == basis.size()) continue;
    std::swap(basis[piv], basis[br]);
    std::uint64_t iv = inv(basis[br][c]);
    for (auto& v : basis[br]) v = mulmod(v, iv);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i == br || basis[i][c] == 0) continue;
      std::uint64_t f = basis[i][c];
      for (std::size_t j = 0; j < rows; ++j) basis[i][j] = (basis[i][j] + p - mulmod(f, basis[br][j])) % p;
    }
    ++br;
  }
  return basis;
}

BigInt maximal_minor_gcd(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  const std::size_t cols = m[0].size();
  if (n > cols) fail(Errc::invalid_argument, "more rows than columns");
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  BigInt g = 0;
  for (;;) {
    IntMatrix sub(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sub[i][j] = m[i][pick[j]];
    BigInt d = determinant(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g == 1) return g;
    // next combination
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == cols - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (g == 0) fail(Errc::invalid_argument, "matrix does not have full row rank");
  return g;
}

}  // namespace tfab
