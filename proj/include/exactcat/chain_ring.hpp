#ifndef EXACTCAT_CHAIN_RING_HPP
#define EXACTCAT_CHAIN_RING_HPP

#include <optional>
#include <utility>
#include <vector>

#include "exactcat/matrix.hpp"

namespace exactcat {

/// The finite chain ring Z/p^k. With k == 1 this is the prime field F_p and
/// every routine below degenerates to ordinary Gaussian elimination.
struct ChainRing {
  Int p = 2;
  int k = 1;
  Int q = 2;

  ChainRing() = default;
  ChainRing(Int prime, int length) : p(prime), k(length), q(ipow(prime, length)) {}

  Int reduce(Int a) const { return mod(a, q); }

  /// p-adic valuation of a mod p^k; the zero element has valuation k.
  int valuation(Int a) const {
    a = mod(a, q);
    if (a == 0) return k;
    int v = 0;
    while (a % p == 0) {
      a /= p;
      ++v;
    }
    return v;
  }

  Int power(int e) const { return e >= k ? 0 : ipow(p, e); }

  Int unit_inverse(Int a) const {
    a = mod(a, q);
    require(a % p != 0, ErrorCode::InternalCheckFailed, "inverting a non-unit");
    // extended Euclid on (a, q)
    Int r0 = q, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      Int t = r0 / r1;
      Int r2 = r0 - t * r1;
      r0 = r1;
      r1 = r2;
      Int s2 = s0 - t * s1;
      s0 = s1;
      s1 = s2;
    }
    return mod(s0, q);
  }
};

/// u * a * v = diag(p^vals[0], ..., p^vals[rank-1], 0, ...), with u and v
/// invertible. `u` is only filled when requested.
struct SmithForm {
  Matrix u;
  Matrix v;
  std::vector<int> vals;
  std::size_t rank = 0;
};

namespace detail {

// Shared elimination core. Row operations are mirrored onto `rhs` (when
// non-null) and onto `u` (when tracked); column operations onto `vt`, which
// holds v transposed so that column operations become row operations.
inline SmithForm smith_core(const ChainRing& ring, Matrix a, Matrix* rhs, bool track_u) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (Int& x : a.values()) x = ring.reduce(x);
  Matrix vt = Matrix::identity(n);
  Matrix u = track_u ? Matrix::identity(m) : Matrix();
  SmithForm out;

  auto swap_rows = [](Matrix& x, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(i, c), x(j, c));
  };
  auto scale_row = [&](Matrix& x, std::size_t i, Int s) {
    Int* r = x.row(i);
    for (std::size_t c = 0; c < x.cols(); ++c) r[c] = (r[c] * s) % ring.q;
  };
  // x.row(i) -= c * x.row(t)
  auto axpy_row = [&](Matrix& x, std::size_t i, std::size_t t, Int c) {
    Int* ri = x.row(i);
    const Int* rt = x.row(t);
    const Int neg = ring.q - c;
    for (std::size_t col = 0; col < x.cols(); ++col)
      if (rt[col] != 0) ri[col] = (ri[col] + neg * rt[col]) % ring.q;
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    int best = ring.k;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < m && best > 0; ++i) {
      const Int* ri = a.row(i);
      for (std::size_t j = t; j < n; ++j) {
        if (ri[j] == 0) continue;
        int v = ring.valuation(ri[j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (best == ring.k) break;

    swap_rows(a, t, bi);
    if (rhs) swap_rows(*rhs, t, bi);
    if (track_u) swap_rows(u, t, bi);
    if (bj != t) {
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, t), a(i, bj));
      swap_rows(vt, t, bj);
    }

    const Int pv = ipow(ring.p, best);
    const Int unit = a(t, t) / pv;
    if (unit != 1) {
      const Int inv = ring.unit_inverse(unit);
      scale_row(a, t, inv);
      if (rhs) scale_row(*rhs, t, inv);
      if (track_u) scale_row(u, t, inv);
    }
    for (std::size_t i = t + 1; i < m; ++i) {
      const Int x = a(i, t);
      if (x == 0) continue;
      const Int c = x / pv;
      axpy_row(a, i, t, c);
      if (rhs) axpy_row(*rhs, i, t, c);
      if (track_u) axpy_row(u, i, t, c);
    }
    // Column t below the pivot is now zero, so clearing row t only touches
    // the pivot row of `a`; the real work is recorded in vt.
    for (std::size_t j = t + 1; j < n; ++j) {
      const Int x = a(t, j);
      if (x == 0) continue;
      const Int c = x / pv;
      a(t, j) = 0;
      axpy_row(vt, j, t, c);
    }
    out.vals.push_back(best);
    ++out.rank;
  }
  out.v = transpose(vt);
  out.u = std::move(u);
  return out;
}

}  // namespace detail

inline SmithForm smith_form(const ChainRing& ring, const Matrix& a, bool track_u = true) {
  return detail::smith_core(ring, a, nullptr, track_u);
}

/// Solves a * x = b. Free coordinates are set to zero and each pivot
/// coordinate takes its least residue, so the answer is canonical and a
/// homogeneous system returns the zero solution.
inline std::optional<Matrix> solve(const ChainRing& ring, const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "solve: row count");
  Matrix rhs = reduce(b, ring.q);
  SmithForm s = detail::smith_core(ring, a, &rhs, false);
  const std::size_t n = a.cols();
  Matrix y(n, b.cols());
  for (std::size_t t = 0; t < s.rank; ++t) {
    const int v = s.vals[t];
    const Int pv = ipow(ring.p, v);
    const Int top = ring.power(ring.k - v);  // residues are taken mod p^(k-v)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      const Int r = rhs(t, c);
      if (r % pv != 0) return std::nullopt;
      y(t, c) = top == 0 ? r / pv : (r / pv) % top;
    }
  }
  for (std::size_t t = s.rank; t < a.rows(); ++t)
    for (std::size_t c = 0; c < b.cols(); ++c)
      if (rhs(t, c) != 0) return std::nullopt;
  return multiply(s.v, y, ring.q);
}

/// Solves x * a = b.
inline std::optional<Matrix> solve_left(const ChainRing& ring, const Matrix& a, const Matrix& b) {
  auto xt = solve(ring, transpose(a), transpose(b));
  if (!xt) return std::nullopt;
  return transpose(*xt);
}

/// Columns generating {x : a * x = 0} as a Z/p^k-module.
inline Matrix kernel_generators(const ChainRing& ring, const Matrix& a) {
  SmithForm s = smith_form(ring, a, false);
  const std::size_t n = a.cols();
  std::vector<std::pair<std::size_t, Int>> gens;
  for (std::size_t t = 0; t < s.rank; ++t)
    if (s.vals[t] > 0) gens.emplace_back(t, ipow(ring.p, ring.k - s.vals[t]));
  for (std::size_t t = s.rank; t < n; ++t) gens.emplace_back(t, 1);
  Matrix out(n, gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < n; ++i) out(i, g) = (s.v(i, gens[g].first) * gens[g].second) % ring.q;
  return out;
}

/// Number of unit pivots; over a field this is the ordinary rank.
inline std::size_t unit_rank(const ChainRing& ring, const Matrix& a) {
  SmithForm s = smith_form(ring, a, false);
  std::size_t r = 0;
  for (int v : s.vals)
    if (v == 0) ++r;
  return r;
}

inline std::optional<Matrix> inverse(const ChainRing& ring, const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (unit_rank(ring, a) != a.rows()) return std::nullopt;
  return solve(ring, a, Matrix::identity(a.rows()));
}

}  // namespace exactcat

#endif  // EXACTCAT_CHAIN_RING_HPP
