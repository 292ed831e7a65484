#ifndef EXACTCAT_CYCLICMOD_HPP
#define EXACTCAT_CYCLICMOD_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exactcat/category.hpp"
#include "exactcat/chain_ring.hpp"
#include "exactcat/matrix.hpp"
#include "exactcat/random.hpp"

namespace exactcat {

/// ⊕_i Z/p^{e_i} with 1 <= e_i <= k. Objects produced by kernels and
/// cokernels list exponents in descending order; direct sums concatenate.
struct CyclicModObject {
  Int p = 2;
  int k = 1;
  std::vector<int> exponents;

  friend bool operator==(const CyclicModObject&, const CyclicModObject&) = default;
};

struct CyclicModBounds {
  int max_summands = 4;
  int max_extra_summands = 1;
};

/// Output of reducing a relation matrix: u * rel * v = diag(p^vals), and the
/// presented module R^rows / im(rel) has the canonical exponent list.
struct ReducedPresentation {
  SmithForm form;
  std::vector<int> exponents;
};

class CyclicMod {
 public:
  using Object = CyclicModObject;
  using Data = Matrix;  // rows index codomain summands, columns domain summands
  using Morphism = exactcat::Morphism<Object, Data>;

  CyclicMod(Int p, int k, CyclicModBounds bounds = {}) : ring_(p, k), bounds_(bounds) {
    require(p >= 2 && k >= 1, ErrorCode::InvalidObject, "cyclicmod needs a prime p and k >= 1");
    for (Int d = 2; d * d <= p; ++d) require(p % d != 0, ErrorCode::InvalidObject, "cyclicmod: p must be prime");
  }

  Int p() const { return ring_.p; }
  int k() const { return ring_.k; }
  const ChainRing& ring() const { return ring_; }
  const CyclicModBounds& bounds() const { return bounds_; }

  std::string name() const { return "cyclicmod"; }
  std::string id() const { return "cyclicmod(p=" + std::to_string(p()) + ",k=" + std::to_string(k()) + ")"; }

  Object make_object(std::vector<int> exponents) const {
    Object x{p(), k(), std::move(exponents)};
    validate(x);
    return x;
  }

  Object zero_object() const { return {p(), k(), {}}; }
  bool is_zero(const Object& x) const { return x.exponents.empty(); }

  void validate(const Object& x) const {
    require(x.p == p() && x.k == k(), ErrorCode::ModelMismatch, "object from another cyclicmod model");
    for (int e : x.exponents) require(1 <= e && e <= k(), ErrorCode::InvalidObject, "exponent outside [1, k]");
  }

  long length(const Object& x) const { return std::accumulate(x.exponents.begin(), x.exponents.end(), 0L); }

  /// Invariant-factor multiset, as a descending list.
  std::vector<int> invariant(const Object& x) const {
    std::vector<int> e = x.exponents;
    std::sort(e.begin(), e.end(), std::greater<>());
    return e;
  }

  /// Smallest power of p an entry from Z/p^{from} into Z/p^{to} must carry.
  static int min_power(int from, int to) { return std::max(0, to - from); }

  Morphism make_morphism(const Object& dom, const Object& cod, Matrix data) const {
    Morphism f{dom, cod, reduce_rows(std::move(data), cod)};
    validate(f);
    return f;
  }

  void validate(const Morphism& f) const {
    validate(f.domain);
    validate(f.codomain);
    const Matrix& a = f.data;
    require(a.rows() == f.codomain.exponents.size() && a.cols() == f.domain.exponents.size(),
            ErrorCode::InvalidMorphism, "matrix shape");
    for (std::size_t j = 0; j < a.rows(); ++j) {
      const int ej = f.codomain.exponents[j];
      const Int top = ipow(p(), ej);
      for (std::size_t i = 0; i < a.cols(); ++i) {
        const Int v = a(j, i);
        require(0 <= v && v < top, ErrorCode::InvalidMorphism, "entry not reduced");
        require(v % ipow(p(), min_power(f.domain.exponents[i], ej)) == 0, ErrorCode::InvalidMorphism,
                "entry (" + std::to_string(j) + "," + std::to_string(i) + ") violates the divisibility constraint");
      }
    }
  }

  Morphism identity(const Object& x) const { return {x, x, Matrix::identity(x.exponents.size())}; }

  Morphism zero(const Object& x, const Object& y) const {
    return {x, y, Matrix(y.exponents.size(), x.exponents.size())};
  }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    return {f.domain, g.codomain, reduce_rows(multiply(g.data, f.data, ring_.q), g.codomain)};
  }

  Morphism add(const Morphism& f, const Morphism& g) const {
    return {f.domain, f.codomain, reduce_rows(exactcat::add(f.data, g.data, ring_.q), f.codomain)};
  }

  Morphism negate(const Morphism& f) const {
    return {f.domain, f.codomain, reduce_rows(exactcat::negate(f.data, ring_.q), f.codomain)};
  }

  Object direct_sum(const Object& e, const Object& g) const {
    Object s{p(), k(), e.exponents};
    s.exponents.insert(s.exponents.end(), g.exponents.begin(), g.exponents.end());
    return s;
  }

  Morphism inject_first(const Object& e, const Object& g) const {
    const Object s = direct_sum(e, g);
    Matrix m(s.exponents.size(), e.exponents.size());
    for (std::size_t i = 0; i < e.exponents.size(); ++i) m(i, i) = 1;
    return {e, s, std::move(m)};
  }

  Morphism inject_second(const Object& e, const Object& g) const {
    const Object s = direct_sum(e, g);
    Matrix m(s.exponents.size(), g.exponents.size());
    for (std::size_t i = 0; i < g.exponents.size(); ++i) m(e.exponents.size() + i, i) = 1;
    return {g, s, std::move(m)};
  }

  Morphism project_first(const Object& e, const Object& g) const {
    const Object s = direct_sum(e, g);
    Matrix m(e.exponents.size(), s.exponents.size());
    for (std::size_t i = 0; i < e.exponents.size(); ++i) m(i, i) = 1;
    return {s, e, std::move(m)};
  }

  Morphism project_second(const Object& e, const Object& g) const {
    const Object s = direct_sum(e, g);
    Matrix m(g.exponents.size(), s.exponents.size());
    for (std::size_t i = 0; i < g.exponents.size(); ++i) m(i, e.exponents.size() + i) = 1;
    return {s, g, std::move(m)};
  }

  /// Diagonalizes a relation matrix over Z/p^k by valuation pivoting and
  /// reads off the presented module R^rows / im(rel).
  ReducedPresentation reduce_presentation(const Matrix& rel) const {
    ReducedPresentation out{smith_form(ring_, rel, true), {}};
    for (std::size_t t = 0; t < rel.rows(); ++t) {
      const int e = t < out.form.rank ? out.form.vals[t] : k();
      if (e > 0) out.exponents.push_back(e);
    }
    std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
    return out;
  }

  /// Embeds ⊕ Z/p^{e_i} into R^r via x_i ↦ p^{k-e_i} x_i; a morphism f then
  /// vanishes on x iff W x = 0 over R, with W_{ji} = a_{ji} p^{k-e'_j}.
  Morphism kernel(const Morphism& f) const {
    const auto& src = f.domain.exponents;
    const auto& dst = f.codomain.exponents;
    const std::size_t r = src.size();
    Matrix w(dst.size(), r);
    for (std::size_t j = 0; j < dst.size(); ++j)
      for (std::size_t i = 0; i < r; ++i) w(j, i) = (f.data(j, i) * ring_.power(k() - dst[j])) % ring_.q;
    Matrix gens = kernel_generators(ring_, w);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = 0; c < gens.cols(); ++c) gens(i, c) = (gens(i, c) * ring_.power(k() - src[i])) % ring_.q;

    // gens now spans Φ(ker f) inside R^r; its Smith form gives the cyclic
    // decomposition, generator t being p^{b_t} times column t of u^{-1}.
    SmithForm s = smith_form(ring_, gens, true);
    const Matrix u_inv = *inverse(ring_, s.u);
    std::vector<int> exps;
    std::vector<std::vector<Int>> cols;
    for (std::size_t t = 0; t < s.rank; ++t) {
      const int b = s.vals[t];
      exps.push_back(k() - b);
      std::vector<Int> col(r);
      for (std::size_t i = 0; i < r; ++i) {
        const Int wv = (u_inv(i, t) * ipow(p(), b)) % ring_.q;
        const Int scale = ipow(p(), k() - src[i]);
        require(wv % scale == 0, ErrorCode::InternalCheckFailed, "kernel generator outside the embedded module");
        col[i] = (wv / scale) % ipow(p(), src[i]);
      }
      cols.push_back(std::move(col));
    }
    std::vector<std::size_t> order(exps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return exps[a] > exps[b]; });
    Object kobj{p(), k(), {}};
    Matrix inc(r, exps.size());
    for (std::size_t c = 0; c < order.size(); ++c) {
      kobj.exponents.push_back(exps[order[c]]);
      for (std::size_t i = 0; i < r; ++i) inc(i, c) = cols[order[c]][i];
    }
    return {std::move(kobj), f.domain, std::move(inc)};
  }

  /// Coker f = R^s / im [A | diag(p^{e'_j})]; the quotient map is the
  /// relevant rows of the Smith row transform.
  Morphism cokernel(const Morphism& f) const {
    const auto& dst = f.codomain.exponents;
    const std::size_t s = dst.size();
    Matrix rel(s, f.data.cols() + s);
    place(rel, f.data, 0, 0);
    for (std::size_t j = 0; j < s; ++j) rel(j, f.data.cols() + j) = ring_.power(dst[j]);
    const ReducedPresentation red = reduce_presentation(rel);
    const SmithForm& sf = red.form;
    Object q{p(), k(), {}};
    std::vector<std::size_t> rows;
    for (std::size_t t = s; t-- > 0;) {
      const int e = t < sf.rank ? sf.vals[t] : k();
      if (e == 0) continue;
      q.exponents.push_back(e);
      rows.push_back(t);
    }
    Matrix proj(rows.size(), s);
    for (std::size_t c = 0; c < rows.size(); ++c)
      for (std::size_t j = 0; j < s; ++j) proj(c, j) = sf.u(rows[c], j) % ipow(p(), q.exponents[c]);
    return {f.codomain, std::move(q), std::move(proj)};
  }

  bool is_mono(const Morphism& f) const { return kernel(f).domain.exponents.empty(); }
  bool is_epi(const Morphism& f) const { return cokernel(f).codomain.exponents.empty(); }

  /// x∘a = b. Rows of x are independent; rows with the same target exponent
  /// share one coefficient matrix.
  std::optional<Morphism> solve_post(const Morphism& a, const Morphism& b) const {
    require(a.domain == b.domain, ErrorCode::DomainMismatch, "solve_post: a and b need a common domain");
    const auto& s = a.domain.exponents;
    const auto& t = a.codomain.exponents;
    const auto& u = b.codomain.exponents;
    Matrix x(u.size(), t.size());
    for (const auto& [ul, rows] : group_indices(u)) {
      Matrix coeff(s.size(), t.size());
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j)
          coeff(i, j) = (ring_.power(min_power(t[j], ul) + k() - ul) * a.data(j, i)) % ring_.q;
      Matrix rhs(s.size(), rows.size());
      for (std::size_t c = 0; c < rows.size(); ++c)
        for (std::size_t i = 0; i < s.size(); ++i) rhs(i, c) = (ring_.power(k() - ul) * b.data(rows[c], i)) % ring_.q;
      auto y = solve(ring_, coeff, rhs);
      if (!y) return std::nullopt;
      for (std::size_t c = 0; c < rows.size(); ++c)
        for (std::size_t j = 0; j < t.size(); ++j)
          x(rows[c], j) = (ipow(p(), min_power(t[j], ul)) * (*y)(j, c)) % ipow(p(), ul);
    }
    Morphism out{a.codomain, b.codomain, std::move(x)};
    require(is_valid(*this, out) && compose(out, a) == b, ErrorCode::InternalCheckFailed, "solve_post residual");
    return out;
  }

  /// a∘x = b. Columns of x are independent and grouped by source exponent.
  std::optional<Morphism> solve_pre(const Morphism& a, const Morphism& b) const {
    require(a.codomain == b.codomain, ErrorCode::DomainMismatch, "solve_pre: a and b need a common codomain");
    const auto& e = a.domain.exponents;
    const auto& f = a.codomain.exponents;
    const auto& beta = b.domain.exponents;
    Matrix x(e.size(), beta.size());
    for (const auto& [bi, cols] : group_indices(beta)) {
      Matrix coeff(f.size(), e.size());
      for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t l = 0; l < e.size(); ++l)
          coeff(j, l) = (ring_.power(k() - f[j] + min_power(bi, e[l])) * a.data(j, l)) % ring_.q;
      Matrix rhs(f.size(), cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t j = 0; j < f.size(); ++j) rhs(j, c) = (ring_.power(k() - f[j]) * b.data(j, cols[c])) % ring_.q;
      auto y = solve(ring_, coeff, rhs);
      if (!y) return std::nullopt;
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t l = 0; l < e.size(); ++l)
          x(l, cols[c]) = (ipow(p(), min_power(bi, e[l])) * (*y)(l, c)) % ipow(p(), e[l]);
    }
    Morphism out{b.domain, a.domain, std::move(x)};
    require(is_valid(*this, out) && compose(a, out) == b, ErrorCode::InternalCheckFailed, "solve_pre residual");
    return out;
  }

  bool is_admissible_mono(const Morphism& f) const { return is_mono(f); }
  bool is_admissible_epi(const Morphism& f) const { return is_epi(f); }

  /// Z/p^k is self-injective, so the injectives are exactly the free modules.
  bool is_injective(const Object& x) const {
    return std::all_of(x.exponents.begin(), x.exponents.end(), [&](int e) { return e == k(); });
  }

  /// Block-diagonal (·p^{k-e_i}) : ⊕ Z/p^{e_i} ↣ (Z/p^k)^r.
  Morphism embed_into_injective(const Object& x) const {
    const std::size_t r = x.exponents.size();
    Object free{p(), k(), std::vector<int>(r, k())};
    Matrix m(r, r);
    for (std::size_t i = 0; i < r; ++i) m(i, i) = ring_.power(k() - x.exponents[i]);
    return {x, std::move(free), std::move(m)};
  }

  /// Randomized embedding: the diagonal one plus a few random extra free
  /// coordinates, then a random automorphism of the free module.
  Morphism embed_into_injective(const Object& x, Rng& rng) const {
    const std::size_t r = x.exponents.size();
    const std::size_t extra = static_cast<std::size_t>(rng.uniform(0, bounds_.max_extra_summands));
    Object free{p(), k(), std::vector<int>(r + extra, k())};
    Matrix m(r + extra, r);
    for (std::size_t i = 0; i < r; ++i) m(i, i) = ring_.power(k() - x.exponents[i]);
    for (std::size_t j = r; j < r + extra; ++j)
      for (std::size_t i = 0; i < r; ++i) m(j, i) = (ring_.power(k() - x.exponents[i]) * rng.uniform(0, ring_.q - 1)) % ring_.q;
    const Morphism mono{x, free, std::move(m)};
    return compose(random_iso(free, rng), mono);
  }

  // -- sampling ------------------------------------------------------------------

  Object random_object(Rng& rng) const {
    const int r = static_cast<int>(rng.uniform(0, bounds_.max_summands));
    std::vector<int> e(r);
    for (int& v : e) v = static_cast<int>(rng.uniform(1, k()));
    std::sort(e.begin(), e.end(), std::greater<>());
    return {p(), k(), std::move(e)};
  }

  Object random_simple(Rng&) const { return {p(), k(), {1}}; }

  Morphism random_morphism(const Object& x, const Object& y, Rng& rng) const {
    Matrix m(y.exponents.size(), x.exponents.size());
    for (std::size_t j = 0; j < m.rows(); ++j)
      for (std::size_t i = 0; i < m.cols(); ++i) {
        const int s = min_power(x.exponents[i], y.exponents[j]);
        m(j, i) = (ipow(p(), s) * rng.uniform(0, ring_.q - 1)) % ipow(p(), y.exponents[j]);
      }
    return {x, y, std::move(m)};
  }

  /// Random automorphism of x. An endomorphism is invertible iff each block
  /// between summands of equal exponent is invertible mod p.
  Morphism random_iso(const Object& x, Rng& rng) const {
    for (;;) {
      Morphism f = random_morphism(x, x, rng);
      if (endomorphism_invertible(f)) return f;
    }
  }

  bool endomorphism_invertible(const Morphism& f) const {
    const ChainRing residue(p(), 1);
    for (const auto& [e, idx] : group_indices(f.domain.exponents)) {
      Matrix block(idx.size(), idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) block(r, c) = f.data(idx[r], idx[c]) % p();
      if (unit_rank(residue, block) != idx.size()) return false;
    }
    return true;
  }

 private:
  Matrix reduce_rows(Matrix m, const Object& cod) const {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      const Int top = ipow(p(), cod.exponents[j]);
      for (std::size_t i = 0; i < m.cols(); ++i) m(j, i) = mod(m(j, i), top);
    }
    return m;
  }

  static std::map<int, std::vector<std::size_t>> group_indices(const std::vector<int>& exps) {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < exps.size(); ++i) out[exps[i]].push_back(i);
    return out;
  }

  ChainRing ring_;
  CyclicModBounds bounds_;
};

static_assert(AdditiveModel<CyclicMod>);

}  // namespace exactcat

#endif  // EXACTCAT_CYCLICMOD_HPP
