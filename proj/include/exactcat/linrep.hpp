#ifndef EXACTCAT_LINREP_HPP
#define EXACTCAT_LINREP_HPP

#include <algorithm>
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

/// A representation V_1 -> V_2 -> ... -> V_n of the linear quiver over F_p.
/// Vertices are stored 0-based; maps[i] : V_i -> V_{i+1} has shape
/// dims[i+1] x dims[i].
struct LinRepObject {
  Int p = 2;
  int n = 1;
  std::vector<int> dims;
  std::vector<Matrix> maps;

  friend bool operator==(const LinRepObject&, const LinRepObject&) = default;
};

/// Multiplicities of the interval modules [a, b] (1-based, a <= b).
struct IntervalDecomposition {
  int n = 0;
  std::vector<std::vector<int>> mult;  // mult[a-1][b-1]

  int at(int a, int b) const { return mult[a - 1][b - 1]; }

  friend bool operator==(const IntervalDecomposition&, const IntervalDecomposition&) = default;
};

/// Random-sampling bounds for the model's generators.
struct LinRepBounds {
  int max_dim = 4;
  int max_extra_summands = 1;  // extra interval summands added by randomized embeddings
};

class LinRep {
 public:
  using Object = LinRepObject;
  using Data = std::vector<Matrix>;
  using Morphism = exactcat::Morphism<Object, Data>;

  LinRep(Int p, int n, LinRepBounds bounds = {}) : field_(p, 1), n_(n), bounds_(bounds) {
    require(p >= 2 && n >= 1, ErrorCode::InvalidObject, "linrep needs a prime p and n >= 1");
    for (Int d = 2; d * d <= p; ++d) require(p % d != 0, ErrorCode::InvalidObject, "linrep: p must be prime");
  }

  Int p() const { return field_.p; }
  int n() const { return n_; }
  const ChainRing& field() const { return field_; }
  const LinRepBounds& bounds() const { return bounds_; }

  std::string name() const { return "linrep"; }
  std::string id() const { return "linrep(p=" + std::to_string(p()) + ",n=" + std::to_string(n_) + ")"; }

  // -- objects ---------------------------------------------------------------

  Object make_object(std::vector<int> dims, std::vector<Matrix> maps) const {
    Object x{p(), n_, std::move(dims), std::move(maps)};
    for (Matrix& m : x.maps) m = reduce(std::move(m), p());
    validate(x);
    return x;
  }

  /// The interval module [a, b], 1-based, with identity structure maps inside
  /// its support.
  Object interval(int a, int b) const {
    require(1 <= a && a <= b && b <= n_, ErrorCode::InvalidObject, "interval bounds");
    std::vector<int> dims(n_, 0);
    for (int v = a - 1; v < b; ++v) dims[v] = 1;
    std::vector<Matrix> maps;
    for (int i = 0; i + 1 < n_; ++i) {
      Matrix m(dims[i + 1], dims[i]);
      if (dims[i] == 1 && dims[i + 1] == 1) m(0, 0) = 1;
      maps.push_back(m);
    }
    return make_object(std::move(dims), std::move(maps));
  }

  Object zero_object() const { return make_object(std::vector<int>(n_, 0), zero_maps(std::vector<int>(n_, 0))); }

  bool is_zero(const Object& x) const {
    return std::all_of(x.dims.begin(), x.dims.end(), [](int d) { return d == 0; });
  }

  void validate(const Object& x) const {
    require(x.p == p() && x.n == n_, ErrorCode::ModelMismatch, "object belongs to " + describe(x));
    require(static_cast<int>(x.dims.size()) == n_, ErrorCode::InvalidObject, "dimension vector length");
    require(static_cast<int>(x.maps.size()) == n_ - 1, ErrorCode::InvalidObject, "structure map count");
    for (int d : x.dims) require(d >= 0, ErrorCode::InvalidObject, "negative dimension");
    for (int i = 0; i + 1 < n_; ++i) {
      const Matrix& m = x.maps[i];
      require(static_cast<int>(m.rows()) == x.dims[i + 1] && static_cast<int>(m.cols()) == x.dims[i],
              ErrorCode::InvalidObject, "structure map shape");
      require(entries_reduced(m), ErrorCode::InvalidObject, "structure map entries not reduced mod p");
    }
  }

  long length(const Object& x) const { return std::accumulate(x.dims.begin(), x.dims.end(), 0L); }

  /// Dimension vector; isomorphic objects agree on it.
  std::vector<int> invariant(const Object& x) const { return x.dims; }

  // -- morphisms -------------------------------------------------------------

  Morphism make_morphism(const Object& dom, const Object& cod, Data data) const {
    for (Matrix& m : data) m = reduce(std::move(m), p());
    Morphism f{dom, cod, std::move(data)};
    validate(f);
    return f;
  }

  void validate(const Morphism& f) const {
    validate(f.domain);
    validate(f.codomain);
    require(static_cast<int>(f.data.size()) == n_, ErrorCode::InvalidMorphism, "one matrix per vertex");
    for (int i = 0; i < n_; ++i) {
      const Matrix& m = f.data[i];
      require(static_cast<int>(m.rows()) == f.codomain.dims[i] && static_cast<int>(m.cols()) == f.domain.dims[i],
              ErrorCode::InvalidMorphism, "component shape at vertex " + std::to_string(i + 1));
      require(entries_reduced(m), ErrorCode::InvalidMorphism, "entries not reduced mod p");
    }
    for (int i = 0; i + 1 < n_; ++i) {
      require(multiply(f.data[i + 1], f.domain.maps[i], p()) == multiply(f.codomain.maps[i], f.data[i], p()),
              ErrorCode::InvalidMorphism, "square at arrow " + std::to_string(i + 1) + " does not commute");
    }
  }

  Morphism identity(const Object& x) const {
    Data d;
    for (int i = 0; i < n_; ++i) d.push_back(Matrix::identity(x.dims[i]));
    return {x, x, std::move(d)};
  }

  Morphism zero(const Object& x, const Object& y) const {
    Data d;
    for (int i = 0; i < n_; ++i) d.emplace_back(y.dims[i], x.dims[i]);
    return {x, y, std::move(d)};
  }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    Data d;
    for (int i = 0; i < n_; ++i) d.push_back(multiply(g.data[i], f.data[i], p()));
    return {f.domain, g.codomain, std::move(d)};
  }

  Morphism add(const Morphism& f, const Morphism& g) const {
    Data d;
    for (int i = 0; i < n_; ++i) d.push_back(exactcat::add(f.data[i], g.data[i], p()));
    return {f.domain, f.codomain, std::move(d)};
  }

  Morphism negate(const Morphism& f) const {
    Data d;
    for (int i = 0; i < n_; ++i) d.push_back(exactcat::negate(f.data[i], p()));
    return {f.domain, f.codomain, std::move(d)};
  }

  // -- biproducts: block concatenation at every vertex ---------------------------

  Object direct_sum(const Object& e, const Object& g) const {
    std::vector<int> dims(n_);
    std::vector<Matrix> maps;
    for (int i = 0; i < n_; ++i) dims[i] = e.dims[i] + g.dims[i];
    for (int i = 0; i + 1 < n_; ++i) {
      Matrix m(dims[i + 1], dims[i]);
      place(m, e.maps[i], 0, 0);
      place(m, g.maps[i], e.dims[i + 1], e.dims[i]);
      maps.push_back(std::move(m));
    }
    return {p(), n_, std::move(dims), std::move(maps)};
  }

  Morphism inject_first(const Object& e, const Object& g) const { return block_map(e, g, true, true); }
  Morphism inject_second(const Object& e, const Object& g) const { return block_map(e, g, false, true); }
  Morphism project_first(const Object& e, const Object& g) const { return block_map(e, g, true, false); }
  Morphism project_second(const Object& e, const Object& g) const { return block_map(e, g, false, false); }

  // -- kernels and cokernels, computed vertexwise ------------------------------

  Morphism kernel(const Morphism& f) const {
    std::vector<Matrix> basis;
    std::vector<int> dims;
    for (int i = 0; i < n_; ++i) {
      basis.push_back(kernel_generators(field_, f.data[i]));
      dims.push_back(static_cast<int>(basis.back().cols()));
    }
    std::vector<Matrix> maps;
    for (int i = 0; i + 1 < n_; ++i) {
      auto s = solve(field_, basis[i + 1], multiply(f.domain.maps[i], basis[i], p()));
      require(s.has_value(), ErrorCode::InternalCheckFailed, "kernel is not a subrepresentation");
      maps.push_back(std::move(*s));
    }
    Object k{p(), n_, std::move(dims), std::move(maps)};
    return {std::move(k), f.domain, std::move(basis)};
  }

  Morphism cokernel(const Morphism& f) const {
    std::vector<Matrix> proj;
    std::vector<int> dims;
    for (int i = 0; i < n_; ++i) {
      proj.push_back(transpose(kernel_generators(field_, transpose(f.data[i]))));
      dims.push_back(static_cast<int>(proj.back().rows()));
    }
    std::vector<Matrix> maps;
    for (int i = 0; i + 1 < n_; ++i) {
      auto t = solve_left(field_, proj[i], multiply(proj[i + 1], f.codomain.maps[i], p()));
      require(t.has_value(), ErrorCode::InternalCheckFailed, "cokernel structure map");
      maps.push_back(std::move(*t));
    }
    Object q{p(), n_, std::move(dims), std::move(maps)};
    return {f.codomain, std::move(q), std::move(proj)};
  }

  bool is_mono(const Morphism& f) const {
    for (int i = 0; i < n_; ++i)
      if (static_cast<int>(unit_rank(field_, f.data[i])) != f.domain.dims[i]) return false;
    return true;
  }

  bool is_epi(const Morphism& f) const {
    for (int i = 0; i < n_; ++i)
      if (static_cast<int>(unit_rank(field_, f.data[i])) != f.codomain.dims[i]) return false;
    return true;
  }

  /// Some x with x∘a = b (a: S->T, b: S->U, x: T->U), or nothing.
  std::optional<Morphism> solve_post(const Morphism& a, const Morphism& b) const {
    require(a.domain == b.domain, ErrorCode::DomainMismatch, "solve_post: a and b need a common domain");
    std::optional<Morphism> x;
    if (is_epi(a)) {
      x = solve_post_pointwise(a, b);
    } else if (all_maps_surjective(b.codomain)) {
      x = solve_post_into_injective(a, b);
    } else {
      x = solve_post_dense(a, b);
    }
    if (x) require(is_valid(*this, *x) && compose(*x, a) == b, ErrorCode::InternalCheckFailed, "solve_post residual");
    return x;
  }

  /// Some x with a∘x = b (a: E->F, b: B->F, x: B->E), or nothing.
  std::optional<Morphism> solve_pre(const Morphism& a, const Morphism& b) const {
    require(a.codomain == b.codomain, ErrorCode::DomainMismatch, "solve_pre: a and b need a common codomain");
    std::optional<Morphism> x;
    if (is_mono(a)) {
      x = solve_pre_pointwise(a, b);
    } else {
      x = solve_pre_dense(a, b);
    }
    if (x) require(is_valid(*this, *x) && compose(a, *x) == b, ErrorCode::InternalCheckFailed, "solve_pre residual");
    return x;
  }

  /// Same answer set as solve_post, always through the full linear system
  /// over all hom entries. Kept public as an independent check on the
  /// structured paths.
  std::optional<Morphism> solve_post_dense(const Morphism& a, const Morphism& b) const {
    HomSystem sys(*this, a.codomain, b.codomain);
    sys.add_commutation();
    sys.add_post(a, b);
    return sys.solve();
  }

  std::optional<Morphism> solve_pre_dense(const Morphism& a, const Morphism& b) const {
    HomSystem sys(*this, b.domain, a.domain);
    sys.add_commutation();
    sys.add_pre(a, b);
    return sys.solve();
  }

  // -- the abelian exact structure ---------------------------------------------

  bool is_admissible_mono(const Morphism& f) const { return is_mono(f); }
  bool is_admissible_epi(const Morphism& f) const { return is_epi(f); }

  /// m_{a,b} = r_{a,b} - r_{a-1,b} - r_{a,b+1} + r_{a-1,b+1}, with r_{a,b} the
  /// rank of V_a -> V_b and out-of-range ranks zero.
  IntervalDecomposition interval_decomposition(const Object& x) const {
    std::vector<std::vector<int>> r(n_ + 2, std::vector<int>(n_ + 2, 0));
    for (int a = 1; a <= n_; ++a) {
      Matrix comp = Matrix::identity(x.dims[a - 1]);
      for (int b = a; b <= n_; ++b) {
        if (b > a) comp = multiply(x.maps[b - 2], comp, p());
        r[a][b] = static_cast<int>(unit_rank(field_, comp));
      }
    }
    IntervalDecomposition out{n_, std::vector<std::vector<int>>(n_, std::vector<int>(n_, 0))};
    for (int a = 1; a <= n_; ++a)
      for (int b = a; b <= n_; ++b) {
        const int m = r[a][b] - r[a - 1][b] - r[a][b + 1] + r[a - 1][b + 1];
        require(m >= 0, ErrorCode::InternalCheckFailed, "negative interval multiplicity");
        out.mult[a - 1][b - 1] = m;
      }
    return out;
  }

  /// Injective objects are the sums of intervals [1, b].
  bool is_injective(const Object& x) const {
    const IntervalDecomposition d = interval_decomposition(x);
    for (int a = 2; a <= n_; ++a)
      for (int b = a; b <= n_; ++b)
        if (d.at(a, b) != 0) return false;
    return true;
  }

  /// The evaluation embedding X ↣ ⊕_j I(j)^{d_j}: the copy of I(j) indexed
  /// by the coordinate functional t of V_j receives m ↦ (F_{j←i} m)_t.
  Morphism embed_into_injective(const Object& x) const { return map_to_standard(x, evaluation_summands(x)); }

  /// Randomized embedding: the evaluation embedding plus a few random
  /// functionals, followed by a random automorphism of the standard
  /// injective and a random change of basis at every vertex.
  Morphism embed_into_injective(const Object& x, Rng& rng) const {
    std::vector<Summand> summands = evaluation_summands(x);
    const int extra = static_cast<int>(rng.uniform(0, bounds_.max_extra_summands));
    for (int e = 0; e < extra; ++e) {
      const int end = static_cast<int>(rng.uniform(0, n_ - 1));
      summands.push_back({end, random_matrix(rng, 1, x.dims[end])});
    }
    std::stable_sort(summands.begin(), summands.end(),
                     [](const Summand& l, const Summand& r) { return l.end > r.end; });
    const Morphism mono = map_to_standard(x, summands);
    std::vector<int> ends;
    for (const Summand& s : summands) ends.push_back(s.end);
    const Morphism twisted = compose(random_standard_automorphism(ends, rng), mono);
    return compose(random_iso(twisted.codomain, rng), twisted);
  }

  /// Standard injective ⊕ I(end) with summands listed by decreasing end; at
  /// vertex i the basis is the prefix of summands with end >= i and every
  /// structure map is [I | 0].
  Object standard_injective(const std::vector<int>& ends) const {
    std::vector<int> dims(n_, 0);
    for (int e : ends)
      for (int i = 0; i <= e; ++i) ++dims[i];
    std::vector<Matrix> maps;
    for (int i = 0; i + 1 < n_; ++i) {
      Matrix m(dims[i + 1], dims[i]);
      for (int j = 0; j < dims[i + 1]; ++j) m(j, j) = 1;
      maps.push_back(std::move(m));
    }
    return make_object(std::move(dims), std::move(maps));
  }

  // -- sampling ------------------------------------------------------------------

  Object random_object(Rng& rng) const { return random_object(rng, bounds_.max_dim); }

  Object random_object(Rng& rng, int max_dim) const {
    std::vector<int> dims(n_);
    for (int& d : dims) d = static_cast<int>(rng.uniform(0, max_dim));
    std::vector<Matrix> maps;
    for (int i = 0; i + 1 < n_; ++i) maps.push_back(random_matrix(rng, dims[i + 1], dims[i]));
    return make_object(std::move(dims), std::move(maps));
  }

  /// A simple object: one-dimensional at a single vertex.
  Object random_simple(Rng& rng) const {
    const int v = static_cast<int>(rng.uniform(1, n_));
    return interval(v, v);
  }

  /// Uniform element of Hom(X, Y), drawn from a basis of the hom space.
  Morphism random_morphism(const Object& x, const Object& y, Rng& rng) const {
    HomSystem sys(*this, x, y);
    sys.add_commutation();
    const Matrix basis = kernel_generators(field_, sys.matrix());
    Matrix coeffs = random_matrix(rng, basis.cols(), 1);
    return sys.unpack(multiply(basis, coeffs, p()));
  }

  std::vector<Morphism> hom_basis(const Object& x, const Object& y) const {
    HomSystem sys(*this, x, y);
    sys.add_commutation();
    const Matrix basis = kernel_generators(field_, sys.matrix());
    std::vector<Morphism> out;
    for (std::size_t c = 0; c < basis.cols(); ++c) out.push_back(sys.unpack(submatrix(basis, 0, c, basis.rows(), 1)));
    return out;
  }

  /// Random change of basis at every vertex: an iso X -> X' onto a new handle.
  Morphism random_iso(const Object& x, Rng& rng) const {
    Data change;
    for (int i = 0; i < n_; ++i) change.push_back(random_invertible(rng, x.dims[i]));
    std::vector<Matrix> maps;
    for (int i = 0; i + 1 < n_; ++i) {
      const Matrix inv = *inverse(field_, change[i]);
      maps.push_back(multiply(multiply(change[i + 1], x.maps[i], p()), inv, p()));
    }
    Object y{p(), n_, x.dims, std::move(maps)};
    return {x, std::move(y), std::move(change)};
  }

  Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) const {
    Matrix m(rows, cols);
    for (Int& v : m.values()) v = rng.uniform(0, p() - 1);
    return m;
  }

  Matrix random_invertible(Rng& rng, std::size_t d) const {
    for (;;) {
      Matrix m = random_matrix(rng, d, d);
      if (unit_rank(field_, m) == d) return m;
    }
  }

  /// F_{to←from} = maps[to-1] ∘ ... ∘ maps[from] (0-based vertices).
  Matrix composite_map(const Object& x, int from, int to) const {
    Matrix comp = Matrix::identity(x.dims[from]);
    for (int i = from; i < to; ++i) comp = multiply(x.maps[i], comp, p());
    return comp;
  }

 private:
  struct Summand {
    int end;     // 0-based last vertex of the interval [1, end+1]
    Matrix xi;   // 1 x dims[end] functional on V_end
  };

  static std::string describe(const Object& x) {
    return "linrep(p=" + std::to_string(x.p) + ",n=" + std::to_string(x.n) + ")";
  }

  bool entries_reduced(const Matrix& m) const {
    return std::all_of(m.values().begin(), m.values().end(), [&](Int v) { return v >= 0 && v < p(); });
  }

  std::vector<Matrix> zero_maps(const std::vector<int>& dims) const {
    std::vector<Matrix> maps;
    for (int i = 0; i + 1 < n_; ++i) maps.emplace_back(dims[i + 1], dims[i]);
    return maps;
  }

  bool all_maps_surjective(const Object& x) const {
    for (int i = 0; i + 1 < n_; ++i)
      if (static_cast<int>(unit_rank(field_, x.maps[i])) != x.dims[i + 1]) return false;
    return true;
  }

  Morphism block_map(const Object& e, const Object& g, bool first, bool inject) const {
    const Object s = direct_sum(e, g);
    Data d;
    for (int i = 0; i < n_; ++i) {
      const int part = first ? e.dims[i] : g.dims[i];
      const int off = first ? 0 : e.dims[i];
      Matrix m = inject ? Matrix(s.dims[i], part) : Matrix(part, s.dims[i]);
      for (int j = 0; j < part; ++j) {
        if (inject)
          m(off + j, j) = 1;
        else
          m(j, off + j) = 1;
      }
      d.push_back(std::move(m));
    }
    const Object& piece = first ? e : g;
    return inject ? Morphism{piece, s, std::move(d)} : Morphism{s, piece, std::move(d)};
  }

  std::vector<Summand> evaluation_summands(const Object& x) const {
    std::vector<Summand> out;
    for (int j = n_ - 1; j >= 0; --j)
      for (int t = 0; t < x.dims[j]; ++t) {
        Matrix xi(1, x.dims[j]);
        xi(0, t) = 1;
        out.push_back({j, std::move(xi)});
      }
    return out;
  }

  // Summands must be sorted by decreasing end.
  Morphism map_to_standard(const Object& x, const std::vector<Summand>& summands) const {
    std::vector<int> ends;
    for (const Summand& s : summands) ends.push_back(s.end);
    const Object target = standard_injective(ends);
    Data d;
    for (int i = 0; i < n_; ++i) {
      Matrix m(target.dims[i], x.dims[i]);
      for (int s = 0; s < target.dims[i]; ++s) {
        const Matrix row = multiply(summands[s].xi, composite_map(x, i, summands[s].end), p());
        place(m, row, s, 0);
      }
      d.push_back(std::move(m));
    }
    return make_morphism(x, target, std::move(d));
  }

  // In the interval basis a map I(b) -> I(c) is a scalar when c <= b and zero
  // otherwise; equal-end blocks must be invertible.
  Morphism random_standard_automorphism(const std::vector<int>& ends, Rng& rng) const {
    const std::size_t total = ends.size();
    Matrix a(total, total);
    std::size_t start = 0;
    while (start < total) {
      std::size_t stop = start;
      while (stop < total && ends[stop] == ends[start]) ++stop;
      place(a, random_invertible(rng, stop - start), start, start);
      start = stop;
    }
    for (std::size_t r = 0; r < total; ++r)
      for (std::size_t c = 0; c < total; ++c)
        if (ends[r] < ends[c]) a(r, c) = rng.uniform(0, p() - 1);
    const Object target = standard_injective(ends);
    Data d;
    for (int i = 0; i < n_; ++i) d.push_back(submatrix(a, 0, 0, target.dims[i], target.dims[i]));
    return make_morphism(target, target, std::move(d));
  }

  std::optional<Morphism> solve_post_pointwise(const Morphism& a, const Morphism& b) const {
    Data d;
    for (int i = 0; i < n_; ++i) {
      auto x = solve_left(field_, a.data[i], b.data[i]);
      if (!x) return std::nullopt;
      d.push_back(std::move(*x));
    }
    return Morphism{a.codomain, b.codomain, std::move(d)};
  }

  std::optional<Morphism> solve_pre_pointwise(const Morphism& a, const Morphism& b) const {
    Data d;
    for (int i = 0; i < n_; ++i) {
      auto x = solve(field_, a.data[i], b.data[i]);
      if (!x) return std::nullopt;
      d.push_back(std::move(*x));
    }
    return Morphism{b.domain, a.domain, std::move(d)};
  }

  // Target U has surjective structure maps, so U ≅ ⊕ I(b). In an interval
  // basis of U, Hom(T, I(b)) ≅ (V_b of T)^*, and x∘a = b splits into one
  // small system per end vertex b.
  std::optional<Morphism> solve_post_into_injective(const Morphism& a, const Morphism& b) const {
    const Object& t = a.codomain;
    const Object& u = b.codomain;
    std::vector<Matrix> basis(n_);
    basis[n_ - 1] = Matrix::identity(u.dims[n_ - 1]);
    for (int i = n_ - 2; i >= 0; --i) {
      auto lifts = solve(field_, u.maps[i], basis[i + 1]);
      require(lifts.has_value(), ErrorCode::InternalCheckFailed, "interval basis: map not surjective");
      basis[i] = hstack(*lifts, kernel_generators(field_, u.maps[i]));
    }
    std::vector<Matrix> rhs(n_);
    for (int i = 0; i < n_; ++i) {
      auto r = solve(field_, basis[i], b.data[i]);
      require(r.has_value(), ErrorCode::InternalCheckFailed, "interval basis not invertible");
      rhs[i] = std::move(*r);
    }
    // comp[i][e] = F^T_{e←i}
    std::vector<std::vector<Matrix>> comp(n_, std::vector<Matrix>(n_));
    for (int e = 0; e < n_; ++e) {
      comp[e][e] = Matrix::identity(t.dims[e]);
      for (int i = e - 1; i >= 0; --i) comp[i][e] = multiply(comp[i + 1][e], t.maps[i], p());
    }
    auto end_of = [&](int vertex, int index) {
      int e = vertex;
      while (e + 1 < n_ && index < u.dims[e + 1]) ++e;
      return e;
    };
    // xi[e] holds one functional per summand ending at e, for indices
    // u.dims[e+1] .. u.dims[e]-1.
    std::vector<Matrix> xi(n_);
    for (int e = 0; e < n_; ++e) {
      const int lo = e + 1 < n_ ? u.dims[e + 1] : 0;
      const int hi = u.dims[e];
      if (hi <= lo) continue;
      std::size_t width = 0;
      for (int i = 0; i <= e; ++i) width += a.data[i].cols();
      Matrix coeff(t.dims[e], width);
      Matrix target(hi - lo, width);
      std::size_t col = 0;
      for (int i = 0; i <= e; ++i) {
        place(coeff, multiply(comp[i][e], a.data[i], p()), 0, col);
        place(target, submatrix(rhs[i], lo, 0, hi - lo, rhs[i].cols()), 0, col);
        col += a.data[i].cols();
      }
      auto sol = solve_left(field_, coeff, target);
      if (!sol) return std::nullopt;
      xi[e] = std::move(*sol);
    }
    Data d;
    for (int i = 0; i < n_; ++i) {
      Matrix xs(u.dims[i], t.dims[i]);
      for (int j = 0; j < u.dims[i]; ++j) {
        const int e = end_of(i, j);
        const int lo = e + 1 < n_ ? u.dims[e + 1] : 0;
        const Matrix row = multiply(submatrix(xi[e], j - lo, 0, 1, t.dims[e]), comp[i][e], p());
        place(xs, row, j, 0);
      }
      d.push_back(multiply(basis[i], xs, p()));
    }
    return Morphism{t, u, std::move(d)};
  }

  // Linear system whose unknowns are all entries of a candidate morphism
  // src -> tgt, laid out vertex by vertex in row-major order.
  class HomSystem {
   public:
    HomSystem(const LinRep& model, const Object& src, const Object& tgt) : m_(model), src_(src), tgt_(tgt) {
      for (int i = 0; i < m_.n_; ++i) {
        offset_.push_back(unknowns_);
        unknowns_ += static_cast<std::size_t>(tgt_.dims[i]) * src_.dims[i];
      }
    }

    void add_commutation() {
      for (int i = 0; i + 1 < m_.n_; ++i) {
        const Matrix& fs = src_.maps[i];
        const Matrix& ft = tgt_.maps[i];
        for (int r = 0; r < tgt_.dims[i + 1]; ++r)
          for (int c = 0; c < src_.dims[i]; ++c) {
            std::vector<Int> row(unknowns_, 0);
            for (int l = 0; l < src_.dims[i + 1]; ++l) row[idx(i + 1, r, l)] += fs(l, c);
            for (int l = 0; l < tgt_.dims[i]; ++l) row[idx(i, l, c)] += m_.p() - ft(r, l);
            push(std::move(row), 0);
          }
      }
    }

    // x∘a = b with x: src -> tgt
    void add_post(const Morphism& a, const Morphism& b) {
      for (int i = 0; i < m_.n_; ++i)
        for (int r = 0; r < tgt_.dims[i]; ++r)
          for (std::size_t c = 0; c < a.data[i].cols(); ++c) {
            std::vector<Int> row(unknowns_, 0);
            for (int l = 0; l < src_.dims[i]; ++l) row[idx(i, r, l)] = a.data[i](l, c);
            push(std::move(row), b.data[i](r, c));
          }
    }

    // a∘x = b with x: src -> tgt
    void add_pre(const Morphism& a, const Morphism& b) {
      for (int i = 0; i < m_.n_; ++i)
        for (std::size_t r = 0; r < a.data[i].rows(); ++r)
          for (int c = 0; c < src_.dims[i]; ++c) {
            std::vector<Int> row(unknowns_, 0);
            for (int l = 0; l < tgt_.dims[i]; ++l) row[idx(i, l, c)] = a.data[i](r, l);
            push(std::move(row), b.data[i](r, c));
          }
    }

    Matrix matrix() const {
      Matrix a(rows_.size(), unknowns_);
      for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c = 0; c < unknowns_; ++c) a(r, c) = rows_[r][c] % m_.p();
      return a;
    }

    std::optional<Morphism> solve() const {
      Matrix rhs(rhs_.size(), 1);
      for (std::size_t r = 0; r < rhs_.size(); ++r) rhs(r, 0) = rhs_[r];
      auto x = exactcat::solve(m_.field_, matrix(), rhs);
      if (!x) return std::nullopt;
      return unpack(*x);
    }

    Morphism unpack(const Matrix& column) const {
      Data d;
      for (int i = 0; i < m_.n_; ++i) {
        Matrix mi(tgt_.dims[i], src_.dims[i]);
        for (int r = 0; r < tgt_.dims[i]; ++r)
          for (int c = 0; c < src_.dims[i]; ++c) mi(r, c) = column(idx(i, r, c), 0);
        d.push_back(std::move(mi));
      }
      return {src_, tgt_, std::move(d)};
    }

   private:
    std::size_t idx(int vertex, int r, int c) const {
      return offset_[vertex] + static_cast<std::size_t>(r) * src_.dims[vertex] + c;
    }
    void push(std::vector<Int> row, Int rhs) {
      rows_.push_back(std::move(row));
      rhs_.push_back(rhs);
    }

    const LinRep& m_;
    const Object& src_;
    const Object& tgt_;
    std::vector<std::size_t> offset_;
    std::size_t unknowns_ = 0;
    std::vector<std::vector<Int>> rows_;
    std::vector<Int> rhs_;
  };

  ChainRing field_;
  int n_;
  LinRepBounds bounds_;
};

static_assert(AdditiveModel<LinRep>);

}  // namespace exactcat

#endif  // EXACTCAT_LINREP_HPP
