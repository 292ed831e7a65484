#ifndef EXACTCAT_CATEGORY_HPP
#define EXACTCAT_CATEGORY_HPP

#include <concepts>
#include <optional>
#include <string>

#include "exactcat/errors.hpp"
#include "exactcat/random.hpp"

namespace exactcat {

/// An arrow between two objects of one concrete model. `Data` is the model's
/// exact matrix representation; maps act on column vectors, so composition
/// g∘f multiplies data(g) * data(f).
template <class Obj, class Data>
struct Morphism {
  Obj domain;
  Obj codomain;
  Data data;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// What every concrete model supplies. The exact-structure and Schanuel
/// layers are written only against this surface.
template <class M>
concept AdditiveModel = requires(const M& m, const typename M::Object& x, const typename M::Morphism& f,
                                 Rng& rng) {
  typename M::Object;
  typename M::Data;
  { m.id() } -> std::convertible_to<std::string>;
  { m.zero_object() } -> std::same_as<typename M::Object>;
  { m.is_zero(x) } -> std::same_as<bool>;
  m.validate(x);
  m.validate(f);
  { m.identity(x) } -> std::same_as<typename M::Morphism>;
  { m.zero(x, x) } -> std::same_as<typename M::Morphism>;
  { m.compose(f, f) } -> std::same_as<typename M::Morphism>;
  { m.add(f, f) } -> std::same_as<typename M::Morphism>;
  { m.negate(f) } -> std::same_as<typename M::Morphism>;
  { m.direct_sum(x, x) } -> std::same_as<typename M::Object>;
  { m.inject_first(x, x) } -> std::same_as<typename M::Morphism>;
  { m.inject_second(x, x) } -> std::same_as<typename M::Morphism>;
  { m.project_first(x, x) } -> std::same_as<typename M::Morphism>;
  { m.project_second(x, x) } -> std::same_as<typename M::Morphism>;
  { m.kernel(f) } -> std::same_as<typename M::Morphism>;
  { m.cokernel(f) } -> std::same_as<typename M::Morphism>;
  { m.is_mono(f) } -> std::same_as<bool>;
  { m.is_epi(f) } -> std::same_as<bool>;
  { m.solve_post(f, f) } -> std::same_as<std::optional<typename M::Morphism>>;
  { m.solve_pre(f, f) } -> std::same_as<std::optional<typename M::Morphism>>;
  { m.is_admissible_mono(f) } -> std::same_as<bool>;
  { m.is_admissible_epi(f) } -> std::same_as<bool>;
  { m.is_injective(x) } -> std::same_as<bool>;
  { m.embed_into_injective(x) } -> std::same_as<typename M::Morphism>;
  { m.embed_into_injective(x, rng) } -> std::same_as<typename M::Morphism>;
  { m.length(x) } -> std::convertible_to<long>;
  m.invariant(x);
  { m.random_object(rng) } -> std::same_as<typename M::Object>;
  { m.random_simple(rng) } -> std::same_as<typename M::Object>;
  { m.random_morphism(x, x, rng) } -> std::same_as<typename M::Morphism>;
  { m.random_iso(x, rng) } -> std::same_as<typename M::Morphism>;
};

template <class M>
using MorphismOf = typename M::Morphism;

template <class M>
using ObjectOf = typename M::Object;

/// E --mu--> F --pi--> G with left inverse mu_tilde and right inverse
/// pi_tilde; a direct-sum decomposition of the middle object.
template <class M>
struct BiproductWitness {
  ObjectOf<M> left;
  ObjectOf<M> middle;
  ObjectOf<M> right;
  MorphismOf<M> mu;
  MorphismOf<M> pi;
  MorphismOf<M> mu_tilde;
  MorphismOf<M> pi_tilde;
};

/// A claimed isomorphism together with its inverse. Nothing about it is
/// trusted until verify_certificate recomputes both composites.
template <class M>
struct IsoCertificate {
  MorphismOf<M> forward;
  MorphismOf<M> backward;
};

// ---------------------------------------------------------------------------
// Checked category-core operations.

template <AdditiveModel M>
MorphismOf<M> compose(const M& m, const MorphismOf<M>& g, const MorphismOf<M>& f) {
  require(f.codomain == g.domain, ErrorCode::DomainMismatch, "compose: codomain(f) != domain(g)");
  return m.compose(g, f);
}

template <AdditiveModel M>
MorphismOf<M> compose(const M& m, const MorphismOf<M>& h, const MorphismOf<M>& g, const MorphismOf<M>& f) {
  return compose(m, h, compose(m, g, f));
}

template <AdditiveModel M>
MorphismOf<M> identity(const M& m, const ObjectOf<M>& x) {
  return m.identity(x);
}

template <AdditiveModel M>
MorphismOf<M> zero_morphism(const M& m, const ObjectOf<M>& x, const ObjectOf<M>& y) {
  return m.zero(x, y);
}

template <AdditiveModel M>
MorphismOf<M> add(const M& m, const MorphismOf<M>& f, const MorphismOf<M>& g) {
  require(f.domain == g.domain && f.codomain == g.codomain, ErrorCode::ShapeMismatch,
          "add: morphisms have different domain or codomain");
  return m.add(f, g);
}

template <AdditiveModel M>
MorphismOf<M> negate(const M& m, const MorphismOf<M>& f) {
  return m.negate(f);
}

template <AdditiveModel M>
MorphismOf<M> subtract(const M& m, const MorphismOf<M>& f, const MorphismOf<M>& g) {
  return add(m, f, m.negate(g));
}

/// Data is kept in canonical reduced form by every model, so equality of
/// morphisms is plain structural equality.
template <AdditiveModel M>
bool equal(const M&, const MorphismOf<M>& f, const MorphismOf<M>& g) {
  return f == g;
}

template <AdditiveModel M>
bool is_zero_morphism(const M& m, const MorphismOf<M>& f) {
  return f == m.zero(f.domain, f.codomain);
}

template <AdditiveModel M>
bool is_identity(const M& m, const MorphismOf<M>& f) {
  return f.domain == f.codomain && f == m.identity(f.domain);
}

template <AdditiveModel M>
bool is_valid(const M& m, const MorphismOf<M>& f) {
  try {
    m.validate(f);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Checks the three splitting identities plus the two forced zero composites.
template <AdditiveModel M>
bool witness_holds(const M& m, const BiproductWitness<M>& w) {
  if (w.mu.domain != w.left || w.mu.codomain != w.middle) return false;
  if (w.pi.domain != w.middle || w.pi.codomain != w.right) return false;
  if (w.mu_tilde.domain != w.middle || w.mu_tilde.codomain != w.left) return false;
  if (w.pi_tilde.domain != w.right || w.pi_tilde.codomain != w.middle) return false;
  if (!is_identity(m, m.compose(w.mu_tilde, w.mu))) return false;
  if (!is_identity(m, m.compose(w.pi, w.pi_tilde))) return false;
  if (!is_identity(m, m.add(m.compose(w.mu, w.mu_tilde), m.compose(w.pi_tilde, w.pi)))) return false;
  if (!is_zero_morphism(m, m.compose(w.pi, w.mu))) return false;
  return is_zero_morphism(m, m.compose(w.mu_tilde, w.pi_tilde));
}

/// Canonical block biproduct E ⊕ G.
template <AdditiveModel M>
BiproductWitness<M> biproduct(const M& m, const ObjectOf<M>& e, const ObjectOf<M>& g) {
  BiproductWitness<M> w{e,
                        m.direct_sum(e, g),
                        g,
                        m.inject_first(e, g),
                        m.project_second(e, g),
                        m.project_first(e, g),
                        m.inject_second(e, g)};
  require(witness_holds(m, w), ErrorCode::InternalCheckFailed, "biproduct identities");
  return w;
}

/// The same decomposition read from the other side: G ↣ E⊕G ↠ E.
template <AdditiveModel M>
BiproductWitness<M> flipped(const BiproductWitness<M>& w) {
  return {w.right, w.middle, w.left, w.pi_tilde, w.mu_tilde, w.pi, w.mu};
}

/// Block-diagonal map X⊕Y → X'⊕Y' from f: X→X' and g: Y→Y'.
template <AdditiveModel M>
MorphismOf<M> direct_sum_map(const M& m, const MorphismOf<M>& f, const MorphismOf<M>& g) {
  const auto a = m.compose(m.inject_first(f.codomain, g.codomain),
                           m.compose(f, m.project_first(f.domain, g.domain)));
  const auto b = m.compose(m.inject_second(f.codomain, g.codomain),
                           m.compose(g, m.project_second(f.domain, g.domain)));
  return m.add(a, b);
}

/// The swap iso X⊕Y → Y⊕X.
template <AdditiveModel M>
MorphismOf<M> swap_summands(const M& m, const ObjectOf<M>& x, const ObjectOf<M>& y) {
  return m.add(m.compose(m.inject_second(y, x), m.project_first(x, y)),
               m.compose(m.inject_first(y, x), m.project_second(x, y)));
}

template <AdditiveModel M>
IsoCertificate<M> identity_certificate(const M& m, const ObjectOf<M>& x) {
  return {m.identity(x), m.identity(x)};
}

template <AdditiveModel M>
IsoCertificate<M> inverse_certificate(const IsoCertificate<M>& c) {
  return {c.backward, c.forward};
}

/// Recomputes both composites from the raw data and compares them with the
/// identities. Takes no input from the constructor besides the two arrows.
template <AdditiveModel M>
bool verify_certificate(const M& m, const IsoCertificate<M>& c) {
  if (!is_valid(m, c.forward) || !is_valid(m, c.backward)) return false;
  if (c.forward.domain != c.backward.codomain || c.forward.codomain != c.backward.domain) return false;
  return is_identity(m, m.compose(c.backward, c.forward)) && is_identity(m, m.compose(c.forward, c.backward));
}

template <AdditiveModel M>
IsoCertificate<M> compose_certificates(const M& m, const IsoCertificate<M>& second,
                                       const IsoCertificate<M>& first) {
  return {compose(m, second.forward, first.forward), compose(m, first.backward, second.backward)};
}

/// Exact two-sided inverse of f when one exists.
template <AdditiveModel M>
std::optional<IsoCertificate<M>> is_isomorphism(const M& m, const MorphismOf<M>& f) {
  if (!m.is_mono(f) || !m.is_epi(f)) return std::nullopt;
  auto inv = m.solve_post(f, m.identity(f.domain));
  if (!inv) return std::nullopt;
  IsoCertificate<M> c{f, *inv};
  if (!verify_certificate(m, c)) return std::nullopt;
  return c;
}

}  // namespace exactcat

#endif  // EXACTCAT_CATEGORY_HPP
