#ifndef EXACTCAT_EXACT_HPP
#define EXACTCAT_EXACT_HPP

#include <optional>

#include "exactcat/category.hpp"

namespace exactcat {

/// E --mono--> F --epi--> G, claimed to lie in the exact structure.
template <class M>
struct KernelCokernelPair {
  MorphismOf<M> mono;
  MorphismOf<M> epi;
};

/// Pushout of mu: E→I and mu_prime: E→I′. The corner is the cokernel of
/// (mu, −mu_prime): E → I⊕I′; `presentation` is that cokernel map.
template <class M>
struct PushoutSquare {
  MorphismOf<M> mu;
  MorphismOf<M> mu_prime;
  MorphismOf<M> h;        // I → C
  MorphismOf<M> h_prime;  // I′ → C
  ObjectOf<M> corner;
  MorphismOf<M> presentation;  // I⊕I′ ↠ C
};

/// Pullback of pi: F→G and f: F′→G. The corner is the kernel of
/// (pi, −f): F⊕F′ → G; `presentation` is that kernel map.
template <class M>
struct PullbackSquare {
  MorphismOf<M> pi;
  MorphismOf<M> f;
  MorphismOf<M> g;        // P → F
  MorphismOf<M> g_prime;  // P → F′
  ObjectOf<M> corner;
  MorphismOf<M> presentation;  // P ↣ F⊕F′
};

template <class M>
struct AdmissibleFactorization {
  MorphismOf<M> epi_part;
  MorphismOf<M> mono_part;
};

// ---------------------------------------------------------------------------
// Kernel-cokernel pairs.

/// The comparison E → ker(epi) through which the model's kernel reproduces
/// `mono`, when it is an isomorphism.
template <AdditiveModel M>
std::optional<IsoCertificate<M>> kernel_comparison(const M& m, const KernelCokernelPair<M>& pair) {
  const auto k = m.kernel(pair.epi);
  auto x = m.solve_pre(k, pair.mono);
  if (!x) return std::nullopt;
  return is_isomorphism(m, *x);
}

/// The comparison coker(mono) → G through which the model's cokernel
/// reproduces `epi`, when it is an isomorphism.
template <AdditiveModel M>
std::optional<IsoCertificate<M>> cokernel_comparison(const M& m, const KernelCokernelPair<M>& pair) {
  const auto c = m.cokernel(pair.mono);
  auto y = m.solve_post(c, pair.epi);
  if (!y) return std::nullopt;
  return is_isomorphism(m, *y);
}

template <AdditiveModel M>
bool is_kernel_cokernel_pair(const M& m, const KernelCokernelPair<M>& pair) {
  if (pair.mono.codomain != pair.epi.domain) return false;
  if (!is_valid(m, pair.mono) || !is_valid(m, pair.epi)) return false;
  if (!m.is_admissible_mono(pair.mono) || !m.is_admissible_epi(pair.epi)) return false;
  if (!is_zero_morphism(m, m.compose(pair.epi, pair.mono))) return false;
  return kernel_comparison(m, pair).has_value() && cokernel_comparison(m, pair).has_value();
}

template <AdditiveModel M>
MorphismOf<M> cokernel(const M& m, const MorphismOf<M>& mu) {
  require(m.is_admissible_mono(mu), ErrorCode::NotAdmissible, "cokernel: not an admissible mono");
  return m.cokernel(mu);
}

template <AdditiveModel M>
MorphismOf<M> kernel(const M& m, const MorphismOf<M>& pi) {
  require(m.is_admissible_epi(pi), ErrorCode::NotAdmissible, "kernel: not an admissible epi");
  return m.kernel(pi);
}

template <AdditiveModel M>
KernelCokernelPair<M> pair_from_mono(const M& m, const MorphismOf<M>& mu) {
  return {mu, cokernel(m, mu)};
}

template <AdditiveModel M>
KernelCokernelPair<M> pair_from_epi(const M& m, const MorphismOf<M>& pi) {
  return {kernel(m, pi), pi};
}

/// The unique ψ: G → X with ψ∘epi = q.
template <AdditiveModel M>
MorphismOf<M> factor_through_cokernel(const M& m, const MorphismOf<M>& q, const KernelCokernelPair<M>& pair) {
  require(q.domain == pair.epi.domain, ErrorCode::DomainMismatch, "factor_through_cokernel: domain of q");
  require(is_zero_morphism(m, compose(m, q, pair.mono)), ErrorCode::NotAnnihilating,
          "factor_through_cokernel: q does not kill the kernel");
  auto psi = m.solve_post(pair.epi, q);
  require(psi.has_value(), ErrorCode::NoSolution, "factor_through_cokernel: no solution");
  return *psi;
}

/// The unique g′: B → E with mono∘g′ = q.
template <AdditiveModel M>
MorphismOf<M> factor_through_kernel(const M& m, const MorphismOf<M>& q, const KernelCokernelPair<M>& pair) {
  require(q.codomain == pair.mono.codomain, ErrorCode::DomainMismatch, "factor_through_kernel: codomain of q");
  require(is_zero_morphism(m, compose(m, pair.epi, q)), ErrorCode::NotAnnihilating,
          "factor_through_kernel: epi does not kill q");
  auto g = m.solve_pre(pair.mono, q);
  require(g.has_value(), ErrorCode::NoSolution, "factor_through_kernel: no solution");
  return *g;
}

// ---------------------------------------------------------------------------
// Pushouts and pullbacks.

/// h_prime: I′ → C is the pushout of mu and is always an admissible mono;
/// h: I → C is the pushout of mu_prime and is admissible when mu_prime is.
template <AdditiveModel M>
PushoutSquare<M> pushout(const M& m, const MorphismOf<M>& mu, const MorphismOf<M>& mu_prime) {
  require(mu.domain == mu_prime.domain, ErrorCode::DomainMismatch, "pushout: legs need a common domain");
  require(m.is_admissible_mono(mu), ErrorCode::NotAdmissible, "pushout: mu is not an admissible mono");
  const auto& i = mu.codomain;
  const auto& ip = mu_prime.codomain;
  const auto diff = m.add(m.compose(m.inject_first(i, ip), mu), m.negate(m.compose(m.inject_second(i, ip), mu_prime)));
  const auto c = m.cokernel(diff);
  return {mu, mu_prime, m.compose(c, m.inject_first(i, ip)), m.compose(c, m.inject_second(i, ip)), c.codomain, c};
}

/// The unique C → X restricting to a on I and b on I′.
template <AdditiveModel M>
MorphismOf<M> pushout_mediator(const M& m, const PushoutSquare<M>& sq, const MorphismOf<M>& a,
                               const MorphismOf<M>& b) {
  require(a.domain == sq.mu.codomain && b.domain == sq.mu_prime.codomain && a.codomain == b.codomain,
          ErrorCode::DomainMismatch, "pushout_mediator: cone shape");
  require(m.compose(a, sq.mu) == m.compose(b, sq.mu_prime), ErrorCode::NotAnnihilating,
          "pushout_mediator: cone does not commute");
  const auto& i = sq.mu.codomain;
  const auto& ip = sq.mu_prime.codomain;
  const auto joined = m.add(m.compose(a, m.project_first(i, ip)), m.compose(b, m.project_second(i, ip)));
  auto x = m.solve_post(sq.presentation, joined);
  require(x.has_value(), ErrorCode::NoSolution, "pushout_mediator: no solution");
  return *x;
}

/// g_prime: P → F′ is the pullback of pi and is always an admissible epi;
/// g: P → F is the pullback of f.
template <AdditiveModel M>
PullbackSquare<M> pullback(const M& m, const MorphismOf<M>& pi, const MorphismOf<M>& f) {
  require(pi.codomain == f.codomain, ErrorCode::DomainMismatch, "pullback: legs need a common codomain");
  require(m.is_admissible_epi(pi), ErrorCode::NotAdmissible, "pullback: pi is not an admissible epi");
  const auto& a = pi.domain;
  const auto& b = f.domain;
  const auto diff = m.add(m.compose(pi, m.project_first(a, b)), m.negate(m.compose(f, m.project_second(a, b))));
  const auto k = m.kernel(diff);
  return {pi, f, m.compose(m.project_first(a, b), k), m.compose(m.project_second(a, b), k), k.domain, k};
}

/// The unique X → P with components a: X → F and b: X → F′.
template <AdditiveModel M>
MorphismOf<M> pullback_mediator(const M& m, const PullbackSquare<M>& sq, const MorphismOf<M>& a,
                                const MorphismOf<M>& b) {
  require(a.codomain == sq.pi.domain && b.codomain == sq.f.domain && a.domain == b.domain,
          ErrorCode::DomainMismatch, "pullback_mediator: cone shape");
  require(m.compose(sq.pi, a) == m.compose(sq.f, b), ErrorCode::NotAnnihilating,
          "pullback_mediator: cone does not commute");
  const auto& x = sq.pi.domain;
  const auto& y = sq.f.domain;
  const auto joined = m.add(m.compose(m.inject_first(x, y), a), m.compose(m.inject_second(x, y), b));
  auto out = m.solve_pre(sq.presentation, joined);
  require(out.has_value(), ErrorCode::NoSolution, "pullback_mediator: no solution");
  return *out;
}

/// Image factorization f = mono_part∘epi_part with image = ker(coker f).
template <AdditiveModel M>
AdmissibleFactorization<M> admissible_factorization(const M& m, const MorphismOf<M>& f) {
  const auto image = m.kernel(m.cokernel(f));
  auto e = m.solve_pre(image, f);
  require(e.has_value(), ErrorCode::InternalCheckFailed, "f does not factor through its image");
  require(m.is_admissible_mono(image) && m.is_admissible_epi(*e), ErrorCode::NotAdmissibleMorphism,
          "image factorization is not admissible");
  return {*e, image};
}

// ---------------------------------------------------------------------------
// Splittings and direct sums.

/// Completes a section mu_tilde of pair.mono to a biproduct witness; π̃ is
/// the factorization of id_F − μ∘μ̃ through the cokernel.
template <AdditiveModel M>
BiproductWitness<M> split_from_section(const M& m, const KernelCokernelPair<M>& pair, const MorphismOf<M>& mu_tilde) {
  require(mu_tilde.domain == pair.mono.codomain && mu_tilde.codomain == pair.mono.domain, ErrorCode::NotASection,
          "split_from_section: section has the wrong shape");
  require(is_identity(m, m.compose(mu_tilde, pair.mono)), ErrorCode::NotASection,
          "split_from_section: mu_tilde∘mu is not the identity");
  const auto& f = pair.mono.codomain;
  const auto rest = m.add(m.identity(f), m.negate(m.compose(pair.mono, mu_tilde)));
  const auto pi_tilde = factor_through_cokernel(m, rest, pair);
  BiproductWitness<M> w{pair.mono.domain, f, pair.epi.codomain, pair.mono, pair.epi, mu_tilde, pi_tilde};
  require(witness_holds(m, w), ErrorCode::InternalCheckFailed, "split_from_section: witness identities");
  return w;
}

/// (E ↣ F ↠ G) ⟼ (E⊕A ↣ F⊕A ↠ G) with mono φ = τ̃∘μ∘ι̃ + θ∘ρ and epi π∘τ.
template <AdditiveModel M>
KernelCokernelPair<M> sum_with_object(const M& m, const KernelCokernelPair<M>& pair, const ObjectOf<M>& a) {
  const auto ea = biproduct(m, pair.mono.domain, a);           // ι, ρ, ι̃, ρ̃
  const auto fa = flipped(biproduct(m, pair.mono.codomain, a));  // θ, τ, θ̃, τ̃
  const auto phi = m.add(m.compose(fa.pi_tilde, m.compose(pair.mono, ea.mu_tilde)), m.compose(fa.mu, ea.pi));
  return {phi, m.compose(pair.epi, fa.pi)};
}

/// The same construction with the extra object on the left: A⊕E ↣ A⊕F ↠ G.
template <AdditiveModel M>
KernelCokernelPair<M> sum_with_object_left(const M& m, const ObjectOf<M>& a, const KernelCokernelPair<M>& pair) {
  const auto right = sum_with_object(m, pair, a);
  const auto& e = pair.mono.domain;
  const auto& f = pair.mono.codomain;
  return {compose(m, swap_summands(m, f, a), right.mono, swap_summands(m, a, e)),
          m.compose(right.epi, swap_summands(m, a, f))};
}

/// Some g: F → I with g∘mu = f.
template <AdditiveModel M>
MorphismOf<M> lift(const M& m, const MorphismOf<M>& f, const MorphismOf<M>& mu) {
  require(f.domain == mu.domain, ErrorCode::DomainMismatch, "lift: f and mu need a common domain");
  require(m.is_admissible_mono(mu), ErrorCode::NotAdmissible, "lift: mu is not an admissible mono");
  require(m.is_injective(f.codomain), ErrorCode::NotInjectiveTarget, "lift: target is not injective");
  auto g = m.solve_post(mu, f);
  require(g.has_value(), ErrorCode::NoSolution, "lift: no solution into an injective target");
  return *g;
}

template <AdditiveModel M>
std::optional<MorphismOf<M>> left_inverse_if_injective(const M& m, const MorphismOf<M>& mu) {
  require(m.is_admissible_mono(mu), ErrorCode::NotAdmissible, "left_inverse_if_injective: not an admissible mono");
  if (!m.is_injective(mu.domain)) return std::nullopt;
  return lift(m, m.identity(mu.domain), mu);
}

/// Left inverse g = μ∘g_E + π̃∘g_G of test_mono: F → B, from component lifts
/// g_E∘test_mono = μ̃ and g_G∘test_mono = π.
template <AdditiveModel M>
MorphismOf<M> injective_of_summands(const M& m, const BiproductWitness<M>& w, const MorphismOf<M>& test_mono,
                                    const MorphismOf<M>& g_e, const MorphismOf<M>& g_g) {
  require(test_mono.domain == w.middle, ErrorCode::DomainMismatch, "injective_of_summands: test mono domain");
  require(g_e.domain == test_mono.codomain && g_g.domain == test_mono.codomain, ErrorCode::BadComponentLift,
          "injective_of_summands: component lifts have the wrong domain");
  require(m.compose(g_e, test_mono) == w.mu_tilde, ErrorCode::BadComponentLift, "g_E∘f != mu_tilde");
  require(m.compose(g_g, test_mono) == w.pi, ErrorCode::BadComponentLift, "g_G∘f != pi");
  const auto g = m.add(m.compose(w.mu, g_e), m.compose(w.pi_tilde, g_g));
  require(is_identity(m, m.compose(g, test_mono)), ErrorCode::InternalCheckFailed, "g∘f != id");
  return g;
}

}  // namespace exactcat

#endif  // EXACTCAT_EXACT_HPP
