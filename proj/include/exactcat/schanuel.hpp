#ifndef EXACTCAT_SCHANUEL_HPP
#define EXACTCAT_SCHANUEL_HPP

#include <optional>
#include <vector>

#include "exactcat/category.hpp"
#include "exactcat/exact.hpp"
#include "exactcat/random.hpp"

namespace exactcat {

/// The pushout of two injective presentations E ↣ I ↠ F and E ↣ I′ ↠ F′,
/// together with p: C → F and p′: C → F′.
template <class M>
struct PushoutCompletion {
  PushoutSquare<M> square;
  MorphismOf<M> p;
  MorphismOf<M> p_prime;
};

/// I^0..I^{N-1} and G^0..G^N with G^n ↣ I^n ↠ G^{n+1}.
template <class M>
struct Resolution {
  ObjectOf<M> base;
  std::vector<ObjectOf<M>> injectives;
  std::vector<ObjectOf<M>> syzygies;
  std::vector<MorphismOf<M>> monos;
  std::vector<MorphismOf<M>> epis;
  IsoCertificate<M> base_iso;  // E ≅ G^0

  std::size_t depth() const { return injectives.size(); }
  KernelCokernelPair<M> pair(std::size_t n) const { return {monos.at(n), epis.at(n)}; }
};

/// Either the injective dimension, or the budget it exceeded.
struct DimensionResult {
  std::optional<int> value;
  int budget = 0;

  bool exceeds() const { return !value.has_value(); }
  friend bool operator==(const DimensionResult&, const DimensionResult&) = default;
};

template <class M>
struct ResolutionCertificates {
  IsoCertificate<M> even;  // I^0⊕J^1⊕…⊕J^{2n-1}⊕G^{2n} ≅ J^0⊕I^1⊕…⊕I^{2n-1}⊕H^{2n}
  IsoCertificate<M> odd;   // …⊕I^{2n}⊕H^{2n+1} ≅ …⊕J^{2n}⊕G^{2n+1}
};

template <class M>
struct GlobalDimensionReport {
  std::vector<ObjectOf<M>> objects;
  std::vector<DimensionResult> results;
  std::optional<int> max_value;              // over the objects with finite dimension
  std::optional<std::size_t> max_witness;    // index into objects
  std::optional<std::size_t> exceed_witness; // first object over budget, if any

  bool exceeds() const { return exceed_witness.has_value(); }
};

template <AdditiveModel M>
PushoutCompletion<M> pushout_completion(const M& m, const KernelCokernelPair<M>& pair1,
                                        const KernelCokernelPair<M>& pair2) {
  require(pair1.mono.domain == pair2.mono.domain, ErrorCode::BaseMismatch,
          "pushout_completion: the two pairs have different kernels");
  auto sq = pushout(m, pair1.mono, pair2.mono);
  const auto& f = pair1.epi.codomain;
  const auto& fp = pair2.epi.codomain;
  const auto p = pushout_mediator(m, sq, pair1.epi, m.zero(pair2.mono.codomain, f));
  const auto pp = pushout_mediator(m, sq, m.zero(pair1.mono.codomain, fp), pair2.epi);
  PushoutCompletion<M> out{std::move(sq), p, pp};
  const auto& s = out.square;
  require(m.compose(p, s.h) == pair1.epi && is_zero_morphism(m, m.compose(p, s.h_prime)) &&
              m.compose(pp, s.h_prime) == pair2.epi && is_zero_morphism(m, m.compose(pp, s.h)),
          ErrorCode::InternalCheckFailed, "pushout_completion: square identities");
  require(is_kernel_cokernel_pair(m, KernelCokernelPair<M>{s.h_prime, p}) &&
              is_kernel_cokernel_pair(m, KernelCokernelPair<M>{s.h, pp}),
          ErrorCode::InternalCheckFailed, "pushout_completion: (h′, p) or (h, p′) is not a kernel-cokernel pair");
  return out;
}

/// I⊕F′ ≅ I′⊕F, assembled through the pushout corner C.
template <AdditiveModel M>
IsoCertificate<M> schanuel_isomorphism(const M& m, const KernelCokernelPair<M>& pair1,
                                       const KernelCokernelPair<M>& pair2) {
  const auto& i = pair1.mono.codomain;
  const auto& ip = pair2.mono.codomain;
  require(m.is_injective(i) && m.is_injective(ip), ErrorCode::NotInjectiveMiddle,
          "schanuel_isomorphism: middle object is not injective");
  const auto& f = pair1.epi.codomain;
  const auto& fp = pair2.epi.codomain;
  const auto pc = pushout_completion(m, pair1, pair2);
  const auto& h = pc.square.h;
  const auto& hp = pc.square.h_prime;

  const auto s = left_inverse_if_injective(m, h);
  const auto sp = left_inverse_if_injective(m, hp);
  require(s && sp, ErrorCode::InternalCheckFailed, "schanuel_isomorphism: missing left inverse");
  const auto w1 = split_from_section(m, KernelCokernelPair<M>{h, pc.p_prime}, *s);  // C ≅ I⊕F′
  const auto w2 = split_from_section(m, KernelCokernelPair<M>{hp, pc.p}, *sp);      // C ≅ I′⊕F

  const auto alpha = m.add(m.compose(h, m.project_first(i, fp)), m.compose(w1.pi_tilde, m.project_second(i, fp)));
  const auto beta = m.add(m.compose(m.inject_first(ip, f), *sp), m.compose(m.inject_second(ip, f), pc.p));
  const auto alpha_p = m.add(m.compose(hp, m.project_first(ip, f)), m.compose(w2.pi_tilde, m.project_second(ip, f)));
  const auto beta_p = m.add(m.compose(m.inject_first(i, fp), *s), m.compose(m.inject_second(i, fp), pc.p_prime));

  IsoCertificate<M> cert{m.compose(beta, alpha), m.compose(beta_p, alpha_p)};
  require(verify_certificate(m, cert), ErrorCode::InternalCheckFailed, "schanuel_isomorphism: certificate");
  return cert;
}

/// pair2 lives over E′; its mono is pulled back to E along base.forward.
template <AdditiveModel M>
IsoCertificate<M> schanuel_with_base_iso(const M& m, const KernelCokernelPair<M>& pair1,
                                         const KernelCokernelPair<M>& pair2, const IsoCertificate<M>& base) {
  require(verify_certificate(m, base), ErrorCode::BadBaseIso, "schanuel_with_base_iso: base is not an isomorphism");
  require(base.forward.domain == pair1.mono.domain && base.forward.codomain == pair2.mono.domain,
          ErrorCode::BadBaseIso, "schanuel_with_base_iso: base does not connect the two kernels");
  return schanuel_isomorphism(m, pair1, KernelCokernelPair<M>{m.compose(pair2.mono, base.forward), pair2.epi});
}

namespace detail {

template <AdditiveModel M>
Resolution<M> resolve(const M& m, const ObjectOf<M>& e, std::size_t depth, Rng* rng) {
  m.validate(e);
  Resolution<M> r{e, {}, {e}, {}, {}, identity_certificate(m, e)};
  for (std::size_t n = 0; n < depth; ++n) {
    const auto& g = r.syzygies.back();
    MorphismOf<M> mono = m.is_zero(g) ? m.identity(g) : rng ? m.embed_into_injective(g, *rng) : m.embed_into_injective(g);
    auto epi = m.cokernel(mono);
    r.injectives.push_back(mono.codomain);
    r.syzygies.push_back(epi.codomain);
    r.monos.push_back(std::move(mono));
    r.epis.push_back(std::move(epi));
  }
  return r;
}

}  // namespace detail

/// The canonical resolution; stages after a zero syzygy are zero.
template <AdditiveModel M>
Resolution<M> resolution(const M& m, const ObjectOf<M>& e, std::size_t depth) {
  return detail::resolve(m, e, depth, nullptr);
}

/// Same ladder with the model's randomized embedding at every stage.
template <AdditiveModel M>
Resolution<M> resolution(const M& m, const ObjectOf<M>& e, std::size_t depth, Rng& rng) {
  return detail::resolve(m, e, depth, &rng);
}

/// Iterates schanuel_with_base_iso along two resolutions of the same object,
/// inflating both pairs by the accumulated injective prefixes.
template <AdditiveModel M>
ResolutionCertificates<M> resolution_schanuel(const M& m, const Resolution<M>& res1, const Resolution<M>& res2,
                                              std::size_t n) {
  require(n >= 1, ErrorCode::DepthTooShallow, "resolution_schanuel: n must be at least 1");
  require(res1.depth() >= 2 * n + 1 && res2.depth() >= 2 * n + 1, ErrorCode::DepthTooShallow,
          "resolution_schanuel: resolutions must have depth at least 2n+1");
  require(res1.base == res2.base, ErrorCode::BaseMismatch, "resolution_schanuel: different base objects");

  const IsoCertificate<M> base =
      compose_certificates(m, res2.base_iso, inverse_certificate(res1.base_iso));  // G^0 → H^0
  // cert: P⊕X → Q⊕Y, X the current syzygy of `xs`, Y that of `ys`.
  IsoCertificate<M> cert = schanuel_with_base_iso(m, res1.pair(0), res2.pair(0), base);
  ObjectOf<M> prefix_p = res1.injectives[0];
  ObjectOf<M> prefix_q = res2.injectives[0];
  const Resolution<M>* xs = &res2;
  const Resolution<M>* ys = &res1;

  ResolutionCertificates<M> out{cert, cert};
  for (std::size_t step = 1; step <= 2 * n; ++step) {
    const auto pa = sum_with_object_left(m, prefix_p, xs->pair(step));
    const auto pb = sum_with_object_left(m, prefix_q, ys->pair(step));
    cert = schanuel_with_base_iso(m, pa, pb, cert);
    prefix_p = pa.mono.codomain;
    prefix_q = pb.mono.codomain;
    std::swap(xs, ys);
    if (step == 2 * n - 1) out.even = cert;
  }
  out.odd = cert;
  return out;
}

namespace detail {

template <AdditiveModel M>
DimensionResult dimension(const M& m, ObjectOf<M> g, int budget, Rng* rng) {
  require(budget >= 1, ErrorCode::InvalidObject, "injective_dimension: budget must be at least 1");
  for (int n = 0;; ++n) {
    if (m.is_injective(g)) return {n, budget};
    if (n == budget) return {std::nullopt, budget};
    const auto mono = rng ? m.embed_into_injective(g, *rng) : m.embed_into_injective(g);
    g = m.cokernel(mono).codomain;
  }
}

}  // namespace detail

/// Least n <= budget with G^n injective in the canonical resolution.
template <AdditiveModel M>
DimensionResult injective_dimension(const M& m, const ObjectOf<M>& e, int budget = 16) {
  return detail::dimension(m, e, budget, nullptr);
}

template <AdditiveModel M>
DimensionResult injective_dimension(const M& m, const ObjectOf<M>& e, int budget, Rng& rng) {
  return detail::dimension(m, e, budget, &rng);
}

template <AdditiveModel M>
GlobalDimensionReport<M> global_dimension_sample(const M& m, std::size_t sample_size, int budget, std::uint64_t seed) {
  Rng rng(seed);
  GlobalDimensionReport<M> rep;
  for (std::size_t s = 0; s < sample_size; ++s) {
    rep.objects.push_back(m.random_object(rng));
    rep.results.push_back(injective_dimension(m, rep.objects.back(), budget));
    const auto& r = rep.results.back();
    if (r.exceeds()) {
      if (!rep.exceed_witness) rep.exceed_witness = s;
    } else if (!rep.max_value || *r.value > *rep.max_value) {
      rep.max_value = r.value;
      rep.max_witness = s;
    }
  }
  return rep;
}

}  // namespace exactcat

#endif  // EXACTCAT_SCHANUEL_HPP
