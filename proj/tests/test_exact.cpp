#include <gtest/gtest.h>

#include "exactcat/exactcat.hpp"
#include "oracles.hpp"

using namespace exactcat;

namespace {

Matrix mat(std::size_t r, std::size_t c, std::vector<Int> v) {
  Matrix m(r, c);
  m.values() = std::move(v);
  return m;
}

ErrorCode code_of(auto&& thunk) {
  try {
    thunk();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InternalCheckFailed;
}

struct Z4 {
  CyclicMod m{2, 2};
  CyclicModObject z2 = m.make_object({1});
  CyclicModObject z4 = m.make_object({2});
  CyclicMod::Morphism inc = m.make_morphism(z2, z4, mat(1, 1, {2}));  // Z/2 ↣ Z/4
  CyclicMod::Morphism quo = m.make_morphism(z4, z2, mat(1, 1, {1}));  // Z/4 ↠ Z/2
};

}  // namespace

TEST(Exact, KernelCokernelPairs) {
  Z4 s;
  EXPECT_TRUE(is_kernel_cokernel_pair(s.m, KernelCokernelPair<CyclicMod>{s.inc, s.quo}));
  // Composite zero but not exact: Z/2 ↣ Z/4 followed by zero.
  EXPECT_FALSE(is_kernel_cokernel_pair(s.m, KernelCokernelPair<CyclicMod>{s.inc, s.m.zero(s.z4, s.z2)}));
  const auto p = pair_from_mono(s.m, s.inc);
  EXPECT_EQ(p.epi.codomain, s.z2);
  EXPECT_TRUE(is_kernel_cokernel_pair(s.m, p));
  EXPECT_TRUE(is_kernel_cokernel_pair(s.m, pair_from_epi(s.m, s.quo)));
  const auto two = s.m.make_morphism(s.z4, s.z4, mat(1, 1, {2}));
  EXPECT_EQ(code_of([&] { cokernel(s.m, two); }), ErrorCode::NotAdmissible);
  EXPECT_EQ(code_of([&] { kernel(s.m, two); }), ErrorCode::NotAdmissible);
}

TEST(Exact, CokernelExamples) {
  Z4 s;
  EXPECT_TRUE(s.m.is_zero(cokernel(s.m, s.m.identity(s.z4)).codomain));
  EXPECT_TRUE(is_isomorphism(s.m, cokernel(s.m, s.m.zero(s.m.zero_object(), s.z4))).has_value());
}

TEST(Exact, FactorThrough) {
  Z4 s;
  const KernelCokernelPair<CyclicMod> pr{s.inc, s.quo};
  EXPECT_TRUE(is_identity(s.m, factor_through_cokernel(s.m, s.quo, pr)));
  EXPECT_TRUE(is_zero_morphism(s.m, factor_through_cokernel(s.m, s.m.zero(s.z4, s.z4), pr)));
  EXPECT_TRUE(is_identity(s.m, factor_through_kernel(s.m, s.inc, pr)));
  EXPECT_TRUE(is_zero_morphism(s.m, factor_through_kernel(s.m, s.m.zero(s.z2, s.z4), pr)));
  EXPECT_EQ(code_of([&] { factor_through_cokernel(s.m, s.m.identity(s.z4), pr); }),
            ErrorCode::NotAnnihilating);
  // q = (·2): Z/4 → Z/4 lands in the image of μ.
  const auto q = s.m.make_morphism(s.z4, s.z4, mat(1, 1, {2}));
  const auto g = factor_through_kernel(s.m, q, pr);
  EXPECT_EQ(s.m.compose(s.inc, g), q);
}

TEST(Exact, Pushouts) {
  Z4 s;
  const auto sq = pushout(s.m, s.inc, s.inc);
  EXPECT_EQ(s.m.invariant(sq.corner), (std::vector<int>{2, 1}));
  // independent: coker of (2, -2): Z/2 → Z/4 ⊕ Z/4 by enumeration
  EXPECT_EQ(oracle::cokernel_exponents(2, 2, {1}, {2, 2}, mat(2, 1, {2, 2})), (std::vector<int>{2, 1}));
  EXPECT_EQ(s.m.compose(sq.h, sq.mu), s.m.compose(sq.h_prime, sq.mu_prime));
  EXPECT_TRUE(s.m.is_admissible_mono(sq.h_prime));

  const auto along_id = pushout(s.m, s.inc, s.m.identity(s.z2));
  EXPECT_TRUE(is_isomorphism(s.m, along_id.h).has_value());
  const auto along_zero = pushout(s.m, s.inc, s.m.zero(s.z2, s.m.zero_object()));
  EXPECT_EQ(along_zero.corner, cokernel(s.m, s.inc).codomain);
}

TEST(Exact, PushoutMediatorOnRandomCones) {
  CyclicMod m(3, 2);
  Rng rng(31);
  int done = 0;
  while (done < 10) {
    const auto e = m.random_object(rng);
    const auto mu = m.embed_into_injective(e, rng);
    const auto mup = m.random_morphism(e, m.random_object(rng), rng);
    const auto sq = pushout(m, mu, mup);
    // Cones are built as (x∘h, x∘h′) for a random x out of the corner.
    const auto x = m.random_morphism(sq.corner, m.random_object(rng), rng);
    const auto a = m.compose(x, sq.h), b = m.compose(x, sq.h_prime);
    const auto med = pushout_mediator(m, sq, a, b);
    EXPECT_EQ(m.compose(med, sq.h), a);
    EXPECT_EQ(m.compose(med, sq.h_prime), b);
    EXPECT_EQ(med, x);  // uniqueness
    ++done;
  }
}

TEST(Exact, Pullbacks) {
  Z4 s;
  const auto along_id = pullback(s.m, s.quo, s.m.identity(s.z2));
  EXPECT_TRUE(is_isomorphism(s.m, along_id.g).has_value());
  const auto along_zero = pullback(s.m, s.quo, s.m.zero(s.m.zero_object(), s.z2));
  EXPECT_EQ(along_zero.corner, kernel(s.m, s.quo).domain);

  CyclicMod m(2, 3);
  Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    const auto g = m.random_object(rng);
    const auto pi = cokernel(m, m.embed_into_injective(m.random_object(rng)));
    const auto f = m.random_morphism(m.random_object(rng), pi.codomain, rng);
    const auto sq = pullback(m, pi, f);
    EXPECT_TRUE(m.is_admissible_epi(sq.g_prime));
    const auto x = m.random_morphism(g, sq.corner, rng);
    const auto med = pullback_mediator(m, sq, m.compose(sq.g, x), m.compose(sq.g_prime, x));
    EXPECT_EQ(med, x);
  }
}

TEST(Exact, AdmissibleFactorization) {
  LinRep l(2, 2);
  const auto x = l.make_object({2, 0}, {Matrix(0, 2)});
  const auto f = l.make_morphism(x, x, {mat(2, 2, {1, 0, 0, 0}), Matrix(0, 0)});
  const auto fac = admissible_factorization(l, f);
  EXPECT_EQ(fac.mono_part.domain.dims, (std::vector<int>{1, 0}));
  EXPECT_EQ(l.compose(fac.mono_part, fac.epi_part), f);

  const auto z = admissible_factorization(l, l.zero(x, x));
  EXPECT_TRUE(l.is_zero(z.mono_part.domain));

  Z4 s;
  const auto fm = admissible_factorization(s.m, s.inc);
  EXPECT_TRUE(is_isomorphism(s.m, fm.epi_part).has_value());

  Rng rng(33);
  CyclicMod m(3, 2);
  for (int t = 0; t < 50; ++t) {
    const auto a = m.random_morphism(m.random_object(rng), m.random_object(rng), rng);
    const auto af = admissible_factorization(m, a);
    EXPECT_EQ(m.compose(af.mono_part, af.epi_part), a);
    EXPECT_EQ(oracle::image_size(3, a.domain.exponents, a.codomain.exponents, a.data),
              oracle::image_size(3, af.mono_part.domain.exponents, a.codomain.exponents, af.mono_part.data));
  }
}

TEST(Exact, SplitFromSection) {
  CyclicMod m(3, 1);
  const auto z3 = m.make_object({1});
  const auto sum = m.direct_sum(z3, z3);
  const auto canon = biproduct(m, z3, z3);
  const auto w0 = split_from_section(m, KernelCokernelPair<CyclicMod>{canon.mu, canon.pi}, canon.mu_tilde);
  EXPECT_EQ(w0.pi_tilde, canon.pi_tilde);

  // μ = (1,1)ᵀ, π = (1,−1), non-canonical section μ̃ = (1,0).
  const auto mu = m.make_morphism(z3, sum, mat(2, 1, {1, 1}));
  const auto pi = m.make_morphism(sum, z3, mat(1, 2, {1, 2}));
  const auto sec = m.make_morphism(sum, z3, mat(1, 2, {1, 0}));
  const auto w = split_from_section(m, KernelCokernelPair<CyclicMod>{mu, pi}, sec);
  EXPECT_TRUE(witness_holds(m, w));
  EXPECT_EQ(code_of([&] { split_from_section(m, KernelCokernelPair<CyclicMod>{mu, pi}, pi); }),
            ErrorCode::NotASection);

  // E = 0: π̃ is a two-sided inverse of π.
  const auto zp = KernelCokernelPair<CyclicMod>{m.zero(m.zero_object(), z3), m.identity(z3)};
  const auto wz = split_from_section(m, zp, m.zero(z3, m.zero_object()));
  EXPECT_TRUE(is_identity(m, m.compose(wz.pi_tilde, wz.pi)));
}

TEST(Exact, SumWithObject) {
  Z4 s;
  const auto p = sum_with_object(s.m, KernelCokernelPair<CyclicMod>{s.inc, s.quo}, s.z4);
  EXPECT_EQ(p.mono.domain.exponents, (std::vector<int>{1, 2}));
  EXPECT_EQ(p.mono.codomain.exponents, (std::vector<int>{2, 2}));
  EXPECT_EQ(p.epi.codomain, s.z2);
  EXPECT_TRUE(is_kernel_cokernel_pair(s.m, p));
  // ker(epi) recomputed by enumeration has the invariants of Z/2⊕Z/4, and
  // φ has an image of the same size.
  EXPECT_EQ(oracle::kernel_exponents(2, 2, {2, 2}, {1}, p.epi.data), (std::vector<int>{2, 1}));
  EXPECT_EQ(oracle::image_size(2, {1, 2}, {2, 2}, p.mono.data), 8u);

  const auto unit = sum_with_object(s.m, KernelCokernelPair<CyclicMod>{s.inc, s.quo}, s.m.zero_object());
  EXPECT_EQ(unit.mono, s.inc);
  EXPECT_EQ(unit.epi, s.quo);

  LinRep l(3, 2);
  Rng rng(34);
  const auto a = l.interval(1, 2);
  for (int t = 0; t < 20; ++t) {
    const auto pr = pair_from_mono(l, l.embed_into_injective(l.random_object(rng), rng));
    const auto q = sum_with_object(l, pr, a);
    EXPECT_TRUE(l.is_admissible_mono(q.mono));
    EXPECT_TRUE(l.is_admissible_epi(q.epi));
    EXPECT_TRUE(is_kernel_cokernel_pair(l, q));
    EXPECT_TRUE(is_kernel_cokernel_pair(l, sum_with_object_left(l, a, pr)));
  }
}

TEST(Exact, Lift) {
  CyclicMod m(2, 2);
  const auto z2 = m.make_object({1}), z4 = m.make_object({2});
  Rng rng(35);
  const auto f = m.random_morphism(z4, z4, rng);
  EXPECT_EQ(lift(m, f, m.identity(z4)), f);
  const auto inc = m.inject_first(z4, z2);
  EXPECT_TRUE(lift(m, m.zero(z4, z4), inc).data.is_zero());
  const auto g = lift(m, m.identity(z4), inc);
  EXPECT_TRUE(is_identity(m, m.compose(g, inc)));
  const auto two = m.make_morphism(z2, z4, mat(1, 1, {2}));
  EXPECT_EQ(code_of([&] { lift(m, m.identity(z2), two); }), ErrorCode::NotInjectiveTarget);
}

TEST(Exact, LeftInverseIfInjective) {
  CyclicMod m(2, 2);
  const auto z2 = m.make_object({1}), z4 = m.make_object({2});
  EXPECT_FALSE(left_inverse_if_injective(m, m.make_morphism(z2, z4, mat(1, 1, {2}))));
  const auto inc = m.inject_first(z4, z4);
  const auto li = left_inverse_if_injective(m, inc);
  ASSERT_TRUE(li);
  EXPECT_TRUE(is_identity(m, m.compose(*li, inc)));

  LinRep l(2, 2);
  Rng rng(36);
  for (int t = 0; t < 20; ++t) {
    const auto f = l.random_object(rng);
    const auto mu = l.compose(l.random_iso(l.direct_sum(l.interval(1, 2), f), rng), l.inject_first(l.interval(1, 2), f));
    const auto g = left_inverse_if_injective(l, mu);
    ASSERT_TRUE(g);
    EXPECT_TRUE(is_identity(l, l.compose(*g, mu)));
  }
}

TEST(Exact, InjectiveOfSummands) {
  CyclicMod m(2, 2);
  const auto z4 = m.make_object({2});
  const auto w = biproduct(m, z4, z4);
  const auto b = m.make_object({2, 2, 2});
  Rng rng(37);
  const auto f = m.compose(m.random_iso(b, rng), m.make_morphism(w.middle, b, mat(3, 2, {1, 0, 0, 1, 0, 0})));
  const auto ge = lift(m, w.mu_tilde, f), gg = lift(m, w.pi, f);
  const auto g = injective_of_summands(m, w, f, ge, gg);
  EXPECT_TRUE(is_identity(m, m.compose(g, f)));

  const auto id = m.identity(w.middle);
  EXPECT_TRUE(is_identity(m, injective_of_summands(m, w, id, w.mu_tilde, w.pi)));
  EXPECT_EQ(code_of([&] { injective_of_summands(m, w, id, w.pi, w.pi); }), ErrorCode::BadComponentLift);

  const auto wz = biproduct(m, m.zero_object(), z4);
  const auto gz = injective_of_summands(m, wz, m.identity(wz.middle), wz.mu_tilde, wz.pi);
  EXPECT_EQ(gz, m.compose(wz.pi_tilde, wz.pi));
}

TEST(Exact, SplitStructure) {
  SplitEx<CyclicMod> sx(CyclicMod(2, 2));
  const auto z2 = sx.make_object({1}), z4 = sx.make_object({2});
  const auto two = sx.make_morphism(z2, z4, mat(1, 1, {2}));
  EXPECT_TRUE(sx.inner().is_admissible_mono(two));
  EXPECT_FALSE(sx.is_admissible_mono(two));
  EXPECT_TRUE(sx.is_admissible_mono(sx.inject_first(z2, z4)));
  EXPECT_TRUE(sx.is_admissible_epi(sx.project_second(z2, z4)));
  EXPECT_TRUE(sx.is_injective(z2));
  EXPECT_EQ(*injective_dimension(sx, z2).value, 0);
  EXPECT_FALSE(is_kernel_cokernel_pair(sx, KernelCokernelPair<SplitEx<CyclicMod>>{two, sx.make_morphism(z4, z2, mat(1, 1, {1}))}));
}
