#ifndef EXACTCAT_AXIOMS_HPP
#define EXACTCAT_AXIOMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exactcat/category.hpp"
#include "exactcat/exact.hpp"
#include "exactcat/random.hpp"
#include "exactcat/serialize.hpp"

namespace exactcat {

// ---------------------------------------------------------------------------
// Deliberately broken exact structures, used as negative controls.

enum class Mutation { None, DropCompositionClosure, AdmitNonkernelMono, BreakPushoutAdmissibility };

inline std::string to_string(Mutation mu) {
  switch (mu) {
    case Mutation::None: return "none";
    case Mutation::DropCompositionClosure: return "drop-composition-closure";
    case Mutation::AdmitNonkernelMono: return "admit-nonkernel-mono";
    case Mutation::BreakPushoutAdmissibility: return "break-pushout-admissibility";
  }
  return "none";
}

inline Mutation parse_mutation(const std::string& id) {
  for (Mutation mu : {Mutation::None, Mutation::DropCompositionClosure, Mutation::AdmitNonkernelMono,
                      Mutation::BreakPushoutAdmissibility})
    if (to_string(mu) == id) return mu;
  fail(ErrorCode::UnknownMutation, "unknown mutation '" + id + "'");
}

/// The inner model with its admissibility predicates replaced:
///  drop-composition-closure: admissible monos may raise length by at most 1;
///  admit-nonkernel-mono: every mono is admissible, but only split epis are;
///  break-pushout-admissibility: admissible monos must have injective domain
///    (or be isos), admissible epis injective kernel (or zero target).
template <AdditiveModel Inner>
class Mutated : public Inner {
 public:
  using Object = typename Inner::Object;
  using Data = typename Inner::Data;
  using Morphism = typename Inner::Morphism;

  Mutated(Inner inner, Mutation mutation) : Inner(std::move(inner)), mutation_(mutation) {}

  Mutation mutation() const { return mutation_; }

  bool is_admissible_mono(const Morphism& f) const {
    switch (mutation_) {
      case Mutation::None: return Inner::is_admissible_mono(f);
      case Mutation::DropCompositionClosure:
        return Inner::is_admissible_mono(f) && this->length(f.codomain) - this->length(f.domain) <= 1;
      case Mutation::AdmitNonkernelMono: return this->is_mono(f);
      case Mutation::BreakPushoutAdmissibility:
        return Inner::is_admissible_mono(f) && (this->is_injective(f.domain) || this->is_epi(f));
    }
    return false;
  }

  bool is_admissible_epi(const Morphism& f) const {
    switch (mutation_) {
      case Mutation::None: return Inner::is_admissible_epi(f);
      case Mutation::DropCompositionClosure: return Inner::is_admissible_epi(f);
      case Mutation::AdmitNonkernelMono: return this->solve_pre(f, this->identity(f.codomain)).has_value();
      case Mutation::BreakPushoutAdmissibility:
        return Inner::is_admissible_epi(f) && (this->is_zero(f.codomain) || this->is_injective(this->kernel(f).domain));
    }
    return false;
  }

 private:
  Mutation mutation_;
};

// ---------------------------------------------------------------------------
// Single checks. Each takes only serializable morphisms so a failure can be
// written out and replayed.

namespace axiom_checks {

template <AdditiveModel M>
bool identity(const M& m, const MorphismOf<M>& id) {
  return is_identity(m, id) && m.is_admissible_mono(id) && m.is_admissible_epi(id);
}

template <AdditiveModel M>
bool mono_composition(const M& m, const MorphismOf<M>& f1, const MorphismOf<M>& f2) {
  return !(m.is_admissible_mono(f1) && m.is_admissible_mono(f2)) || m.is_admissible_mono(compose(m, f2, f1));
}

template <AdditiveModel M>
bool epi_composition(const M& m, const MorphismOf<M>& f1, const MorphismOf<M>& f2) {
  return !(m.is_admissible_epi(f1) && m.is_admissible_epi(f2)) || m.is_admissible_epi(compose(m, f2, f1));
}

template <AdditiveModel M>
bool mono_cokernel(const M& m, const MorphismOf<M>& mu) {
  return !m.is_admissible_mono(mu) || is_kernel_cokernel_pair(m, KernelCokernelPair<M>{mu, m.cokernel(mu)});
}

template <AdditiveModel M>
bool epi_kernel(const M& m, const MorphismOf<M>& pi) {
  return !m.is_admissible_epi(pi) || is_kernel_cokernel_pair(m, KernelCokernelPair<M>{m.kernel(pi), pi});
}

template <AdditiveModel M>
bool pushout(const M& m, const MorphismOf<M>& mu, const MorphismOf<M>& f) {
  if (!m.is_admissible_mono(mu)) return true;
  const auto sq = exactcat::pushout(m, mu, f);
  return m.compose(sq.h, mu) == m.compose(sq.h_prime, f) && m.is_admissible_mono(sq.h_prime);
}

template <AdditiveModel M>
bool pullback(const M& m, const MorphismOf<M>& pi, const MorphismOf<M>& f) {
  if (!m.is_admissible_epi(pi)) return true;
  const auto sq = exactcat::pullback(m, pi, f);
  return m.compose(pi, sq.g) == m.compose(f, sq.g_prime) && m.is_admissible_epi(sq.g_prime);
}

/// pre: X′ → X and post: Y → Y′ are isos around f: X → Y.
template <AdditiveModel M>
bool mono_iso_invariance(const M& m, const MorphismOf<M>& f, const MorphismOf<M>& pre, const MorphismOf<M>& post) {
  if (!m.is_admissible_mono(f)) return true;
  return m.is_admissible_mono(compose(m, post, f, pre));
}

template <AdditiveModel M>
bool epi_iso_invariance(const M& m, const MorphismOf<M>& f, const MorphismOf<M>& pre, const MorphismOf<M>& post) {
  if (!m.is_admissible_epi(f)) return true;
  return m.is_admissible_epi(compose(m, post, f, pre));
}

}  // namespace axiom_checks

template <AdditiveModel M>
bool run_check(const M& m, const std::string& kind, const std::vector<MorphismOf<M>>& fs) {
  namespace ac = axiom_checks;
  auto need = [&](std::size_t k) {
    require(fs.size() == k, ErrorCode::SchemaError, "counterexample '" + kind + "' needs " + std::to_string(k) + " morphisms");
  };
  if (kind == "identity") return need(1), ac::identity(m, fs[0]);
  if (kind == "mono-composition") return need(2), ac::mono_composition(m, fs[0], fs[1]);
  if (kind == "epi-composition") return need(2), ac::epi_composition(m, fs[0], fs[1]);
  if (kind == "mono-cokernel") return need(1), ac::mono_cokernel(m, fs[0]);
  if (kind == "epi-kernel") return need(1), ac::epi_kernel(m, fs[0]);
  if (kind == "pushout") return need(2), ac::pushout(m, fs[0], fs[1]);
  if (kind == "pullback") return need(2), ac::pullback(m, fs[0], fs[1]);
  if (kind == "mono-iso-invariance") return need(3), ac::mono_iso_invariance(m, fs[0], fs[1], fs[2]);
  if (kind == "epi-iso-invariance") return need(3), ac::epi_iso_invariance(m, fs[0], fs[1], fs[2]);
  fail(ErrorCode::SchemaError, "unknown check '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Samplers.

/// Seeded generators of admissible arrows, built from the model's random
/// objects and morphisms and filtered through its admissibility predicates.
template <AdditiveModel M>
class ArrowSampler {
 public:
  static constexpr int kAttempts = 200;

  ArrowSampler(const M& m, Rng& rng) : m_(m), rng_(rng) {}

  ObjectOf<M> object() { return m_.random_object(rng_); }

  /// X → X′, together with its inverse.
  IsoCertificate<M> iso(const ObjectOf<M>& x) {
    const auto f = m_.random_iso(x, rng_);
    auto c = is_isomorphism(m_, f);
    require(c.has_value(), ErrorCode::InternalCheckFailed, "random_iso returned a non-isomorphism");
    return *c;
  }

  /// Candidate monos out of x: embeddings, split inclusions and isos.
  MorphismOf<M> mono_from(const ObjectOf<M>& x) {
    return filtered([&] {
      switch (rng_.below(3)) {
        case 0: return m_.embed_into_injective(x, rng_);
        case 1: return split_inclusion(x);
        default: return m_.random_iso(x, rng_);
      }
    }, true);
  }

  /// Candidate monos with arbitrary domain: kernels and images of random
  /// maps, split inclusions (some out of injectives), embeddings, and isos.
  MorphismOf<M> mono() {
    return filtered([&] {
      const auto x = object();
      switch (rng_.below(6)) {
        case 0: return m_.kernel(m_.random_morphism(x, object(), rng_));
        case 5: return m_.kernel(m_.cokernel(m_.random_morphism(object(), x, rng_)));
        case 1: return m_.embed_into_injective(x, rng_);
        case 2: return split_inclusion(x);
        case 3: return split_inclusion(m_.embed_into_injective(x, rng_).codomain);
        default: return m_.random_iso(x, rng_);
      }
    }, true);
  }

  /// Candidate epis out of x: cokernels of random maps into x, taken after
  /// a random automorphism of x, and isos.
  MorphismOf<M> epi_from(const ObjectOf<M>& x) {
    return filtered([&] {
      const auto twist = m_.random_iso(x, rng_);
      if (rng_.chance(1, 3)) return twist;
      const auto c = m_.cokernel(m_.random_morphism(object(), twist.codomain, rng_));
      return m_.compose(c, twist);
    }, false);
  }

  /// Candidate epis with arbitrary codomain, dual to mono().
  MorphismOf<M> epi() {
    return filtered([&] {
      const auto x = object();
      switch (rng_.below(6)) {
        case 0: return m_.cokernel(m_.random_morphism(object(), x, rng_));
        case 5: return m_.cokernel(m_.kernel(m_.random_morphism(x, object(), rng_)));
        case 1: return m_.cokernel(m_.embed_into_injective(x, rng_));
        case 2: return split_projection(x);
        case 3: return m_.cokernel(split_inclusion(m_.embed_into_injective(x, rng_).codomain));
        default: return m_.random_iso(x, rng_);
      }
    }, false);
  }

  MorphismOf<M> morphism(const ObjectOf<M>& x, const ObjectOf<M>& y) { return m_.random_morphism(x, y, rng_); }

 private:
  /// x → x⊕s followed by a random automorphism.
  MorphismOf<M> split_inclusion(const ObjectOf<M>& x) {
    const auto s = rng_.chance(1, 2) ? m_.random_simple(rng_) : object();
    return m_.compose(m_.random_iso(m_.direct_sum(x, s), rng_), m_.inject_first(x, s));
  }

  /// A random automorphism of x⊕s followed by (id, r): x⊕s → x.
  MorphismOf<M> split_projection(const ObjectOf<M>& x) {
    const auto s = object();
    const auto proj = m_.add(m_.project_first(x, s), m_.compose(m_.random_morphism(s, x, rng_), m_.project_second(x, s)));
    return m_.compose(proj, iso(m_.direct_sum(x, s)).backward);
  }

  template <class Gen>
  MorphismOf<M> filtered(Gen gen, bool mono) {
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      auto f = gen();
      if (mono ? m_.is_admissible_mono(f) : m_.is_admissible_epi(f)) return f;
    }
    fail(ErrorCode::GeneratorExhausted, std::string("no admissible ") + (mono ? "mono" : "epi") + " found");
  }

  const M& m_;
  Rng& rng_;
};

// ---------------------------------------------------------------------------
// The suite.

struct AxiomOutcome {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::optional<Json> counterexample;  // {check, morphisms}
};

struct AxiomReport {
  Json model;
  std::string mutation = "none";
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<AxiomOutcome> axioms;

  bool passed() const {
    for (const auto& a : axioms)
      if (!a.passed) return false;
    return true;
  }
};

inline Json report_to_json(const AxiomReport& r) {
  Json j = r.model;
  j["mutation"] = r.mutation;
  j["seed"] = std::to_string(r.seed);
  j["samples"] = int_to_json(static_cast<Int>(r.samples));
  Json axioms = Json::array();
  for (const auto& a : r.axioms) {
    Json e = {{"name", a.name}, {"passed", a.passed}, {"checked", int_to_json(static_cast<Int>(a.checked))}};
    if (a.counterexample) e["counterexample"] = *a.counterexample;
    axioms.push_back(std::move(e));
  }
  j["axioms"] = std::move(axioms);
  j["passed"] = r.passed();
  return j;
}

/// Samples `samples` instances for each of the five axioms:
///  (a) identities, (b) composition closure, (c) kernel-cokernel pairing,
///  (d) pushout/pullback admissibility, (e) isomorphism invariance.
/// Each axiom stops at its first failure and records it.
template <AdditiveModel M>
AxiomReport check_exact_axioms(const M& m, std::size_t samples, std::uint64_t seed,
                               Mutation mutation = Mutation::None) {
  AxiomReport rep{model_header(m), to_string(mutation), seed, samples, {}};
  Rng root(seed);

  auto run = [&](const std::string& name, auto&& one) {
    AxiomOutcome out{name};
    Rng rng = root.fork();
    ArrowSampler<M> s(m, rng);
    for (std::size_t i = 0; i < samples && out.passed; ++i) {
      std::pair<std::string, std::vector<MorphismOf<M>>> inst = one(s, rng);
      ++out.checked;
      if (!run_check(m, inst.first, inst.second)) {
        out.passed = false;
        Json fs = Json::array();
        for (const auto& f : inst.second) fs.push_back(morphism_to_json(m, f));
        out.counterexample = Json{{"check", inst.first}, {"morphisms", std::move(fs)}};
      }
    }
    rep.axioms.push_back(std::move(out));
  };
  using Inst = std::pair<std::string, std::vector<MorphismOf<M>>>;

  run("identities", [&](ArrowSampler<M>& s, Rng&) { return Inst{"identity", {m.identity(s.object())}}; });
  run("composition", [&](ArrowSampler<M>& s, Rng& rng) {
    if (rng.chance(1, 2)) {
      const auto f1 = s.mono();
      return Inst{"mono-composition", {f1, s.mono_from(f1.codomain)}};
    }
    const auto f1 = s.epi();
    return Inst{"epi-composition", {f1, s.epi_from(f1.codomain)}};
  });
  run("kernel-cokernel", [&](ArrowSampler<M>& s, Rng& rng) {
    if (rng.chance(1, 2)) return Inst{"mono-cokernel", {s.mono()}};
    return Inst{"epi-kernel", {s.epi()}};
  });
  run("pushout-pullback", [&](ArrowSampler<M>& s, Rng& rng) {
    if (rng.chance(1, 2)) {
      const auto mu = s.mono();
      return Inst{"pushout", {mu, s.morphism(mu.domain, s.object())}};
    }
    const auto pi = s.epi();
    return Inst{"pullback", {pi, s.morphism(s.object(), pi.codomain)}};
  });
  run("isomorphism-invariance", [&](ArrowSampler<M>& s, Rng& rng) {
    const bool mono = rng.chance(1, 2);
    const auto f = mono ? s.mono() : s.epi();
    const auto pre = s.iso(f.domain).backward;
    const auto post = s.iso(f.codomain).forward;
    return Inst{mono ? "mono-iso-invariance" : "epi-iso-invariance", {f, pre, post}};
  });
  return rep;
}

/// Re-runs a recorded counterexample; true when it still fails.
template <AdditiveModel M>
bool replay_counterexample(const M& m, const Json& cx) {
  std::vector<MorphismOf<M>> fs;
  for (const auto& f : field(cx, "morphisms")) fs.push_back(morphism_from_json(m, f));
  const Json& kind = field(cx, "check");
  require(kind.is_string(), ErrorCode::SchemaError, "check: expected a string");
  return !run_check(m, kind.get<std::string>(), fs);
}

}  // namespace exactcat

#endif  // EXACTCAT_AXIOMS_HPP
