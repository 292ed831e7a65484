#ifndef EXACTCAT_SPLITEX_HPP
#define EXACTCAT_SPLITEX_HPP

#include <string>
#include <utility>

#include "exactcat/category.hpp"

namespace exactcat {

/// The split exact structure on an additive model: admissible monos and epis
/// are exactly the split ones. Everything else is inherited.
template <AdditiveModel Inner>
class SplitEx : public Inner {
 public:
  using Object = typename Inner::Object;
  using Data = typename Inner::Data;
  using Morphism = typename Inner::Morphism;

  explicit SplitEx(Inner inner) : Inner(std::move(inner)) {}

  const Inner& inner() const { return *this; }

  std::string name() const { return "splitex:" + Inner::name(); }
  std::string id() const { return "splitex:" + Inner::id(); }

  bool is_admissible_mono(const Morphism& f) const {
    return this->solve_post(f, this->identity(f.domain)).has_value();
  }

  bool is_admissible_epi(const Morphism& f) const {
    return this->solve_pre(f, this->identity(f.codomain)).has_value();
  }

  /// Every admissible mono has a left inverse, so every object is injective.
  bool is_injective(const Object&) const { return true; }

  Morphism embed_into_injective(const Object& x) const { return this->identity(x); }
  Morphism embed_into_injective(const Object& x, Rng& rng) const { return this->random_iso(x, rng); }
};

}  // namespace exactcat

#endif  // EXACTCAT_SPLITEX_HPP
