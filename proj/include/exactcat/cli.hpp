#ifndef EXACTCAT_CLI_HPP
#define EXACTCAT_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "exactcat/axioms.hpp"
#include "exactcat/schanuel.hpp"
#include "exactcat/serialize.hpp"

namespace exactcat::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kSchema = 2;
inline constexpr int kInvalid = 3;
inline constexpr int kNotInjectiveMiddle = 4;
inline constexpr int kBaseMismatch = 5;
inline constexpr int kVerification = 6;

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::SchemaError: return kSchema;
    case ErrorCode::NotInjectiveMiddle: return kNotInjectiveMiddle;
    case ErrorCode::BaseMismatch: return kBaseMismatch;
    case ErrorCode::InternalCheckFailed: return kVerification;
    default: return kInvalid;
  }
}

inline std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("EXACTCAT_SEED");
  if (!s || !*s) return std::nullopt;
  return static_cast<std::uint64_t>(int_from_json(Json(std::string(s)), "EXACTCAT_SEED"));
}

inline int cmd_resolve(const std::string& object_path, std::size_t depth, const std::string& out_path,
                       std::optional<std::uint64_t> seed) {
  const Json spec = read_json_file(object_path);
  return with_model(spec, [&](const auto& m) {
    const auto e = object_from_json(m, field(spec, "object"));
    std::optional<Rng> rng;
    if (seed) rng.emplace(*seed);
    const auto r = rng ? resolution(m, e, depth, *rng) : resolution(m, e, depth);
    write_json_file(out_path, resolution_file(m, r));
    return kOk;
  });
}

inline int cmd_dim(const std::string& object_path, int budget, std::optional<std::uint64_t> seed, std::ostream& out) {
  const Json spec = read_json_file(object_path);
  return with_model(spec, [&](const auto& m) {
    const auto e = object_from_json(m, field(spec, "object"));
    std::optional<Rng> rng;
    if (seed) rng.emplace(*seed);
    const auto d = rng ? injective_dimension(m, e, budget, *rng) : injective_dimension(m, e, budget);
    if (d.exceeds())
      out << "exceeds " << budget << "\n";
    else
      out << *d.value << "\n";
    return kOk;
  });
}

inline int cmd_schanuel(const std::string& pair1_path, const std::string& pair2_path, const std::string& out_path,
                        std::ostream& err) {
  const Json j1 = read_json_file(pair1_path);
  const Json j2 = read_json_file(pair2_path);
  return with_model(j1, [&](const auto& m) {
    using M = std::decay_t<decltype(m)>;
    check_schema(j2);
    require_same_model(m, j2);
    const auto pair1 = pair_from_json(m, j1);
    const auto pair2 = pair_from_json(m, j2);
    require(m.is_injective(pair1.mono.codomain) && m.is_injective(pair2.mono.codomain), ErrorCode::NotInjectiveMiddle,
            "middle object is not injective");
    require(pair1.mono.domain == pair2.mono.domain, ErrorCode::BaseMismatch, "the pairs have different kernels");
    for (const auto* p : {&pair1, &pair2})
      require(is_kernel_cokernel_pair(m, *p), ErrorCode::InvalidMorphism, "input is not a kernel-cokernel pair");
    const IsoCertificate<M> cert = schanuel_isomorphism(m, pair1, pair2);
    if (!verify_certificate(m, cert)) {
      err << "certificate failed verification\n";
      return kVerification;
    }
    write_json_file(out_path, certificate_file(m, cert, Provenance{"schanuel", std::nullopt}));
    return kOk;
  });
}

/// 0 when both composites are identities, 1 when they are not or the data
/// are not morphisms, 2 on schema errors.
inline int check_certificate(const Json& j, std::ostream& err) {
  try {
    return with_model(j, [&](const auto& m) {
      const auto cert = certificate_from_json(m, j);
      if (verify_certificate(m, cert)) return kOk;
      err << "certificate does not verify\n";
      return kFailed;
    });
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::SchemaError ? kSchema : kFailed;
  }
}

inline int cmd_check_cert(const std::string& path, std::ostream& err) {
  Json j;
  try {
    j = read_json_file(path);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kSchema;
  }
  return check_certificate(j, err);
}

struct AxiomsOptions {
  std::string model;
  Int p = 2;
  Int n = 3;
  Int k = 2;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::string mutation = "none";
};

inline Json model_params(const AxiomsOptions& o) {
  if (o.model == "linrep" || o.model == "splitex:linrep") return {{"p", int_to_json(o.p)}, {"n", int_to_json(o.n)}};
  return {{"p", int_to_json(o.p)}, {"k", int_to_json(o.k)}};
}

inline int cmd_axioms(const AxiomsOptions& o, std::ostream& out, std::ostream& err) {
  const Mutation mutation = parse_mutation(o.mutation);
  return with_model(o.model, model_params(o), [&](const auto& inner) {
    using Inner = std::decay_t<decltype(inner)>;
    const Mutated<Inner> m(inner, mutation);
    const AxiomReport rep = check_exact_axioms(m, o.samples, o.seed, mutation);
    out << dump(report_to_json(rep));
    if (rep.passed()) return kOk;
    for (const auto& a : rep.axioms)
      if (!a.passed) err << "axiom '" << a.name << "' failed after " << a.checked << " samples\n";
    return kFailed;
  });
}

/// Entry point behind tools/exactcat.cpp; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-category kernel: injective resolutions and Schanuel certificates", "exactcat"};
  app.require_subcommand(1);

  std::string object_path, out_path, pair1, pair2, cert_path;
  std::size_t depth = 0;
  int budget = 16;
  std::optional<std::uint64_t> seed;
  AxiomsOptions ax;

  auto* resolve = app.add_subcommand("resolve", "write an injective resolution as JSON");
  resolve->add_option("--object", object_path, "object spec file")->required();
  resolve->add_option("--depth", depth, "number of injective stages")->required();
  resolve->add_option("--out", out_path, "output file")->required();
  resolve->add_option("--seed", seed, "use randomized embeddings with this seed");

  auto* dim = app.add_subcommand("dim", "print the injective dimension or 'exceeds B'");
  dim->add_option("--object", object_path, "object spec file")->required();
  dim->add_option("--budget", budget, "largest dimension tried")->check(CLI::PositiveNumber);
  dim->add_option("--seed", seed, "use randomized embeddings with this seed");

  auto* sch = app.add_subcommand("schanuel", "write the certificate I⊕F′ ≅ I′⊕F for two pairs");
  sch->add_option("--pair1", pair1, "first pair file")->required();
  sch->add_option("--pair2", pair2, "second pair file")->required();
  sch->add_option("--out", out_path, "certificate file")->required();

  auto* chk = app.add_subcommand("check-cert", "re-verify a certificate file");
  chk->add_option("--cert", cert_path, "certificate file")->required();

  auto* axc = app.add_subcommand("axioms", "run the exact-structure axiom suite");
  axc->add_option("--model", ax.model, "linrep | cyclicmod | splitex:linrep | splitex:cyclicmod")->required();
  axc->add_option("--p", ax.p, "prime");
  axc->add_option("--n", ax.n, "quiver length (linrep)");
  axc->add_option("--k", ax.k, "chain length (cyclicmod)");
  axc->add_option("--samples", ax.samples, "samples per axiom");
  axc->add_option("--seed", seed, "sampling seed (falls back to EXACTCAT_SEED)");
  axc->add_option("--mutate", ax.mutation, "mutation id");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSchema;
  }

  try {
    if (*resolve) return cmd_resolve(object_path, depth, out_path, seed);
    if (*dim) return cmd_dim(object_path, budget, seed, out);
    if (*sch) return cmd_schanuel(pair1, pair2, out_path, err);
    if (*chk) return cmd_check_cert(cert_path, err);
    if (!seed) seed = env_seed();
    if (!seed) {
      err << "axioms: --seed is required (or set EXACTCAT_SEED)\n";
      return kSchema;
    }
    ax.seed = *seed;
    return cmd_axioms(ax, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (*axc) {
      const bool ran = e.code() == ErrorCode::GeneratorExhausted || e.code() == ErrorCode::InternalCheckFailed;
      return ran ? kFailed : kSchema;
    }
    return exit_code_for(e);
  }
}

}  // namespace exactcat::cli

#endif  // EXACTCAT_CLI_HPP
