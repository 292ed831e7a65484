#ifndef EXACTCAT_SERIALIZE_HPP
#define EXACTCAT_SERIALIZE_HPP

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "exactcat/category.hpp"
#include "exactcat/cyclicmod.hpp"
#include "exactcat/linrep.hpp"
#include "exactcat/schanuel.hpp"
#include "exactcat/splitex.hpp"

namespace exactcat {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "exactcat/1";
inline constexpr const char* kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Scalars and matrices. Integers are written as decimal strings; plain JSON
// integers are accepted on input.

inline Json int_to_json(Int v) { return std::to_string(v); }

inline Int int_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<Int>();
  require(j.is_string(), ErrorCode::SchemaError, what + ": expected an integer");
  const std::string& s = j.get_ref<const std::string&>();
  Int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  require(!s.empty() && ec == std::errc() && ptr == last, ErrorCode::SchemaError, what + ": bad integer '" + s + "'");
  return v;
}

inline Json ints_to_json(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(int_to_json(x));
  return out;
}

inline std::vector<int> ints_from_json(const Json& j, const std::string& what) {
  require(j.is_array(), ErrorCode::SchemaError, what + ": expected an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(static_cast<int>(int_from_json(x, what)));
  return out;
}

inline Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

/// Shapes are dictated by the surrounding objects, so a 0-row matrix needs
/// no column count on disk.
inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  require(j.is_array() && j.size() == rows, ErrorCode::SchemaError, what + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols, ErrorCode::SchemaError,
            what + ": expected " + std::to_string(cols) + " columns");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(j[i][c], what);
  }
  return m;
}

inline const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::SchemaError, std::string("missing field '") + key + "'");
  return j.at(key);
}

// ---------------------------------------------------------------------------
// Per-model codecs. Wrappers derive from their inner model and reuse these.

inline Json params_to_json(const LinRep& m) { return {{"p", int_to_json(m.p())}, {"n", int_to_json(m.n())}}; }
inline Json params_to_json(const CyclicMod& m) { return {{"p", int_to_json(m.p())}, {"k", int_to_json(m.k())}}; }

inline Json object_to_json(const LinRep&, const LinRepObject& x) {
  Json maps = Json::array();
  for (const auto& f : x.maps) maps.push_back(matrix_to_json(f));
  return {{"dims", ints_to_json(x.dims)}, {"maps", std::move(maps)}};
}

inline Json object_to_json(const CyclicMod&, const CyclicModObject& x) { return {{"exponents", ints_to_json(x.exponents)}}; }

/// Shape errors are schema errors; everything the model rejects afterwards
/// surfaces as an exactcat::Error from validation.
inline LinRepObject object_from_json(const LinRep& m, const Json& j) {
  LinRepObject x{m.p(), m.n(), ints_from_json(field(j, "dims"), "dims"), {}};
  require(x.dims.size() == static_cast<std::size_t>(m.n()), ErrorCode::SchemaError, "dims: wrong number of vertices");
  for (int d : x.dims) require(d >= 0, ErrorCode::SchemaError, "dims: negative dimension");
  const Json& maps = field(j, "maps");
  require(maps.is_array() && maps.size() + 1 == x.dims.size(), ErrorCode::SchemaError, "maps: expected n-1 matrices");
  for (std::size_t i = 0; i + 1 < x.dims.size(); ++i) x.maps.push_back(matrix_from_json(maps[i], x.dims[i + 1], x.dims[i], "maps"));
  m.validate(x);
  return x;
}

inline CyclicModObject object_from_json(const CyclicMod& m, const Json& j) {
  CyclicModObject x{m.p(), m.k(), ints_from_json(field(j, "exponents"), "exponents")};
  m.validate(x);
  return x;
}

inline Json data_to_json(const LinRep&, const std::vector<Matrix>& d) {
  Json out = Json::array();
  for (const auto& a : d) out.push_back(matrix_to_json(a));
  return out;
}

inline Json data_to_json(const CyclicMod&, const Matrix& d) { return matrix_to_json(d); }

inline std::vector<Matrix> data_from_json(const LinRep&, const Json& j, const LinRepObject& dom, const LinRepObject& cod) {
  require(j.is_array() && j.size() == dom.dims.size(), ErrorCode::SchemaError, "data: expected one matrix per vertex");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < dom.dims.size(); ++i) out.push_back(matrix_from_json(j[i], cod.dims[i], dom.dims[i], "data"));
  return out;
}

inline Matrix data_from_json(const CyclicMod&, const Json& j, const CyclicModObject& dom, const CyclicModObject& cod) {
  return matrix_from_json(j, cod.exponents.size(), dom.exponents.size(), "data");
}

// ---------------------------------------------------------------------------
// Generic pieces.

template <AdditiveModel M>
Json model_header(const M& m) {
  return {{"schema", kSchema}, {"model", m.name()}, {"params", params_to_json(m)}};
}

template <AdditiveModel M>
Json morphism_to_json(const M& m, const MorphismOf<M>& f) {
  return {{"domain", object_to_json(m, f.domain)}, {"codomain", object_to_json(m, f.codomain)},
          {"data", data_to_json(m, f.data)}};
}

/// Parses without validating the morphism data itself.
template <AdditiveModel M>
MorphismOf<M> morphism_from_json_unchecked(const M& m, const Json& j) {
  auto dom = object_from_json(m, field(j, "domain"));
  auto cod = object_from_json(m, field(j, "codomain"));
  auto data = data_from_json(m, field(j, "data"), dom, cod);
  return {std::move(dom), std::move(cod), std::move(data)};
}

template <AdditiveModel M>
MorphismOf<M> morphism_from_json(const M& m, const Json& j) {
  auto f = morphism_from_json_unchecked(m, j);
  m.validate(f);
  return f;
}

inline void check_schema(const Json& j) {
  require(j.is_object() && j.contains("schema") && j.at("schema") == kSchema, ErrorCode::SchemaError,
          std::string("expected schema '") + kSchema + "'");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::SchemaError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::SchemaError, "cannot write " + path);
  out << dump(j);
}

/// Builds the model named in a file header and hands it to `f`.
template <class F>
decltype(auto) with_model(const std::string& name, const Json& params, F&& f) {
  auto param = [&](const char* key) { return int_from_json(field(params, key), std::string("params.") + key); };
  if (name == "linrep") return f(LinRep(param("p"), static_cast<int>(param("n"))));
  if (name == "cyclicmod") return f(CyclicMod(param("p"), static_cast<int>(param("k"))));
  if (name == "splitex:linrep") return f(SplitEx<LinRep>(LinRep(param("p"), static_cast<int>(param("n")))));
  if (name == "splitex:cyclicmod") return f(SplitEx<CyclicMod>(CyclicMod(param("p"), static_cast<int>(param("k")))));
  fail(ErrorCode::SchemaError, "unknown model '" + name + "'");
}

template <class F>
decltype(auto) with_model(const Json& header, F&& f) {
  check_schema(header);
  const Json& name = field(header, "model");
  require(name.is_string(), ErrorCode::SchemaError, "model: expected a string");
  return with_model(name.get<std::string>(), field(header, "params"), std::forward<F>(f));
}

template <AdditiveModel M>
void require_same_model(const M& m, const Json& j) {
  require(j.at("model") == m.name() && j.at("params") == params_to_json(m), ErrorCode::ModelMismatch,
          "file describes a different model");
}

// ---------------------------------------------------------------------------
// File formats.

template <AdditiveModel M>
Json object_file(const M& m, const ObjectOf<M>& x) {
  Json j = model_header(m);
  j["object"] = object_to_json(m, x);
  return j;
}

template <AdditiveModel M>
Json pair_file(const M& m, const KernelCokernelPair<M>& pair) {
  Json j = model_header(m);
  j["mono"] = morphism_to_json(m, pair.mono);
  j["epi"] = morphism_to_json(m, pair.epi);
  return j;
}

template <AdditiveModel M>
KernelCokernelPair<M> pair_from_json(const M& m, const Json& j) {
  return {morphism_from_json(m, field(j, "mono")), morphism_from_json(m, field(j, "epi"))};
}

template <AdditiveModel M>
Json resolution_file(const M& m, const Resolution<M>& r) {
  Json j = model_header(m);
  j["depth"] = int_to_json(static_cast<Int>(r.depth()));
  j["base"] = object_to_json(m, r.base);
  Json inj = Json::array(), syz = Json::array(), monos = Json::array(), epis = Json::array();
  for (const auto& x : r.injectives) inj.push_back(object_to_json(m, x));
  for (const auto& x : r.syzygies) syz.push_back(object_to_json(m, x));
  for (const auto& f : r.monos) monos.push_back(morphism_to_json(m, f));
  for (const auto& f : r.epis) epis.push_back(morphism_to_json(m, f));
  j["injectives"] = std::move(inj);
  j["syzygies"] = std::move(syz);
  j["monos"] = std::move(monos);
  j["epis"] = std::move(epis);
  j["base_iso"] = {{"forward", morphism_to_json(m, r.base_iso.forward)},
                   {"backward", morphism_to_json(m, r.base_iso.backward)}};
  return j;
}

template <AdditiveModel M>
Resolution<M> resolution_from_json(const M& m, const Json& j) {
  Resolution<M> r{object_from_json(m, field(j, "base")), {}, {}, {}, {}, identity_certificate(m, m.zero_object())};
  for (const auto& x : field(j, "injectives")) r.injectives.push_back(object_from_json(m, x));
  for (const auto& x : field(j, "syzygies")) r.syzygies.push_back(object_from_json(m, x));
  for (const auto& f : field(j, "monos")) r.monos.push_back(morphism_from_json(m, f));
  for (const auto& f : field(j, "epis")) r.epis.push_back(morphism_from_json(m, f));
  const Json& b = field(j, "base_iso");
  r.base_iso = {morphism_from_json(m, field(b, "forward")), morphism_from_json(m, field(b, "backward"))};
  const auto depth = static_cast<std::size_t>(int_from_json(field(j, "depth"), "depth"));
  require(r.injectives.size() == depth && r.syzygies.size() == depth + 1 && r.monos.size() == depth &&
              r.epis.size() == depth,
          ErrorCode::SchemaError, "resolution: ladder lengths disagree with depth");
  return r;
}

struct Provenance {
  std::string command;
  std::optional<std::uint64_t> seed;
};

template <AdditiveModel M>
Json certificate_file(const M& m, const IsoCertificate<M>& c, const Provenance& prov) {
  Json j = model_header(m);
  j["domain"] = object_to_json(m, c.forward.domain);
  j["codomain"] = object_to_json(m, c.forward.codomain);
  j["forward"] = data_to_json(m, c.forward.data);
  j["backward"] = data_to_json(m, c.backward.data);
  j["provenance"] = {{"command", prov.command},
                     {"seed", prov.seed ? Json(std::to_string(*prov.seed)) : Json(nullptr)},
                     {"tool_version", kToolVersion}};
  return j;
}

/// Reads the two arrows of a certificate. Shapes are checked here; whether
/// the data are valid morphisms is left to verify_certificate.
template <AdditiveModel M>
IsoCertificate<M> certificate_from_json(const M& m, const Json& j) {
  auto dom = object_from_json(m, field(j, "domain"));
  auto cod = object_from_json(m, field(j, "codomain"));
  auto fwd = data_from_json(m, field(j, "forward"), dom, cod);
  auto bwd = data_from_json(m, field(j, "backward"), cod, dom);
  return {{dom, cod, std::move(fwd)}, {cod, dom, std::move(bwd)}};
}

}  // namespace exactcat

#endif  // EXACTCAT_SERIALIZE_HPP
