#include "tcq/document.hpp"

#include <algorithm>
#include <regex>

#include "tcq/error.hpp"

namespace tcq::doc {

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, (where.empty() ? "/" : where) + ": " + what);
}

std::string at(const std::string& where, std::size_t i) {
  return where + "/" + std::to_string(i);
}

std::string at(const std::string& where, const char* key) {
  return where + "/" + key;
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(at(where, key), "missing field");
  return *it;
}

void only_fields(const Json& j, std::initializer_list<const char*> keys,
                 const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(),
                     [&](const char* k) { return it.key() == k; }))
      parse_error(where + "/" + it.key(), "unknown field");
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_error(where, "expected an array");
  return j;
}

Int integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned())
    return Int(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    static const std::regex decimal("-?[0-9]+");
    const auto& s = j.get_ref<const std::string&>();
    if (!std::regex_match(s, decimal))
      parse_error(where, "\"" + s + "\" is not a decimal integer");
    return Int(s);
  }
  parse_error(where, "expected an integer");
}

std::size_t count(const Json& j, const std::string& where) {
  const Int v = integer(j, where);
  if (v < 0 || !v.fits_ulong_p()) parse_error(where, "expected a count");
  return v.get_ui();
}

std::vector<IntVector> vectors(const Json& j, std::size_t length,
                               const std::string& where) {
  std::vector<IntVector> out;
  const auto& a = array(j, where);
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(vector_from_json(a[i], length, at(where, i)));
  return out;
}

Json vector_list(const std::vector<IntVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json index_list(const std::vector<std::size_t>& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(x);
  return out;
}

Json integer_json(const Int& x) { return x.get_str(); }

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed document: ") + e.what());
  }
}

namespace {

bool flat(const Json& j) {
  if (!j.is_array()) return false;
  return std::none_of(j.begin(), j.end(), [](const Json& e) {
    return e.is_structured();
  });
}

// Like Json::dump(2), but arrays of scalars stay on one line.
void write(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      write(it.value(), indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write(j[i], indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      out += j[i].dump();
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, 0, out);
  return out + "\n";
}

Json to_json(std::span<const Int> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& r : m.row_list()) out.push_back(to_json(r));
  return out;
}

Json to_json(const Cone& c) {
  return Json{{"ambient_rank", c.ambient_rank()},
              {"dim", c.dim()},
              {"rays", vector_list(c.rays())},
              {"lineality", to_json(c.lineality().basis())}};
}

Json to_json(const Fan& f) {
  Json cones = Json::array();
  for (const auto& c : f.cones()) cones.push_back(to_json(c));
  return Json{{"ambient_rank", f.ambient_rank()}, {"cones", cones}};
}

Json to_json(const Sublattice& s) {
  return Json{{"ambient_rank", s.ambient_rank()},
              {"basis", to_json(s.basis())}};
}

Json to_json(const AffineMonoid& m) {
  return Json{{"saturated", m.is_saturated()},
              {"cone", to_json(m.cone())},
              {"group", to_json(m.group())},
              {"hilbert_basis", vector_list(m.hilbert_basis())}};
}

Json to_json(const ToricStackDatum& d) {
  Json monoids = Json::array();
  for (const auto& m : d.monoids) monoids.push_back(to_json(m));
  return Json{{"lattice_rank", d.lattice_rank()},
              {"fan", to_json(d.fan)},
              {"monoids", monoids}};
}

Json to_json(const StackMorphism& m) {
  return Json{{"lattice_map", to_json(m.lattice_map)},
              {"cone_assignment", index_list(m.fan_morphism.cone_assignment)}};
}

Json to_json(const CheckReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back(Json{{"description", w.description},
                             {"vectors", vector_list(w.vectors)}});
  return Json{{"name", r.name},
              {"verdict", std::string(to_string(r.verdict))},
              {"parameters", params},
              {"witnesses", witnesses}};
}

IntVector vector_from_json(const Json& j, std::size_t length,
                           const std::string& where) {
  const auto& a = array(j, where);
  if (a.size() != length)
    parse_error(where, "expected " + std::to_string(length) + " entries, got " +
                           std::to_string(a.size()));
  IntVector out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(integer(a[i], at(where, i)));
  return out;
}

Cone cone_from_json(const Json& j, const std::string& where) {
  only_fields(j, {"ambient_rank", "dim", "rays", "lineality"}, where);
  const std::size_t r = count(field(j, "ambient_rank", where), at(where, "ambient_rank"));
  auto gens = vectors(field(j, "rays", where), r, at(where, "rays"));
  if (j.contains("lineality"))
    for (auto& v : vectors(j["lineality"], r, at(where, "lineality"))) {
      gens.push_back(negate(v));
      gens.push_back(std::move(v));
    }
  Cone c = Cone::from_generators(r, gens);
  if (j.contains("dim") && count(j["dim"], at(where, "dim")) != c.dim())
    parse_error(at(where, "dim"), "does not match the generators");
  return c;
}

Fan fan_from_json(const Json& j, const std::string& where) {
  only_fields(j, {"ambient_rank", "cones"}, where);
  const std::size_t r = count(field(j, "ambient_rank", where), at(where, "ambient_rank"));
  std::vector<Cone> cones;
  const auto& a = array(field(j, "cones", where), at(where, "cones"));
  for (std::size_t i = 0; i < a.size(); ++i) {
    Cone c = cone_from_json(a[i], at(at(where, "cones"), i));
    if (c.ambient_rank() != r)
      parse_error(at(at(where, "cones"), i), "ambient rank differs from the fan");
    cones.push_back(std::move(c));
  }
  return Fan::from_cones(r, std::move(cones));
}

Sublattice sublattice_from_json(const Json& j, const std::string& where) {
  only_fields(j, {"ambient_rank", "basis"}, where);
  const std::size_t r = count(field(j, "ambient_rank", where), at(where, "ambient_rank"));
  return Sublattice::generated_by(r, vectors(field(j, "basis", where), r,
                                             at(where, "basis")));
}

AffineMonoid monoid_from_json(const Json& j, const std::string& where) {
  only_fields(j, {"saturated", "cone", "group", "hilbert_basis"}, where);
  const auto& sat = field(j, "saturated", where);
  if (!sat.is_boolean()) parse_error(at(where, "saturated"), "expected a boolean");
  const Cone c = cone_from_json(field(j, "cone", where), at(where, "cone"));
  if (sat.get<bool>())
    return AffineMonoid::saturated(
        c, sublattice_from_json(field(j, "group", where), at(where, "group")));
  return AffineMonoid::generated_by(
      c.ambient_rank(), vectors(field(j, "hilbert_basis", where),
                                c.ambient_rank(), at(where, "hilbert_basis")));
}

ToricStackDatum datum_from_json(const Json& j, const std::string& where) {
  only_fields(j, {"lattice_rank", "fan", "monoids"}, where);
  ToricStackDatum d;
  d.fan = fan_from_json(field(j, "fan", where), at(where, "fan"));
  const auto& a = array(field(j, "monoids", where), at(where, "monoids"));
  if (a.size() != d.fan.size())
    parse_error(at(where, "monoids"), "expected one monoid per cone");
  for (std::size_t i = 0; i < a.size(); ++i)
    d.monoids.push_back(monoid_from_json(a[i], at(at(where, "monoids"), i)));
  return d;
}

Input parse_input(std::string_view text, bool force_saturate) {
  const Json j = parse_json(text);
  only_fields(j, {"format_version", "lattice_rank", "cones", "sublattice", "options"},
              "");
  if (j.contains("format_version") &&
      integer(j["format_version"], "/format_version") != kFormatVersion)
    parse_error("/format_version", "unsupported version");
  const std::size_t r = count(field(j, "lattice_rank", ""), "/lattice_rank");
  if (r == 0) parse_error("/lattice_rank", "must be positive");

  Input in;
  if (j.contains("options")) {
    const auto& o = j["options"];
    only_fields(o, {"saturate", "bound"}, "/options");
    if (o.contains("saturate")) {
      if (!o["saturate"].is_boolean())
        parse_error("/options/saturate", "expected a boolean");
      in.options.saturate = o["saturate"].get<bool>();
    }
    if (o.contains("bound")) {
      const std::size_t b = count(o["bound"], "/options/bound");
      if (b == 0 || b > 64) parse_error("/options/bound", "must lie in 1..64");
      in.options.bound = static_cast<long>(b);
    }
  }
  in.options.saturate = in.options.saturate || force_saturate;

  const auto& cones = array(field(j, "cones", ""), "/cones");
  std::vector<Cone> given;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string where = at("/cones", i);
    given.push_back(Cone::from_generators(r, vectors(cones[i], r, where)));
  }
  in.fan = Fan::from_cones(r, given);
  // Input position of the first given cone having fan cone i as a face.
  auto origin = [&](std::size_t i) {
    for (std::size_t k = 0; k < given.size(); ++k)
      if (is_face(in.fan.cone(i), given[k])) return at("/cones", k);
    return std::string("/cones");
  };
  const FanReport report = validate_fan(in.fan);
  if (!report.valid()) {
    const auto& v = report.violations.front();
    std::string names;
    for (auto c : v.cones) names += (names.empty() ? "" : " and ") + origin(c);
    throw Error(ErrorKind::Validation,
                names + ": " + std::string(to_string(v.kind)) + ": " + v.message);
  }

  std::vector<IntVector> gens;
  if (j.contains("sublattice")) gens = vectors(j["sublattice"], r, "/sublattice");
  in.sublattice = Sublattice::generated_by(r, gens);
  if (!is_saturated(in.sublattice)) {
    if (!in.options.saturate)
      throw Error(ErrorKind::NotSaturated,
                  "/sublattice: not saturated (index " +
                      lattice_index(in.sublattice, saturate(in.sublattice))->get_str() +
                      " in its saturation); pass --saturate to replace it");
    in.sublattice = saturate(in.sublattice);
  }
  return in;
}

Json validate_document(const Input& in) {
  return Json{{"format_version", kFormatVersion},
              {"command", "validate"},
              {"lattice_rank", in.fan.ambient_rank()},
              {"fan_valid", validate_fan(in.fan).valid()},
              {"complete", is_complete(in.fan)},
              {"cone_count", in.fan.size()},
              {"maximal_cones", index_list(in.fan.maximal_cones())},
              {"sublattice", to_json(in.sublattice)},
              {"sublattice_saturated", is_saturated(in.sublattice)}};
}

Json quotient_document(const ChowQuotient& cq) {
  Json per_cone = Json::array();
  for (std::size_t k = 0; k < cq.fan().size(); ++k) {
    const auto& d = cq.data(k);
    per_cone.push_back(Json{{"cone", k},
                            {"invariant", index_list(d.invariant)},
                            {"n_zero", index_list(d.n_zero)},
                            {"monoid", to_json(d.monoid)},
                            {"raw_monoid_outside", d.raw_monoid_outside}});
  }
  return Json{{"format_version", kFormatVersion},
              {"command", "quotient"},
              {"source_fan", to_json(cq.source())},
              {"sublattice", to_json(cq.sublattice())},
              {"projection", to_json(cq.projection().matrix)},
              {"quotient_fan", to_json(cq.fan())},
              {"chow_data", per_cone}};
}

Json multiplicities_document(const ChowQuotient& cq) {
  Json out = Json::array();
  for (std::size_t i = 0; i < cq.source().size(); ++i) {
    Json entry{{"cone", i}};
    try {
      entry["multiplicity"] = integer_json(multiplicity(cq.source(), cq.sublattice(), i));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InfiniteIndex) throw;
      entry["multiplicity"] = "infinite";
    }
    out.push_back(std::move(entry));
  }
  return Json{{"format_version", kFormatVersion},
              {"command", "multiplicities"},
              {"multiplicities", out}};
}

Json cycle_document(const ChowQuotient& cq, std::size_t kappa) {
  Json terms = Json::array();
  for (const auto& [sigma, c] : cycle(cq, kappa).terms)
    terms.push_back(Json{{"cone", sigma},
                         {"rays", vector_list(cq.source().cone(sigma).rays())},
                         {"multiplicity", integer_json(c)}});
  return Json{{"format_version", kFormatVersion},
              {"command", "cycle"},
              {"quotient_cone", kappa},
              {"terms", terms}};
}

Json family_document(const UniversalFamily& fam) {
  Json prov = Json::array();
  for (std::size_t i = 0; i < fam.fan().size(); ++i)
    prov.push_back(Json{{"cone", i},
                        {"iota", fam.provenance(i).sigma},
                        {"quotient_cone", fam.provenance(i).kappa}});
  return Json{{"format_version", kFormatVersion},
              {"command", "family"},
              {"datum", to_json(fam.datum())},
              {"provenance", prov},
              {"to_source", to_json(fam.to_target())},
              {"to_quotient", to_json(fam.to_base())}};
}

Json fiber_document(const UniversalFamily& fam, const FiberComplex& fc,
                    const BasicMonoidPresentation& pres, const Cone& tropical) {
  Json components = Json::array();
  for (auto s : fc.components)
    components.push_back(Json{{"cone", s}, {"iota", iota(fam, s)}});
  Json walls = Json::array();
  for (const auto& w : fc.walls) {
    Json c_map = Json::array();
    for (const auto& [v, c] : w.c_map)
      c_map.push_back(Json{{"v", to_json(v)}, {"c", integer_json(c)}});
    walls.push_back(Json{
        {"cone", w.structure.wall},
        {"kind", w.structure.kind == WallStructure::Kind::Internal ? "internal"
                                                                   : "boundary"},
        {"faces", index_list(w.structure.faces)},
        {"u", to_json(w.structure.u)},
        {"c_map", c_map}});
  }
  Json higher = Json::array();
  for (const auto& h : fc.higher) higher.push_back(index_list(h));
  Json edges = Json::array();
  for (auto [a, b] : fc.edges) edges.push_back(Json::array({a, b}));
  Json relations = Json::array();
  for (const auto& r : pres.relations)
    relations.push_back(Json{{"first", r.first},
                             {"second", r.second},
                             {"u", to_json(r.u)},
                             {"wall", r.wall}});
  return Json{
      {"format_version", kFormatVersion},
      {"command", "fiber"},
      {"quotient_cone", fc.base_cone},
      {"components", components},
      {"walls", walls},
      {"higher", higher},
      {"edges", edges},
      {"connected", fc.connected},
      {"graph", to_dot(fam, fc)},
      {"basic_monoid",
       Json{{"components", index_list(pres.components)},
            {"factors", index_list(pres.factors)},
            {"relations", relations},
            {"monoid", to_json(pres.monoid)}}},
      {"tropical_cone", to_json(tropical)}};
}

}  // namespace tcq::doc
