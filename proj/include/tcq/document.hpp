#pragma once

// JSON documents for inputs and results. Lattice integers are written as
// decimal strings so they stay exact at any size; on input both strings and
// JSON integers are accepted. Parse failures carry the JSON pointer of the
// offending field.

#include <string>
#include <string_view>

#include <json.hpp>

#include "tcq/verify.hpp"

namespace tcq::doc {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct Options {
  bool saturate = false;
  long bound = 8;
};

struct Input {
  Fan fan;
  Sublattice sublattice;
  Options options;
};

// Reads an input document. The fan is completed with faces and validated
// (Validation naming the offending cones); a non-saturated sublattice is
// rejected with NotSaturated unless saturation is requested by the
// document or by force_saturate.
Input parse_input(std::string_view text, bool force_saturate = false);

Json parse_json(std::string_view text);

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

Json to_json(std::span<const Int> v);
Json to_json(const IntMatrix& m);
Json to_json(const Cone& c);
Json to_json(const Fan& f);
Json to_json(const Sublattice& s);
Json to_json(const AffineMonoid& m);
Json to_json(const ToricStackDatum& d);
Json to_json(const StackMorphism& m);
Json to_json(const CheckReport& r);

IntVector vector_from_json(const Json& j, std::size_t length,
                           const std::string& where);
Cone cone_from_json(const Json& j, const std::string& where = "");
Fan fan_from_json(const Json& j, const std::string& where = "");
Sublattice sublattice_from_json(const Json& j, const std::string& where = "");
AffineMonoid monoid_from_json(const Json& j, const std::string& where = "");
ToricStackDatum datum_from_json(const Json& j, const std::string& where = "");

// Result documents for the individual commands.
Json validate_document(const Input& in);
Json quotient_document(const ChowQuotient& cq);
Json multiplicities_document(const ChowQuotient& cq);
Json cycle_document(const ChowQuotient& cq, std::size_t kappa);
Json family_document(const UniversalFamily& fam);
Json fiber_document(const UniversalFamily& fam, const FiberComplex& fc,
                    const BasicMonoidPresentation& pres, const Cone& tropical);

}  // namespace tcq::doc
