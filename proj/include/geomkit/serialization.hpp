/// @file serialization.hpp
/// JSON formats for geometries, maps, decompositions and reports.
#pragma once

#include <json.hpp>

#include "geomkit/closure_ext.hpp"
#include "geomkit/quotients.hpp"

namespace geomkit {

using Json = nlohmann::ordered_json;

/// {"kind":"affine"|"projective","q":"p^k","dim":n}, or explicit flats
/// {"kind":"explicit","points":[...],"flats":[[...]]}. Quotients add
/// {"quotient_of":..., "E":[...]}.
Json geometry_to_json(const Geometry& g);
/// Throws InvalidInput on malformed input.
GeometryPtr geometry_from_json(const Json& j);

/// {"domain":...,"codomain":...,"images":[...]}
Json map_to_json(const GeoMap& f);
GeoMap map_from_json(const Json& j);

/// {"domain":...,"codomain":...,"exceptional":[...],"images":{"id":id}}
Json partial_map_to_json(const PartialGeoMap& f);
PartialGeoMap partial_map_from_json(const Json& j);

/// {"matrix":[[...]],"sigma":"identity"|"frobenius^i","source":"p^k","target":"p^k"}
Json semilinear_to_json(const SemilinearMap& m);
SemilinearMap semilinear_from_json(const Json& j);

/// {"matrix":[[...]],"sigma":...,"translation":[...]}
Json semiaffine_to_json(const SemiaffineDecomposition& d);
SemiaffineDecomposition semiaffine_from_json(const Json& j);

/// {"psi":semilinear,"omega":semilinear}
Json fractional_to_json(const FractionalDecomposition& d);
FractionalDecomposition fractional_from_json(const Json& j);

/// {"points":[...],"lines":[[...]],"parallel_class":[...]}
SyntheticIncidence synthetic_from_json(const Json& j);
Json synthetic_to_json(const SyntheticIncidence& s);

Json axiom_report_to_json(const AxiomReport& r);
Json morphism_report_to_json(const MorphismReport& r);
Json verification_to_json(const VerificationReport& r);
/// Carries {"extension":...} on success or {"witness":{"direction":id,"lines":[...]}}.
Json extension_to_json(const ExtensionResult& r);

/// {"tool":"geomkit","version":...,"config":...,"result":...}
Json make_report(const Json& config, const Json& result);

/// Indented key: value lines, rendered from the JSON alone.
std::string render_text(const Json& j);

}  // namespace geomkit
