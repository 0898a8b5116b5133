#pragma once

#include <string>

#include "json.hpp"
#include "orbi/euler.hpp"
#include "orbi/fuchsian.hpp"
#include "orbi/harmonic.hpp"

namespace orbi {

using Json = nlohmann::ordered_json;

// Circle maps:
//   {"kind":"rotation","angle":"1/3"}          angles as "p/q" or decimal strings
//   {"kind":"mobius","matrix":["a","b","c","d"],"branch":0}
//   {"kind":"pl","points":[[x,y],...],"allow_flat":false}
//   {"kind":"compose","maps":[...]}            maps[0] applied last
Json circle_map_to_json(const CircleMap& f);
CircleMap circle_map_from_json(const Json& j);

Json signature_to_json(const OrbifoldSignature& sig);
OrbifoldSignature signature_from_json(const Json& j);

// Presentations: signature plus row-major matrices as decimal strings.
Json presentation_to_json(const LatticePresentation& pres);
LatticePresentation presentation_from_json(const Json& j);

// Representations reference a presentation (inline or "catalog") and either
// the induced boundary action ("fuchsian": true) or explicit lift
// assignments keyed a1,b1,...,d1,...,c1,...
Json representation_to_json(const RepresentationSpec& rep, const Json& presentation);
RepresentationSpec representation_from_json(const Json& j, LatticePresentation* pres_out = nullptr);

Json measure_to_json(const CircleMeasure& m);
std::string measure_to_csv(const CircleMeasure& m);

HarmonicFamily family_from_json(const Json& j);
Json family_to_json(const HarmonicFamily& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace orbi
