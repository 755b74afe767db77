#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "zadic/fadic.hpp"

// JSON ring descriptors. Elements are strings in the polynomial syntax of
// parse.hpp; variables are t, X, Y, u0, u1, ...
namespace zadic::descriptor {

using json = nlohmann::ordered_json;

json to_json(const fadic::Carrier& c);
json to_json(const fadic::RingPresentation& a);
json to_json(const fadic::AffinoidPresentation& a);
json to_json(const fadic::RingMap& m);
json to_json(const fadic::AdicDomain& d);

// These throw ParseError with the position of the offending value when the
// document came from parse_*; otherwise with line 0 and the JSON pointer.
fadic::CarrierPtr carrier_from_json(const json& j);
fadic::RingPresentation presentation_from_json(const json& j);
fadic::AffinoidPresentation affinoid_from_json(const json& j);
fadic::RingMap ring_map_from_json(const json& j);

fadic::RingPresentation parse_presentation(const std::string& text);
// Accepts {"ring": ..., "plus_ring": [...]} or a bare presentation, whose
// plus ring is then its ring of definition.
fadic::AffinoidPresentation parse_affinoid(const std::string& text);
fadic::RingMap parse_ring_map(const std::string& text);

fadic::RingPresentation read_presentation_file(const std::string& path);
fadic::AffinoidPresentation read_affinoid_file(const std::string& path);

std::string dump(const json& j);

} // namespace zadic::descriptor
