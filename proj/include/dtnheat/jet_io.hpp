#pragma once

// JSON form of a GeometryJet:
//   {"n":3, "jet_order":3, "kappa":["1","1/2"],
//    "g":{"1,1":{"0,0,1":"-2", ...}, ...},   upper triangle, 1-based
//    "A":{"3":{"0,0,0":"1/2+1i"}}, "q":{"0,0,0":"1/4"}, "k":"0"}
// Multi-index keys list the exponent of every coordinate x_1..x_n.

#include "dtnheat/geometry.hpp"

#include "json.hpp"

#include <string>

namespace dtnheat {

nlohmann::json jet_to_json(const GeometryJet& jet);
/// Throws std::invalid_argument on malformed documents or invalid jets.
GeometryJet jet_from_json(const nlohmann::json& doc);

std::string jet_to_string(const GeometryJet& jet);
GeometryJet jet_from_string(const std::string& text);

}  // namespace dtnheat
