#pragma once

#include "hforge/cyclo.hpp"
#include "hforge/distributions.hpp"
#include "hforge/hecke.hpp"
#include "hforge/laurent.hpp"
#include "hforge/matrix.hpp"
#include "hforge/rat.hpp"

#include "json.hpp"

namespace hforge {

using Json = nlohmann::ordered_json;

// Rationals as "a/b" strings, cyclotomics as {"m": conductor, "coeffs": [...]} in the power basis.
Json to_json(const Rat& x);
Json to_json(const Cyclo& x);
Json to_json(const CycloVector& v);
Json to_json(const RatMatrix& m);
Json to_json(const LaurentPoly& x);  // printed form
Json to_json(const LaurentMatrix& m);
// [{matrix, coefficient}]
Json to_json(const CosetSum& s);
Json to_json(const TowerClass& a, const RayTower& tower);

// Throw std::invalid_argument on malformed input.
Rat rat_from_json(const Json& j);
Cyclo cyclo_from_json(const Json& j);
CycloVector cyclo_vector_from_json(const Json& j);

// {p, class_number, dim, levels: [{m, cosets: [{x, c, value: [Cyclo...]}]}]}; c and class_number
// are omitted for the rational tower.
Json distribution_to_json(const Distribution& mu);
Distribution distribution_from_json(const Json& j);

}  // namespace hforge
