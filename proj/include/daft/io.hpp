#pragma once

#include <string>

#include "json.hpp"

#include "daft/lattice.hpp"
#include "daft/moments.hpp"
#include "daft/realization.hpp"
#include "daft/spectral.hpp"

namespace daft::io {

using json = nlohmann::ordered_json;

json to_json(cd z);
json to_json(const CMatrix& a);
json to_json(const DafGrid& g);
json to_json(const AtomicMeasure& mu);
json to_json(const StateSpace& S);
json to_json(const SpectralFactor& w);

// Accepts [re,im] or a bare real number.
cd complex_from_json(const json& j);
// Accepts a nested array; a scalar becomes 1x1.
CMatrix matrix_from_json(const json& j);
DafGrid grid_from_json(const json& j);
AtomicMeasure measure_from_json(const json& j);
StateSpace state_space_from_json(const json& j);
SpectralFactor factor_from_json(const json& j);

// Throws ParseError naming the first key outside allowed.
void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed);

std::string format_double(double x);        // %.17g
std::string format_complex_csv(cd z);        // "re+imi"
std::string csv_escape(const std::string& s);
std::string dump(const json& j);             // canonical text with %.17g floats

}  // namespace daft::io
