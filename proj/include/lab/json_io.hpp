// File schemas: curves, measures, reports, and conformal-map chains.
// Doubles round-trip bit-exactly through nlohmann's shortest-representation
// serialization.
#pragma once

#include <string>

#include "json.hpp"
#include "lab/carleson.hpp"
#include "lab/geometry.hpp"
#include "lab/metrics.hpp"

namespace lab {

using Json = nlohmann::ordered_json;

Json curve_to_json(const SampledCurve& c);
SampledCurve curve_from_json(const Json& j);

Json measure_to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const Json& j);

Json regularity_to_json(const RegularityReport& r);
Json carleson_to_json(const CarlesonReport& r);
Json diagnosis_to_json(const VanishingDiagnosis& d);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace lab
