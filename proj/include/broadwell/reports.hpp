#pragma once

#include <json.hpp>

#include "broadwell/boundary_data.hpp"
#include "broadwell/bounds.hpp"
#include "broadwell/oracle.hpp"
#include "broadwell/picard.hpp"

namespace broadwell {

/// Finite values as numbers; inf and nan as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);

nlohmann::json to_json(const BoundCertificate& c);
nlohmann::json to_json(const CompatibilityReport& r);
nlohmann::json to_json(const IterationReport& r);
nlohmann::json to_json(const ComparisonReport& r);

}  // namespace broadwell
