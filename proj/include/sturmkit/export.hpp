#pragma once

#include <json.hpp>
#include <vector>

#include "sturmkit/oscillate.hpp"
#include "sturmkit/properties.hpp"
#include "sturmkit/sct.hpp"
#include "sturmkit/theorem1.hpp"
#include "sturmkit/zero_motion.hpp"

namespace sturmkit {

// Found by ADL, so `nlohmann::json j = report;` works.
void to_json(nlohmann::json& j, const Interval& I);
void to_json(nlohmann::json& j, const ZeroSet& zs);
void to_json(nlohmann::json& j, const SctVerdict& v);
void to_json(nlohmann::json& j, const ConverseReport& r);
void to_json(nlohmann::json& j, const Theorem1Report& r);
void to_json(nlohmann::json& j, const ZeroTrack& track);
void to_json(nlohmann::json& j, const PropertyResult& r);

}  // namespace sturmkit
