#pragma once

#include <json.hpp>

#include "irviz/analysis.hpp"

namespace irviz::detail {

using Json = nlohmann::ordered_json;

Json report_json(const SuspicionReport& r);

}  // namespace irviz::detail
