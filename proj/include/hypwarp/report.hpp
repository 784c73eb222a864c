#pragma once

#include <string>

#include "json.hpp"

#include "hypwarp/chart.hpp"
#include "hypwarp/constants.hpp"
#include "hypwarp/curvature.hpp"
#include "hypwarp/deform.hpp"
#include "hypwarp/model_block.hpp"
#include "hypwarp/regularity.hpp"

namespace hypwarp {

using json = nlohmann::json;

// Extended-precision values go out as numbers when they fit a double and as
// decimal strings otherwise; never silently saturated.
json ext_to_json(real_ext v);

json to_json(const ConstantsLedger& led);
json to_json(const BoundednessReport& rep);
json to_json(const SlownessReport& rep);
json to_json(const DeviationReport& rep);
json to_json(const RadialCloseVerdict& verdict);
json to_json(const EtaBoundReport& rep);
json to_json(const PinchingReport& rep);
json to_json(const BallCloseReport& rep);
json to_json(const HypChart& chart);

std::string iso_timestamp_utc();

}  // namespace hypwarp
