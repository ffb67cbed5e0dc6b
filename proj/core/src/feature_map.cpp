#include "vpr/feature_map.hpp"

#include <cmath>

namespace vpr {

void FeatureMap::validate() const {
    if (data.size() != size())
        throw InvalidInput("FeatureMap: buffer holds " + std::to_string(data.size()) +
                           " values, dimensions require " + std::to_string(size()));
    for (const float v : data)
        if (!std::isfinite(v))
            throw InvalidInput("FeatureMap: non-finite activation");
}

} // namespace vpr
