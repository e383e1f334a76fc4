#pragma once

#include <complex>
#include <string>

#include <json.hpp>

namespace apmeas::detail {

// nlohmann's dump uses shortest round-trip output; files here use %.17g.
std::string dump17(const nlohmann::json& j, int indent = 2);

nlohmann::json complex_json(std::complex<double> z);

}  // namespace apmeas::detail
