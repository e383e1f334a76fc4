#pragma once

#include <json.hpp>

#include "apmeas/diffraction.hpp"
#include "apmeas/norms.hpp"
#include "apmeas/periods.hpp"

namespace apmeas::cli {

nlohmann::json to_json(const NormReport& r);
nlohmann::json to_json(const PeriodSet& p);
nlohmann::json to_json(const EpsilonRow& r);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const PeakSplit& p, const Spectrum& s);

}  // namespace apmeas::cli
