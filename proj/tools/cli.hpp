#pragma once

#include <string>
#include <vector>

namespace apmeas::cli {

/// Exit codes: 0 success, 1 failed self-test, 2 usage or validation error,
/// 3 refusal because a value would depend on data outside the realized region.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace apmeas::cli
