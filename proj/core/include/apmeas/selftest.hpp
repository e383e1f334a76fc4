#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace apmeas {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  std::uint64_t seed = 1;
  std::size_t corpus_size = 200;
  /// Empty runs every criterion.
  std::vector<int> only;
};

using ResultSink = std::function<void(const CriterionResult&)>;

/// The acceptance suite. Each result is handed to the sink as soon as it is known.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opt = {}, const ResultSink& sink = {});

/// "PASS  3  component sandwich  (0.41 s)  detail".
std::string format_result(const CriterionResult& r);

}  // namespace apmeas
