#include "apmeas/window.hpp"

#include <cmath>
#include <string>

#include "apmeas/error.hpp"

namespace apmeas {

Window::Window(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidArgument,
                "window requires finite lo < hi, got (" + std::to_string(lo) + ", " +
                    std::to_string(hi) + ")");
  }
}

}  // namespace apmeas
