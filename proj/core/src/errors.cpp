#include "pdm/errors.hpp"

#include <sstream>

namespace pdm {

namespace {

std::string with_point(const std::string& what, double x, double y) {
  std::ostringstream os;
  os << what << " at (x=" << x << ", y=" << y << ")";
  return os.str();
}

}  // namespace

EvaluationOverflow::EvaluationOverflow(const std::string& what, double x,
                                       double y)
    : Error(with_point("evaluation overflow in " + what, x, y)), x_(x), y_(y) {}

ChannelUnsupported::ChannelUnsupported(double energy)
    : Error("channel has no bound-state support at E=" +
            std::to_string(energy)),
      energy_(energy) {}

Unbounded::Unbounded(double x, double y, double value)
    : Error(with_point("potential decreases at the scan boundary; best value " +
                           std::to_string(value),
                       x, y)),
      x_(x),
      y_(y),
      value_(value) {}

}  // namespace pdm
