#pragma once

#include <cmath>
#include <compare>

#include "narses/error.hpp"

namespace narses::sim {

// A point on the simulation clock, in seconds. Values are real (no tick
// quantization), finite and nonnegative by construction.
class SimTime {
public:
  constexpr SimTime() noexcept : s_(0.0) {}

  explicit SimTime(double seconds) : s_(seconds) {
    if (!std::isfinite(seconds) || seconds < 0.0)
      fail(Errc::InvalidTime, "simulation time must be finite and nonnegative");
  }

  double seconds() const noexcept { return s_; }

  auto operator<=>(const SimTime&) const = default;

private:
  double s_;
};

inline SimTime after(SimTime t, double delta_s) { return SimTime(t.seconds() + delta_s); }

} // namespace narses::sim
