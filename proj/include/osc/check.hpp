#pragma once

#include <cmath>
#include <string>

namespace osc {

/// One measured identity: passes when measured <= tolerance, or, for negative
/// controls, when measured > tolerance.
struct Check
{
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool expect_above = false;
};

inline Check make_check(std::string name, double measured, double tolerance, bool expect_above = false)
{
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.expect_above = expect_above;
  c.pass = std::isfinite(measured) && (expect_above ? measured > tolerance : measured <= tolerance);
  return c;
}

}  // namespace osc
