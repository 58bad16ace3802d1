#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace planestat {

/// Real numbers in CSV output: exactly 12 significant digits, plain fixed
/// notation when |v| is in [1e-4, 1e6), scientific otherwise.
inline std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  if (v == 0.0) {
    std::snprintf(buf, sizeof buf, "%.11f", 0.0);
    return buf;
  }
  double a = std::fabs(v);
  if (a >= 1e-4 && a < 1e6) {
    int e = static_cast<int>(std::floor(std::log10(a)));
    std::snprintf(buf, sizeof buf, "%.*f", 11 - e, v);
    // rounding can change the leading-digit position; reformat once
    double r = std::fabs(std::strtod(buf, nullptr));
    if (r >= 1e6) {
      std::snprintf(buf, sizeof buf, "%.11e", v);
    } else {
      int e2 = static_cast<int>(std::floor(std::log10(r)));
      if (e2 != e) std::snprintf(buf, sizeof buf, "%.*f", 11 - e2, v);
    }
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

}  // namespace planestat
