#pragma once

#include <string>
#include <vector>

namespace rydkick {

inline constexpr const char *kVersion = "rydkick 1.0.0";

// One atomic unit of time in seconds; fixed project-wide.
inline constexpr double kAuTimeSeconds = 2.41888e-17;

// Picoseconds -> atomic units of time.
inline constexpr double kPsToAu = 1.0e-12 / kAuTimeSeconds;

// Default per-l quantum defects for cesium (s, p, d, f; 0 for l >= 4).
// These are shipped defaults, not fitted values; override via [basis] defects.
inline const std::vector<double> kCesiumDefects = {4.049, 3.5916, 2.475, 0.0334};

// Default binding energy of the launch state (cesium 7s), a.u.
inline constexpr double kDefaultLaunchEnergyAu = -0.0586;

} // namespace rydkick
