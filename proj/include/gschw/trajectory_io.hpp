#pragma once

#include <string>

#include "gschw/dynamics.hpp"

namespace gschw {

inline constexpr const char* kTrajectoryHeader = "t,f,f1,f2,f3,N0,N1,N2,schwarzian";

// Shortest representation that round-trips to the same double.
std::string format_number(double x);

// One header line followed by one row per sample.
std::string to_csv(const Trajectory& traj);
// {"columns": [...], "samples": [{"t": ..., ...}, ...]} with the CSV keys.
std::string to_json(const Trajectory& traj);
// Same layout with x and v appended after the schwarzian column.
std::string to_csv(const FirstOrderTrajectory& fo);
std::string to_json(const FirstOrderTrajectory& fo);

}  // namespace gschw
