#pragma once

#include "saddleflow/integrator.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace saddleflow {

/// CSV with header `t,x_0..x_{n-1},lambda_0..lambda_{m-1},V,mask`, one row per recorded
/// state. Numbers use the shortest round-trip decimal form; V is empty when the
/// trajectory carries no Lyapunov values; mask is a bitstring.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Inverse of write_trajectory_csv. The termination reason is not stored in the file
/// and comes back as Termination::Horizon. Throws ParseError with the line number.
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
/// Strict parse of a full token; throws ParseError.
double parse_double(std::string_view token);

}  // namespace saddleflow
