#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entigraph/process.hpp"

namespace entigraph {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Header `t,mean_acc,stderr,replicates`, one row per grid point in order.
void write_curve_csv(std::ostream& out, const AccuracyCurve& curve);
AccuracyCurve read_curve_csv(std::istream& in);

/// Header `t,lower,upper`.
struct BandRow {
    std::uint64_t t = 0;
    double lower = 0.0;
    double upper = 0.0;
};
void write_band_csv(std::ostream& out, const std::vector<BandRow>& rows);

/// Header `t,replicate,learned`; long format, replicate-major.
void write_trajectories_csv(std::ostream& out, const ReplicateTrajectories& trajectories);

/// Distinct integer steps roughly log-spaced over [1, t_max] (`points`
/// targets), always containing 1 and t_max. With include_zero, 0 is prepended.
std::vector<std::uint64_t> log_grid(std::uint64_t t_max, std::size_t points, bool include_zero = true);

/// Evenly spaced integer steps over [0, t_max], distinct, ending at t_max.
std::vector<std::uint64_t> linear_grid(std::uint64_t t_max, std::size_t points);

}  // namespace entigraph
