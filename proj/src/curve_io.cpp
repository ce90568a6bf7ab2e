#include "entigraph/curve_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace entigraph {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (result.ec != std::errc{}) throw std::runtime_error("failed to format double");
    return std::string(buf.data(), result.ptr);
}

void write_curve_csv(std::ostream& out, const AccuracyCurve& curve) {
    out << "t,mean_acc,stderr,replicates\n";
    for (std::size_t i = 0; i < curve.size(); ++i)
        out << curve.steps[i] << ',' << format_double(curve.mean_acc[i]) << ','
            << format_double(curve.stderr_acc[i]) << ',' << curve.replicates << '\n';
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad number: " + text);
    return v;
}

}  // namespace

AccuracyCurve read_curve_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("curve CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "t" || header[1] != "mean_acc")
        throw std::invalid_argument("curve CSV must start with t,mean_acc");

    AccuracyCurve curve;
    curve.replicates = 1;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 2) throw std::invalid_argument("curve CSV line " + std::to_string(lineno) + " too short");
        try {
            const double t = parse_double(fields[0]);
            if (t < 0 || t != std::floor(t)) throw std::invalid_argument("t must be a nonnegative integer");
            curve.steps.push_back(static_cast<std::uint64_t>(t));
            curve.mean_acc.push_back(parse_double(fields[1]));
            curve.stderr_acc.push_back(fields.size() > 2 ? parse_double(fields[2]) : 0.0);
            if (fields.size() > 3) curve.replicates = static_cast<std::uint64_t>(parse_double(fields[3]));
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("curve CSV line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return curve;
}

void write_band_csv(std::ostream& out, const std::vector<BandRow>& rows) {
    out << "t,lower,upper\n";
    for (const auto& row : rows)
        out << row.t << ',' << format_double(row.lower) << ',' << format_double(row.upper) << '\n';
}

void write_trajectories_csv(std::ostream& out, const ReplicateTrajectories& trajectories) {
    out << "t,replicate,learned\n";
    for (std::size_t r = 0; r < trajectories.counts.size(); ++r)
        for (std::size_t i = 0; i < trajectories.steps.size(); ++i)
            out << trajectories.steps[i] << ',' << r << ',' << trajectories.counts[r][i] << '\n';
}

std::vector<std::uint64_t> log_grid(std::uint64_t t_max, std::size_t points, bool include_zero) {
    std::vector<std::uint64_t> grid;
    if (include_zero) grid.push_back(0);
    if (t_max == 0) return grid.empty() ? std::vector<std::uint64_t>{0} : grid;
    if (points < 2) points = 2;
    const double top = std::log(static_cast<double>(t_max));
    for (std::size_t i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
        auto t = static_cast<std::uint64_t>(std::llround(std::exp(top * frac)));
        t = std::clamp<std::uint64_t>(t, 1, t_max);
        if (grid.empty() || grid.back() < t) grid.push_back(t);
    }
    if (grid.back() != t_max) grid.push_back(t_max);
    return grid;
}

std::vector<std::uint64_t> linear_grid(std::uint64_t t_max, std::size_t points) {
    std::vector<std::uint64_t> grid;
    if (points < 2) points = 2;
    for (std::size_t i = 0; i < points; ++i) {
        const auto t = static_cast<std::uint64_t>(
            std::llround(static_cast<double>(t_max) * static_cast<double>(i) / static_cast<double>(points - 1)));
        if (grid.empty() || grid.back() < t) grid.push_back(t);
    }
    if (grid.empty()) grid.push_back(0);
    return grid;
}

}  // namespace entigraph
