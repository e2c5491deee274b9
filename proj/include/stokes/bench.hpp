#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stokes/scenarios.hpp"
#include "stokes/solvers.hpp"

namespace stokes {

struct TimingSample {
    std::string method_tag;
    int M = 0;
    int repeats = 0;
    double mean_seconds = 0.0;
    double min_seconds = 0.0;
    double stddev_seconds = 0.0;
};

/// Times assembly, solve and field extraction of one method. One untimed
/// warm-up run precedes the measured repeats; projection runs one step.
/// Throws std::invalid_argument when repeats < 1.
TimingSample time_solver(Method method, const Scenario& scenario, int M, int repeats);

struct RatioRow {
    int M = 0;
    double saddle_over_projection = 0.0;
    double decoupling_over_projection = 0.0;
};

struct RatioReport {
    std::vector<RatioRow> rows;  // increasing M
};

/// Ratios of mean times per M. Throws std::invalid_argument when a method is
/// missing at some M present in the samples.
RatioReport timing_ratios(const std::vector<TimingSample>& samples);

/// Columns method, M, repeats, mean_s, min_s, stddev_s.
void write_timing_csv(std::ostream& out, const std::vector<TimingSample>& samples);
std::vector<TimingSample> read_timing_csv(std::istream& in);
std::string timing_json(const std::vector<TimingSample>& samples, const RatioReport& ratios);

}  // namespace stokes
