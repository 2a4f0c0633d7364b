#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsync/states.hpp"

namespace qsync {

/// Sampled record of named observables over time, with optional state
/// snapshots aligned to the sample times.
struct TimeSeries {
    std::vector<double> times;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;  // values[sample][column]
    std::vector<DensityMatrix> states;        // empty unless snapshots were requested

    int column_index(std::string_view name) const;
    std::vector<double> column(std::string_view name) const;
    double value_at(int sample, std::string_view name) const;
};

/// Pearson correlation of two observable traces restricted to samples with
/// t in [t_from, t_to]. Requires at least 16 points in the window. Returns
/// nullopt when either trace is constant over the window (the correlation is
/// undefined there, not zero).
std::optional<double> sync_metric(const TimeSeries& ts, std::string_view obs_a,
                                  std::string_view obs_b, double t_from, double t_to);

}  // namespace qsync
