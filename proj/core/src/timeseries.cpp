#include "qsync/timeseries.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsync {

int TimeSeries::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("TimeSeries: unknown column '" + std::string(name) + "'");
}

std::vector<double> TimeSeries::column(std::string_view name) const {
    const int c = column_index(name);
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : values) out.push_back(row[static_cast<std::size_t>(c)]);
    return out;
}

double TimeSeries::value_at(int sample, std::string_view name) const {
    return values.at(static_cast<std::size_t>(sample))[static_cast<std::size_t>(column_index(name))];
}

std::optional<double> sync_metric(const TimeSeries& ts, std::string_view obs_a,
                                  std::string_view obs_b, double t_from, double t_to) {
    if (!(t_from < t_to)) throw std::invalid_argument("sync_metric: empty window");
    const int ca = ts.column_index(obs_a);
    const int cb = ts.column_index(obs_b);

    std::vector<double> a, b;
    for (std::size_t k = 0; k < ts.times.size(); ++k) {
        if (ts.times[k] < t_from || ts.times[k] > t_to) continue;
        a.push_back(ts.values[k][static_cast<std::size_t>(ca)]);
        b.push_back(ts.values[k][static_cast<std::size_t>(cb)]);
    }
    if (a.size() < 16)
        throw std::invalid_argument("sync_metric: window holds " + std::to_string(a.size()) +
                                    " points, need at least 16");

    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    // A constant trace has no phase to correlate; report "undefined" rather
    // than a number.
    const double eps = 1e-24;
    if (var_a <= eps * n || var_b <= eps * n) return std::nullopt;
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace qsync
