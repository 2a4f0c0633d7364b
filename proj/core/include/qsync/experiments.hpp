#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qsync/config.hpp"

namespace qsync {

/// One CSV output: '#'-prefixed metadata lines (carrying the full resolved
/// configuration), a header row, and data rows. UTF-8, LF line endings,
/// '.' decimal separator. Byte-identical for identical config + seed.
struct CsvArtifact {
    std::string filename;
    std::vector<std::string> metadata;  // emitted as "# <line>"
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

/// Run the configured experiment and build its artifacts:
///   fig2 -> analog + digital time series of the cavity model
///   fig4 -> mutual-information grids, feedback on and off
///   fig5 -> A/E observable time series, feedback on and off
///   fig7 -> analog/digital fidelity vs step count at each horizon
///   custom -> time series for the selected model
std::vector<CsvArtifact> run_experiment(const ExperimentConfig& cfg);

/// Same as run_experiment but restricted to the sweep experiments (fig4,
/// fig7), whose cells run on cfg.workers threads with a deterministic merge.
std::vector<CsvArtifact> run_sweep_parallel(const ExperimentConfig& cfg);

/// Write each artifact into out_dir (created if missing); returns the paths.
std::vector<std::filesystem::path> write_artifacts(const std::vector<CsvArtifact>& artifacts,
                                                   const std::filesystem::path& out_dir);

}  // namespace qsync
