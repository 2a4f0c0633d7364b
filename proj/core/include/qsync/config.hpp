#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsync/cavity.hpp"
#include "qsync/qml.hpp"

namespace qsync {

/// Configuration problems (parse failures, unknown keys, out-of-range
/// values). Messages carry file/line context where available.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { fig2, fig4, fig5, fig7, custom };
enum class ModelKind { cavity, qubits };
enum class RunMethod { analog, digital, both };

std::string to_string(ExperimentKind k);
std::string to_string(ModelKind k);
std::string to_string(RunMethod k);
ExperimentKind experiment_from_string(std::string_view s);

/// Fully resolved experiment description. Presets fill every field; a config
/// file and --set overrides may then change them. Unknown keys are errors.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::custom;
    ModelKind model = ModelKind::cavity;

    CavityModelParams cavity;
    QubitModelParams qubits;

    double t_total = 1.0;
    int n_steps = 100;    // digital Trotter steps (cavity model)
    int n_samples = 100;  // analog sample count (cavity model)
    int n_iters = 100;    // protocol iterations (qubit model)
    RunMethod method = RunMethod::both;

    bool feedback_enabled = true;  // custom qubit runs; fig4/fig5 always run both
    FeedbackPolicy::Mode feedback_mode = FeedbackPolicy::Mode::averaged;
    std::uint64_t seed = 0;
    std::string reward_reinit = "minus";  // named kets: plus, minus, e, g
    std::string punish_reinit = "plus";
    std::string punish_gate = "z_half_pi";  // z_half_pi | identity

    // Sweep grids (fig4: delta_a x j2; fig7: kappa_t x n).
    double delta_a_min = 0.0, delta_a_max = 40.0;
    int delta_a_count = 41;
    double j2_min = 0.0, j2_max = 40.0;
    int j2_count = 41;
    std::vector<int> n_list = {1, 2, 5, 10, 20, 50, 100, 150, 200, 300};
    std::vector<double> kappa_t_list = {1.0, 50.0};
    int workers = 1;

    std::string output_dir = ".";
};

/// Preset defaults for each experiment (the bundled parameter points).
ExperimentConfig preset_config(ExperimentKind kind);

/// Resolution order: preset defaults, then the config file (if any), then
/// "section.key=value" overrides. The result is validated.
ExperimentConfig parse_config(ExperimentKind kind,
                              const std::optional<std::filesystem::path>& config_file,
                              const std::vector<std::string>& overrides);

/// Apply config-file text ([section] + key = value lines) onto cfg.
void apply_config_text(ExperimentConfig& cfg, std::string_view text, std::string_view source_name);

/// Apply one "section.key=value" override.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// Range/consistency checks run after all overrides.
void validate(const ExperimentConfig& cfg);

/// Canonical config-file text for the resolved configuration; reparsing it
/// reproduces the configuration exactly.
std::string serialize_config(const ExperimentConfig& cfg);

/// Grid helpers derived from the config.
std::vector<double> delta_a_grid(const ExperimentConfig& cfg);
std::vector<double> j2_grid(const ExperimentConfig& cfg);

FeedbackPolicy make_policy(const ExperimentConfig& cfg);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace qsync
