#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsync/layout.hpp"
#include "qsync/schedule.hpp"
#include "qsync/states.hpp"
#include "qsync/timeseries.hpp"

namespace qsync {

/// Three-qubit model: agent (A) and environment (E) coupled through a driven
/// register (R). All rates in units of the relaxation rate gamma.
struct QubitModelParams {
    double delta_a = 0.0;
    double delta_r = 0.0;
    double delta_e = 0.0;
    double Omega = 0.0;      // drive on the register
    double J1 = 0.0;         // environment-register coupling
    double J2 = 0.0;         // register-agent coupling
    double gamma = 1.0;      // relaxation rate (time unit)
    double gamma_phi = 0.0;  // dephasing rate
};

void validate(const QubitModelParams& p);

/// Factor order [A, R, E]; the register sits between the parties it mediates.
HilbertLayout qml_layout();

/// One protocol iteration: U_ER = exp(+i J1 (sp_R sm_E + sm_R sp_E) dt), then
/// U_RA = exp(+i J2 (sp_R sm_A + sm_R sp_A) dt), then the dissipative map
/// exp(L_q dt) with relaxation and dephasing on all three qubits and
/// H_q = (delta_A/2) sz_A + (delta_E/2) sz_E + (delta_R/2) sz_R + Omega sx_R.
Schedule build_qml_step(const QubitModelParams& p, double dt, const HilbertLayout& layout);
Schedule build_qml_step(const QubitModelParams& p, double dt);

/// Conditional actions on the register measurement outcome. Outcome "plus"
/// (projection onto measure_plus) is the reward: only the register is
/// reinitialized. Outcome "minus" is the punishment: the register is
/// reinitialized and the local gates act on agent and environment.
struct FeedbackPolicy {
    enum class Mode { averaged, trajectory };

    FeedbackPolicy();  // protocol defaults: sx basis, |->/|+> reinit, exp(-i pi sz/2) punish gates

    Vector measure_plus;   // measurement basis on R (must be orthonormal)
    Vector measure_minus;
    Vector reward_reinit;  // register state after a reward
    Vector punish_reinit;  // register state after a punishment
    Matrix punish_gate_a;  // local unitary on A under punishment
    Matrix punish_gate_e;  // local unitary on E under punishment
    Mode mode = Mode::averaged;
    std::uint64_t seed = 0;
};

void validate(const FeedbackPolicy& policy, const HilbertLayout& layout);

struct MeasurementBranches {
    double p_plus = 0.0;
    double p_minus = 0.0;
    // nullopt flags a degenerate branch (weight below 1e-12).
    std::optional<DensityMatrix> rho_plus;
    std::optional<DensityMatrix> rho_minus;
};

/// Projective measurement of the register in the sx eigenbasis.
MeasurementBranches measure_register_x(const DensityMatrix& rho);
MeasurementBranches measure_register(const DensityMatrix& rho, const FeedbackPolicy& policy);

/// Deterministic (outcome-averaged) feedback map; CPTP by construction.
DensityMatrix feedback_channel(const DensityMatrix& rho, const FeedbackPolicy& policy);

struct FeedbackOutcome {
    DensityMatrix state;
    bool rewarded = false;
};

/// Single-trajectory feedback: samples one branch with its Born probability.
FeedbackOutcome feedback_channel_sampled(const DensityMatrix& rho, const FeedbackPolicy& policy,
                                         std::mt19937_64& rng);

struct IterationRecord {
    int iteration = 0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    std::map<std::string, double> observables;
    double mutual_information = 0.0;
};

struct QmlRunResult {
    TimeSeries series;
    std::vector<IterationRecord> records;
    DensityMatrix final_state;
};

/// Iterate the protocol step (plus the feedback channel when enabled),
/// recording A/E observables, branch probabilities and the A:E mutual
/// information every iteration.
QmlRunResult run_qml(const QubitModelParams& p, double t_total, int n_iters, bool feedback_on,
                     const FeedbackPolicy& policy, const DensityMatrix& rho0,
                     bool record_states = false);

struct MutualInformationSweep {
    std::vector<double> delta_a;  // row axis
    std::vector<double> j2;       // column axis
    // mi[i][j] = final-time I(A:E) at (delta_a[i], j2[j]); nullopt = failed cell.
    std::vector<std::vector<std::optional<double>>> mi;
    std::vector<std::string> failures;  // "i,j: message"
};

/// Final-time mutual information over a (delta_A, J2) grid. Cells are
/// independent; `workers` threads split them with a deterministic merge.
MutualInformationSweep sweep_mutual_information(const QubitModelParams& base,
                                                const std::vector<double>& delta_a_grid,
                                                const std::vector<double>& j2_grid, double t_total,
                                                int n_iters, bool feedback_on,
                                                const FeedbackPolicy& policy, int workers = 1);

}  // namespace qsync
