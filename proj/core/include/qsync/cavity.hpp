#pragma once

#include <vector>

#include "qsync/layout.hpp"
#include "qsync/lindblad.hpp"
#include "qsync/schedule.hpp"
#include "qsync/states.hpp"
#include "qsync/timeseries.hpp"

namespace qsync {

/// Two driven qubits in two lossy coupled cavities. All rates are in units of
/// the cavity decay kappa (the time unit of this model).
struct CavityModelParams {
    double delta_q1 = 0.0;  // qubit detunings
    double delta_q2 = 0.0;
    double delta_p1 = 0.0;  // cavity detunings
    double delta_p2 = 0.0;
    double g1 = 0.0;        // qubit-cavity couplings (the presets share one g)
    double g2 = 0.0;
    double J = 0.0;         // cavity-cavity hopping
    double Omega = 0.0;     // drive on qubit 1
    double kappa = 1.0;     // cavity decay rate
    int n_fock = 3;
};

void validate(const CavityModelParams& p);

/// Factor order [q1, q2, p1, p2].
HilbertLayout cavity_layout(int n_fock);

/// H = sum_l [Delta_l a_l†a_l + (delta_l/2) sz_l + g_l(a_l† sm_l + a_l sp_l)]
///     + J(a1†a2 + a1 a2†) + Omega sx_1
Matrix build_cavity_hamiltonian(const CavityModelParams& p, const HilbertLayout& layout);

/// The two photon-loss channels (a_l, kappa).
std::vector<JumpChannel> cavity_channels(const CavityModelParams& p, const HilbertLayout& layout);

SuperOperator build_cavity_liouvillian(const CavityModelParams& p, const HilbertLayout& layout);

/// Stock initial state of the bundled experiments:
/// (sqrt(0.9)|g> + sqrt(0.1)|e>) ⊗ (sqrt(0.7)|g> + sqrt(0.3)|e>) ⊗ |0> ⊗ |0>.
PureState cavity_initial_state(const HilbertLayout& layout);

/// One first-order Trotter step: U_q1, U_q2, U_q1p1, U_q2p2, U_p1p2, then the
/// two cavity dissipator maps. Block order is local-qubit -> qubit-cavity ->
/// cavity-cavity -> dissipators; it is part of the reproducibility contract.
Schedule build_da_schedule(const CavityModelParams& p, double dt);

/// Evolve under the full Liouvillian (matrix exponential) and sample
/// <sx,sy,sz> of both qubits and <n> of both cavities at n_samples uniform
/// times (plus t = 0).
TimeSeries run_analog(const CavityModelParams& p, double t_total, int n_samples,
                      const DensityMatrix& rho0, bool record_states = false);

/// Repeatedly apply the Trotter step, sampling after every step.
TimeSeries run_digital_analog(const CavityModelParams& p, double t_total, int n_steps,
                              const DensityMatrix& rho0, bool record_states = false);

}  // namespace qsync
