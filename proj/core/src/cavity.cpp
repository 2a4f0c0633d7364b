#include "qsync/cavity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsync/metrics.hpp"
#include "qsync/operators.hpp"

namespace qsync {

void validate(const CavityModelParams& p) {
    if (!(p.kappa > 0.0)) throw std::invalid_argument("cavity model: kappa must be positive");
    if (p.n_fock < 2) throw std::invalid_argument("cavity model: n_fock must be >= 2");
    for (double v : {p.delta_q1, p.delta_q2, p.delta_p1, p.delta_p2, p.g1, p.g2, p.J, p.Omega})
        if (!std::isfinite(v)) throw std::invalid_argument("cavity model: non-finite parameter");
}

HilbertLayout cavity_layout(int n_fock) {
    return HilbertLayout({{"q1", 2}, {"q2", 2}, {"p1", n_fock}, {"p2", n_fock}});
}

namespace {

struct CavityOps {
    Matrix sz1, sz2, sx1;
    Matrix sp1, sm1, sp2, sm2;
    Matrix a1, a1d, a2, a2d, n1, n2;
};

CavityOps make_ops(const HilbertLayout& layout) {
    const PauliOps pauli = pauli_ops();
    const BosonicOps bos1 = bosonic_ops(layout.dim_of("p1"));
    const BosonicOps bos2 = bosonic_ops(layout.dim_of("p2"));
    CavityOps ops;
    ops.sz1 = embed(pauli.sz, "q1", layout);
    ops.sz2 = embed(pauli.sz, "q2", layout);
    ops.sx1 = embed(pauli.sx, "q1", layout);
    ops.sp1 = embed(pauli.plus, "q1", layout);
    ops.sm1 = embed(pauli.minus, "q1", layout);
    ops.sp2 = embed(pauli.plus, "q2", layout);
    ops.sm2 = embed(pauli.minus, "q2", layout);
    ops.a1 = embed(bos1.a, "p1", layout);
    ops.a1d = embed(bos1.a_dag, "p1", layout);
    ops.a2 = embed(bos2.a, "p2", layout);
    ops.a2d = embed(bos2.a_dag, "p2", layout);
    ops.n1 = embed(bos1.n, "p1", layout);
    ops.n2 = embed(bos2.n, "p2", layout);
    return ops;
}

}  // namespace

Matrix build_cavity_hamiltonian(const CavityModelParams& p, const HilbertLayout& layout) {
    validate(p);
    if (layout.dim_of("q1") != 2 || layout.dim_of("q2") != 2 ||
        layout.dim_of("p1") != p.n_fock || layout.dim_of("p2") != p.n_fock)
        throw std::invalid_argument("build_cavity_hamiltonian: layout does not match parameters");
    const CavityOps ops = make_ops(layout);
    Matrix H = p.delta_p1 * ops.n1 + p.delta_p2 * ops.n2;
    H += 0.5 * p.delta_q1 * ops.sz1 + 0.5 * p.delta_q2 * ops.sz2;
    H += p.g1 * (ops.a1d * ops.sm1 + ops.a1 * ops.sp1);
    H += p.g2 * (ops.a2d * ops.sm2 + ops.a2 * ops.sp2);
    H += p.J * (ops.a1d * ops.a2 + ops.a1 * ops.a2d);
    H += p.Omega * ops.sx1;
    return H;
}

std::vector<JumpChannel> cavity_channels(const CavityModelParams& p, const HilbertLayout& layout) {
    const BosonicOps bos1 = bosonic_ops(layout.dim_of("p1"));
    const BosonicOps bos2 = bosonic_ops(layout.dim_of("p2"));
    return {{embed(bos1.a, "p1", layout), p.kappa}, {embed(bos2.a, "p2", layout), p.kappa}};
}

SuperOperator build_cavity_liouvillian(const CavityModelParams& p, const HilbertLayout& layout) {
    return build_liouvillian(build_cavity_hamiltonian(p, layout), cavity_channels(p, layout), layout);
}

PureState cavity_initial_state(const HilbertLayout& layout) {
    Vector q1(2), q2(2);
    q1 << std::sqrt(0.1), std::sqrt(0.9);  // (|e>, |g>) amplitudes
    q2 << std::sqrt(0.3), std::sqrt(0.7);
    Vector vac1 = Vector::Zero(layout.dim_of("p1"));
    vac1(0) = 1.0;
    Vector vac2 = Vector::Zero(layout.dim_of("p2"));
    vac2(0) = 1.0;
    return product_state(layout, {q1, q2, vac1, vac2});
}

Schedule build_da_schedule(const CavityModelParams& p, double dt) {
    validate(p);
    if (!(dt > 0.0)) throw std::invalid_argument("build_da_schedule: dt must be positive");
    const HilbertLayout layout = cavity_layout(p.n_fock);
    const CavityOps ops = make_ops(layout);
    const Complex mi(0, -1);

    std::vector<ScheduleBlock> blocks;
    blocks.push_back({ScheduleBlock::Kind::unitary,
                      matrix_exp(mi * dt * (0.5 * p.delta_q1 * ops.sz1 + p.Omega * ops.sx1)),
                      {"q1"},
                      dt,
                      "U_q1"});
    blocks.push_back({ScheduleBlock::Kind::unitary,
                      matrix_exp(mi * dt * (0.5 * p.delta_q2 * ops.sz2)),
                      {"q2"},
                      dt,
                      "U_q2"});
    blocks.push_back({ScheduleBlock::Kind::unitary,
                      matrix_exp(mi * dt * p.g1 * (ops.a1d * ops.sm1 + ops.a1 * ops.sp1)),
                      {"q1", "p1"},
                      dt,
                      "U_q1p1"});
    blocks.push_back({ScheduleBlock::Kind::unitary,
                      matrix_exp(mi * dt * p.g2 * (ops.a2d * ops.sm2 + ops.a2 * ops.sp2)),
                      {"q2", "p2"},
                      dt,
                      "U_q2p2"});
    blocks.push_back({ScheduleBlock::Kind::unitary,
                      matrix_exp(mi * dt * p.J * (ops.a1d * ops.a2 + ops.a1 * ops.a2d)),
                      {"p1", "p2"},
                      dt,
                      "U_p1p2"});
    blocks.push_back({ScheduleBlock::Kind::dissipative,
                      cavity_dissipator_map(p.delta_p1, p.kappa, dt, p.n_fock).matrix,
                      {"p1"},
                      dt,
                      "E_p1"});
    blocks.push_back({ScheduleBlock::Kind::dissipative,
                      cavity_dissipator_map(p.delta_p2, p.kappa, dt, p.n_fock).matrix,
                      {"p2"},
                      dt,
                      "E_p2"});
    return Schedule(std::move(blocks), dt, layout);
}

namespace {

const std::vector<std::string> kCavityColumns = {"sx_q1", "sy_q1", "sz_q1", "sx_q2",
                                                 "sy_q2", "sz_q2", "n_p1",  "n_p2"};

std::vector<Matrix> cavity_observables(const HilbertLayout& layout) {
    const PauliOps pauli = pauli_ops();
    const BosonicOps bos1 = bosonic_ops(layout.dim_of("p1"));
    const BosonicOps bos2 = bosonic_ops(layout.dim_of("p2"));
    return {embed(pauli.sx, "q1", layout), embed(pauli.sy, "q1", layout),
            embed(pauli.sz, "q1", layout), embed(pauli.sx, "q2", layout),
            embed(pauli.sy, "q2", layout), embed(pauli.sz, "q2", layout),
            embed(bos1.n, "p1", layout),   embed(bos2.n, "p2", layout)};
}

void record_sample(TimeSeries& ts, double t, const DensityMatrix& rho,
                   const std::vector<Matrix>& observables, bool record_states) {
    std::vector<double> row;
    row.reserve(observables.size());
    for (std::size_t i = 0; i < observables.size(); ++i) {
        const double v = expectation(rho, observables[i]);
        // Pauli expectations are bounded; a violation signals a broken state.
        if (ts.columns[i].front() == 's' && std::abs(v) > 1.0 + 1e-9)
            throw NumericError("observable " + ts.columns[i] + " out of range: " + std::to_string(v));
        row.push_back(v);
    }
    ts.times.push_back(t);
    ts.values.push_back(std::move(row));
    if (record_states) ts.states.push_back(rho);
}

}  // namespace

TimeSeries run_analog(const CavityModelParams& p, double t_total, int n_samples,
                      const DensityMatrix& rho0, bool record_states) {
    if (!(t_total > 0.0)) throw std::invalid_argument("run_analog: t_total must be positive");
    if (n_samples < 1) throw std::invalid_argument("run_analog: n_samples must be >= 1");
    const HilbertLayout& layout = rho0.layout();
    const SuperOperator L = build_cavity_liouvillian(p, layout);

    const double dt = t_total / n_samples;
    // One exponential per run; samples advance with the semigroup property.
    const Matrix M = propagator(L, dt);
    const std::vector<Matrix> observables = cavity_observables(layout);

    TimeSeries ts;
    ts.columns = kCavityColumns;
    record_sample(ts, 0.0, rho0, observables, record_states);

    Vector v = vec(rho0.matrix());
    for (int k = 1; k <= n_samples; ++k) {
        v = M * v;
        if (!v.allFinite()) throw NumericError("run_analog: non-finite state at sample " + std::to_string(k));
        DensityMatrix rho(hermitize(unvec(v, layout.dim())), layout);
        record_sample(ts, k * dt, rho, observables, record_states);
    }
    return ts;
}

TimeSeries run_digital_analog(const CavityModelParams& p, double t_total, int n_steps,
                              const DensityMatrix& rho0, bool record_states) {
    if (!(t_total > 0.0)) throw std::invalid_argument("run_digital_analog: t_total must be positive");
    if (n_steps < 1) throw std::invalid_argument("run_digital_analog: n_steps must be >= 1");
    const double dt = t_total / n_steps;
    const Schedule schedule = build_da_schedule(p, dt);
    if (schedule.layout() != rho0.layout())
        throw std::invalid_argument("run_digital_analog: state layout does not match model");

    const std::vector<Matrix> observables = cavity_observables(rho0.layout());
    TimeSeries ts;
    ts.columns = kCavityColumns;
    record_sample(ts, 0.0, rho0, observables, record_states);

    DensityMatrix rho = rho0;
    for (int k = 1; k <= n_steps; ++k) {
        rho = schedule.apply(rho);  // validates trace/positivity every step
        record_sample(ts, k * dt, rho, observables, record_states);
    }
    return ts;
}

}  // namespace qsync
