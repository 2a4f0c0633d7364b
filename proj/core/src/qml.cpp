#include "qsync/qml.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "qsync/lindblad.hpp"
#include "qsync/metrics.hpp"
#include "qsync/operators.hpp"

namespace qsync {

void validate(const QubitModelParams& p) {
    // gamma = 0 is admitted for lossless checks; negative rates are not.
    if (p.gamma < 0.0) throw std::invalid_argument("qubit model: gamma must be nonnegative");
    if (p.gamma_phi < 0.0) throw std::invalid_argument("qubit model: gamma_phi must be nonnegative");
    for (double v : {p.delta_a, p.delta_r, p.delta_e, p.Omega, p.J1, p.J2, p.gamma_phi})
        if (!std::isfinite(v)) throw std::invalid_argument("qubit model: non-finite parameter");
}

HilbertLayout qml_layout() { return HilbertLayout({{"A", 2}, {"R", 2}, {"E", 2}}); }

Schedule build_qml_step(const QubitModelParams& p, double dt) {
    return build_qml_step(p, dt, qml_layout());
}

Schedule build_qml_step(const QubitModelParams& p, double dt, const HilbertLayout& layout) {
    validate(p);
    if (!(dt > 0.0)) throw std::invalid_argument("build_qml_step: dt must be positive");
    for (const char* label : {"A", "R", "E"})
        if (!layout.has(label) || layout.dim_of(label) != 2)
            throw std::invalid_argument("build_qml_step: layout must hold qubits A, R, E");

    const PauliOps pauli = pauli_ops();
    auto sp = [&](const char* l) { return embed(pauli.plus, l, layout); };
    auto sm = [&](const char* l) { return embed(pauli.minus, l, layout); };
    auto sz = [&](const char* l) { return embed(pauli.sz, l, layout); };

    const Complex pi(0, 1);  // the protocol gates carry +i in the exponent

    std::vector<ScheduleBlock> blocks;
    blocks.push_back({ScheduleBlock::Kind::unitary,
                      matrix_exp(pi * dt * p.J1 * (sp("R") * sm("E") + sm("R") * sp("E"))),
                      {"R", "E"},
                      dt,
                      "U_ER"});
    blocks.push_back({ScheduleBlock::Kind::unitary,
                      matrix_exp(pi * dt * p.J2 * (sp("R") * sm("A") + sm("R") * sp("A"))),
                      {"A", "R"},
                      dt,
                      "U_RA"});

    Matrix H = 0.5 * p.delta_a * sz("A") + 0.5 * p.delta_e * sz("E") + 0.5 * p.delta_r * sz("R");
    H += p.Omega * embed(pauli.sx, "R", layout);
    std::vector<JumpChannel> channels;
    for (const char* l : {"A", "R", "E"}) {
        channels.push_back({sm(l), p.gamma});
        // Dephasing enters as an ordinary channel with C = sz; since sz² = I
        // the anticommutator collapses to 2 rho, which keeps the map
        // trace-preserving (the literal "- rho" form would not be).
        if (p.gamma_phi > 0.0) channels.push_back({sz(l), p.gamma_phi});
    }
    const SuperOperator L = build_liouvillian(H, channels, layout);
    blocks.push_back({ScheduleBlock::Kind::dissipative, matrix_exp(L.matrix() * dt),
                      layout.labels(), dt, "E_q"});
    return Schedule(std::move(blocks), dt, layout);
}

FeedbackPolicy::FeedbackPolicy()
    : measure_plus(plus_ket()),
      measure_minus(minus_ket()),
      reward_reinit(minus_ket()),
      punish_reinit(plus_ket()) {
    // exp(-i pi sz / 2) = diag(-i, +i); conjugation by it equals conjugation by sz.
    Matrix u(2, 2);
    u << Complex(0, -1), 0, 0, Complex(0, 1);
    punish_gate_a = u;
    punish_gate_e = u;
}

namespace {

// Measurement only needs the register slot; the punish gates additionally
// need A and E.
void validate_register_states(const FeedbackPolicy& policy, const HilbertLayout& layout) {
    if (!layout.has("R")) throw std::invalid_argument("feedback: layout must hold a register slot R");
    const int dr = layout.dim_of("R");
    for (const Vector* v : {&policy.measure_plus, &policy.measure_minus, &policy.reward_reinit,
                            &policy.punish_reinit}) {
        if (v->size() != dr) throw std::invalid_argument("feedback: state dim does not match register");
        if (std::abs(v->norm() - 1.0) > tol::unit_norm)
            throw std::invalid_argument("feedback: policy states must be normalized");
    }
    if (std::abs(policy.measure_plus.dot(policy.measure_minus)) > 1e-10)
        throw std::invalid_argument("feedback: measurement basis must be orthonormal");
}

}  // namespace

void validate(const FeedbackPolicy& policy, const HilbertLayout& layout) {
    validate_register_states(policy, layout);
    for (const char* label : {"A", "E"})
        if (!layout.has(label)) throw std::invalid_argument("feedback: layout must hold A and E");
    for (const Matrix* u : {&policy.punish_gate_a, &policy.punish_gate_e}) {
        if (u->rows() != 2 || u->cols() != 2)
            throw std::invalid_argument("feedback: punish gates must be single-qubit");
        const double defect = ((*u).adjoint() * (*u) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
        if (defect > 1e-12)
            throw std::invalid_argument("feedback: punish gate unitarity defect " + std::to_string(defect));
    }
}

namespace {

struct Branches {
    double p_plus = 0.0, p_minus = 0.0;
    Matrix raw_plus, raw_minus;  // unnormalized projected states
};

Branches project_register(const DensityMatrix& rho, const Vector& b_plus, const Vector& b_minus) {
    const HilbertLayout& layout = rho.layout();
    const Matrix P_plus = embed(b_plus * b_plus.adjoint(), "R", layout);
    const Matrix P_minus = embed(b_minus * b_minus.adjoint(), "R", layout);
    Branches br;
    br.raw_plus = P_plus * rho.matrix() * P_plus;
    br.raw_minus = P_minus * rho.matrix() * P_minus;
    br.p_plus = std::max(br.raw_plus.trace().real(), 0.0);
    br.p_minus = std::max(br.raw_minus.trace().real(), 0.0);
    const double total = br.p_plus + br.p_minus;
    if (std::abs(total - 1.0) > tol::trace_one)
        throw NumericError("measure_register: branch weights sum to " + std::to_string(total));
    return br;
}

}  // namespace

MeasurementBranches measure_register(const DensityMatrix& rho, const FeedbackPolicy& policy) {
    validate_register_states(policy, rho.layout());
    Branches br = project_register(rho, policy.measure_plus, policy.measure_minus);
    MeasurementBranches out;
    out.p_plus = br.p_plus;
    out.p_minus = br.p_minus;
    if (br.p_plus >= tol::branch_weight)
        out.rho_plus = DensityMatrix(hermitize(br.raw_plus / br.p_plus), rho.layout());
    if (br.p_minus >= tol::branch_weight)
        out.rho_minus = DensityMatrix(hermitize(br.raw_minus / br.p_minus), rho.layout());
    return out;
}

MeasurementBranches measure_register_x(const DensityMatrix& rho) {
    return measure_register(rho, FeedbackPolicy{});
}

namespace {

Matrix punish_unitary(const FeedbackPolicy& policy, const HilbertLayout& layout) {
    return embed(policy.punish_gate_a, "A", layout) * embed(policy.punish_gate_e, "E", layout);
}

}  // namespace

DensityMatrix feedback_channel(const DensityMatrix& rho, const FeedbackPolicy& policy) {
    validate(policy, rho.layout());
    const HilbertLayout& layout = rho.layout();
    Branches br = project_register(rho, policy.measure_plus, policy.measure_minus);

    // Work on unnormalized branches; replace_subsystem_raw is linear, so the
    // branch weights ride along and no 0/0 appears for degenerate outcomes.
    Matrix out = replace_subsystem_raw(br.raw_plus, layout, "R", policy.reward_reinit);
    const Matrix U = punish_unitary(policy, layout);
    const Matrix punished = replace_subsystem_raw(br.raw_minus, layout, "R", policy.punish_reinit);
    out += U * punished * U.adjoint();
    return DensityMatrix(hermitize(out), layout);
}

FeedbackOutcome feedback_channel_sampled(const DensityMatrix& rho, const FeedbackPolicy& policy,
                                         std::mt19937_64& rng) {
    validate(policy, rho.layout());
    MeasurementBranches br = measure_register(rho, policy);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool rewarded = br.rho_plus.has_value() && (!br.rho_minus.has_value() || unit(rng) < br.p_plus);
    if (rewarded) {
        DensityMatrix state = replace_subsystem(*br.rho_plus, "R",
                                                PureState(policy.reward_reinit, HilbertLayout({{"R", 2}})));
        return {std::move(state), true};
    }
    const Matrix U = punish_unitary(policy, rho.layout());
    Matrix m = replace_subsystem_raw(br.rho_minus->matrix(), rho.layout(), "R", policy.punish_reinit);
    return {DensityMatrix(hermitize(U * m * U.adjoint()), rho.layout()), false};
}

namespace {

const std::vector<std::string> kQmlColumns = {"sx_a", "sy_a",   "sz_a",    "sx_e",  "sy_e",
                                              "sz_e", "p_plus", "p_minus", "mi_ae"};

std::vector<Matrix> qml_observables(const HilbertLayout& layout) {
    const PauliOps pauli = pauli_ops();
    return {embed(pauli.sx, "A", layout), embed(pauli.sy, "A", layout), embed(pauli.sz, "A", layout),
            embed(pauli.sx, "E", layout), embed(pauli.sy, "E", layout), embed(pauli.sz, "E", layout)};
}

}  // namespace

QmlRunResult run_qml(const QubitModelParams& p, double t_total, int n_iters, bool feedback_on,
                     const FeedbackPolicy& policy, const DensityMatrix& rho0, bool record_states) {
    if (!(t_total > 0.0)) throw std::invalid_argument("run_qml: t_total must be positive");
    if (n_iters < 1) throw std::invalid_argument("run_qml: n_iters must be >= 1");
    const HilbertLayout& layout = rho0.layout();
    validate(policy, layout);
    const double dt = t_total / n_iters;
    const Schedule step = build_qml_step(p, dt, layout);
    const std::vector<Matrix> observables = qml_observables(layout);
    std::mt19937_64 rng(policy.seed);

    QmlRunResult result{TimeSeries{}, {}, rho0};
    result.series.columns = kQmlColumns;

    auto record = [&](int iteration, double t, const DensityMatrix& rho, double p_plus,
                      double p_minus) {
        std::vector<double> row;
        row.reserve(kQmlColumns.size());
        IterationRecord rec;
        rec.iteration = iteration;
        for (std::size_t i = 0; i < observables.size(); ++i) {
            const double v = expectation(rho, observables[i]);
            if (std::abs(v) > 1.0 + 1e-9)
                throw NumericError("observable " + kQmlColumns[i] + " out of range");
            row.push_back(v);
            rec.observables[kQmlColumns[i]] = v;
        }
        const double mi = mutual_information(rho, {"A"}, {"E"});
        rec.p_plus = p_plus;
        rec.p_minus = p_minus;
        rec.mutual_information = mi;
        row.push_back(p_plus);
        row.push_back(p_minus);
        row.push_back(mi);
        result.series.times.push_back(t);
        result.series.values.push_back(std::move(row));
        if (record_states) result.series.states.push_back(rho);
        if (iteration > 0) result.records.push_back(std::move(rec));
    };

    {
        MeasurementBranches br0 = measure_register(rho0, policy);
        record(0, 0.0, rho0, br0.p_plus, br0.p_minus);
    }

    DensityMatrix rho = rho0;
    for (int k = 1; k <= n_iters; ++k) {
        rho = step.apply(rho);
        MeasurementBranches br = measure_register(rho, policy);
        if (feedback_on) {
            if (policy.mode == FeedbackPolicy::Mode::averaged)
                rho = feedback_channel(rho, policy);
            else
                rho = feedback_channel_sampled(rho, policy, rng).state;
        }
        record(k, k * dt, rho, br.p_plus, br.p_minus);
    }
    result.final_state = rho;
    return result;
}

MutualInformationSweep sweep_mutual_information(const QubitModelParams& base,
                                                const std::vector<double>& delta_a_grid,
                                                const std::vector<double>& j2_grid, double t_total,
                                                int n_iters, bool feedback_on,
                                                const FeedbackPolicy& policy, int workers) {
    if (delta_a_grid.empty() || j2_grid.empty())
        throw std::invalid_argument("sweep_mutual_information: grids must not be empty");
    if (workers < 1) throw std::invalid_argument("sweep_mutual_information: workers must be >= 1");

    const std::size_t n_rows = delta_a_grid.size();
    const std::size_t n_cols = j2_grid.size();
    const std::size_t n_cells = n_rows * n_cols;
    std::vector<std::optional<double>> flat(n_cells);
    std::vector<std::string> errors(n_cells);

    const HilbertLayout layout = qml_layout();
    const DensityMatrix rho0 = DensityMatrix::from_pure(
        product_state(layout, {excited_ket(), ground_ket(), ground_ket()}));

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n_cells) return;
            QubitModelParams p = base;
            p.delta_a = delta_a_grid[idx / n_cols];
            p.J2 = j2_grid[idx % n_cols];
            FeedbackPolicy cell_policy = policy;
            // Per-cell derived seed keeps trajectory sweeps independent of the
            // worker count and schedule.
            cell_policy.seed = policy.seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1));
            try {
                QmlRunResult run = run_qml(p, t_total, n_iters, feedback_on, cell_policy, rho0);
                flat[idx] = run.records.back().mutual_information;
            } catch (const std::exception& e) {
                errors[idx] = e.what();
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    MutualInformationSweep out;
    out.delta_a = delta_a_grid;
    out.j2 = j2_grid;
    out.mi.resize(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        out.mi[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * n_cols),
                         flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_cols));
        for (std::size_t j = 0; j < n_cols; ++j)
            if (!out.mi[i][j])
                out.failures.push_back(std::to_string(i) + "," + std::to_string(j) + ": " +
                                       errors[i * n_cols + j]);
    }
    return out;
}

}  // namespace qsync
