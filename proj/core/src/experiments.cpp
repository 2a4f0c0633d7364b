#include "qsync/experiments.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsync/metrics.hpp"
#include "qsync/operators.hpp"

namespace qsync {

std::string CsvArtifact::to_string() const {
    std::ostringstream out;
    for (const auto& line : metadata) out << "# " << line << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

namespace {

std::vector<std::string> metadata_block(const ExperimentConfig& cfg,
                                        const std::vector<std::string>& extra = {}) {
    std::vector<std::string> lines;
    lines.push_back("qsync " + std::string(kVersion));
    lines.push_back("experiment = " + to_string(cfg.experiment));
    lines.push_back("units: cavity model kappa = 1, qubit model gamma = 1");
    lines.push_back("entropy/mutual information in nats (natural log)");
    for (const auto& e : extra) lines.push_back(e);
    lines.push_back("config-begin");
    std::stringstream ss(serialize_config(cfg));
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    lines.push_back("config-end");
    return lines;
}

std::vector<std::string> format_row(const std::vector<double>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(format_double(v));
    return out;
}

CsvArtifact series_artifact(const ExperimentConfig& cfg, const TimeSeries& ts,
                            const std::string& filename,
                            const std::vector<std::string>& extra_meta = {}) {
    CsvArtifact art;
    art.filename = filename;
    art.metadata = metadata_block(cfg, extra_meta);
    art.header.push_back("t");
    for (const auto& c : ts.columns) art.header.push_back(c);
    for (std::size_t k = 0; k < ts.times.size(); ++k) {
        std::vector<double> row;
        row.reserve(1 + ts.values[k].size());
        row.push_back(ts.times[k]);
        row.insert(row.end(), ts.values[k].begin(), ts.values[k].end());
        art.rows.push_back(format_row(row));
    }
    return art;
}

std::vector<CsvArtifact> run_fig2(const ExperimentConfig& cfg) {
    const HilbertLayout layout = cavity_layout(cfg.cavity.n_fock);
    const DensityMatrix rho0 = DensityMatrix::from_pure(cavity_initial_state(layout));
    const TimeSeries analog = run_analog(cfg.cavity, cfg.t_total, cfg.n_samples, rho0);
    const TimeSeries digital = run_digital_analog(cfg.cavity, cfg.t_total, cfg.n_steps, rho0);
    return {series_artifact(cfg, analog, "fig2_analog.csv"),
            series_artifact(cfg, digital, "fig2_digital.csv")};
}

CsvArtifact sweep_artifact(const ExperimentConfig& cfg, const MutualInformationSweep& sweep,
                           const std::string& filename, bool feedback_on) {
    std::vector<std::string> extra = {std::string("feedback = ") + (feedback_on ? "on" : "off")};
    if (!sweep.failures.empty()) {
        extra.push_back("failed cells (recorded as nan): " + std::to_string(sweep.failures.size()));
        for (const auto& f : sweep.failures) extra.push_back("failed " + f);
    }
    CsvArtifact art;
    art.filename = filename;
    art.metadata = metadata_block(cfg, extra);
    art.header = {"delta_a", "j2", "mutual_information"};
    for (std::size_t i = 0; i < sweep.delta_a.size(); ++i)
        for (std::size_t j = 0; j < sweep.j2.size(); ++j) {
            const auto& cell = sweep.mi[i][j];
            art.rows.push_back({format_double(sweep.delta_a[i]), format_double(sweep.j2[j]),
                                cell ? format_double(*cell) : "nan"});
        }
    return art;
}

std::vector<CsvArtifact> run_fig4(const ExperimentConfig& cfg) {
    const FeedbackPolicy policy = make_policy(cfg);
    const std::vector<double> das = delta_a_grid(cfg);
    const std::vector<double> j2s = j2_grid(cfg);
    const MutualInformationSweep on = sweep_mutual_information(
        cfg.qubits, das, j2s, cfg.t_total, cfg.n_iters, true, policy, cfg.workers);
    const MutualInformationSweep off = sweep_mutual_information(
        cfg.qubits, das, j2s, cfg.t_total, cfg.n_iters, false, policy, cfg.workers);
    return {sweep_artifact(cfg, on, "fig4_feedback_on.csv", true),
            sweep_artifact(cfg, off, "fig4_feedback_off.csv", false)};
}

std::vector<CsvArtifact> run_fig5(const ExperimentConfig& cfg) {
    const FeedbackPolicy policy = make_policy(cfg);
    const HilbertLayout layout = qml_layout();
    const DensityMatrix rho0 =
        DensityMatrix::from_pure(product_state(layout, {excited_ket(), ground_ket(), ground_ket()}));
    const QmlRunResult on = run_qml(cfg.qubits, cfg.t_total, cfg.n_iters, true, policy, rho0);
    const QmlRunResult off = run_qml(cfg.qubits, cfg.t_total, cfg.n_iters, false, policy, rho0);
    return {series_artifact(cfg, on.series, "fig5_feedback_on.csv", {"feedback = on"}),
            series_artifact(cfg, off.series, "fig5_feedback_off.csv", {"feedback = off"})};
}

std::vector<CsvArtifact> run_fig7(const ExperimentConfig& cfg) {
    const HilbertLayout layout = cavity_layout(cfg.cavity.n_fock);
    const DensityMatrix rho0 = DensityMatrix::from_pure(cavity_initial_state(layout));
    const SuperOperator L = build_cavity_liouvillian(cfg.cavity, layout);

    // Analog references, one per horizon; each digital run compares against
    // the reference of its horizon.
    std::vector<DensityMatrix> references;
    references.reserve(cfg.kappa_t_list.size());
    for (double kt : cfg.kappa_t_list) references.push_back(propagate_expm(L, rho0, kt));

    struct Cell {
        std::size_t horizon;
        int n;
        double fidelity = 0.0;
        std::string error;
    };
    std::vector<Cell> cells;
    for (std::size_t h = 0; h < cfg.kappa_t_list.size(); ++h)
        for (int n : cfg.n_list) cells.push_back({h, n, 0.0, {}});

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= cells.size()) return;
            Cell& cell = cells[idx];
            try {
                const double kt = cfg.kappa_t_list[cell.horizon];
                TimeSeries run = run_digital_analog(cfg.cavity, kt, cell.n, rho0, true);
                cell.fidelity = fidelity(references[cell.horizon], run.states.back());
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    };
    if (cfg.workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<std::string> extra;
    for (const auto& cell : cells)
        if (!cell.error.empty())
            extra.push_back("failed kappa_t=" + format_double(cfg.kappa_t_list[cell.horizon]) +
                            " n=" + std::to_string(cell.n) + ": " + cell.error);

    CsvArtifact art;
    art.filename = "fig7_fidelity.csv";
    art.metadata = metadata_block(cfg, extra);
    art.header = {"kappa_t", "n", "fidelity"};
    for (const auto& cell : cells)
        art.rows.push_back({format_double(cfg.kappa_t_list[cell.horizon]), std::to_string(cell.n),
                            cell.error.empty() ? format_double(cell.fidelity) : "nan"});
    return {art};
}

std::vector<CsvArtifact> run_custom(const ExperimentConfig& cfg) {
    std::vector<CsvArtifact> artifacts;
    if (cfg.model == ModelKind::cavity) {
        const HilbertLayout layout = cavity_layout(cfg.cavity.n_fock);
        const DensityMatrix rho0 = DensityMatrix::from_pure(cavity_initial_state(layout));
        if (cfg.method != RunMethod::digital)
            artifacts.push_back(series_artifact(
                cfg, run_analog(cfg.cavity, cfg.t_total, cfg.n_samples, rho0), "custom_analog.csv"));
        if (cfg.method != RunMethod::analog)
            artifacts.push_back(series_artifact(
                cfg, run_digital_analog(cfg.cavity, cfg.t_total, cfg.n_steps, rho0),
                "custom_digital.csv"));
    } else {
        const FeedbackPolicy policy = make_policy(cfg);
        const DensityMatrix rho0 = DensityMatrix::from_pure(
            product_state(qml_layout(), {excited_ket(), ground_ket(), ground_ket()}));
        const QmlRunResult run =
            run_qml(cfg.qubits, cfg.t_total, cfg.n_iters, cfg.feedback_enabled, policy, rho0);
        artifacts.push_back(series_artifact(
            cfg, run.series, "custom_qubits.csv",
            {std::string("feedback = ") + (cfg.feedback_enabled ? "on" : "off")}));
    }
    return artifacts;
}

}  // namespace

std::vector<CsvArtifact> run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    switch (cfg.experiment) {
        case ExperimentKind::fig2: return run_fig2(cfg);
        case ExperimentKind::fig4: return run_fig4(cfg);
        case ExperimentKind::fig5: return run_fig5(cfg);
        case ExperimentKind::fig7: return run_fig7(cfg);
        case ExperimentKind::custom: return run_custom(cfg);
    }
    throw std::logic_error("unreachable experiment kind");
}

std::vector<CsvArtifact> run_sweep_parallel(const ExperimentConfig& cfg) {
    if (cfg.experiment != ExperimentKind::fig4 && cfg.experiment != ExperimentKind::fig7)
        throw std::invalid_argument("run_sweep_parallel: experiment has no sweep grid");
    return run_experiment(cfg);
}

std::vector<std::filesystem::path> write_artifacts(const std::vector<CsvArtifact>& artifacts,
                                                   const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> paths;
    for (const auto& art : artifacts) {
        const std::filesystem::path path = out_dir / art.filename;
        std::ofstream out(path, std::ios::binary);  // LF endings everywhere
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        out << art.to_string();
        paths.push_back(path);
    }
    return paths;
}

}  // namespace qsync
