#include "qsync/config.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qsync/operators.hpp"

namespace qsync {

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::fig2: return "fig2";
        case ExperimentKind::fig4: return "fig4";
        case ExperimentKind::fig5: return "fig5";
        case ExperimentKind::fig7: return "fig7";
        case ExperimentKind::custom: return "custom";
    }
    return "?";
}

std::string to_string(ModelKind k) { return k == ModelKind::cavity ? "cavity" : "qubits"; }

std::string to_string(RunMethod k) {
    switch (k) {
        case RunMethod::analog: return "analog";
        case RunMethod::digital: return "digital";
        case RunMethod::both: return "both";
    }
    return "?";
}

ExperimentKind experiment_from_string(std::string_view s) {
    if (s == "fig2") return ExperimentKind::fig2;
    if (s == "fig4") return ExperimentKind::fig4;
    if (s == "fig5") return ExperimentKind::fig5;
    if (s == "fig7") return ExperimentKind::fig7;
    if (s == "custom") return ExperimentKind::custom;
    throw ConfigError("unknown experiment '" + std::string(s) + "'");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

CavityModelParams cavity_sync_point() {
    // Delta1 = Delta2 = J = 10, delta1 = delta2 = 0, g = 2 kappa, Omega = 5e-4.
    CavityModelParams p;
    p.delta_q1 = 0.0;
    p.delta_q2 = 0.0;
    p.delta_p1 = 10.0;
    p.delta_p2 = 10.0;
    p.g1 = 2.0;
    p.g2 = 2.0;
    p.J = 10.0;
    p.Omega = 5e-4;
    p.kappa = 1.0;
    p.n_fock = 3;
    return p;
}

QubitModelParams qml_base_point() {
    // gamma = 2 gamma_phi, J1 = 20 gamma, driven register.
    QubitModelParams p;
    p.gamma = 1.0;
    p.gamma_phi = 0.5;
    p.J1 = 20.0;
    return p;
}

}  // namespace

ExperimentConfig preset_config(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    switch (kind) {
        case ExperimentKind::fig2:
            cfg.model = ModelKind::cavity;
            cfg.cavity = cavity_sync_point();
            cfg.t_total = 10.0;
            cfg.n_steps = 1000;  // 100 Trotter steps per unit kappa*t
            cfg.n_samples = 1000;
            break;
        case ExperimentKind::fig4:
            cfg.model = ModelKind::qubits;
            cfg.qubits = qml_base_point();
            cfg.qubits.delta_r = 0.0;
            cfg.qubits.delta_e = 0.0;
            cfg.qubits.Omega = 1e-2;
            cfg.t_total = 3.0;
            cfg.n_iters = 300;
            cfg.workers = 8;
            break;
        case ExperimentKind::fig5:
            cfg.model = ModelKind::qubits;
            cfg.qubits = qml_base_point();
            cfg.qubits.delta_a = 10.0;
            cfg.qubits.delta_r = 10.0;
            cfg.qubits.delta_e = 10.0;
            cfg.qubits.J2 = 20.0;
            cfg.qubits.Omega = 0.1;
            cfg.t_total = 3.0;
            cfg.n_iters = 300;
            break;
        case ExperimentKind::fig7:
            cfg.model = ModelKind::cavity;
            cfg.cavity = cavity_sync_point();
            cfg.t_total = 50.0;  // per-point horizons come from kappa_t_list
            cfg.n_steps = 1000;
            cfg.n_samples = 1000;
            cfg.workers = 8;
            break;
        case ExperimentKind::custom:
            break;
    }
    return cfg;
}

namespace {

struct KeyContext {
    std::string source;  // file name or "--set"
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        if (line > 0)
            throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
        throw ConfigError(source + ": " + msg);
    }
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& v, const KeyContext& ctx) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') ctx.fail("expected a number, got '" + v + "'");
    if (!std::isfinite(x)) ctx.fail("value '" + v + "' is not finite");
    return x;
}

int parse_int(const std::string& v, const KeyContext& ctx) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') ctx.fail("expected an integer, got '" + v + "'");
    if (x < INT_MIN || x > INT_MAX) ctx.fail("integer out of range: '" + v + "'");
    return static_cast<int>(x);
}

std::uint64_t parse_uint64(const std::string& v, const KeyContext& ctx) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') ctx.fail("expected an unsigned integer, got '" + v + "'");
    return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& v, const KeyContext& ctx) {
    if (v == "true") return true;
    if (v == "false") return false;
    ctx.fail("expected true or false, got '" + v + "'");
}

template <typename T, typename Parser>
std::vector<T> parse_list(const std::string& v, const KeyContext& ctx, Parser parse_one) {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) ctx.fail("empty element in list '" + v + "'");
        out.push_back(parse_one(item, ctx));
    }
    if (out.empty()) ctx.fail("list must not be empty");
    return out;
}

void require_model(const ExperimentConfig& cfg, ModelKind needed, const std::string& key,
                   const KeyContext& ctx) {
    if (cfg.model != needed)
        ctx.fail("key '" + key + "' requires the " + to_string(needed) + " model (current: " +
                 to_string(cfg.model) + ")");
}

void apply_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value, const KeyContext& ctx) {
    if (section == "model") {
        if (key == "model") {
            ModelKind m;
            if (value == "cavity") m = ModelKind::cavity;
            else if (value == "qubits") m = ModelKind::qubits;
            else ctx.fail("model must be cavity or qubits, got '" + value + "'");
            if (cfg.experiment != ExperimentKind::custom && m != cfg.model)
                ctx.fail("experiment " + to_string(cfg.experiment) + " is pinned to the " +
                         to_string(cfg.model) + " model");
            cfg.model = m;
            return;
        }
        if (key == "t_total") { cfg.t_total = parse_double(value, ctx); return; }
        // cavity parameters
        if (key == "delta_q1") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.delta_q1 = parse_double(value, ctx); return; }
        if (key == "delta_q2") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.delta_q2 = parse_double(value, ctx); return; }
        if (key == "delta_p1") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.delta_p1 = parse_double(value, ctx); return; }
        if (key == "delta_p2") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.delta_p2 = parse_double(value, ctx); return; }
        if (key == "g") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.g1 = cfg.cavity.g2 = parse_double(value, ctx); return; }
        if (key == "j") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.J = parse_double(value, ctx); return; }
        if (key == "kappa") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.kappa = parse_double(value, ctx); return; }
        if (key == "n_fock") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.cavity.n_fock = parse_int(value, ctx); return; }
        if (key == "n_steps") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.n_steps = parse_int(value, ctx); return; }
        if (key == "n_samples") { require_model(cfg, ModelKind::cavity, key, ctx); cfg.n_samples = parse_int(value, ctx); return; }
        if (key == "method") {
            require_model(cfg, ModelKind::cavity, key, ctx);
            if (value == "analog") cfg.method = RunMethod::analog;
            else if (value == "digital") cfg.method = RunMethod::digital;
            else if (value == "both") cfg.method = RunMethod::both;
            else ctx.fail("method must be analog, digital or both");
            return;
        }
        if (key == "omega") {
            if (cfg.model == ModelKind::cavity) cfg.cavity.Omega = parse_double(value, ctx);
            else cfg.qubits.Omega = parse_double(value, ctx);
            return;
        }
        // qubit parameters
        if (key == "delta_a") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.qubits.delta_a = parse_double(value, ctx); return; }
        if (key == "delta_r") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.qubits.delta_r = parse_double(value, ctx); return; }
        if (key == "delta_e") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.qubits.delta_e = parse_double(value, ctx); return; }
        if (key == "j1") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.qubits.J1 = parse_double(value, ctx); return; }
        if (key == "j2") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.qubits.J2 = parse_double(value, ctx); return; }
        if (key == "gamma") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.qubits.gamma = parse_double(value, ctx); return; }
        if (key == "gamma_phi") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.qubits.gamma_phi = parse_double(value, ctx); return; }
        if (key == "n_iters") { require_model(cfg, ModelKind::qubits, key, ctx); cfg.n_iters = parse_int(value, ctx); return; }
        ctx.fail("unknown key '" + key + "' in [model]");
    }
    if (section == "sweep") {
        if (key == "delta_a_min") { cfg.delta_a_min = parse_double(value, ctx); return; }
        if (key == "delta_a_max") { cfg.delta_a_max = parse_double(value, ctx); return; }
        if (key == "delta_a_count") { cfg.delta_a_count = parse_int(value, ctx); return; }
        if (key == "j2_min") { cfg.j2_min = parse_double(value, ctx); return; }
        if (key == "j2_max") { cfg.j2_max = parse_double(value, ctx); return; }
        if (key == "j2_count") { cfg.j2_count = parse_int(value, ctx); return; }
        if (key == "n_list") { cfg.n_list = parse_list<int>(value, ctx, parse_int); return; }
        if (key == "kappa_t_list") { cfg.kappa_t_list = parse_list<double>(value, ctx, parse_double); return; }
        if (key == "workers") { cfg.workers = parse_int(value, ctx); return; }
        ctx.fail("unknown key '" + key + "' in [sweep]");
    }
    if (section == "feedback") {
        if (key == "enabled") { cfg.feedback_enabled = parse_bool(value, ctx); return; }
        if (key == "mode") {
            if (value == "averaged") cfg.feedback_mode = FeedbackPolicy::Mode::averaged;
            else if (value == "trajectory") cfg.feedback_mode = FeedbackPolicy::Mode::trajectory;
            else ctx.fail("mode must be averaged or trajectory");
            return;
        }
        if (key == "seed") { cfg.seed = parse_uint64(value, ctx); return; }
        if (key == "reward_reinit") { cfg.reward_reinit = value; return; }
        if (key == "punish_reinit") { cfg.punish_reinit = value; return; }
        if (key == "punish_gate") { cfg.punish_gate = value; return; }
        ctx.fail("unknown key '" + key + "' in [feedback]");
    }
    if (section == "output") {
        if (key == "dir") { cfg.output_dir = value; return; }
        ctx.fail("unknown key '" + key + "' in [output]");
    }
    ctx.fail("unknown section [" + section + "]");
}

struct Entry {
    std::string section, key, value;
    int line = 0;
};

std::vector<Entry> parse_entries(std::string_view text, const std::string& source) {
    std::vector<Entry> entries;
    std::string section;
    int line_no = 0;
    std::stringstream ss{std::string(text)};
    std::string line;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        KeyContext ctx{source, line_no};
        if (t.front() == '[') {
            if (t.back() != ']') ctx.fail("malformed section header '" + t + "'");
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            if (section.empty()) ctx.fail("empty section name");
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) ctx.fail("expected key = value, got '" + t + "'");
        if (section.empty()) ctx.fail("key outside of any [section]");
        Entry e;
        e.section = section;
        e.key = trim(std::string_view(t).substr(0, eq));
        e.value = trim(std::string_view(t).substr(eq + 1));
        e.line = line_no;
        if (e.key.empty()) ctx.fail("empty key");
        entries.push_back(std::move(e));
    }
    return entries;
}

void apply_entries(ExperimentConfig& cfg, const std::vector<Entry>& entries,
                   const std::string& source) {
    // The model key switches the key set, so it is applied first regardless of
    // its position in the file.
    for (const Entry& e : entries)
        if (e.section == "model" && e.key == "model")
            apply_key(cfg, e.section, e.key, e.value, {source, e.line});
    for (const Entry& e : entries) {
        if (e.section == "model" && e.key == "model") continue;
        apply_key(cfg, e.section, e.key, e.value, {source, e.line});
    }
}

}  // namespace

void apply_config_text(ExperimentConfig& cfg, std::string_view text, std::string_view source_name) {
    apply_entries(cfg, parse_entries(text, std::string(source_name)), std::string(source_name));
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    KeyContext ctx{"--set " + assignment, 0};
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) ctx.fail("expected section.key=value");
    const std::string path = trim(std::string_view(assignment).substr(0, eq));
    const std::string value = trim(std::string_view(assignment).substr(eq + 1));
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos) ctx.fail("expected section.key=value");
    apply_key(cfg, path.substr(0, dot), path.substr(dot + 1), value, ctx);
}

ExperimentConfig parse_config(ExperimentKind kind,
                              const std::optional<std::filesystem::path>& config_file,
                              const std::vector<std::string>& overrides) {
    ExperimentConfig cfg = preset_config(kind);
    if (config_file) {
        std::ifstream in(*config_file);
        if (!in) throw ConfigError("cannot read config file '" + config_file->string() + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        apply_config_text(cfg, buffer.str(), config_file->string());
    }
    for (const auto& assignment : overrides) {
        // Apply model overrides first for the same reason as in files.
        if (assignment.rfind("model.model=", 0) == 0) apply_override(cfg, assignment);
    }
    for (const auto& assignment : overrides) {
        if (assignment.rfind("model.model=", 0) != 0) apply_override(cfg, assignment);
    }
    validate(cfg);
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (!(cfg.t_total > 0.0)) fail("t_total must be positive");
    if (cfg.workers < 1) fail("workers must be >= 1");
    if (cfg.model == ModelKind::cavity) {
        try {
            validate(cfg.cavity);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (cfg.n_steps < 1) fail("n_steps must be >= 1");
        if (cfg.n_samples < 1) fail("n_samples must be >= 1");
    } else {
        try {
            validate(cfg.qubits);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (cfg.n_iters < 1) fail("n_iters must be >= 1");
    }
    if (cfg.experiment == ExperimentKind::fig4) {
        if (cfg.delta_a_count < 1 || cfg.j2_count < 1) fail("fig4 sweep grids must not be empty");
        if (cfg.delta_a_max < cfg.delta_a_min || cfg.j2_max < cfg.j2_min)
            fail("sweep ranges must satisfy min <= max");
    }
    if (cfg.experiment == ExperimentKind::fig7) {
        if (cfg.n_list.empty()) fail("fig7 needs a non-empty n_list");
        for (int n : cfg.n_list)
            if (n < 1) fail("n_list entries must be >= 1");
        if (cfg.kappa_t_list.empty()) fail("fig7 needs a non-empty kappa_t_list");
        for (double t : cfg.kappa_t_list)
            if (!(t > 0.0)) fail("kappa_t_list entries must be positive");
    }
    make_policy(cfg);  // validates the feedback names
}

std::vector<double> delta_a_grid(const ExperimentConfig& cfg) {
    std::vector<double> grid(static_cast<std::size_t>(cfg.delta_a_count));
    for (int i = 0; i < cfg.delta_a_count; ++i)
        grid[static_cast<std::size_t>(i)] =
            cfg.delta_a_count == 1
                ? cfg.delta_a_min
                : cfg.delta_a_min + (cfg.delta_a_max - cfg.delta_a_min) * i / (cfg.delta_a_count - 1);
    return grid;
}

std::vector<double> j2_grid(const ExperimentConfig& cfg) {
    std::vector<double> grid(static_cast<std::size_t>(cfg.j2_count));
    for (int i = 0; i < cfg.j2_count; ++i)
        grid[static_cast<std::size_t>(i)] =
            cfg.j2_count == 1 ? cfg.j2_min
                              : cfg.j2_min + (cfg.j2_max - cfg.j2_min) * i / (cfg.j2_count - 1);
    return grid;
}

namespace {

Vector named_ket(const std::string& name) {
    if (name == "plus") return plus_ket();
    if (name == "minus") return minus_ket();
    if (name == "e") return excited_ket();
    if (name == "g") return ground_ket();
    throw ConfigError("unknown register state '" + name + "' (use plus, minus, e or g)");
}

}  // namespace

FeedbackPolicy make_policy(const ExperimentConfig& cfg) {
    FeedbackPolicy policy;
    policy.reward_reinit = named_ket(cfg.reward_reinit);
    policy.punish_reinit = named_ket(cfg.punish_reinit);
    if (cfg.punish_gate == "identity") {
        policy.punish_gate_a = Matrix::Identity(2, 2);
        policy.punish_gate_e = Matrix::Identity(2, 2);
    } else if (cfg.punish_gate != "z_half_pi") {
        throw ConfigError("unknown punish_gate '" + cfg.punish_gate + "' (use z_half_pi or identity)");
    }
    policy.mode = cfg.feedback_mode;
    policy.seed = cfg.seed;
    return policy;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[model]\n";
    out << "model = " << to_string(cfg.model) << "\n";
    out << "t_total = " << format_double(cfg.t_total) << "\n";
    if (cfg.model == ModelKind::cavity) {
        const CavityModelParams& p = cfg.cavity;
        out << "delta_q1 = " << format_double(p.delta_q1) << "\n";
        out << "delta_q2 = " << format_double(p.delta_q2) << "\n";
        out << "delta_p1 = " << format_double(p.delta_p1) << "\n";
        out << "delta_p2 = " << format_double(p.delta_p2) << "\n";
        out << "g = " << format_double(p.g1) << "\n";
        out << "j = " << format_double(p.J) << "\n";
        out << "omega = " << format_double(p.Omega) << "\n";
        out << "kappa = " << format_double(p.kappa) << "\n";
        out << "n_fock = " << p.n_fock << "\n";
        out << "n_steps = " << cfg.n_steps << "\n";
        out << "n_samples = " << cfg.n_samples << "\n";
        out << "method = " << to_string(cfg.method) << "\n";
    } else {
        const QubitModelParams& p = cfg.qubits;
        out << "delta_a = " << format_double(p.delta_a) << "\n";
        out << "delta_r = " << format_double(p.delta_r) << "\n";
        out << "delta_e = " << format_double(p.delta_e) << "\n";
        out << "omega = " << format_double(p.Omega) << "\n";
        out << "j1 = " << format_double(p.J1) << "\n";
        out << "j2 = " << format_double(p.J2) << "\n";
        out << "gamma = " << format_double(p.gamma) << "\n";
        out << "gamma_phi = " << format_double(p.gamma_phi) << "\n";
        out << "n_iters = " << cfg.n_iters << "\n";
    }
    out << "[sweep]\n";
    out << "delta_a_min = " << format_double(cfg.delta_a_min) << "\n";
    out << "delta_a_max = " << format_double(cfg.delta_a_max) << "\n";
    out << "delta_a_count = " << cfg.delta_a_count << "\n";
    out << "j2_min = " << format_double(cfg.j2_min) << "\n";
    out << "j2_max = " << format_double(cfg.j2_max) << "\n";
    out << "j2_count = " << cfg.j2_count << "\n";
    out << "n_list = ";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
        out << (i ? "," : "") << cfg.n_list[i];
    out << "\n";
    out << "kappa_t_list = ";
    for (std::size_t i = 0; i < cfg.kappa_t_list.size(); ++i)
        out << (i ? "," : "") << format_double(cfg.kappa_t_list[i]);
    out << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "[feedback]\n";
    out << "enabled = " << (cfg.feedback_enabled ? "true" : "false") << "\n";
    out << "mode = " << (cfg.feedback_mode == FeedbackPolicy::Mode::averaged ? "averaged" : "trajectory") << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "reward_reinit = " << cfg.reward_reinit << "\n";
    out << "punish_reinit = " << cfg.punish_reinit << "\n";
    out << "punish_gate = " << cfg.punish_gate << "\n";
    out << "[output]\n";
    out << "dir = " << cfg.output_dir << "\n";
    return out.str();
}

}  // namespace qsync
