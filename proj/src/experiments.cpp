#include "hybridbf/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hybridbf/errors.hpp"

namespace hybridbf {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_number(std::string_view key, std::string_view text) {
    const std::string buf(trim(text));
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) {
        throw ConfigError(std::string(key) + ": expected a number, got '" + buf + "'");
    }
    return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
    const double v = parse_number(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(trim(text)) + "'");
    }
    return static_cast<long long>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
    const auto t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(t) + "'");
}

std::vector<std::string_view> parse_list(std::string_view text) {
    if (trim(text).empty()) return {};
    return split(text, ',');
}

/// "a, b, c" or "start:step:stop".
std::vector<double> parse_grid(std::string_view key, std::string_view text) {
    const auto t = trim(text);
    if (t.find(':') != std::string_view::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ConfigError(std::string(key) + ": range must be start:step:stop");
        const double lo = parse_number(key, parts[0]);
        const double step = parse_number(key, parts[1]);
        const double hi = parse_number(key, parts[2]);
        if (!(step > 0.0) || hi < lo) throw ConfigError(std::string(key) + ": range needs step > 0 and stop >= start");
        const auto count = static_cast<long long>(std::llround((hi - lo) / step));
        std::vector<double> out;
        for (long long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (auto item : parse_list(t)) out.push_back(parse_number(key, item));
    return out;
}

std::string fmt_exact(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string fmt_short(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += fmt(items[i]);
    }
    return out;
}

std::vector<double> range(double lo, double step, double hi) {
    std::vector<double> out;
    const auto count = std::llround((hi - lo) / step);
    for (long long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

std::string snr_label(double snr) {
    std::string s = fmt_short(std::abs(snr));
    std::replace(s.begin(), s.end(), '.', 'p');
    return (snr < 0 ? "m" : "") + s;
}

// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const std::size_t workers = std::min<std::size_t>(n, std::max(1U, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

constexpr std::string_view kKnownKeys[] = {
    "experiment", "n_antennas", "n_subarrays",     "spacing",          "theta_d",         "interferers",
    "desired_snr_db", "interferer_snr_db", "noise_power", "epsilon",    "snapshots",       "seed",
    "trials",     "gamma",      "gamma_noise_mult", "full_digital_dl", "symbols",         "quadrature_nodes",
    "methods",    "sweep_values", "snapshot_snrs_db", "output",
};

}  // namespace

std::string_view to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::beam_pattern: return "beam-pattern";
        case ExperimentId::sinr_vs_snr: return "sinr-vs-snr";
        case ExperimentId::sinr_vs_snr_robust: return "sinr-vs-snr-robust";
        case ExperimentId::rmse_vs_epsilon: return "rmse-vs-epsilon";
        case ExperimentId::sinr_vs_snapshots: return "sinr-vs-snapshots";
    }
    return "unknown";
}

std::optional<ExperimentId> parse_experiment_id(std::string_view text) {
    for (auto id : {ExperimentId::beam_pattern, ExperimentId::sinr_vs_snr, ExperimentId::sinr_vs_snr_robust,
                    ExperimentId::rmse_vs_epsilon, ExperimentId::sinr_vs_snapshots}) {
        if (trim(text) == to_string(id)) return id;
    }
    return std::nullopt;
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::robust: return "robust";
        case Method::nsp_baseline: return "nsp-baseline";
        case Method::dl_baseline: return "dl-baseline";
        case Method::nsp_perfect_reference: return "nsp-perfect-reference";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view text) {
    for (auto m : {Method::robust, Method::nsp_baseline, Method::dl_baseline, Method::nsp_perfect_reference}) {
        if (trim(text) == to_string(m)) return m;
    }
    return std::nullopt;
}

std::string_view column_tag(Method m) {
    switch (m) {
        case Method::robust: return "robust";
        case Method::nsp_baseline: return "nsp";
        case Method::dl_baseline: return "dl";
        case Method::nsp_perfect_reference: return "nsp_ref";
    }
    return "unknown";
}

double parse_angle(std::string_view text) {
    auto t = trim(text);
    double scale = std::numbers::pi / 180.0;
    if (t.ends_with("deg")) {
        t.remove_suffix(3);
    } else if (t.ends_with("rad")) {
        t.remove_suffix(3);
        scale = 1.0;
    }
    return parse_number("angle", t) * scale;
}

ExperimentSpec default_spec(ExperimentId id) {
    ExperimentSpec spec;
    spec.id = id;
    switch (id) {
        case ExperimentId::beam_pattern:
            spec.sweep = {"angle_deg", range(-90.0, 0.1, 90.0)};
            spec.methods = {Method::robust, Method::dl_baseline};
            break;
        case ExperimentId::sinr_vs_snr:
            spec.sweep = {"snr_db", range(-15.0, 2.5, 15.0)};
            spec.methods = {Method::robust, Method::dl_baseline};
            break;
        case ExperimentId::sinr_vs_snr_robust:
            spec.scenario.err = AngleErrorModel::from_degrees(3.0);
            spec.sweep = {"snr_db", range(-15.0, 2.5, 15.0)};
            spec.methods = {Method::nsp_perfect_reference, Method::nsp_baseline, Method::robust};
            break;
        case ExperimentId::rmse_vs_epsilon:
            spec.sweep = {"epsilon_deg", range(1.0, 1.0, 10.0)};
            spec.methods = {Method::robust, Method::dl_baseline, Method::nsp_baseline};
            break;
        case ExperimentId::sinr_vs_snapshots:
            spec.scenario.err = AngleErrorModel::from_degrees(3.0);
            spec.sweep = {"snapshots", {1, 2, 4, 8, 16, 32, 64, 128, 256}};
            spec.methods = {Method::robust};
            break;
    }
    return spec;
}

void ExperimentSpec::validate() const {
    scenario.validate();
    if (methods.empty()) throw ConfigError("methods: list must not be empty");
    if (trials < 1) throw ConfigError("trials: must be at least 1");
    if (sweep.values.empty()) throw ConfigError("sweep_values: list must not be empty");
    for (double v : sweep.values) {
        if (!std::isfinite(v)) throw ConfigError("sweep_values: must be finite");
        switch (id) {
            case ExperimentId::beam_pattern:
                if (std::abs(v) > 90.0) throw ConfigError("sweep_values: beam-pattern angles must lie in [-90, 90]");
                break;
            case ExperimentId::rmse_vs_epsilon:
                if (v < 0.0 || v >= 90.0) throw ConfigError("sweep_values: epsilon must lie in [0, 90) degrees");
                break;
            case ExperimentId::sinr_vs_snapshots:
                if (v < 1.0 || v != std::floor(v)) throw ConfigError("sweep_values: snapshot counts must be integers >= 1");
                break;
            default:
                break;
        }
    }
    if (id == ExperimentId::sinr_vs_snapshots && snapshot_snrs_db.empty()) {
        throw ConfigError("snapshot_snrs_db: list must not be empty");
    }
    QuadratureRule check(options.quadrature_nodes);
    (void)check;
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::resolved_settings() const {
    const auto& s = scenario;
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("experiment", std::string(to_string(id)));
    out.emplace_back("n_antennas", std::to_string(s.cfg.n_antennas()));
    out.emplace_back("n_subarrays", std::to_string(s.cfg.n_subarrays()));
    out.emplace_back("spacing", fmt_exact(s.cfg.spacing_over_wavelength()));
    out.emplace_back("theta_d", fmt_exact(s.theta_d.radians) + "rad");
    out.emplace_back("interferers", join(s.interferers, [](Angle a) { return fmt_exact(a.radians) + "rad"; }));
    out.emplace_back("desired_snr_db", fmt_exact(s.desired_snr_db));
    out.emplace_back("interferer_snr_db", join(s.interferer_snr_db, fmt_exact));
    out.emplace_back("noise_power", fmt_exact(s.noise_power));
    out.emplace_back("epsilon", fmt_exact(s.err.epsilon()) + "rad");
    out.emplace_back("snapshots", std::to_string(s.snapshots));
    out.emplace_back("seed", std::to_string(s.seed));
    out.emplace_back("trials", std::to_string(trials));
    out.emplace_back(options.dl.is_noise_multiple() ? "gamma_noise_mult" : "gamma", fmt_exact(options.dl.value()));
    out.emplace_back("full_digital_dl", options.full_digital_dl ? "true" : "false");
    out.emplace_back("symbols", s.symbols == SymbolModel::qpsk ? "qpsk" : "gaussian");
    out.emplace_back("quadrature_nodes", std::to_string(options.quadrature_nodes));
    out.emplace_back("methods", join(methods, [](Method m) { return std::string(to_string(m)); }));
    out.emplace_back("sweep_values", join(sweep.values, fmt_exact));
    if (id == ExperimentId::sinr_vs_snapshots) out.emplace_back("snapshot_snrs_db", join(snapshot_snrs_db, fmt_exact));
    return out;
}

ExperimentSpec parse_scenario(std::string_view text, std::optional<ExperimentId> id) {
    std::map<std::string, std::string, std::less<>> kv;
    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (kv.contains(key)) throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        kv.emplace(std::move(key), std::string(trim(line.substr(eq + 1))));
    }
    const auto get = [&](std::string_view key) -> std::optional<std::string_view> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return std::string_view(it->second);
    };

    if (!id) {
        if (auto v = get("experiment")) {
            id = parse_experiment_id(*v);
            if (!id) throw ConfigError("experiment: unknown id '" + std::string(*v) + "'");
        } else {
            id = ExperimentId::beam_pattern;
        }
    }
    ExperimentSpec spec = default_spec(*id);
    Scenario& s = spec.scenario;

    if (get("n_antennas") || get("n_subarrays") || get("spacing")) {
        const int n = get("n_antennas") ? static_cast<int>(parse_integer("n_antennas", *get("n_antennas")))
                                        : s.cfg.n_antennas();
        const int k = get("n_subarrays") ? static_cast<int>(parse_integer("n_subarrays", *get("n_subarrays")))
                                         : s.cfg.n_subarrays();
        const double d = get("spacing") ? parse_number("spacing", *get("spacing")) : s.cfg.spacing_over_wavelength();
        s.cfg = ArrayConfig(n, k, d);
    }
    if (auto v = get("theta_d")) s.theta_d = Angle{parse_angle(*v)};
    if (auto v = get("interferers")) {
        s.interferers.clear();
        for (auto item : parse_list(*v)) s.interferers.push_back(Angle{parse_angle(item)});
        s.interferer_snr_db.assign(s.interferers.size(), 15.0);
    }
    if (auto v = get("desired_snr_db")) s.desired_snr_db = parse_number("desired_snr_db", *v);
    if (auto v = get("interferer_snr_db")) {
        std::vector<double> vals;
        for (auto item : parse_list(*v)) vals.push_back(parse_number("interferer_snr_db", item));
        if (vals.size() == 1) vals.assign(s.interferers.size(), vals.front());
        s.interferer_snr_db = std::move(vals);
    }
    if (auto v = get("noise_power")) s.noise_power = parse_number("noise_power", *v);
    if (auto v = get("epsilon")) {
        try {
            s.err = AngleErrorModel(parse_angle(*v));
        } catch (const ConfigError&) {
            throw ConfigError("epsilon: must be an angle in [0, 90) degrees, got '" + std::string(*v) + "'");
        }
    }
    if (auto v = get("snapshots")) s.snapshots = static_cast<int>(parse_integer("snapshots", *v));
    if (auto v = get("seed")) {
        const long long seed = parse_integer("seed", *v);
        if (seed < 0) throw ConfigError("seed: must be nonnegative");
        s.seed = static_cast<std::uint64_t>(seed);
    }
    if (auto v = get("trials")) spec.trials = static_cast<int>(parse_integer("trials", *v));
    if (get("gamma") && get("gamma_noise_mult")) throw ConfigError("gamma: set either gamma or gamma_noise_mult");
    if (auto v = get("gamma")) spec.options.dl = DiagonalLoadingConfig::fixed(parse_number("gamma", *v));
    if (auto v = get("gamma_noise_mult")) {
        spec.options.dl = DiagonalLoadingConfig::noise_multiple(parse_number("gamma_noise_mult", *v));
    }
    if (auto v = get("full_digital_dl")) spec.options.full_digital_dl = parse_bool("full_digital_dl", *v);
    if (auto v = get("symbols")) {
        if (*v == "gaussian") {
            s.symbols = SymbolModel::gaussian;
        } else if (*v == "qpsk") {
            s.symbols = SymbolModel::qpsk;
        } else {
            throw ConfigError("symbols: expected gaussian or qpsk, got '" + std::string(*v) + "'");
        }
    }
    if (auto v = get("quadrature_nodes")) {
        spec.options.quadrature_nodes = static_cast<int>(parse_integer("quadrature_nodes", *v));
    }
    if (auto v = get("methods")) {
        spec.methods.clear();
        for (auto item : parse_list(*v)) {
            auto m = parse_method(item);
            if (!m) throw ConfigError("methods: unknown method '" + std::string(item) + "'");
            spec.methods.push_back(*m);
        }
    }
    if (auto v = get("sweep_values")) spec.sweep.values = parse_grid("sweep_values", *v);
    if (auto v = get("snapshot_snrs_db")) {
        spec.snapshot_snrs_db.clear();
        for (auto item : parse_list(*v)) spec.snapshot_snrs_db.push_back(parse_number("snapshot_snrs_db", item));
    }
    if (auto v = get("output")) spec.output_path = std::string(*v);

    spec.validate();
    return spec;
}

ExperimentSpec load_scenario(const std::filesystem::path& path, std::optional<ExperimentId> id) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("config: read failed for '" + path.string() + "'");
    return parse_scenario(buf.str(), id);
}

ResultTable run_experiment(const ExperimentSpec& spec, const std::string& timestamp) {
    spec.validate();
    ResultTable table;
    const auto& values = spec.sweep.values;
    table.rows.assign(values.size(), {});
    std::vector<int> failures(values.size(), 0);

    std::vector<Designer> designers;
    for (Method m : spec.methods) designers.push_back(make_designer(m, spec.options));
    const Designer reference = make_designer(Method::nsp_perfect_reference, spec.options);

    table.columns.push_back(spec.sweep.parameter);
    switch (spec.id) {
        case ExperimentId::beam_pattern: {
            for (Method m : spec.methods) table.columns.push_back("gain_" + std::string(column_tag(m)) + "_db");
            std::vector<Angle> grid;
            for (double v : values) grid.push_back(Angle::from_degrees(v));
            const Scenario& s = spec.scenario;
            for (std::size_t i = 0; i < values.size(); ++i) table.rows[i].push_back(values[i]);
            for (const auto& designer : designers) {
                const HybridDesign d = designer(s, draw_trial(s, 0));
                const auto pattern = normalized_beam_pattern(d.analog, d.digital, d.analog.config(), grid);
                for (std::size_t i = 0; i < values.size(); ++i) table.rows[i].push_back(pattern[i].gain_db);
            }
            break;
        }
        case ExperimentId::sinr_vs_snr:
        case ExperimentId::sinr_vs_snr_robust: {
            for (Method m : spec.methods) table.columns.push_back("sinr_" + std::string(column_tag(m)) + "_db");
            for (Method m : spec.methods) table.columns.push_back("stderr_" + std::string(column_tag(m)) + "_db");
            parallel_for(values.size(), [&](std::size_t i) {
                Scenario s = spec.scenario;
                s.desired_snr_db = values[i];
                std::vector<double> means, errs;
                for (const auto& designer : designers) {
                    const auto rep = monte_carlo_sinr(designer, s, spec.trials);
                    means.push_back(rep.mean_db);
                    errs.push_back(rep.stderr_db);
                    failures[i] += rep.failed;
                }
                auto& row = table.rows[i];
                row.push_back(values[i]);
                row.insert(row.end(), means.begin(), means.end());
                row.insert(row.end(), errs.begin(), errs.end());
            });
            break;
        }
        case ExperimentId::rmse_vs_epsilon: {
            for (Method m : spec.methods) table.columns.push_back("rmse_" + std::string(column_tag(m)) + "_db");
            for (Method m : spec.methods) table.columns.push_back("stderr_" + std::string(column_tag(m)) + "_db");
            parallel_for(values.size(), [&](std::size_t i) {
                Scenario s = spec.scenario;
                s.err = AngleErrorModel::from_degrees(values[i]);
                std::vector<double> means, errs;
                for (const auto& designer : designers) {
                    const auto rep = rmse_report(designer, reference, s, spec.trials);
                    means.push_back(rep.rmse_db);
                    errs.push_back(rep.stderr_db);
                    failures[i] += rep.failed;
                }
                auto& row = table.rows[i];
                row.push_back(values[i]);
                row.insert(row.end(), means.begin(), means.end());
                row.insert(row.end(), errs.begin(), errs.end());
            });
            break;
        }
        case ExperimentId::sinr_vs_snapshots: {
            for (double snr : spec.snapshot_snrs_db) {
                for (Method m : spec.methods) {
                    table.columns.push_back("sinr_" + std::string(column_tag(m)) + "_snr_" + snr_label(snr) + "_db");
                }
            }
            for (double snr : spec.snapshot_snrs_db) {
                for (Method m : spec.methods) {
                    table.columns.push_back("stderr_" + std::string(column_tag(m)) + "_snr_" + snr_label(snr) + "_db");
                }
            }
            parallel_for(values.size(), [&](std::size_t i) {
                Scenario s = spec.scenario;
                s.snapshots = static_cast<int>(values[i]);
                std::vector<double> means, errs;
                for (double snr : spec.snapshot_snrs_db) {
                    s.desired_snr_db = snr;
                    for (const auto& designer : designers) {
                        const auto rep = monte_carlo_sinr(designer, s, spec.trials);
                        means.push_back(rep.mean_db);
                        errs.push_back(rep.stderr_db);
                        failures[i] += rep.failed;
                    }
                }
                auto& row = table.rows[i];
                row.push_back(values[i]);
                row.insert(row.end(), means.begin(), means.end());
                row.insert(row.end(), errs.begin(), errs.end());
            });
            break;
        }
    }

    int failed = 0;
    for (int f : failures) failed += f;
    table.metadata.emplace_back("version", std::string(kVersion));
    if (!timestamp.empty()) table.metadata.emplace_back("timestamp", timestamp);
    table.metadata.emplace_back("failed_trials", std::to_string(failed));
    for (auto& kv : spec.resolved_settings()) table.metadata.push_back(std::move(kv));
    return table;
}

std::string format_csv(const ResultTable& table) {
    std::ostringstream os;
    for (const auto& [key, value] : table.metadata) os << "# " << key << " = " << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    os << std::setprecision(6);
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("output: cannot open '" + path.string() + "' for writing");
    out << format_csv(table);
    out.flush();
    if (!out) throw IoError("output: write failed for '" + path.string() + "'");
}

ResultTable parse_csv(std::string_view text) {
    ResultTable table;
    bool have_header = false;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            table.metadata.emplace_back(std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))));
            continue;
        }
        if (!have_header) {
            for (auto col : split(line, ',')) table.columns.emplace_back(col);
            have_header = true;
            continue;
        }
        std::vector<double> row;
        for (auto cell : split(line, ',')) row.push_back(parse_number("csv line " + std::to_string(line_no), cell));
        if (row.size() != table.columns.size()) {
            throw ParseError("csv line " + std::to_string(line_no) + ": row width does not match header");
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("csv: missing header row");
    return table;
}

std::string format_gnuplot(const ResultTable& table, const std::filesystem::path& csv_path) {
    std::ostringstream os;
    os << "set datafile separator ','\n";
    os << "set datafile commentschars '#'\n";
    os << "set grid\n";
    os << "set key outside right\n";
    if (!table.columns.empty()) os << "set xlabel '" << table.columns.front() << "'\n";
    os << "plot";
    bool first = true;
    for (std::size_t i = 1; i < table.columns.size(); ++i) {
        if (table.columns[i].starts_with("stderr_")) continue;
        os << (first ? " " : ", \\\n     ") << "'" << csv_path.filename().string() << "' every ::1 using 1:" << (i + 1)
           << " with lines title '" << table.columns[i] << "'";
        first = false;
    }
    os << '\n';
    return os.str();
}

}  // namespace hybridbf
