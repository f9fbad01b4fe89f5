#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridbf/simulation.hpp"

namespace hybridbf {

inline constexpr std::string_view kVersion = "hybridbf 0.1.0";

enum class ExperimentId { beam_pattern, sinr_vs_snr, sinr_vs_snr_robust, rmse_vs_epsilon, sinr_vs_snapshots };

std::string_view to_string(ExperimentId id);
std::optional<ExperimentId> parse_experiment_id(std::string_view text);

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view text);
/// Short tag used in column names: robust, nsp, dl, nsp_ref.
std::string_view column_tag(Method m);

struct Sweep {
    std::string parameter;  // angle_deg | snr_db | epsilon_deg | snapshots
    std::vector<double> values;
};

/// A fully resolved experiment: scenario, sweep grid, methods and run settings.
struct ExperimentSpec {
    ExperimentId id = ExperimentId::beam_pattern;
    Scenario scenario{};
    Sweep sweep{};
    std::vector<Method> methods{};
    std::string output_path{};
    int trials = 1000;
    MethodOptions options{};
    /// Desired SNRs plotted against snapshot count (sinr-vs-snapshots only).
    std::vector<double> snapshot_snrs_db{-10.0, 0.0, 10.0};

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Config-file lines (key = value) that reproduce this spec.
    std::vector<std::pair<std::string, std::string>> resolved_settings() const;
};

/// Spec populated with the defaults for `id` (reference array, grids, methods).
ExperimentSpec default_spec(ExperimentId id);

/// Parses key = value text. `id` wins over an `experiment` key in the text;
/// with neither, the experiment is beam-pattern. Throws ParseError or ConfigError.
ExperimentSpec parse_scenario(std::string_view text, std::optional<ExperimentId> id = std::nullopt);

/// Reads and parses a config file. Throws IoError when it cannot be read.
ExperimentSpec load_scenario(const std::filesystem::path& path, std::optional<ExperimentId> id = std::nullopt);

/// Angle literal in degrees unless suffixed: "3", "3deg", "0.05rad". Returns radians.
double parse_angle(std::string_view text);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// Runs the sweep. Sweep points may run concurrently; rows come back in sweep order.
/// `timestamp` goes into metadata verbatim; pass an empty string for none.
ResultTable run_experiment(const ExperimentSpec& spec, const std::string& timestamp = "");

/// `#`-prefixed metadata, header, then one row per sweep value (6 significant digits).
void emit_csv(const ResultTable& table, const std::filesystem::path& path);
std::string format_csv(const ResultTable& table);
ResultTable parse_csv(std::string_view text);

/// gnuplot script plotting every metric column of `csv_path` against the first column.
std::string format_gnuplot(const ResultTable& table, const std::filesystem::path& csv_path);

}  // namespace hybridbf
