#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hybridbf/array.hpp"
#include "hybridbf/beamformers.hpp"
#include "hybridbf/expectation.hpp"

namespace hybridbf {

enum class SymbolModel { gaussian, qpsk };

/// Where receiver noise is added: after analog combining (one term per RF
/// chain) or at each antenna before the phase shifters.
enum class NoiseInjection { per_subarray, per_antenna };

/// True emitter geometry, powers and receiver settings. Defaults are the
/// 32-element, 4-subarray reference setup.
struct Scenario {
    ArrayConfig cfg{32, 4, 0.5};
    Angle theta_d = Angle::from_degrees(60.0);
    std::vector<Angle> interferers{Angle::from_degrees(30.0), Angle::from_degrees(-15.0)};
    double desired_snr_db = 0.0;
    std::vector<double> interferer_snr_db{15.0, 15.0};
    double noise_power = 1.0;
    AngleErrorModel err{};
    int snapshots = 100;
    std::uint64_t seed = 1;
    SymbolModel symbols = SymbolModel::gaussian;

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    double desired_power() const;
    double interferer_power(std::size_t q) const;
};

/// W_RF^H A s(l) + n(l) for l = 0..L-1 using TRUE DOAs. Deterministic in `seed`;
/// symbols and noise are drawn independently of `wrf`, so designs sharing a
/// seed see the same source realisation.
CMatrix generate_snapshots(const Scenario& s, const AnalogBeamformer& wrf, std::uint64_t seed,
                           NoiseInjection noise = NoiseInjection::per_subarray);
inline CMatrix generate_snapshots(const Scenario& s, const AnalogBeamformer& wrf) {
    return generate_snapshots(s, wrf, s.seed);
}

/// Analytic output SINR (dB) against the true scenario parameters.
/// The steering vectors follow wrf's array, which may differ from s.cfg in
/// its subarray split (fully digital designs). Throws DomainError for a zero beamformer.
double output_sinr(const AnalogBeamformer& wrf, const DigitalBeamformer& wbb, const Scenario& s);

struct PatternPoint {
    Angle angle;
    double gain_db;
};

/// Beam gain over `grid`, shifted so its maximum is 0 dB.
std::vector<PatternPoint> normalized_beam_pattern(const AnalogBeamformer& wrf, const DigitalBeamformer& wbb,
                                                  const ArrayConfig& cfg, std::span<const Angle> grid);

/// DOA estimates and the snapshot seed for one Monte Carlo trial.
struct TrialDraw {
    Angle theta_hat_d;
    std::vector<Angle> interferer_hats;
    std::uint64_t snapshot_seed = 0;
};

/// Derives trial t's stream from the master seed (splitmix64); independent of
/// execution order.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Errors drawn uniformly on [-eps, eps]; the estimate is theta_true - delta.
TrialDraw draw_trial(const Scenario& s, std::uint64_t trial);

enum class Method { robust, nsp_baseline, dl_baseline, nsp_perfect_reference };

struct MethodOptions {
    DiagonalLoadingConfig dl = DiagonalLoadingConfig::noise_multiple(kDefaultLoadingFactor);
    /// DL baseline runs on all N antennas (K = N) instead of the hybrid split.
    bool full_digital_dl = false;
    int quadrature_nodes = QuadratureRule::kDefaultNodes;
};

/// Builds a design for one trial: forms the method's initial analog stage,
/// takes snapshots through it, and runs the method on the estimates.
using Designer = std::function<HybridDesign(const Scenario&, const TrialDraw&)>;

Designer make_designer(Method method, const MethodOptions& opts = {});

struct MonteCarloReport {
    std::vector<double> sinr_db;  // one per successful trial, trial order
    double mean_db = 0.0;
    double stderr_db = 0.0;
    int trials = 0;
    int failed = 0;
    std::uint64_t seed = 0;
};

/// Mean and standard error of dB values.
void summarize(MonteCarloReport& report);

/// Throws ConfigError for trials < 1. Degenerate trials are excluded and counted.
MonteCarloReport monte_carlo_sinr(const Designer& method, const Scenario& s, int trials);

struct RmseReport {
    double rmse_db = 0.0;
    double stderr_db = 0.0;  // delta-method estimate
    int used = 0;
    int failed = 0;
};

/// sqrt(mean_t (SINR_method - SINR_reference)^2) in dB, same draws for both.
RmseReport rmse_report(const Designer& method, const Designer& reference, const Scenario& s, int trials);
double rmse_vs_reference(const Designer& method, const Designer& reference, const Scenario& s, int trials);

}  // namespace hybridbf
