#include "hybridbf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hybridbf/errors.hpp"

namespace hybridbf {

namespace {

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class SymbolSource {
public:
    explicit SymbolSource(std::uint64_t seed) : rng_(seed) {}

    // CN(0, power): independent real and imaginary parts of variance power/2.
    cdouble gaussian(double power) {
        const double sd = std::sqrt(power / 2.0);
        const double re = normal_(rng_);
        const double im = normal_(rng_);
        return {sd * re, sd * im};
    }

    cdouble qpsk(double power) {
        const double amp = std::sqrt(power / 2.0);
        const auto bits = rng_();
        return {(bits & 1U) ? amp : -amp, (bits & 2U) ? amp : -amp};
    }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace

void Scenario::validate() const {
    if (!std::isfinite(theta_d.radians) || std::abs(theta_d.radians) > std::numbers::pi / 2) {
        throw ConfigError("theta_d: must lie in [-90, 90] degrees");
    }
    for (const auto& a : interferers) {
        if (!std::isfinite(a.radians) || std::abs(a.radians) > std::numbers::pi / 2) {
            throw ConfigError("interferers: every DOA must lie in [-90, 90] degrees");
        }
    }
    if (!std::isfinite(desired_snr_db)) throw ConfigError("desired_snr_db: must be finite");
    if (interferer_snr_db.size() != interferers.size()) {
        throw ConfigError("interferer_snr_db: expected " + std::to_string(interferers.size()) + " values, got " +
                          std::to_string(interferer_snr_db.size()));
    }
    for (double v : interferer_snr_db) {
        if (!std::isfinite(v)) throw ConfigError("interferer_snr_db: must be finite");
    }
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) throw ConfigError("noise_power: must be positive");
    if (snapshots < 1) throw ConfigError("snapshots: must be at least 1");
    if (static_cast<int>(interferers.size()) >= cfg.n_antennas()) {
        throw ConfigError("interferers: need fewer interferers than antennas");
    }
}

double Scenario::desired_power() const { return noise_power * db_to_ratio(desired_snr_db); }
double Scenario::interferer_power(std::size_t q) const { return noise_power * db_to_ratio(interferer_snr_db.at(q)); }

CMatrix generate_snapshots(const Scenario& s, const AnalogBeamformer& wrf, std::uint64_t seed, NoiseInjection noise) {
    const ArrayConfig& cfg = wrf.config();
    const Eigen::Index n = cfg.n_antennas();
    const Eigen::Index k = cfg.n_subarrays();
    const Eigen::Index sources = 1 + static_cast<Eigen::Index>(s.interferers.size());

    CMatrix steering(n, sources);
    steering.col(0) = steering_vector(cfg, s.theta_d).entries();
    std::vector<double> powers{s.desired_power()};
    for (std::size_t q = 0; q < s.interferers.size(); ++q) {
        steering.col(static_cast<Eigen::Index>(q) + 1) = steering_vector(cfg, s.interferers[q]).entries();
        powers.push_back(s.interferer_power(q));
    }
    const CMatrix wrf_dense = wrf.dense();
    const CMatrix combined = wrf_dense.adjoint() * steering;  // K x (Q+1)

    SymbolSource src(seed);
    CMatrix y(k, s.snapshots);
    CVector sym(sources);
    for (int l = 0; l < s.snapshots; ++l) {
        for (Eigen::Index i = 0; i < sources; ++i) {
            sym[i] = s.symbols == SymbolModel::qpsk ? src.qpsk(powers[static_cast<std::size_t>(i)])
                                                    : src.gaussian(powers[static_cast<std::size_t>(i)]);
        }
        if (noise == NoiseInjection::per_subarray) {
            CVector nvec(k);
            for (Eigen::Index i = 0; i < k; ++i) nvec[i] = src.gaussian(s.noise_power);
            y.col(l) = combined * sym + nvec;
        } else {
            CVector nvec(n);
            for (Eigen::Index i = 0; i < n; ++i) nvec[i] = src.gaussian(s.noise_power);
            y.col(l) = combined * sym + wrf_dense.adjoint() * nvec;
        }
    }
    return y;
}

double output_sinr(const AnalogBeamformer& wrf, const DigitalBeamformer& wbb, const Scenario& s) {
    const ArrayConfig& cfg = wrf.config();
    const CVector v = effective_beamformer(wrf, wbb);
    const double noise = s.noise_power * wbb.weights().squaredNorm();
    if (!(noise > 0.0)) throw DomainError("output_sinr: zero beamformer");

    const double desired = s.desired_power() * std::norm(v.dot(steering_vector(cfg, s.theta_d).entries()));
    double interference = 0.0;
    for (std::size_t q = 0; q < s.interferers.size(); ++q) {
        interference += s.interferer_power(q) * std::norm(v.dot(steering_vector(cfg, s.interferers[q]).entries()));
    }
    return power_to_db(desired / (interference + noise));
}

std::vector<PatternPoint> normalized_beam_pattern(const AnalogBeamformer& wrf, const DigitalBeamformer& wbb,
                                                  const ArrayConfig& cfg, std::span<const Angle> grid) {
    if (grid.empty()) throw ConfigError("beam pattern: empty angle grid");
    const CVector v = effective_beamformer(wrf, wbb);
    std::vector<PatternPoint> out;
    out.reserve(grid.size());
    for (const Angle& a : grid) out.push_back({a, beam_gain(v, cfg, a)});
    const double peak = std::max_element(out.begin(), out.end(), [](const auto& x, const auto& y) {
                            return x.gain_db < y.gain_db;
                        })->gain_db;
    for (auto& p : out) p.gain_db = std::max(p.gain_db - peak, kGainFloorDb);
    return out;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(splitmix64(master) ^ splitmix64(trial + 0x632BE59BD9B4E019ULL));
}

TrialDraw draw_trial(const Scenario& s, std::uint64_t trial) {
    std::mt19937_64 rng(trial_seed(s.seed, trial));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double eps = s.err.epsilon();

    TrialDraw draw;
    // Deltas are eps * u with u fixed per trial, so sweeps over eps share draws.
    draw.theta_hat_d = Angle{s.theta_d.radians - eps * unit(rng)};
    for (const Angle& a : s.interferers) draw.interferer_hats.push_back(Angle{a.radians - eps * unit(rng)});
    draw.snapshot_seed = rng();
    return draw;
}

Designer make_designer(Method method, const MethodOptions& opts) {
    const QuadratureRule quad(opts.quadrature_nodes);
    switch (method) {
        case Method::robust:
            return [opts, quad](const Scenario& s, const TrialDraw& d) {
                const auto wrf0 = assemble_analog(s.cfg, initial_analog_phases(s.cfg, d.theta_hat_d, s.err));
                const auto cov = sample_covariance(generate_snapshots(s, wrf0, d.snapshot_seed));
                return robust_hybrid_adb(s.cfg, d.theta_hat_d, d.interferer_hats, s.err, cov, opts.dl,
                                         s.noise_power, quad);
            };
        case Method::nsp_baseline:
            return [opts](const Scenario& s, const TrialDraw& d) {
                const auto wrf0 =
                    assemble_analog(s.cfg, initial_analog_phases(s.cfg, d.theta_hat_d, AngleErrorModel::exact()));
                const auto cov = sample_covariance(generate_snapshots(s, wrf0, d.snapshot_seed));
                return nsp_hybrid_baseline(s.cfg, d.theta_hat_d, d.interferer_hats, cov, opts.dl, s.noise_power);
            };
        case Method::nsp_perfect_reference:
            return [opts](const Scenario& s, const TrialDraw& d) {
                const auto wrf0 =
                    assemble_analog(s.cfg, initial_analog_phases(s.cfg, s.theta_d, AngleErrorModel::exact()));
                const auto cov = sample_covariance(generate_snapshots(s, wrf0, d.snapshot_seed));
                return nsp_hybrid_baseline(s.cfg, s.theta_d, s.interferers, cov, opts.dl, s.noise_power);
            };
        case Method::dl_baseline:
            return [opts](const Scenario& s, const TrialDraw& d) {
                const ArrayConfig cfg = opts.full_digital_dl
                                            ? ArrayConfig(s.cfg.n_antennas(), s.cfg.n_antennas(),
                                                          s.cfg.spacing_over_wavelength())
                                            : s.cfg;
                const auto wrf0 =
                    assemble_analog(cfg, initial_analog_phases(cfg, d.theta_hat_d, AngleErrorModel::exact()));
                const auto cov = sample_covariance(generate_snapshots(s, wrf0, d.snapshot_seed));
                return dl_baseline(cfg, d.theta_hat_d, cov, opts.dl, s.noise_power);
            };
    }
    throw ConfigError("method: unknown");
}

void summarize(MonteCarloReport& report) {
    const auto n = static_cast<double>(report.sinr_db.size());
    if (report.sinr_db.empty()) {
        report.mean_db = std::nan("");
        report.stderr_db = std::nan("");
        return;
    }
    double sum = 0.0;
    for (double v : report.sinr_db) sum += v;
    report.mean_db = sum / n;
    double ss = 0.0;
    for (double v : report.sinr_db) ss += (v - report.mean_db) * (v - report.mean_db);
    report.stderr_db = report.sinr_db.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

MonteCarloReport monte_carlo_sinr(const Designer& method, const Scenario& s, int trials) {
    if (trials < 1) throw ConfigError("trials: must be at least 1");
    s.validate();
    MonteCarloReport report;
    report.trials = trials;
    report.seed = s.seed;
    report.sinr_db.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const TrialDraw draw = draw_trial(s, static_cast<std::uint64_t>(t));
        try {
            const HybridDesign design = method(s, draw);
            report.sinr_db.push_back(output_sinr(design.analog, design.digital, s));
        } catch (const DegenerateGeometryError&) {
            ++report.failed;
        } catch (const IllConditionedError&) {
            ++report.failed;
        }
    }
    summarize(report);
    return report;
}

RmseReport rmse_report(const Designer& method, const Designer& reference, const Scenario& s, int trials) {
    if (trials < 1) throw ConfigError("trials: must be at least 1");
    s.validate();
    std::vector<double> sq;
    sq.reserve(static_cast<std::size_t>(trials));
    RmseReport out;
    for (int t = 0; t < trials; ++t) {
        const TrialDraw draw = draw_trial(s, static_cast<std::uint64_t>(t));
        try {
            const HybridDesign a = method(s, draw);
            const HybridDesign b = reference(s, draw);
            const double diff = output_sinr(a.analog, a.digital, s) - output_sinr(b.analog, b.digital, s);
            sq.push_back(diff * diff);
        } catch (const DegenerateGeometryError&) {
            ++out.failed;
        } catch (const IllConditionedError&) {
            ++out.failed;
        }
    }
    if (sq.empty()) throw DegenerateGeometryError("rmse: every trial was degenerate");
    out.used = static_cast<int>(sq.size());
    const double n = static_cast<double>(sq.size());
    double mean = 0.0;
    for (double v : sq) mean += v;
    mean /= n;
    out.rmse_db = std::sqrt(mean);
    if (sq.size() > 1 && out.rmse_db > 0.0) {
        double var = 0.0;
        for (double v : sq) var += (v - mean) * (v - mean);
        var /= (n - 1.0);
        out.stderr_db = std::sqrt(var / n) / (2.0 * out.rmse_db);
    }
    return out;
}

double rmse_vs_reference(const Designer& method, const Designer& reference, const Scenario& s, int trials) {
    return rmse_report(method, reference, s, trials).rmse_db;
}

}  // namespace hybridbf
