#include "hybridbf/array.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hybridbf/errors.hpp"

namespace hybridbf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ArrayConfig::ArrayConfig(int n_antennas, int n_subarrays, double spacing_over_wavelength)
    : n_antennas_(n_antennas), n_subarrays_(n_subarrays), spacing_(spacing_over_wavelength) {
    if (n_antennas_ <= 0) throw ConfigError("n_antennas: must be positive, got " + std::to_string(n_antennas_));
    if (n_subarrays_ <= 0) throw ConfigError("n_subarrays: must be positive, got " + std::to_string(n_subarrays_));
    if (n_antennas_ % n_subarrays_ != 0) {
        throw ConfigError("n_antennas: " + std::to_string(n_antennas_) + " is not divisible by n_subarrays " +
                          std::to_string(n_subarrays_));
    }
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) {
        throw ConfigError("spacing_over_wavelength: must be positive and finite");
    }
}

AnalogBeamformer::AnalogBeamformer(ArrayConfig cfg, RMatrix phases) : cfg_(cfg), phases_(std::move(phases)) {
    if (phases_.rows() != cfg_.n_subarrays() || phases_.cols() != cfg_.antennas_per_subarray()) {
        throw ConfigError("phases: expected " + std::to_string(cfg_.n_subarrays()) + "x" +
                          std::to_string(cfg_.antennas_per_subarray()) + ", got " + std::to_string(phases_.rows()) +
                          "x" + std::to_string(phases_.cols()));
    }
}

cdouble AnalogBeamformer::weight(Eigen::Index k, Eigen::Index m) const {
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg_.antennas_per_subarray()));
    return std::polar(scale, phases_(k, m));
}

CMatrix AnalogBeamformer::dense() const {
    const Eigen::Index k_count = cfg_.n_subarrays();
    const Eigen::Index m_count = cfg_.antennas_per_subarray();
    CMatrix out = CMatrix::Zero(cfg_.n_antennas(), k_count);
    for (Eigen::Index k = 0; k < k_count; ++k) {
        for (Eigen::Index m = 0; m < m_count; ++m) out(cfg_.global_index(k, m), k) = weight(k, m);
    }
    return out;
}

DigitalBeamformer::DigitalBeamformer(CVector weights) : weights_(std::move(weights)) {
    if (!weights_.allFinite()) throw DomainError("digital beamformer: non-finite weight");
}

SteeringVector steering_vector(const ArrayConfig& cfg, Angle theta) {
    if (std::abs(theta.radians) > std::numbers::pi / 2 + 1e-12) {
        throw DomainError("steering_vector: |theta| exceeds 90 degrees");
    }
    const double step = kTwoPi * cfg.spacing_over_wavelength() * std::sin(theta.radians);
    CVector a(cfg.n_antennas());
    a[0] = 1.0;
    for (Eigen::Index i = 1; i < a.size(); ++i) a[i] = std::polar(1.0, step * static_cast<double>(i));
    return SteeringVector(std::move(a));
}

AnalogBeamformer assemble_analog(const ArrayConfig& cfg, const RMatrix& phases) { return {cfg, phases}; }

CVector effective_beamformer(const AnalogBeamformer& wrf, const DigitalBeamformer& wbb) {
    const auto& cfg = wrf.config();
    if (wbb.size() != cfg.n_subarrays()) {
        throw DimensionError("effective_beamformer: w_BB has " + std::to_string(wbb.size()) + " entries, expected " +
                             std::to_string(cfg.n_subarrays()));
    }
    CVector v(cfg.n_antennas());
    for (Eigen::Index k = 0; k < cfg.n_subarrays(); ++k) {
        for (Eigen::Index m = 0; m < cfg.antennas_per_subarray(); ++m) {
            v[cfg.global_index(k, m)] = wrf.weight(k, m) * wbb.weights()[k];
        }
    }
    return v;
}

CVector subarray_steering(const AnalogBeamformer& wrf, const CVector& a) {
    const auto& cfg = wrf.config();
    if (a.size() != cfg.n_antennas()) {
        throw DimensionError("subarray_steering: steering vector has " + std::to_string(a.size()) +
                             " entries, expected " + std::to_string(cfg.n_antennas()));
    }
    CVector out = CVector::Zero(cfg.n_subarrays());
    for (Eigen::Index k = 0; k < cfg.n_subarrays(); ++k) {
        for (Eigen::Index m = 0; m < cfg.antennas_per_subarray(); ++m) {
            out[k] += std::conj(wrf.weight(k, m)) * a[cfg.global_index(k, m)];
        }
    }
    return out;
}

double power_to_db(double power) {
    if (!(power > 0.0)) return kGainFloorDb;
    return std::max(10.0 * std::log10(power), kGainFloorDb);
}

double beam_gain(const CVector& v, const ArrayConfig& cfg, Angle theta) {
    if (v.size() != cfg.n_antennas()) throw DimensionError("beam_gain: beamformer length does not match array");
    if (v.squaredNorm() == 0.0) throw DomainError("beam_gain: zero beamformer");
    const cdouble response = v.dot(steering_vector(cfg, theta).entries());  // v^H a
    return power_to_db(std::norm(response));
}

}  // namespace hybridbf
