#pragma once

#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

namespace hybridbf {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Gains below this are reported as this value so tables stay finite.
inline constexpr double kGainFloorDb = -120.0;

/// Direction of arrival measured from broadside. Stored in radians.
struct Angle {
    double radians = 0.0;

    static constexpr Angle from_degrees(double deg) { return Angle{deg * std::numbers::pi / 180.0}; }
    constexpr double degrees() const { return radians * 180.0 / std::numbers::pi; }
};

/// Uniform linear array of N elements split into K contiguous subarrays of M elements.
///
/// Antenna (k, m) with 0-based k < K, m < M sits at global index k*M + m.
class ArrayConfig {
public:
    /// Throws ConfigError unless N = K*M with all counts positive and spacing > 0.
    ArrayConfig(int n_antennas, int n_subarrays, double spacing_over_wavelength = 0.5);

    int n_antennas() const { return n_antennas_; }
    int n_subarrays() const { return n_subarrays_; }
    int antennas_per_subarray() const { return n_antennas_ / n_subarrays_; }
    double spacing_over_wavelength() const { return spacing_; }

    Eigen::Index global_index(Eigen::Index k, Eigen::Index m) const { return k * antennas_per_subarray() + m; }

    bool operator==(const ArrayConfig&) const = default;

private:
    int n_antennas_;
    int n_subarrays_;
    double spacing_;
};

/// Array manifold a(theta); unit-modulus entries, first entry exactly 1.
class SteeringVector {
public:
    explicit SteeringVector(CVector entries) : entries_(std::move(entries)) {}
    const CVector& entries() const { return entries_; }
    Eigen::Index size() const { return entries_.size(); }
    cdouble operator[](Eigen::Index i) const { return entries_[i]; }

private:
    CVector entries_;
};

/// Sub-connected phase-shifter network. Only the K x M phases are stored;
/// the N x K block-diagonal matrix is available through dense().
class AnalogBeamformer {
public:
    AnalogBeamformer(ArrayConfig cfg, RMatrix phases);

    const ArrayConfig& config() const { return cfg_; }
    const RMatrix& phases() const { return phases_; }

    /// Entry (k*M + m, k) of the phase-shift matrix.
    cdouble weight(Eigen::Index k, Eigen::Index m) const;

    CMatrix dense() const;

private:
    ArrayConfig cfg_;
    RMatrix phases_;
};

/// Baseband combiner w_BB, one weight per RF chain.
class DigitalBeamformer {
public:
    explicit DigitalBeamformer(CVector weights);
    const CVector& weights() const { return weights_; }
    Eigen::Index size() const { return weights_.size(); }

private:
    CVector weights_;
};

/// End-to-end N-element spatial filter.
class TotalBeamformer {
public:
    explicit TotalBeamformer(CVector entries) : entries_(std::move(entries)) {}
    const CVector& entries() const { return entries_; }
    Eigen::Index size() const { return entries_.size(); }

private:
    CVector entries_;
};

SteeringVector steering_vector(const ArrayConfig& cfg, Angle theta);

/// Throws ConfigError when phases is not K x M.
AnalogBeamformer assemble_analog(const ArrayConfig& cfg, const RMatrix& phases);

/// W_RF * w_BB, computed block by block.
CVector effective_beamformer(const AnalogBeamformer& wrf, const DigitalBeamformer& wbb);

/// W_RF^H * a, computed block by block.
CVector subarray_steering(const AnalogBeamformer& wrf, const CVector& a);

/// 10 log10 |v^H a(theta)|^2, floored at kGainFloorDb. Throws DomainError for v = 0.
double beam_gain(const CVector& v, const ArrayConfig& cfg, Angle theta);

/// Converts a power ratio to dB with the kGainFloorDb floor.
double power_to_db(double power);

}  // namespace hybridbf
