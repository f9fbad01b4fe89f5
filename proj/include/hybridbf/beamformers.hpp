#pragma once

#include <span>

#include "hybridbf/array.hpp"
#include "hybridbf/expectation.hpp"

namespace hybridbf {

/// Orthonormal basis F (N x (N-Q)) of the null space of R^H.
struct NullSpaceBasis {
    CMatrix columns;
    /// One of the leading Q singular values fell below 1e-10 * sigma_max.
    bool rank_deficient = false;
};

/// Loading factor gamma, either fixed or a multiple of the noise power.
class DiagonalLoadingConfig {
public:
    static DiagonalLoadingConfig fixed(double gamma);
    static DiagonalLoadingConfig noise_multiple(double factor);

    bool is_noise_multiple() const { return noise_multiple_; }
    double value() const { return value_; }

    /// gamma for a receiver with the given per-branch noise power.
    double resolve(double noise_power) const { return noise_multiple_ ? value_ * noise_power : value_; }

private:
    DiagonalLoadingConfig(double value, bool noise_multiple);
    double value_;
    bool noise_multiple_;
};

inline constexpr double kDefaultLoadingFactor = 30.0;

struct SampleCovariance {
    CMatrix entries;
    int snapshots_used = 0;
};

struct PhaseExtraction {
    RMatrix phases;
    /// Some |w_k| was at or below 1e-12; those subarrays took v_opt's own phase.
    bool fallback_used = false;
};

/// Output of a hybrid design, plus the diagnostics raised along the way.
struct HybridDesign {
    AnalogBeamformer analog;
    DigitalBeamformer digital;
    bool rank_deficient = false;
    bool duplicate_doas = false;
    bool phase_fallback = false;
};

/// Trailing N-Q right singular vectors of R^H. Throws DimensionError when Q >= N.
NullSpaceBasis null_space_basis(const CMatrix& interference);

/// Maximizes |v^H r| subject to R^H v = 0 with ||v|| = 1.
/// Throws DegenerateGeometryError when r has no component in the null space.
TotalBeamformer nsp_total_beamformer(const ExpectedSteering& r, const ExpectedInterferenceMatrix& interference);

/// F (F^H r) / ||F^H r||, the best unit-norm combination of the basis columns.
TotalBeamformer project_onto_null_space(const NullSpaceBasis& basis, const ExpectedSteering& r);

/// Pointing phases 2 pi (d/lambda) n E[sin theta_d] for global index n.
RMatrix initial_analog_phases(const ArrayConfig& cfg, Angle theta_hat_d, const AngleErrorModel& err);

/// (1/L) sum y y^H over the columns of a K x L snapshot matrix. Throws EmptyDataError for L = 0.
SampleCovariance sample_covariance(const CMatrix& snapshots);

/// (R + gamma I)^{-1} a / (a^H (R + gamma I)^{-1} a).
DigitalBeamformer dl_digital_beamformer(const SampleCovariance& cov, const CVector& a_sub, double gamma);
DigitalBeamformer dl_digital_beamformer(const SampleCovariance& cov, const CVector& a_sub,
                                        const DiagonalLoadingConfig& dl, double noise_power = 1.0);

/// alpha_{k,m} = arg(v[k*M + m] / w_k).
PhaseExtraction extract_analog_phases(const TotalBeamformer& v_opt, const DigitalBeamformer& w_bb,
                                      const ArrayConfig& cfg);

/// One pass of the robust hybrid design: pointing phases from E[sin], NSP total
/// beamformer over expected steering quantities, DL digital stage against
/// W_RF0^H r, then analog phases re-extracted from v_opt.
///
/// `cov` must come from snapshots taken through initial_analog_phases(cfg, theta_hat_d, err).
HybridDesign robust_hybrid_adb(const ArrayConfig& cfg, Angle theta_hat_d, std::span<const Angle> interferer_hats,
                               const AngleErrorModel& err, const SampleCovariance& cov,
                               const DiagonalLoadingConfig& dl, double noise_power = 1.0,
                               const QuadratureRule& quad = QuadratureRule{});

/// Non-robust NSP hybrid: the same pipeline with every expectation collapsed (epsilon = 0).
HybridDesign nsp_hybrid_baseline(const ArrayConfig& cfg, Angle theta_hat_d, std::span<const Angle> interferer_hats,
                                 const SampleCovariance& cov, const DiagonalLoadingConfig& dl,
                                 double noise_power = 1.0);

/// Pointing analog stage plus DL digital stage; no null steering.
/// `cov` must come from snapshots taken through the pointing phases.
HybridDesign dl_baseline(const ArrayConfig& cfg, Angle theta_hat_d, const SampleCovariance& cov,
                         const DiagonalLoadingConfig& dl, double noise_power = 1.0);

}  // namespace hybridbf
