#include "hybridbf/beamformers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "hybridbf/errors.hpp"

namespace hybridbf {

namespace {

constexpr double kSvdRelTol = 1e-10;
constexpr double kWeightTol = 1e-12;

}  // namespace

DiagonalLoadingConfig::DiagonalLoadingConfig(double value, bool noise_multiple)
    : value_(value), noise_multiple_(noise_multiple) {
    if (!(value_ >= 0.0) || !std::isfinite(value_)) {
        throw ConfigError(noise_multiple_ ? "gamma_noise_mult: must be nonnegative" : "gamma: must be nonnegative");
    }
}

DiagonalLoadingConfig DiagonalLoadingConfig::fixed(double gamma) { return {gamma, false}; }
DiagonalLoadingConfig DiagonalLoadingConfig::noise_multiple(double factor) { return {factor, true}; }

NullSpaceBasis null_space_basis(const CMatrix& interference) {
    const Eigen::Index n = interference.rows();
    const Eigen::Index q = interference.cols();
    if (q >= n) {
        throw DimensionError("null space: " + std::to_string(q) + " interferers leave no degrees of freedom on " +
                             std::to_string(n) + " antennas");
    }
    NullSpaceBasis out;
    if (q == 0) {
        out.columns = CMatrix::Identity(n, n);
        return out;
    }
    const CMatrix constraint = interference.adjoint();  // Q x N
    Eigen::JacobiSVD<CMatrix> svd(constraint, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = kSvdRelTol * sv[0];
    for (Eigen::Index i = 0; i < q; ++i) {
        if (sv[i] <= tol) out.rank_deficient = true;
    }
    out.columns = svd.matrixV().rightCols(n - q);
    return out;
}

TotalBeamformer project_onto_null_space(const NullSpaceBasis& basis, const ExpectedSteering& r) {
    if (r.size() != basis.columns.rows()) throw DimensionError("null space projection: length mismatch");
    const CVector coeffs = basis.columns.adjoint() * r.entries();
    const double norm = coeffs.norm();
    if (!(norm > 1e-12 * std::max(1.0, r.entries().norm()))) {
        throw DegenerateGeometryError("desired steering vector lies in the interference span");
    }
    return TotalBeamformer(basis.columns * (coeffs / norm));
}

TotalBeamformer nsp_total_beamformer(const ExpectedSteering& r, const ExpectedInterferenceMatrix& interference) {
    if (r.entries().squaredNorm() == 0.0) throw DegenerateGeometryError("desired steering vector is zero");
    if (interference.entries.rows() != r.size()) throw DimensionError("nsp: interference matrix row count mismatch");
    return project_onto_null_space(null_space_basis(interference.entries), r);
}

RMatrix initial_analog_phases(const ArrayConfig& cfg, Angle theta_hat_d, const AngleErrorModel& err) {
    const double step = 2.0 * std::numbers::pi * cfg.spacing_over_wavelength() * expected_sin(theta_hat_d, err);
    RMatrix phases(cfg.n_subarrays(), cfg.antennas_per_subarray());
    for (Eigen::Index k = 0; k < phases.rows(); ++k) {
        for (Eigen::Index m = 0; m < phases.cols(); ++m) {
            phases(k, m) = step * static_cast<double>(cfg.global_index(k, m));
        }
    }
    return phases;
}

SampleCovariance sample_covariance(const CMatrix& snapshots) {
    if (snapshots.cols() == 0) throw EmptyDataError("sample covariance: no snapshots");
    SampleCovariance out;
    out.snapshots_used = static_cast<int>(snapshots.cols());
    out.entries = (snapshots * snapshots.adjoint()) / static_cast<double>(snapshots.cols());
    // Exact Hermitian symmetry regardless of rounding in the product.
    out.entries = (0.5 * (out.entries + out.entries.adjoint())).eval();
    return out;
}

DigitalBeamformer dl_digital_beamformer(const SampleCovariance& cov, const CVector& a_sub, double gamma) {
    const Eigen::Index k = cov.entries.rows();
    if (cov.entries.cols() != k || a_sub.size() != k) {
        throw DimensionError("dl beamformer: covariance is " + std::to_string(cov.entries.rows()) + "x" +
                             std::to_string(cov.entries.cols()) + ", steering has " + std::to_string(a_sub.size()));
    }
    if (a_sub.squaredNorm() == 0.0) throw DegenerateGeometryError("dl beamformer: zero subarray steering vector");
    if (!(gamma >= 0.0)) throw ConfigError("gamma: must be nonnegative");

    const CMatrix loaded = cov.entries + gamma * CMatrix::Identity(k, k);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(loaded, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || lo <= 1e-13 * hi) throw IllConditionedError("dl beamformer: loaded covariance is singular");

    const Eigen::LDLT<CMatrix> solver(loaded);
    const CVector x = solver.solve(a_sub);
    const cdouble denom = a_sub.dot(x);  // a^H (R + gamma I)^{-1} a, real and positive
    return DigitalBeamformer(x / denom.real());
}

DigitalBeamformer dl_digital_beamformer(const SampleCovariance& cov, const CVector& a_sub,
                                        const DiagonalLoadingConfig& dl, double noise_power) {
    return dl_digital_beamformer(cov, a_sub, dl.resolve(noise_power));
}

PhaseExtraction extract_analog_phases(const TotalBeamformer& v_opt, const DigitalBeamformer& w_bb,
                                      const ArrayConfig& cfg) {
    if (v_opt.size() != cfg.n_antennas() || w_bb.size() != cfg.n_subarrays()) {
        throw DimensionError("phase extraction: beamformer sizes do not match the array");
    }
    PhaseExtraction out;
    out.phases.resize(cfg.n_subarrays(), cfg.antennas_per_subarray());
    for (Eigen::Index k = 0; k < cfg.n_subarrays(); ++k) {
        const cdouble w = w_bb.weights()[k];
        const bool usable = std::abs(w) > kWeightTol;
        if (!usable) out.fallback_used = true;
        for (Eigen::Index m = 0; m < cfg.antennas_per_subarray(); ++m) {
            const cdouble v = v_opt.entries()[cfg.global_index(k, m)];
            out.phases(k, m) = usable ? std::arg(v / w) : std::arg(v);
        }
    }
    return out;
}

HybridDesign robust_hybrid_adb(const ArrayConfig& cfg, Angle theta_hat_d, std::span<const Angle> interferer_hats,
                               const AngleErrorModel& err, const SampleCovariance& cov,
                               const DiagonalLoadingConfig& dl, double noise_power, const QuadratureRule& quad) {
    // Step 1: initial pointing network.
    const AnalogBeamformer wrf0 = assemble_analog(cfg, initial_analog_phases(cfg, theta_hat_d, err));

    // Step 2: total beamformer from the expected steering quantities.
    const ExpectedSteering r = expected_steering(cfg, theta_hat_d, err, quad);
    const ExpectedInterferenceMatrix interference = expected_interference_matrix(cfg, interferer_hats, err, quad);
    if (r.entries().squaredNorm() == 0.0) throw DegenerateGeometryError("desired steering vector is zero");
    const NullSpaceBasis basis = null_space_basis(interference.entries);
    const TotalBeamformer v_opt = project_onto_null_space(basis, r);

    // Step 3: DL digital stage against W_RF0^H r.
    const DigitalBeamformer w_bb = dl_digital_beamformer(cov, subarray_steering(wrf0, r.entries()), dl, noise_power);

    // Step 4: analog phases re-extracted from v_opt; w_BB is kept as is.
    PhaseExtraction extraction = extract_analog_phases(v_opt, w_bb, cfg);

    return HybridDesign{assemble_analog(cfg, extraction.phases), w_bb, basis.rank_deficient,
                        interference.duplicate_doas, extraction.fallback_used};
}

HybridDesign nsp_hybrid_baseline(const ArrayConfig& cfg, Angle theta_hat_d, std::span<const Angle> interferer_hats,
                                 const SampleCovariance& cov, const DiagonalLoadingConfig& dl, double noise_power) {
    return robust_hybrid_adb(cfg, theta_hat_d, interferer_hats, AngleErrorModel::exact(), cov, dl, noise_power);
}

HybridDesign dl_baseline(const ArrayConfig& cfg, Angle theta_hat_d, const SampleCovariance& cov,
                         const DiagonalLoadingConfig& dl, double noise_power) {
    AnalogBeamformer wrf0 = assemble_analog(cfg, initial_analog_phases(cfg, theta_hat_d, AngleErrorModel::exact()));
    const CVector a_sub = subarray_steering(wrf0, steering_vector(cfg, theta_hat_d).entries());
    DigitalBeamformer w_bb = dl_digital_beamformer(cov, a_sub, dl, noise_power);
    return HybridDesign{std::move(wrf0), std::move(w_bb)};
}

}  // namespace hybridbf
