#pragma once

#include <span>

#include "hybridbf/array.hpp"
#include "hybridbf/quadrature.hpp"

namespace hybridbf {

/// DOA error uniform on [-epsilon, epsilon]; epsilon = 0 means the estimate is exact.
class AngleErrorModel {
public:
    /// Throws ConfigError unless 0 <= epsilon < pi/2.
    explicit AngleErrorModel(double epsilon_radians = 0.0);
    static AngleErrorModel from_degrees(double deg) { return AngleErrorModel(Angle::from_degrees(deg).radians); }
    static AngleErrorModel exact() { return AngleErrorModel(0.0); }

    double epsilon() const { return epsilon_; }
    bool is_exact() const { return epsilon_ == 0.0; }

    /// Density of the error at delta.
    double pdf(double delta) const;

private:
    double epsilon_;
};

/// r = E[a(theta_hat + delta)], delta ~ U[-eps, eps].
class ExpectedSteering {
public:
    explicit ExpectedSteering(CVector entries) : entries_(std::move(entries)) {}
    const CVector& entries() const { return entries_; }
    Eigen::Index size() const { return entries_.size(); }

private:
    CVector entries_;
};

/// N x Q matrix whose column q is the expected steering vector of interferer q.
struct ExpectedInterferenceMatrix {
    CMatrix entries;
    /// Set when two estimated interferer DOAs coincide within 1e-9 rad.
    bool duplicate_doas = false;
};

ExpectedSteering expected_steering(const ArrayConfig& cfg, Angle theta_hat, const AngleErrorModel& err,
                                   const QuadratureRule& quad = QuadratureRule{});

ExpectedInterferenceMatrix expected_interference_matrix(const ArrayConfig& cfg, std::span<const Angle> theta_hats,
                                                        const AngleErrorModel& err,
                                                        const QuadratureRule& quad = QuadratureRule{});

/// E[sin(theta_hat + delta)] = sin(theta_hat) sin(eps) / eps, or sin(theta_hat) at eps = 0.
double expected_sin(Angle theta_hat, const AngleErrorModel& err);

}  // namespace hybridbf
