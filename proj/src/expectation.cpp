#include "hybridbf/expectation.hpp"

#include <cmath>
#include <numbers>

#include "hybridbf/errors.hpp"

namespace hybridbf {

AngleErrorModel::AngleErrorModel(double epsilon_radians) : epsilon_(epsilon_radians) {
    if (!(epsilon_ >= 0.0) || !(epsilon_ < std::numbers::pi / 2)) {
        throw ConfigError("epsilon: must lie in [0, 90) degrees");
    }
}

double AngleErrorModel::pdf(double delta) const {
    if (is_exact()) return delta == 0.0 ? INFINITY : 0.0;
    return std::abs(delta) <= epsilon_ ? 1.0 / (2.0 * epsilon_) : 0.0;
}

ExpectedSteering expected_steering(const ArrayConfig& cfg, Angle theta_hat, const AngleErrorModel& err,
                                   const QuadratureRule& quad) {
    if (err.is_exact()) return ExpectedSteering(steering_vector(cfg, theta_hat).entries());

    const double eps = err.epsilon();
    const double k0 = 2.0 * std::numbers::pi * cfg.spacing_over_wavelength();
    CVector r(cfg.n_antennas());
    r[0] = 1.0;
    for (Eigen::Index i = 1; i < r.size(); ++i) {
        const double scale = k0 * static_cast<double>(i);
        const cdouble integral = quad.integrate(
            [&](double delta) { return std::polar(1.0, scale * std::sin(theta_hat.radians + delta)); }, -eps, eps);
        r[i] = integral / (2.0 * eps);
    }
    return ExpectedSteering(std::move(r));
}

ExpectedInterferenceMatrix expected_interference_matrix(const ArrayConfig& cfg, std::span<const Angle> theta_hats,
                                                        const AngleErrorModel& err, const QuadratureRule& quad) {
    ExpectedInterferenceMatrix out;
    out.entries.resize(cfg.n_antennas(), static_cast<Eigen::Index>(theta_hats.size()));
    for (std::size_t q = 0; q < theta_hats.size(); ++q) {
        out.entries.col(static_cast<Eigen::Index>(q)) = expected_steering(cfg, theta_hats[q], err, quad).entries();
        for (std::size_t p = 0; p < q; ++p) {
            if (std::abs(theta_hats[p].radians - theta_hats[q].radians) <= 1e-9) out.duplicate_doas = true;
        }
    }
    return out;
}

double expected_sin(Angle theta_hat, const AngleErrorModel& err) {
    if (err.is_exact()) return std::sin(theta_hat.radians);
    const double eps = err.epsilon();
    return std::sin(theta_hat.radians) * std::sin(eps) / eps;
}

}  // namespace hybridbf
