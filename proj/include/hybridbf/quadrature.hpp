#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace hybridbf {

/// Gauss-Legendre rule on [-1, 1], rescaled on use.
class QuadratureRule {
public:
    static constexpr int kDefaultNodes = 129;

    /// Throws ConfigError unless node_count is a positive odd integer.
    explicit QuadratureRule(int node_count = kDefaultNodes);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    std::string_view scheme() const { return "gauss-legendre"; }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    /// Integral of f over [lo, hi]. f may return real or complex values.
    template <typename F>
    auto integrate(F&& f, double lo, double hi) const {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        decltype(f(mid)) acc{};
        for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
        return acc * half;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace hybridbf
