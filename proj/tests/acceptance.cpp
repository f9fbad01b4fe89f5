// Acceptance checks for the reference scenarios. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hybridbf/beamformers.hpp"
#include "hybridbf/experiments.hpp"
#include "hybridbf/simulation.hpp"

using namespace hybridbf;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

std::size_t column(const ResultTable& t, const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    if (it == t.columns.end()) throw std::runtime_error("missing column " + name);
    return static_cast<std::size_t>(it - t.columns.begin());
}

const std::vector<double>& nearest_row(const ResultTable& t, double x) {
    return *std::min_element(t.rows.begin(), t.rows.end(),
                              [x](const auto& a, const auto& b) { return std::abs(a[0] - x) < std::abs(b[0] - x); });
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Criterion 1: interferer nulls of the robust design, and the DL baseline's
// nulls at the same angles are shallower.
void null_depth(Outcome& o) {
    const auto t = run_experiment(default_spec(ExperimentId::beam_pattern));
    const auto robust = column(t, "gain_robust_db");
    const auto dl = column(t, "gain_dl_db");
    for (double q : {30.0, -15.0}) {
        const auto& row = nearest_row(t, q);
        o.detail << " @" << q << "deg robust=" << fmt(row[robust]) << " dl=" << fmt(row[dl]);
        o.require(row[robust] <= -30.0, "robust null at " + fmt(q) + " above -30 dB");
        o.require(row[dl] > row[robust], "DL null at " + fmt(q) + " not shallower");
    }
}

// Criterion 2: equal SINR at low SNR, robust above DL from 0 dB up.
void sinr_crossover(Outcome& o) {
    const auto t = run_experiment(default_spec(ExperimentId::sinr_vs_snr));
    const auto robust = column(t, "sinr_robust_db");
    const auto dl = column(t, "sinr_dl_db");
    double worst_low = 0.0, min_high = INFINITY;
    for (const auto& row : t.rows) {
        const double gap = row[robust] - row[dl];
        if (row[0] <= -5.0) {
            worst_low = std::max(worst_low, std::abs(gap));
            o.require(std::abs(gap) < 0.5, "|gap| >= 0.5 dB at SNR " + fmt(row[0]));
        }
        if (row[0] >= 0.0) {
            min_high = std::min(min_high, gap);
            o.require(gap > 0.0, "robust <= DL at SNR " + fmt(row[0]));
        }
    }
    o.detail << " max|gap|(SNR<=-5)=" << fmt(worst_low) << " min gap(SNR>=0)=" << fmt(min_high);
}

// Criterion 3: NSP baseline 2-4 dB below the perfect-DOA reference; robust
// between them for SNR <= 0.
void robustness_gap(Outcome& o) {
    const auto t = run_experiment(default_spec(ExperimentId::sinr_vs_snr_robust));
    const auto ref = column(t, "sinr_nsp_ref_db");
    const auto nsp = column(t, "sinr_nsp_db");
    const auto robust = column(t, "sinr_robust_db");
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : t.rows) {
        const double gap = row[ref] - row[nsp];
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
        o.require(gap >= 2.0 && gap <= 4.0, "baseline gap " + fmt(gap) + " dB at SNR " + fmt(row[0]));
        if (row[0] <= 0.0) {
            o.require(row[robust] >= row[nsp] && row[robust] <= row[ref],
                      "robust outside [baseline, reference] at SNR " + fmt(row[0]));
        }
    }
    o.detail << " baseline gap " << fmt(lo) << ".." << fmt(hi) << " dB";
}

// Criterion 4: RMSE non-decreasing in epsilon, robust lowest everywhere.
void rmse_ordering(Outcome& o) {
    const auto t = run_experiment(default_spec(ExperimentId::rmse_vs_epsilon));
    const std::vector<std::string> names{"rmse_robust_db", "rmse_dl_db", "rmse_nsp_db"};
    for (const auto& name : names) {
        const auto c = column(t, name);
        for (std::size_t i = 1; i < t.rows.size(); ++i) {
            o.require(t.rows[i][c] >= t.rows[i - 1][c], name + " decreases at eps " + fmt(t.rows[i][0]));
        }
    }
    const auto robust = column(t, names[0]), dl = column(t, names[1]), nsp = column(t, names[2]);
    for (const auto& row : t.rows) {
        o.require(row[robust] <= std::min(row[dl], row[nsp]), "robust not lowest at eps " + fmt(row[0]));
    }
    const auto& last = t.rows.back();
    o.detail << " eps=10: robust=" << fmt(last[robust]) << " dl=" << fmt(last[dl]) << " nsp=" << fmt(last[nsp]);
}

// Criterion 5: SINR rises with L up to 32 and moves < 0.5 dB beyond it.
void snapshot_saturation(Outcome& o) {
    const auto spec = default_spec(ExperimentId::sinr_vs_snapshots);
    const auto t = run_experiment(spec);
    for (const auto& name : t.columns) {
        if (name.rfind("sinr_", 0) != 0) continue;
        const auto c = column(t, name);
        double at32 = NAN, spread = 0.0;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const double l = t.rows[i][0];
            if (l == 32.0) at32 = t.rows[i][c];
            if (i > 0 && l <= 32.0) {
                o.require(t.rows[i][c] >= t.rows[i - 1][c], name + " drops at L=" + fmt(l));
            }
        }
        for (const auto& row : t.rows) {
            if (row[0] > 32.0) spread = std::max(spread, std::abs(row[c] - at32));
        }
        o.require(t.rows.back()[c] > t.rows.front()[c], name + " does not improve with L");
        o.require(spread < 0.5, name + " moves " + fmt(spread) + " dB beyond L=32");
        o.detail << " " << name << ": L1=" << fmt(t.rows.front()[c]) << " L32=" << fmt(at32)
                 << " max|dL>32|=" << fmt(spread);
    }
}

// Plain antenna-domain SINR of an N-element weight vector.
double antenna_sinr_db(const CVector& v, const Scenario& s) {
    double interference = s.noise_power * v.squaredNorm();
    for (std::size_t q = 0; q < s.interferers.size(); ++q) {
        interference += s.interferer_power(q) * std::norm(v.dot(steering_vector(s.cfg, s.interferers[q]).entries()));
    }
    const double desired = s.desired_power() * std::norm(v.dot(steering_vector(s.cfg, s.theta_d).entries()));
    return 10.0 * std::log10(desired / interference);
}

// Projection-matrix nulling, I - A (A^H A)^-1 A^H applied to a(theta_d); no SVD.
CVector projected_steering(const Scenario& s) {
    const auto n = s.cfg.n_antennas();
    CMatrix a(n, static_cast<Eigen::Index>(s.interferers.size()));
    for (std::size_t q = 0; q < s.interferers.size(); ++q) {
        a.col(static_cast<Eigen::Index>(q)) = steering_vector(s.cfg, s.interferers[q]).entries();
    }
    const CMatrix p = CMatrix::Identity(n, n) - a * (a.adjoint() * a).inverse() * a.adjoint();
    return (p * steering_vector(s.cfg, s.theta_d).entries()).normalized();
}

// Fully digital NSP + DL with its own antenna-domain snapshots: DL weights on
// the phase-steered antenna covariance set the per-antenna magnitudes, the
// NSP weights set the phases.
CVector digital_nsp_dl(const Scenario& s, std::uint64_t seed, double gamma) {
    const auto n = s.cfg.n_antennas();
    const CVector a_d = steering_vector(s.cfg, s.theta_d).entries();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    auto cn = [&] { return cdouble(g(rng), g(rng)); };
    CMatrix y = CMatrix::Zero(n, s.snapshots);
    for (int l = 0; l < s.snapshots; ++l) {
        y.col(l) += std::sqrt(s.desired_power()) * cn() * a_d;
        for (std::size_t q = 0; q < s.interferers.size(); ++q) {
            y.col(l) += std::sqrt(s.interferer_power(q)) * cn() * steering_vector(s.cfg, s.interferers[q]).entries();
        }
        for (Eigen::Index i = 0; i < n; ++i) y(i, l) += std::sqrt(s.noise_power) * cn();
    }
    // Per-antenna pointing phases: D = diag(a_d), covariance of D^H y.
    const CMatrix steered = a_d.conjugate().asDiagonal() * y;
    const CMatrix c = steered * steered.adjoint() / static_cast<double>(s.snapshots);
    const CVector b = CVector::Ones(n);  // D^H a_d
    const CVector x = (c + gamma * CMatrix::Identity(n, n)).ldlt().solve(b);
    const CVector w = x / b.dot(x);
    const CVector v = projected_steering(s);
    CVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = std::abs(w[i]) * std::polar(1.0, std::arg(v[i]));
    return out;
}

// Criterion 6: oracle suites.
void oracle_suites(Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    // (a) quadrature vs 10^6-draw Monte Carlo.
    {
        const ArrayConfig cfg(32, 4);
        const AngleErrorModel err = AngleErrorModel::from_degrees(3.0);
        const std::vector<Angle> doas{Angle::from_degrees(60.0), Angle::from_degrees(30.0), Angle::from_degrees(-15.0)};
        const auto r = expected_interference_matrix(cfg, doas, err).entries;
        CMatrix mc = CMatrix::Zero(32, 3);
        const int draws = 1000000;
        for (int i = 0; i < draws; ++i) {
            const double delta = err.epsilon() * unit(rng);
            for (int q = 0; q < 3; ++q) {
                mc.col(q) += steering_vector(cfg, Angle{doas[q].radians + delta}).entries();
            }
        }
        mc /= draws;
        const double dev = (mc - r).cwiseAbs().maxCoeff();
        o.detail << " (a) max dev=" << dev;
        o.require(dev < 2e-3, "(a) quadrature vs Monte Carlo");
    }

    // (b) null-space exactness and unit norm; (e) optimality certificate.
    {
        std::uniform_real_distribution<double> deg(-80.0, 80.0), eps(0.0, 5.0);
        std::normal_distribution<double> g;
        double worst_null = 0.0, worst_norm = 0.0;
        int certificate_failures = 0;
        for (int t = 0; t < 100; ++t) {
            const int ks[] = {1, 2, 4, 8};
            const int k = ks[t % 4];
            const int m = 1 + static_cast<int>(rng() % 8);
            const int n = std::max(k * m, 8);
            const ArrayConfig cfg(n % k == 0 ? n : k * m, k);
            const int q = static_cast<int>(rng() % 5);
            const AngleErrorModel err = AngleErrorModel::from_degrees(eps(rng));
            const Angle desired = Angle::from_degrees(deg(rng));
            std::vector<Angle> interferers;
            while (static_cast<int>(interferers.size()) < q) {
                const double a = deg(rng);
                bool clash = std::abs(a - desired.degrees()) < 5.0;
                for (const auto& x : interferers) clash = clash || std::abs(a - x.degrees()) < 2.0;
                if (!clash) interferers.push_back(Angle::from_degrees(a));
            }
            const auto r = expected_steering(cfg, desired, err);
            const auto R = expected_interference_matrix(cfg, interferers, err);
            const CVector v = nsp_total_beamformer(r, R).entries();
            worst_norm = std::max(worst_norm, std::abs(v.norm() - 1.0));
            if (q > 0) worst_null = std::max(worst_null, (R.entries.adjoint() * v).cwiseAbs().maxCoeff());

            if (t == 0 || q > 0) {
                const auto basis = null_space_basis(R.entries);
                const double best = std::abs(v.dot(r.entries()));
                for (int c = 0; c < 100; ++c) {
                    CVector u(basis.columns.cols());
                    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = {g(rng), g(rng)};
                    u.normalize();
                    if (std::abs((basis.columns * u).dot(r.entries())) > best + 1e-12) ++certificate_failures;
                }
            }
        }
        o.detail << " (b) max|R^H v|=" << worst_null << " max|‖v‖-1|=" << worst_norm
                 << " (e) beaten=" << certificate_failures;
        o.require(worst_null < 1e-8, "(b) null-space residual");
        o.require(worst_norm < 1e-10, "(b) unit norm");
        o.require(certificate_failures == 0, "(e) optimality certificate");
    }

    // (c) unit-response constraint of the DL weights.
    {
        std::normal_distribution<double> g;
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const int k = 1 + t % 8;
            CMatrix y(k, 1 + t % 12);
            for (Eigen::Index j = 0; j < y.cols(); ++j)
                for (int i = 0; i < k; ++i) y(i, j) = {g(rng), g(rng)};
            CVector a(k);
            for (int i = 0; i < k; ++i) a[i] = {g(rng), g(rng)};
            const double gamma = std::pow(10.0, unit(rng) * 3.0);
            const auto w = dl_digital_beamformer(sample_covariance(y), a, gamma).weights();
            worst = std::max(worst, std::abs(w.dot(a) - 1.0));
        }
        o.detail << " (c) max|w^H a-1|=" << worst;
        o.require(worst < 1e-10, "(c) unit response");
    }

    // (d) M=1, K=N hybrid pipeline vs the fully digital NSP+DL route at N=8,
    // mean SINR over independent snapshot realisations.
    {
        Scenario s;
        s.cfg = ArrayConfig(8, 8);
        const int trials = 200;
        const auto report = monte_carlo_sinr(make_designer(Method::robust), s, trials);
        const double gamma = DiagonalLoadingConfig::noise_multiple(kDefaultLoadingFactor).resolve(s.noise_power);
        double digital = 0.0;
        for (int t = 0; t < trials; ++t) digital += antenna_sinr_db(digital_nsp_dl(s, 1000 + t, gamma), s);
        digital /= trials;
        const double nsp_only = antenna_sinr_db(projected_steering(s), s);
        o.detail << " (d) hybrid=" << fmt(report.mean_db) << " digital NSP+DL=" << fmt(digital)
                 << " digital NSP=" << fmt(nsp_only);
        o.require(report.failed == 0 && std::abs(report.mean_db - digital) < 0.5, "(d) hybrid vs fully digital NSP+DL");
        o.require(std::abs(report.mean_db - nsp_only) < 0.5, "(d) hybrid vs fully digital NSP");
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {"1 null depth (beam pattern)", 5.0, null_depth},
        {"2 SINR crossover vs DL", 60.0, sinr_crossover},
        {"3 robustness gap at eps=3deg", 120.0, robustness_gap},
        {"4 RMSE ordering over eps", 180.0, rmse_ordering},
        {"5 snapshot saturation", 60.0, snapshot_saturation},
        {"6 oracle suites", 60.0, oracle_suites},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs < c.budget_s, "runtime over " + fmt(c.budget_s) + " s");
        std::printf("%s criterion %s (%.1f s):%s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
