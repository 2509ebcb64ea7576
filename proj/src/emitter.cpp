#include "rydblock/emitter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/QR>

namespace rydblock {

namespace {

Matrix sigma_minus() {
    Matrix sm = Matrix::Zero(2, 2);
    sm(0, 1) = 1.0; // |g><e|
    return sm;
}

struct LorentzianFit {
    double amp = 0.0;
    double center = 0.0;
    double hwhm = 0.0;
};

// Gauss-Newton least-squares fit of A / (1 + ((w - c)/g)^2).
LorentzianFit fit_lorentzian(std::span<const double> x, std::span<const double> y,
                             LorentzianFit init) {
    const auto m = static_cast<Eigen::Index>(x.size());
    Eigen::Vector3d p(init.amp, init.center, init.hwhm);
    Eigen::MatrixXd jac(m, 3);
    Eigen::VectorXd res(m);

    for (int iter = 0; iter < 100; ++iter) {
        const double a = p(0), c = p(1), g = p(2);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double u = (x[i] - c) / g;
            const double den = 1.0 + u * u;
            res(i) = y[i] - a / den;
            jac(i, 0) = 1.0 / den;
            jac(i, 1) = a * 2.0 * u / (g * den * den);
            jac(i, 2) = a * 2.0 * u * u / (g * den * den);
        }
        const Eigen::Vector3d step = jac.colPivHouseholderQr().solve(res);
        p += step;
        if (!p.allFinite()) return init;
        if (step.norm() <= 1e-12 * (1.0 + p.norm())) break;
    }
    return {p(0), p(1), std::abs(p(2))};
}

} // namespace

void validate(const EmitterParams& params) {
    if (!(params.gamma > 0)) throw std::invalid_argument("emitter: gamma must be positive");
    if (!(params.omega_c >= 0))
        throw std::invalid_argument("emitter: omega_c must be >= 0");
    if (!std::isfinite(params.detuning))
        throw std::invalid_argument("emitter: detuning must be finite");
}

LindbladModel two_level_model(const EmitterParams& params) {
    validate(params);
    Matrix h = Matrix::Zero(2, 2);
    h(0, 1) = params.omega_c / 2.0;
    h(1, 0) = params.omega_c / 2.0;
    h(1, 1) = -params.detuning; // rotating frame, laser above resonance shifts |e> down
    return LindbladModel{std::move(h), {{sigma_minus(), params.gamma}}};
}

double steady_population(const EmitterParams& params) {
    validate(params);
    const double s = params.omega_c * params.omega_c / (params.gamma * params.gamma);
    return (params.omega_c * params.omega_c / 4.0) /
           (params.detuning * params.detuning +
            params.gamma * params.gamma / 4.0 * (1.0 + 2.0 * s));
}

double fwhm_ghz(const EmitterParams& params) {
    validate(params);
    const double s = params.omega_c * params.omega_c / (params.gamma * params.gamma);
    return params.gamma * std::sqrt(1.0 + 2.0 * s);
}

double photon_rate_ghz(const EmitterParams& params) {
    return steady_population(params) * params.gamma;
}

G2Curve g2_closed_form(const EmitterParams& params, std::span<const double> tau_grid) {
    validate(params);
    if (params.detuning != 0.0)
        throw std::invalid_argument("g2 closed form is defined at resonance only");

    const double gamma = params.gamma;
    const double omega = params.omega_c;
    const double x = omega * omega - gamma * gamma / 16.0;
    const double branch_tol = 1e-12 * std::max(omega * omega, gamma * gamma);

    G2Curve curve;
    curve.tau.assign(tau_grid.begin(), tau_grid.end());
    curve.value.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        if (tau < 0) throw std::invalid_argument("g2: tau must be >= 0");
        const double envelope = std::exp(-0.75 * gamma * tau);
        double inner;
        if (x > branch_tol) {
            const double oe = std::sqrt(x);
            inner = std::cos(oe * tau) + 3.0 * gamma / (4.0 * oe) * std::sin(oe * tau);
        } else if (x < -branch_tol) {
            // overdamped branch: the unique real continuation
            const double oe = std::sqrt(-x);
            inner = std::cosh(oe * tau) + 3.0 * gamma / (4.0 * oe) * std::sinh(oe * tau);
        } else {
            inner = 1.0 + 0.75 * gamma * tau;
        }
        curve.value.push_back(1.0 - envelope * inner);
    }
    return curve;
}

G2Curve g2_numeric(const EmitterParams& params, std::span<const double> tau_grid) {
    validate(params);
    const LindbladModel model = two_level_model(params);
    const double pop_ss = steady_state(model).population(1);
    if (pop_ss < 1e-14)
        throw NumericError("g2: steady-state excited population is zero");

    const auto states = evolve(model, DensityMatrix::ground(2), tau_grid);
    G2Curve curve;
    curve.tau.assign(tau_grid.begin(), tau_grid.end());
    curve.value.reserve(states.size());
    for (const auto& state : states) curve.value.push_back(state.population(1) / pop_ss);
    return curve;
}

SpectrumResult emission_spectrum(const EmitterParams& params,
                                 std::span<const double> freq_grid) {
    validate(params);
    if (!(params.omega_c > 0))
        throw std::invalid_argument("spectrum: omega_c must be positive");
    if (freq_grid.size() < 3)
        throw std::invalid_argument("spectrum: frequency grid too small");
    double max_spacing = 0.0;
    for (std::size_t i = 1; i < freq_grid.size(); ++i) {
        const double step = freq_grid[i] - freq_grid[i - 1];
        if (step <= 0) throw std::invalid_argument("spectrum: grid must be ascending");
        max_spacing = std::max(max_spacing, step);
    }
    if (max_spacing > params.gamma / 2.0)
        throw NumericError("spectrum: frequency grid too coarse to resolve Gamma/2");

    const LindbladModel model = two_level_model(params);
    const DensityMatrix rho_ss = steady_state(model);
    const Matrix sm = sigma_minus();
    const Matrix sp = sm.adjoint();

    const Complex mean_sm = (sm * rho_ss.matrix()).trace();
    const Complex mean_sp = (sp * rho_ss.matrix()).trace();
    const Complex asymptote = mean_sp * mean_sm; // coherent |<sigma->|^2

    // g1 on a uniform tau grid; the correlation has decayed to negligible
    // size by 30/Gamma.
    const double w_abs_max =
        std::max({std::abs(freq_grid.front()), std::abs(freq_grid.back()), params.gamma});
    const double tau_max = 30.0 / params.gamma;
    const double dt = std::min(0.01 / params.gamma, 0.1 / w_abs_max);
    const auto n_tau = static_cast<std::size_t>(std::ceil(tau_max / dt)) + 1;
    std::vector<double> tau(n_tau);
    for (std::size_t k = 0; k < n_tau; ++k)
        tau[k] = tau_max * static_cast<double>(k) / static_cast<double>(n_tau - 1);

    const auto evolved = propagate(model, sm * rho_ss.matrix(), tau);
    std::vector<Complex> remainder(n_tau);
    for (std::size_t k = 0; k < n_tau; ++k)
        remainder[k] = (sp * evolved[k]).trace() - asymptote;

    SpectrumResult result;
    result.freq.assign(freq_grid.begin(), freq_grid.end());
    result.coherent_weight = asymptote.real();
    result.incoherent.resize(freq_grid.size());

    // One-sided transform S(w) = Re Int_0^inf R(tau) e^{i w tau} dtau / pi,
    // trapezoid rule with a per-frequency phase recurrence.
    const double dtau = tau[1] - tau[0];
    for (std::size_t j = 0; j < freq_grid.size(); ++j) {
        const Complex rot = std::polar(1.0, freq_grid[j] * dtau);
        Complex phase(1.0, 0.0);
        Complex acc = 0.5 * remainder[0];
        for (std::size_t k = 1; k + 1 < n_tau; ++k) {
            phase *= rot;
            acc += remainder[k] * phase;
        }
        phase *= rot;
        acc += 0.5 * remainder[n_tau - 1] * phase;
        result.incoherent[j] =
            std::max(0.0, acc.real() * dtau / std::numbers::pi);
    }

    // Peak detection: interior local maxima above 5% of the global maximum.
    const auto& s = result.incoherent;
    const double threshold = 0.05 * *std::max_element(s.begin(), s.end());
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (!(s[i] > s[i - 1] && s[i] >= s[i + 1] && s[i] > threshold)) continue;

        // half-height scan for the initial width estimate
        const double half = s[i] / 2.0;
        std::size_t left = i, right = i;
        while (left > 0 && s[left] > half) --left;
        while (right + 1 < s.size() && s[right] > half) ++right;
        const double hwhm_est =
            0.5 * ((result.freq[i] - result.freq[left]) + (result.freq[right] - result.freq[i]));

        // per-peak fit over +-2 estimated half-widths
        std::vector<double> xs, ys;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (std::abs(result.freq[k] - result.freq[i]) <= 2.0 * hwhm_est) {
                xs.push_back(result.freq[k]);
                ys.push_back(s[k]);
            }
        }
        const auto fit = fit_lorentzian(xs, ys, {s[i], result.freq[i], hwhm_est});
        result.peaks.push_back({result.freq[i], 2.0 * fit.hwhm, s[i]});
    }
    return result;
}

} // namespace rydblock
