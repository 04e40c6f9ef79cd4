#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "wprad/bunching.hpp"
#include "wprad/numeric.hpp"
#include "wprad/radiation.hpp"

namespace wprad {

// splitmix64 (Steele, Lea, Vigna). Chosen over the engines in <random>
// because its output is fully pinned by the algorithm, so fixed seeds give
// bit-identical streams on every platform, and seed derivation makes the
// trials splittable for parallel runs.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1), never exactly 0 or 1.
    double uniform() { return double(next() >> 11) * 0x1.0p-53 + 0x1.0p-54; }
};

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    SplitMix64 s(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return s.next();
}

// Box-Muller on splitmix64 uniforms; <random>'s normal_distribution is
// implementation-defined, which would break the bit-reproducibility contract.
struct GaussianSampler {
    SplitMix64 rng;
    bool cached = false;
    double cache = 0.0;

    explicit GaussianSampler(std::uint64_t seed) : rng(seed) {}

    double next() {
        if (cached) {
            cached = false;
            return cache;
        }
        double u1 = rng.uniform();
        double u2 = rng.uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        cache = r * std::sin(2.0 * pi * u2);
        cached = true;
        return r * std::cos(2.0 * pi * u2);
    }
};

enum class PulseDistribution { gaussian, user_tabulated };

struct PulseSpec {
    std::int64_t N = 1;
    double sigma_pulse = 0.0;  // s
    double t0_pulse = 0.0;     // s
    PulseDistribution distribution = PulseDistribution::gaussian;
    std::uint64_t rng_seed = 0;
    std::vector<double> table_t;    // arrival-time knots for user_tabulated
    std::vector<double> table_cdf;  // cumulative weights, normalized to 1

    static PulseSpec make(std::int64_t N, double sigma_pulse, double t0_pulse = 0.0,
                          std::uint64_t rng_seed = 0) {
        if (N < 1) throw validation_error("pulse: N must be >= 1");
        if (!(sigma_pulse >= 0.0)) throw validation_error("pulse: sigma_pulse must be >= 0");
        PulseSpec p;
        p.N = N;
        p.sigma_pulse = sigma_pulse;
        p.t0_pulse = t0_pulse;
        p.rng_seed = rng_seed;
        return p;
    }

    static PulseSpec make_tabulated(std::int64_t N, std::vector<double> t,
                                    std::vector<double> f, std::uint64_t rng_seed = 0) {
        if (N < 1) throw validation_error("pulse: N must be >= 1");
        if (t.size() != f.size() || t.size() < 2)
            throw validation_error("pulse: tabulated density needs matching arrays, >= 2 knots");
        for (std::size_t k = 1; k < t.size(); ++k)
            if (!(t[k] > t[k - 1]))
                throw validation_error("pulse: tabulated times must be strictly increasing");
        for (double v : f)
            if (!(v >= 0.0)) throw validation_error("pulse: tabulated density must be >= 0");
        PulseSpec p;
        p.N = N;
        p.distribution = PulseDistribution::user_tabulated;
        p.rng_seed = rng_seed;
        p.table_t = std::move(t);
        p.table_cdf.assign(p.table_t.size(), 0.0);
        for (std::size_t k = 1; k < p.table_t.size(); ++k)
            p.table_cdf[k] = p.table_cdf[k - 1] +
                             0.5 * (f[k] + f[k - 1]) * (p.table_t[k] - p.table_t[k - 1]);
        double norm = p.table_cdf.back();
        if (!(norm > 0.0)) throw validation_error("pulse: tabulated density integrates to 0");
        for (double& v : p.table_cdf) v /= norm;
        // Moments for the analytic-side consumers that only need widths.
        double mean = 0.0, var = 0.0;
        for (std::size_t k = 1; k < p.table_t.size(); ++k) {
            double w = p.table_cdf[k] - p.table_cdf[k - 1];
            double tm = 0.5 * (p.table_t[k] + p.table_t[k - 1]);
            mean += w * tm;
        }
        for (std::size_t k = 1; k < p.table_t.size(); ++k) {
            double w = p.table_cdf[k] - p.table_cdf[k - 1];
            double tm = 0.5 * (p.table_t[k] + p.table_t[k - 1]);
            var += w * (tm - mean) * (tm - mean);
        }
        p.t0_pulse = mean;
        p.sigma_pulse = std::sqrt(var);
        return p;
    }

    // One arrival time; the sampler owns the per-trial stream.
    double sample_arrival(GaussianSampler& gs) const {
        if (distribution == PulseDistribution::gaussian) {
            if (sigma_pulse == 0.0) return t0_pulse;
            return t0_pulse + sigma_pulse * gs.next();
        }
        double u = gs.rng.uniform();
        auto it = std::upper_bound(table_cdf.begin(), table_cdf.end(), u);
        std::size_t k = std::min(std::size_t(it - table_cdf.begin()), table_cdf.size() - 1);
        double w = table_cdf[k] - table_cdf[k - 1];
        double frac = (w > 0.0) ? (u - table_cdf[k - 1]) / w : 0.5;
        return table_t[k - 1] + frac * (table_t[k] - table_t[k - 1]);
    }
};

enum class EstimateSource { analytic, monte_carlo };

struct BunchingEstimate {
    int l = 0;
    cplx mean_b{0.0, 0.0};
    double mean_b2 = 0.0;
    EstimateSource source = EstimateSource::analytic;
    std::size_t n_trials = 0;
    double std_err = 0.0;
};

// Gaussian arrival-time statistics of b = (1/N) sum_j e^{i omega_eff t_0j}:
//   <b>     = e^{-sigma^2 omega^2 / 2} e^{i omega t0_pulse}
//   <|b|^2> = 1/N + (1 - 1/N) e^{-sigma^2 omega^2}
// The second moment keeps the exact finite-N form; the large-N approximation
// drops the shot-noise floor and is recovered by sending N to infinity.
inline BunchingEstimate analytic_bunching(const PulseSpec& pulse, double omega_eff,
                                          int l = 0) {
    if (pulse.distribution != PulseDistribution::gaussian)
        throw validation_error("analytic bunching needs a gaussian pulse; sample instead");
    double a = pulse.sigma_pulse * omega_eff;
    BunchingEstimate e;
    e.l = l;
    e.mean_b = std::exp(-0.5 * a * a) *
               std::exp(cplx(0.0, omega_eff * pulse.t0_pulse));
    e.mean_b2 = 1.0 / double(pulse.N) +
                (1.0 - 1.0 / double(pulse.N)) * std::exp(-a * a);
    return e;
}

inline BunchingEstimate monte_carlo_bunching(const PulseSpec& pulse, double omega_eff,
                                             int l, std::size_t n_trials) {
    if (n_trials < 100)
        throw validation_error("monte_carlo_bunching: need n_trials >= 100");
    cplx sum_b{0.0, 0.0};
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
        GaussianSampler gs(derive_seed(pulse.rng_seed, trial));
        cplx b{0.0, 0.0};
        for (std::int64_t j = 0; j < pulse.N; ++j) {
            double t = pulse.sample_arrival(gs);
            b += std::exp(cplx(0.0, omega_eff * t));
        }
        b /= double(pulse.N);
        sum_b += b;
        double b2 = std::norm(b);
        sum += b2;
        sum_sq += b2 * b2;
    }
    BunchingEstimate e;
    e.l = l;
    e.source = EstimateSource::monte_carlo;
    e.n_trials = n_trials;
    e.mean_b = sum_b / double(n_trials);
    e.mean_b2 = sum / double(n_trials);
    double var = (sum_sq - sum * sum / double(n_trials)) / double(n_trials - 1);
    e.std_err = std::sqrt(std::max(var, 0.0) / double(n_trials));
    return e;
}

// Spontaneous spectrum of an N-electron pulse. The closed form
//   W_1(omega) (N + N(N-1) x),  x = e^{-sigma_pulse^2 omega^2},
// is regrouped as N^2 x + N(1-x) so the two reported pieces scale exactly as
// N^2 (superradiant) and N (shot noise) under N-doubling; the sum is
// algebraically unchanged.
struct PulseSpectrumTerms {
    double superradiant = 0.0;
    double shot_noise = 0.0;
    bool sigma_ordering_warning = false;  // set when sigma_pulse < sigma_t

    double total() const { return superradiant + shot_noise; }
};

inline PulseSpectrumTerms pulse_spontaneous_terms(const PulseSpec& pulse,
                                                  const RadiationModeSpec& mode,
                                                  const PacketAtPlane& pk, double v0,
                                                  double omega) {
    double w1 = spontaneous_spectrum_unmodulated(mode, pk, v0, omega);
    double a = pulse.sigma_pulse * omega;
    double x = std::exp(-a * a);
    double N = double(pulse.N);
    PulseSpectrumTerms t;
    t.superradiant = N * N * x * w1;
    t.shot_noise = N * (1.0 - x) * w1;
    t.sigma_ordering_warning = pulse.sigma_pulse < pk.sigma_t;
    return t;
}

inline double pulse_spontaneous_spectrum(const PulseSpec& pulse,
                                         const RadiationModeSpec& mode,
                                         const PacketAtPlane& pk, double v0,
                                         double omega) {
    return pulse_spontaneous_terms(pulse, mode, pk, v0, omega).total();
}

// N-electron spontaneous spectrum of a modulated beam, all electrons
// modulated in phase with the same drive. Per harmonic the single-electron
// line |B_l|^2 e^{-sigma_t^2 (omega - l omega_b)^2} multiplies the same
// finite-N bracket as above, now centered on l omega_b; the l = 0 channel
// therefore reduces exactly to the unmodulated pulse formula times |B_0|^2.
// `approx` keeps only the N^2 superradiant piece of every line.
inline double modulated_beam_superradiance(const PulseSpec& pulse,
                                           const BunchingSpectrum& bs,
                                           const RadiationModeSpec& mode, double v0,
                                           double omega, bool approx = false) {
    double xdet = 0.5 * detuning_theta(mode, v0, omega) * mode.L;
    double s2 = sinc(xdet) * sinc(xdet);
    double N = double(pulse.N);
    double acc = 0.0;
    for (int l = -bs.l_max; l <= bs.l_max; ++l) {
        double d = omega - l * bs.omega_b;
        double line = std::norm(bs.B(l)) * std::exp(-bs.sigma_t * bs.sigma_t * d * d);
        double y = std::exp(-pulse.sigma_pulse * pulse.sigma_pulse * d * d);
        double bracket = approx ? N * N * y : N * N * y + N * (1.0 - y);
        acc += line * bracket;
    }
    return spontaneous_scale(mode) * s2 * acc;
}

// Closed-form stimulated exchange of the modulated pulse: N times the
// single-electron expression with the arrival-time spread folded into the
// spectral envelope, sigma^2 -> sigma_t^2 + sigma_pulse^2, and the pulse
// center added to the arrival phase.
inline double modulated_beam_stimulated(const PulseSpec& pulse, const BunchingSpectrum& bs,
                                        const RadiationModeSpec& mode, double v0,
                                        const InputWave& wave) {
    BunchingSpectrum eff = bs;
    eff.sigma_t = std::sqrt(bs.sigma_t * bs.sigma_t +
                            pulse.sigma_pulse * pulse.sigma_pulse);
    eff.t0e = bs.t0e + pulse.t0_pulse;
    return double(pulse.N) * stimulated_energy_modulated(mode, eff, v0, wave);
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double per_trial_std = 0.0;
    double std_err = 0.0;
    std::size_t n_trials = 0;
};

// Sampling cross-check of the closed form above: per trial, draw N arrival
// times and add up the per-electron cosine exchanges.
inline MonteCarloEstimate monte_carlo_stimulated(const PulseSpec& pulse,
                                                 const BunchingSpectrum& bs,
                                                 const RadiationModeSpec& mode, double v0,
                                                 const InputWave& wave,
                                                 std::size_t n_trials) {
    if (n_trials < 100)
        throw validation_error("monte_carlo_stimulated: need n_trials >= 100");
    double xdet = 0.5 * detuning_theta(mode, v0, wave.omega_0) * mode.L;
    double scale = q_e * wave.E_0 * mode.L * std::abs(mode.M_perp) * sinc(xdet);
    std::vector<double> amp, phase, det;
    for (int l = -bs.l_max; l <= bs.l_max; ++l) {
        cplx Bl = bs.B(l);
        if (std::abs(Bl) == 0.0) continue;
        double d = wave.omega_0 - l * bs.omega_b;
        amp.push_back(std::abs(Bl) *
                      std::exp(-0.5 * bs.sigma_t * bs.sigma_t * d * d));
        phase.push_back(xdet + std::arg(Bl) - wave.phi_0);
        det.push_back(d);
    }
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
        GaussianSampler gs(derive_seed(pulse.rng_seed, trial));
        double w = 0.0;
        for (std::int64_t j = 0; j < pulse.N; ++j) {
            double t = bs.t0e + pulse.sample_arrival(gs);
            for (std::size_t k = 0; k < amp.size(); ++k)
                w += amp[k] * std::cos(phase[k] + det[k] * t);
        }
        w *= scale;
        sum += w;
        sum_sq += w * w;
    }
    MonteCarloEstimate e;
    e.n_trials = n_trials;
    e.mean = sum / double(n_trials);
    double var = (sum_sq - sum * sum / double(n_trials)) / double(n_trials - 1);
    e.per_trial_std = std::sqrt(std::max(var, 0.0));
    e.std_err = e.per_trial_std / std::sqrt(double(n_trials));
    return e;
}

// Random-phase average (1/N) sum_j cos(omega t_0j + phi). For
// sigma_pulse * omega >> 1 the mean vanishes and the per-trial spread is
// 1/sqrt(2N): a long random pulse exchanges no energy on average.
inline MonteCarloEstimate random_phase_sum(const PulseSpec& pulse, double omega,
                                           double phi, std::size_t n_trials) {
    if (n_trials < 100)
        throw validation_error("random_phase_sum: need n_trials >= 100");
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
        GaussianSampler gs(derive_seed(pulse.rng_seed, trial));
        double u = 0.0;
        for (std::int64_t j = 0; j < pulse.N; ++j)
            u += std::cos(omega * pulse.sample_arrival(gs) + phi);
        u /= double(pulse.N);
        sum += u;
        sum_sq += u * u;
    }
    MonteCarloEstimate e;
    e.n_trials = n_trials;
    e.mean = sum / double(n_trials);
    double var = (sum_sq - sum * sum / double(n_trials)) / double(n_trials - 1);
    e.per_trial_std = std::sqrt(std::max(var, 0.0));
    e.std_err = e.per_trial_std / std::sqrt(double(n_trials));
    return e;
}

} // namespace wprad
