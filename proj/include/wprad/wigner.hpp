#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "wprad/modulation.hpp"
#include "wprad/numeric.hpp"

namespace wprad {

// Phase-space distribution of the (optionally modulated) wavepacket over the
// comoving offset zeta = z - v0 t and the momentum offset p' = p - p0.
//
// The chord integral over q runs on the lattice conjugate to the position
// grid: dq = 2 pi hbar / L_zeta, |q| up to the position-grid Nyquist
// pi hbar / d_zeta. On that lattice the sum over zeta of exp(i q zeta/hbar)
// vanishes exactly for every nonzero q, so the momentum marginal equals
// |psi_p|^2 identically (and stays drift-independent) instead of merely
// converging to it.
struct WignerGridSpec {
    double zeta_half = 0.0;  // m; grid spans (-zeta_half, zeta_half)
    double pp_half   = 0.0;  // kg m/s; momentum offset span
    int n_zeta       = 256;
    int n_pp         = 256;
};

struct WignerGrid {
    std::vector<double> zeta_axis;  // midpoint lattice, n_zeta entries
    std::vector<double> pp_axis;    // midpoint lattice, n_pp entries
    std::vector<double> values;     // row-major [i_zeta * n_pp + k], 1/(J s)
    double t_eval = 0.0;
    double d_zeta = 0.0;
    double d_pp   = 0.0;
    double max_im_residual = 0.0;   // largest |Im| seen before discarding

    double at(int i_zeta, int i_pp) const {
        return values[std::size_t(i_zeta) * pp_axis.size() + std::size_t(i_pp)];
    }

    std::vector<double> momentum_marginal() const {  // integral over zeta
        std::vector<double> out(pp_axis.size(), 0.0);
        for (std::size_t i = 0; i < zeta_axis.size(); ++i)
            for (std::size_t k = 0; k < pp_axis.size(); ++k)
                out[k] += values[i * pp_axis.size() + k] * d_zeta;
        return out;
    }

    std::vector<double> position_marginal() const {  // integral over p'
        std::vector<double> out(zeta_axis.size(), 0.0);
        for (std::size_t i = 0; i < zeta_axis.size(); ++i)
            for (std::size_t k = 0; k < pp_axis.size(); ++k)
                out[i] += values[i * pp_axis.size() + k] * d_pp;
        return out;
    }

    double total() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s * d_zeta * d_pp;
    }
};

// Largest populated sideband order; 0 for an unmodulated packet.
inline int effective_ladder_span(const ModulationSpec& spec) {
    if (spec.g2 == 0.0) return 0;
    auto J = sideband_weights(spec);
    int n_eff = 0;
    for (int n = 0; n <= spec.n_max; ++n)
        if (std::abs(J[std::size_t(n)]) > 1e-6) n_eff = n;
    return n_eff;
}

inline void validate_wigner_grid(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                 const WignerGridSpec& g, double t) {
    if (g.n_zeta < 8 || g.n_pp < 8 || !(g.zeta_half > 0.0) || !(g.pp_half > 0.0))
        throw validation_error("wigner: grid spec must have positive spans and >= 8 points");

    int n_eff = effective_ladder_span(spec);
    double dp = (spec.g2 > 0.0) ? spec.delta_p(wp.el) : 0.0;
    double sp = wp.sigma_p0();
    double dz_t = (spec.g2 > 0.0) ? dp * t / wp.el.m_star : 0.0;
    double sz_t = wp.sigma_z(t);

    double d_zeta = 2.0 * g.zeta_half / g.n_zeta;
    double d_pp = 2.0 * g.pp_half / g.n_pp;

    // Momentum support of the state, and the largest chord |q| it populates.
    double p_support = n_eff * dp + 8.0 * sp;
    double q_support = 2.0 * n_eff * dp + 8.0 * sp;
    // Spatial support after drift (sidebands walk off by n * dz_t).
    double z_support = n_eff * dz_t + 5.0 * sz_t;

    std::ostringstream bad;
    if (pi * hbar / d_zeta < q_support)
        bad << "  d_zeta = " << d_zeta << " m undersamples momentum coherence; need <= "
            << pi * hbar / q_support << " m\n";
    if (g.zeta_half < z_support)
        bad << "  zeta_half = " << g.zeta_half << " m clips the packet; need >= "
            << z_support << " m\n";
    if (2.0 * g.zeta_half < 16.0 * wp.sigma_z0)
        bad << "  zeta span " << 2.0 * g.zeta_half
            << " m gives too coarse a chord step; need span >= " << 16.0 * wp.sigma_z0
            << " m\n";
    if (g.pp_half < p_support)
        bad << "  pp_half = " << g.pp_half << " kg m/s clips the sideband ladder; need >= "
            << p_support << " kg m/s\n";
    if (2.0 * pi * hbar / d_pp < 2.0 * z_support)
        bad << "  d_pp = " << d_pp << " kg m/s undersamples spatial structure; need <= "
            << pi * hbar / z_support << " kg m/s\n";
    if (!bad.str().empty())
        throw resolution_error("wigner grid under-resolved:\n" + bad.str());
}

inline WignerGrid wigner_transform(const GaussianWavepacket& wp, const ModulationSpec& spec,
                                   const WignerGridSpec& g, double t, int threads = 1) {
    validate_wigner_grid(wp, spec, g, t);

    WignerGrid out;
    out.t_eval = t;
    out.d_zeta = 2.0 * g.zeta_half / g.n_zeta;
    out.d_pp = 2.0 * g.pp_half / g.n_pp;
    out.zeta_axis.resize(std::size_t(g.n_zeta));
    out.pp_axis.resize(std::size_t(g.n_pp));
    for (int j = 0; j < g.n_zeta; ++j)
        out.zeta_axis[std::size_t(j)] = -g.zeta_half + (j + 0.5) * out.d_zeta;
    for (int k = 0; k < g.n_pp; ++k)
        out.pp_axis[std::size_t(k)] = -g.pp_half + (k + 0.5) * out.d_pp;

    double L_zeta = 2.0 * g.zeta_half;
    double dq = 2.0 * pi * hbar / L_zeta;
    int n_q = g.n_zeta;              // chords l in [-n_q/2, n_q/2)
    int l_lo = -n_q / 2;

    // The amplitude is sampled once on the p' +- q/2 half-step lattice. With
    // d_pp an integer multiple of dq the midpoint p' axis lands exactly on
    // the dq/2 lattice, so one shared table serves every (p', q) pair;
    // otherwise fall back to direct evaluation.
    bool commensurate = std::abs(out.d_pp / dq - std::round(out.d_pp / dq)) < 1e-9;
    double table_step = 0.5 * dq;
    double table_min = -g.pp_half - 0.25 * n_q * dq - table_step;
    std::vector<cplx> table;
    long long table_n = 0;
    auto amp = [&](double pp) { return momentum_amplitude(wp, spec, pp); };
    if (commensurate) {
        table_n = llround((g.pp_half + 0.25 * n_q * dq + table_step - table_min) /
                          table_step) + 2;
        table.resize(std::size_t(table_n));
        for (long long i = 0; i < table_n; ++i)
            table[std::size_t(i)] = amp(table_min + double(i) * table_step);
    }
    auto amp_at = [&](double pp) -> cplx {
        if (!commensurate) return amp(pp);
        long long i = llround((pp - table_min) / table_step);
        return table[std::size_t(i)];
    };

    out.values.assign(std::size_t(g.n_zeta) * std::size_t(g.n_pp), 0.0);
    std::vector<double> im_residual(std::size_t(g.n_pp), 0.0);

    parallel_for(std::size_t(g.n_pp), unsigned(threads), [&](std::size_t k) {
        double ppk = out.pp_axis[k];
        // Chord coefficients C_l = psi*(p'-q/2) psi(p'+q/2) e^{-i p' q t/(m* hbar)}
        std::vector<cplx> c(static_cast<std::size_t>(n_q));
        cplx drift_step = std::exp(cplx(0.0, -ppk * dq * t / (wp.el.m_star * hbar)));
        cplx drift = std::pow(drift_step, l_lo);
        for (int l = l_lo; l < l_lo + n_q; ++l) {
            double q = l * dq;
            c[std::size_t(l - l_lo)] =
                std::conj(amp_at(ppk - 0.5 * q)) * amp_at(ppk + 0.5 * q) * drift;
            drift *= drift_step;
        }
        for (int j = 0; j < g.n_zeta; ++j) {
            cplx w_step = std::exp(cplx(0.0, dq * out.zeta_axis[std::size_t(j)] / hbar));
            cplx w = std::pow(w_step, l_lo);
            cplx acc = 0.0;
            for (int li = 0; li < n_q; ++li) {
                acc += c[std::size_t(li)] * w;
                w *= w_step;
            }
            acc *= dq / (2.0 * pi * hbar);
            out.values[std::size_t(j) * std::size_t(g.n_pp) + k] = acc.real();
            if (std::abs(acc.imag()) > im_residual[k]) im_residual[k] = std::abs(acc.imag());
        }
    });

    for (double r : im_residual)
        if (r > out.max_im_residual) out.max_im_residual = r;
    return out;
}

inline WignerGrid wigner_transform(const GaussianWavepacket& wp, const WignerGridSpec& g,
                                   double t, int threads = 1) {
    ModulationSpec off = ModulationSpec::make(0.0, 1.0, 0.0, 0);
    return wigner_transform(wp, off, g, t, threads);
}

// Grid whose momentum step equals the conjugate chord step dq, so amplitude
// lookups share one table and the momentum axis spans the chord Nyquist.
inline WignerGridSpec conjugate_grid(double zeta_half, int n_zeta, int n_pp) {
    WignerGridSpec g;
    g.zeta_half = zeta_half;
    g.n_zeta = n_zeta;
    g.n_pp = n_pp;
    g.pp_half = 0.5 * n_pp * pi * hbar / zeta_half;
    return g;
}

} // namespace wprad
