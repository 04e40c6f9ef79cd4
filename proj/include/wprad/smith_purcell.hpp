#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "wprad/bunching.hpp"
#include "wprad/electron.hpp"
#include "wprad/numeric.hpp"

namespace wprad {

struct GratingSpec {
    double lambda_G = 0.0;  // m
    int N_G = 0;
    std::vector<int> m_range;

    static GratingSpec make(double lambda_G, int N_G, std::vector<int> m_range) {
        if (!(lambda_G > 0.0)) throw validation_error("grating: lambda_G must be > 0");
        if (N_G < 1) throw validation_error("grating: N_G must be >= 1");
        if (m_range.empty()) throw validation_error("grating: m_range must be non-empty");
        for (int m : m_range)
            if (m < 1) throw validation_error("grating: space-harmonic orders must be >= 1");
        return GratingSpec{lambda_G, N_G, std::move(m_range)};
    }

    double k_G() const { return 2.0 * pi / lambda_G; }
    double L_G() const { return N_G * lambda_G; }
    int m_max() const { return *std::max_element(m_range.begin(), m_range.end()); }
};

inline void check_theta(double Theta) {
    if (!(Theta > 0.0 && Theta < pi))
        throw validation_error("emission angle must lie strictly inside (0, pi)");
}

// Axial wavenumber of the m-th space harmonic of a free-space wave emitted
// at angle Theta from the grating plane.
inline double floquet_qz(const GratingSpec& g, double Theta, double omega, int m) {
    check_theta(Theta);
    return (omega / c0) * std::cos(Theta) + m * g.k_G();
}

inline double floquet_detuning(const GratingSpec& g, double v0, double Theta, double omega,
                               int m) {
    return omega / v0 - floquet_qz(g, Theta, omega, m);
}

// Classical emission wavelength of harmonic m at angle Theta.
inline double spr_wavelength(const GratingSpec& g, double beta0, double Theta, int m) {
    check_theta(Theta);
    if (m < 1) throw validation_error("spr_wavelength: m must be >= 1");
    return g.lambda_G / m * (1.0 / beta0 - std::cos(Theta));
}

// Size-driven suppression of harmonic m across the angular range. The packet
// cuts emission where sigma_z exceeds the local lambda_m(Theta)/(2 pi); the
// window boundaries follow from Theta -> 0 and Theta -> pi. When sigma_z
// clears even the backward edge, the residual crest factor
// exp(-(omega sigma_t)^2) at Theta -> pi, where
// omega sigma_t = 2 pi m (sigma_z/lambda_G)/(1 + beta), decides whether a
// trace survives (>= 1e-2) or the harmonic is gone.
enum class CutoffClass { unaffected, partially_cut, barely_observable, extinct };

inline const char* to_string(CutoffClass c) {
    switch (c) {
        case CutoffClass::unaffected: return "unaffected";
        case CutoffClass::partially_cut: return "partially_cut";
        case CutoffClass::barely_observable: return "barely_observable";
        default: return "extinct";
    }
}

struct CutoffReport {
    int m = 0;
    double window_low = 0.0;       // m (length units)
    double window_high = 0.0;
    double edge_suppression = 0.0;  // quantum/classical factor at Theta -> pi
    CutoffClass cls = CutoffClass::unaffected;
    bool on_boundary = false;
};

inline std::vector<CutoffReport> cutoff_window(const GratingSpec& g, double beta0,
                                               double sigma_z) {
    std::vector<CutoffReport> out;
    for (int m : g.m_range) {
        CutoffReport r;
        r.m = m;
        r.window_low = (1.0 - beta0) * g.lambda_G / (2.0 * pi * m);
        r.window_high = (1.0 + beta0) * g.lambda_G / (2.0 * pi * m);
        double edge_arg = 2.0 * pi * m * (sigma_z / g.lambda_G) / (1.0 + beta0);
        r.edge_suppression = std::exp(-edge_arg * edge_arg);
        r.on_boundary = std::abs(sigma_z - r.window_low) < 1e-9 * r.window_low ||
                        std::abs(sigma_z - r.window_high) < 1e-9 * r.window_high;
        if (sigma_z <= r.window_low)
            r.cls = CutoffClass::unaffected;
        else if (sigma_z < r.window_high)
            r.cls = CutoffClass::partially_cut;
        else
            r.cls = (r.edge_suppression >= 1e-2) ? CutoffClass::barely_observable
                                                 : CutoffClass::extinct;
        out.push_back(r);
    }
    return out;
}

// Angles where the l-th bunching harmonic meets the m-th classical ridge,
// cos(Theta_lm) = 1/beta - m c k_G / (l omega_b). Harmonics beyond what the
// micro-bunch substructure supports (l >= T_b/(2 pi width)) are dropped when
// a width is given.
struct RevivalSpot {
    int l = 0, m = 0;
    double Theta = 0.0;
    double omega = 0.0;
    double lambda = 0.0;
};

inline std::vector<RevivalSpot> revival_spots(const GratingSpec& g, double beta0,
                                              double omega_b, int l_max,
                                              double substructure_width = 0.0) {
    if (!(omega_b > 0.0)) throw validation_error("revival_spots: omega_b must be > 0");
    double Tb = 2.0 * pi / omega_b;
    std::vector<RevivalSpot> out;
    for (int l = 1; l <= l_max; ++l) {
        if (substructure_width > 0.0 &&
            l >= harmonic_support_bound(Tb, substructure_width))
            break;
        for (int m : g.m_range) {
            double c_th = 1.0 / beta0 - m * c0 * g.k_G() / (l * omega_b);
            if (!(c_th > -1.0 && c_th < 1.0)) continue;
            RevivalSpot s;
            s.l = l;
            s.m = m;
            s.Theta = std::acos(c_th);
            s.omega = l * omega_b;
            s.lambda = 2.0 * pi * c0 / s.omega;
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RevivalSpot& a, const RevivalSpot& b) { return a.Theta < b.Theta; });
    return out;
}

struct LinewidthReport {
    double sync_rel = 0.0;      // sinc lobe: 1/(m N_G)
    double bunching_rel = 0.0;  // harmonic line: (2/pi)/(l N_b)
    bool sync_dominates = false;
};

inline LinewidthReport linewidths(const GratingSpec& g, int m, int l, double N_b) {
    if (m < 1 || l < 1 || !(N_b >= 1.0))
        throw validation_error("linewidths: need m, l >= 1 and N_b >= 1");
    LinewidthReport r;
    r.sync_rel = 1.0 / (double(m) * g.N_G);
    r.bunching_rel = (2.0 / pi) / (double(l) * N_b);
    r.sync_dominates = r.sync_rel < r.bunching_rel;
    return r;
}

// ---------------------------------------------------------------------------
// (lambda, Theta) spectral maps

struct MapAxes {
    std::vector<double> lambda;  // m, ascending
    std::vector<double> theta;   // rad, ascending, inside (0, pi)
};

inline MapAxes make_axes(double lambda_min, double lambda_max, int n_lambda,
                         double theta_min, double theta_max, int n_theta) {
    MapAxes a;
    a.lambda = linspace(lambda_min, lambda_max, std::size_t(n_lambda));
    a.theta = linspace(theta_min, theta_max, std::size_t(n_theta));
    return a;
}

inline void validate_map_axes(const GratingSpec& g, const MapAxes& axes) {
    if (axes.lambda.size() < 2 || axes.theta.size() < 2)
        throw validation_error("map axes need at least 2 samples each");
    if (!(axes.lambda.front() > 0.0))
        throw validation_error("map wavelengths must be positive");
    check_theta(axes.theta.front());
    check_theta(axes.theta.back());
    double d_lambda = axes.lambda[1] - axes.lambda[0];
    // Eight samples across the narrowest sinc lobe on the axis.
    double need = axes.lambda.front() / (8.0 * g.m_max() * g.N_G);
    if (d_lambda > need) {
        std::ostringstream msg;
        msg << "map lambda axis under-resolved: step " << d_lambda << " m, need <= " << need
            << " m (" << std::size_t((axes.lambda.back() - axes.lambda.front()) / need) + 2
            << " samples)";
        throw resolution_error(msg.str());
    }
}

enum class MapChannel { classical, quantum, modulated, revival };

struct SpectralMap {
    MapAxes axes;
    MapChannel channel = MapChannel::classical;
    std::vector<double> values;       // [i_theta * n_lambda + j]
    std::vector<std::int8_t> label_l;  // dominant harmonic per cell
    std::vector<std::int8_t> label_m;

    std::size_t n_lambda() const { return axes.lambda.size(); }
    std::size_t n_theta() const { return axes.theta.size(); }
    double at(std::size_t i_theta, std::size_t j_lambda) const {
        return values[i_theta * n_lambda() + j_lambda];
    }
};

// Per-harmonic mode weights default to 1; the true grating field amplitudes
// need an electromagnetic solve that is out of scope here.
inline std::vector<double> default_weights(const GratingSpec& g) {
    return std::vector<double>(g.m_range.size(), 1.0);
}

inline SpectralMap spectral_map(const GratingSpec& g, const RelativisticElectron& el,
                                const PacketAtPlane& pk, const BunchingSpectrum* bs,
                                const MapAxes& axes, MapChannel channel,
                                std::vector<double> weights = {}, int threads = 1) {
    validate_map_axes(g, axes);
    if ((channel == MapChannel::modulated || channel == MapChannel::revival) && !bs)
        throw validation_error("modulated map channels need a bunching spectrum");
    if (weights.empty()) weights = default_weights(g);
    if (weights.size() != g.m_range.size())
        throw validation_error("need one weight per space harmonic");

    SpectralMap map;
    map.axes = axes;
    map.channel = channel;
    std::size_t nl = axes.lambda.size(), nt = axes.theta.size();
    map.values.assign(nt * nl, 0.0);
    map.label_l.assign(nt * nl, 0);
    map.label_m.assign(nt * nl, 0);

    double st = pk.sigma_t;
    parallel_for(nt, unsigned(threads), [&](std::size_t i) {
        double Theta = axes.theta[i];
        for (std::size_t j = 0; j < nl; ++j) {
            double omega = 2.0 * pi * c0 / axes.lambda[j];
            double v = 0.0, best = -1.0;
            int best_l = 0, best_m = 0;
            for (std::size_t im = 0; im < g.m_range.size(); ++im) {
                int m = g.m_range[im];
                double x = 0.5 * floquet_detuning(g, el.v0, Theta, omega, m) * g.L_G();
                double s = sinc(x);
                double base = weights[im] * s * s;
                if (channel == MapChannel::classical || channel == MapChannel::quantum) {
                    double term = base;
                    if (channel == MapChannel::quantum) {
                        double a = omega * st;
                        term *= std::exp(-a * a);
                    }
                    v += term;
                    if (term > best) { best = term; best_m = m; best_l = 0; }
                } else {
                    int l_lo = (channel == MapChannel::revival) ? 1 : -bs->l_max;
                    for (int l = l_lo; l <= bs->l_max; ++l) {
                        double d = (omega - l * bs->omega_b) * st;
                        double term = base * std::norm(bs->B(l)) * std::exp(-d * d);
                        v += term;
                        if (term > best) { best = term; best_m = m; best_l = l; }
                    }
                }
            }
            map.values[i * nl + j] = v;
            map.label_l[i * nl + j] = std::int8_t(best_l);
            map.label_m[i * nl + j] = std::int8_t(best_m);
        }
    });
    return map;
}

// Signed energy-exchange map for an input wave scanned over (lambda, Theta).
// Spontaneous maps weight energies; here the per-harmonic weights enter as
// field amplitudes, hence the square root.
inline SpectralMap stimulated_map(const GratingSpec& g, const RelativisticElectron& el,
                                  const PacketAtPlane& pk, const BunchingSpectrum* bs,
                                  double E_0, double phi_0, const MapAxes& axes,
                                  std::vector<double> weights = {}, int threads = 1) {
    validate_map_axes(g, axes);
    if (weights.empty()) weights = default_weights(g);
    if (weights.size() != g.m_range.size())
        throw validation_error("need one weight per space harmonic");

    SpectralMap map;
    map.axes = axes;
    map.channel = bs ? MapChannel::modulated : MapChannel::quantum;
    std::size_t nl = axes.lambda.size(), nt = axes.theta.size();
    map.values.assign(nt * nl, 0.0);
    map.label_l.assign(nt * nl, 0);
    map.label_m.assign(nt * nl, 0);

    double st = pk.sigma_t;
    double scale = q_e * E_0 * g.L_G();
    parallel_for(nt, unsigned(threads), [&](std::size_t i) {
        double Theta = axes.theta[i];
        for (std::size_t j = 0; j < nl; ++j) {
            double omega = 2.0 * pi * c0 / axes.lambda[j];
            double v = 0.0, best = -1.0;
            int best_l = 0, best_m = 0;
            for (std::size_t im = 0; im < g.m_range.size(); ++im) {
                int m = g.m_range[im];
                double x = 0.5 * floquet_detuning(g, el.v0, Theta, omega, m) * g.L_G();
                double amp = std::sqrt(weights[im]) * sinc(x);
                if (!bs) {
                    double a = omega * st;
                    double term = scale * amp *
                                  std::cos(x + omega * pk.t0e - phi_0) *
                                  std::exp(-0.5 * a * a);
                    v += term;
                    if (std::abs(term) > best) { best = std::abs(term); best_m = m; best_l = 0; }
                } else {
                    for (int l = -bs->l_max; l <= bs->l_max; ++l) {
                        cplx Bl = bs->B(l);
                        if (std::abs(Bl) == 0.0) continue;
                        double d = omega - l * bs->omega_b;
                        double term = scale * amp * std::abs(Bl) *
                                      std::cos(x + d * pk.t0e + std::arg(Bl) - phi_0) *
                                      std::exp(-0.5 * st * st * d * d);
                        v += term;
                        if (std::abs(term) > best) { best = std::abs(term); best_m = m; best_l = l; }
                    }
                }
            }
            map.values[i * nl + j] = v;
            map.label_l[i * nl + j] = std::int8_t(best_l);
            map.label_m[i * nl + j] = std::int8_t(best_m);
        }
    });
    return map;
}

// Column-wise ridge crest: the argmax cell within the main sinc lobe of
// harmonic m at the given angle column.
inline std::size_t ridge_crest_index(const SpectralMap& map, const GratingSpec& g,
                                     double beta0, std::size_t i_theta, int m) {
    double lam_m = spr_wavelength(g, beta0, map.axes.theta[i_theta], m);
    double lobe = lam_m / (double(m) * g.N_G);
    std::size_t best = 0;
    double best_v = -1.0;
    bool any = false;
    for (std::size_t j = 0; j < map.n_lambda(); ++j) {
        if (std::abs(map.axes.lambda[j] - lam_m) > lobe) continue;
        double v = map.at(i_theta, j);
        if (v > best_v) { best_v = v; best = j; any = true; }
    }
    if (!any) throw validation_error("ridge lobe lies outside the map wavelength axis");
    return best;
}

// Spots on a revival-channel map: cells in the quantum-suppressed region
// (omega sigma_t >= 1) above a fraction of the regional maximum, grouped by
// 4-connectivity; each component is summarized by its argmax cell.
struct DetectedSpot {
    std::size_t i_theta = 0, j_lambda = 0;
    double Theta = 0.0, lambda = 0.0, value = 0.0;
    int l = 0, m = 0;
};

inline std::vector<DetectedSpot> find_revival_spots(const SpectralMap& map, double sigma_t,
                                                    double threshold_frac = 0.25) {
    std::size_t nl = map.n_lambda(), nt = map.n_theta();
    double lambda_cut = 2.0 * pi * c0 * sigma_t;  // omega sigma_t = 1 boundary
    double regional_max = 0.0;
    std::vector<char> in_region(nt * nl, 0);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < nl; ++j)
            if (map.axes.lambda[j] <= lambda_cut) {
                in_region[i * nl + j] = 1;
                regional_max = std::max(regional_max, map.values[i * nl + j]);
            }
    double thr = threshold_frac * regional_max;
    std::vector<char> mask(nt * nl, 0);
    for (std::size_t c = 0; c < nt * nl; ++c)
        mask[c] = char(in_region[c] && map.values[c] >= thr);

    std::vector<DetectedSpot> spots;
    std::vector<char> seen(nt * nl, 0);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < nt * nl; ++start) {
        if (!mask[start] || seen[start]) continue;
        stack.assign(1, start);
        seen[start] = 1;
        std::size_t best = start;
        while (!stack.empty()) {
            std::size_t c = stack.back();
            stack.pop_back();
            if (map.values[c] > map.values[best]) best = c;
            std::size_t i = c / nl, j = c % nl;
            const std::size_t nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
            for (auto& q : nb) {
                if (q[0] >= nt || q[1] >= nl) continue;  // unsigned wrap guards both ends
                std::size_t cc = q[0] * nl + q[1];
                if (mask[cc] && !seen[cc]) {
                    seen[cc] = 1;
                    stack.push_back(cc);
                }
            }
        }
        DetectedSpot s;
        s.i_theta = best / nl;
        s.j_lambda = best % nl;
        s.Theta = map.axes.theta[s.i_theta];
        s.lambda = map.axes.lambda[s.j_lambda];
        s.value = map.values[best];
        s.l = map.label_l[best];
        s.m = map.label_m[best];
        spots.push_back(s);
    }
    std::sort(spots.begin(), spots.end(),
              [](const DetectedSpot& a, const DetectedSpot& b) { return a.Theta < b.Theta; });
    return spots;
}

} // namespace wprad
