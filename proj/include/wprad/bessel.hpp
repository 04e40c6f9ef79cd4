#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "wprad/numeric.hpp"

namespace wprad::bessel {

inline constexpr int order_limit = 200;

// J_0..J_n_max by Miller's algorithm: downward recurrence from a start order
// well above both n_max and x, normalized with J_0 + 2*sum J_2k = 1. Downward
// recurrence follows the minimal solution, so the result is stable for every
// order; the start offset keeps the contamination of the seed far below 1e-15.
inline std::vector<double> ladder(double x, int n_max) {
    if (!(x >= 0.0)) throw validation_error("bessel: argument must be >= 0");
    if (n_max < 0 || n_max > order_limit)
        throw validation_error("bessel: order out of range 0..200");

    std::vector<double> out(std::size_t(n_max) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }

    int base = std::max(n_max, int(std::ceil(x)));
    int m = base + int(std::ceil(15.0 * std::sqrt(double(base) + 1.0))) + 20;
    if (m % 2) ++m;

    std::vector<long double> raw(std::size_t(n_max) + 1, 0.0L);
    long double jp = 0.0L;      // J at order k+1 (unnormalized)
    long double jc = 1e-30L;    // J at order k
    long double norm = 0.0L;
    for (int k = m; k >= 0; --k) {
        long double jm = (2.0L * (k + 1)) / (long double)x * jc - jp;
        jp = jc;
        jc = jm;
        if (k <= n_max) raw[std::size_t(k)] = jc;
        if (k % 2 == 0) norm += (k == 0) ? jc : 2.0L * jc;
        if (std::abs(jc) > 1e25L) {
            jc *= 1e-25L;
            jp *= 1e-25L;
            norm *= 1e-25L;
            for (auto& r : raw) r *= 1e-25L;
        }
    }
    for (int k = 0; k <= n_max; ++k) out[std::size_t(k)] = double(raw[std::size_t(k)] / norm);
    return out;
}

// J_n(x) for any |n| <= 200, x >= 0, via J_{-n} = (-1)^n J_n.
inline double j(int n, double x) {
    int a = std::abs(n);
    double v = ladder(x, a)[std::size_t(a)];
    if (n < 0 && (a % 2)) v = -v;
    return v;
}

// max |sum_n J_n J_{n+l} - delta_l0| over l = 0..l_max, summing |n| <= n_sum.
// Both sum rules are exact identities; the defect measures ladder accuracy.
inline double sum_rule_defect(double x, int l_max, int n_sum = order_limit) {
    auto J = ladder(x, n_sum);
    auto at = [&](int n) {
        int a = std::abs(n);
        double v = J[std::size_t(a)];
        return (n < 0 && (a % 2)) ? -v : v;
    };
    double worst = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        double s = 0.0;
        for (int n = -n_sum; n + l <= n_sum; ++n) s += at(n) * at(n + l);
        double target = (l == 0) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(s - target));
    }
    return worst;
}

} // namespace wprad::bessel
