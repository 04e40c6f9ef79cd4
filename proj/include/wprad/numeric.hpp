#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wprad {

// Thrown when inputs violate an operation's stated domain.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a requested grid cannot support the computation; the message
// lists each violated requirement together with the value that would satisfy it.
class resolution_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an iterative numerical procedure fails to converge or a
// cross-check inside an operation is violated.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using cplx = std::complex<double>;

inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// sinh(z)/z, stable at z -> 0.
inline cplx sinhc(cplx z) {
    if (std::abs(z) < 1e-4) {
        cplx z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw validation_error("linspace: need at least 2 points");
    std::vector<double> v(n);
    double h = (b - a) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + h * double(i);
    v.back() = b;
    return v;
}

template <typename T>
inline T trapezoid(const std::vector<T>& y, double h) {
    if (y.size() < 2) throw validation_error("trapezoid: need at least 2 samples");
    T s = (y.front() + y.back()) / 2.0;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * h;
}

// Composite Simpson on an odd number of uniformly spaced samples.
template <typename T>
inline T simpson(const std::vector<T>& y, double h) {
    if (y.size() < 3 || y.size() % 2 == 0)
        throw validation_error("simpson: need an odd sample count >= 3");
    T s = y.front() + y.back();
    for (std::size_t i = 1; i + 1 < y.size(); i += 2) s += 4.0 * y[i];
    for (std::size_t i = 2; i + 1 < y.size(); i += 2) s += 2.0 * y[i];
    return s * (h / 3.0);
}

// Bisection for a sign change of f on [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double xtol, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0))
        throw numeric_error("bisect: no sign change on bracket");
    for (int i = 0; i < max_iter; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0 || (b - a) < xtol) return m;
        if ((fm > 0) == (fa > 0)) { a = m; fa = fm; }
        else                      { b = m; }
    }
    return 0.5 * (a + b);
}

// Golden-section minimum of f on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a, double b,
                         double xtol, int max_iter = 200) {
    constexpr double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = f(x1); }
        else         { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = f(x2); }
    }
    return 0.5 * (a + b);
}

// Static-partition parallel loop. Results must be written to disjoint,
// preallocated slots so the outcome is independent of the thread count.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (threads > n) threads = unsigned(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = std::size_t(t) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace wprad
