#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rissk {

inline constexpr double kPi = 3.14159265358979323846;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Modified Bessel function of the first kind, orders 0 and 1.
// Power series below the switch point, asymptotic expansion above; the
// series has positive terms only, so there is no cancellation and the
// switch point is checked against the series in the test suite.
namespace detail {

inline double bessel_i_series(int order, double x) {
    const double h = x / 2.0;
    double term = (order == 0) ? 1.0 : h;
    double sum = term;
    for (int m = 1; m < 500; ++m) {
        term *= h * h / (static_cast<double>(m) * (m + order));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

// log(I_a(x)) for large x: x - log(2 pi x)/2 + log(sum_k a_k), with
// a_k = prod_{i<=k} -(4a^2 - (2i-1)^2) / (8 x i).
inline double bessel_i_log_asymptotic(int order, double x) {
    const double mu = 4.0 * order * order;
    double term = 1.0, sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 40; ++k) {
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        const double a = std::fabs(term);
        if (a > prev) break;  // divergent tail reached
        sum += term;
        prev = a;
        if (a < 1e-18) break;
    }
    return x - 0.5 * std::log(2.0 * kPi * x) + std::log(sum);
}

}  // namespace detail

inline double bessel_i(int order, double x) {
    if (order != 0 && order != 1) throw std::domain_error("bessel_i: order must be 0 or 1");
    if (!std::isfinite(x) || x < 0.0) throw std::domain_error("bessel_i: x must be finite and >= 0");
    if (x < 15.0) return detail::bessel_i_series(order, x);
    return std::exp(detail::bessel_i_log_asymptotic(order, x));
}

// log(e^{-x} I_a(x)), stable for arbitrarily large x.
inline double bessel_i_scaled_log(int order, double x) {
    if (!std::isfinite(x) || x < 0.0) throw std::domain_error("bessel_i_scaled_log: bad x");
    if (x < 15.0) return std::log(detail::bessel_i_series(order, x)) - x;
    return detail::bessel_i_log_asymptotic(order, x) - x;
}

// Gaussian tail probability Q(x) = P(N(0,1) > x). erfc-based; the Craig
// integral form lives in the tests as the oracle.
inline double q_function(double x) {
    if (!std::isfinite(x)) throw std::domain_error("q_function: x must be finite");
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// Odd Gaussian error function (2/sqrt(pi)) int_0^x e^{-v^2} dv.
inline double gauss_error_phi(double x) {
    if (!std::isfinite(x)) throw std::domain_error("gauss_error_phi: x must be finite");
    return std::erf(x);
}

// Chebyshev nodes cos((2k-1)pi/(2K)), k = 1..K. Built symmetrized so the
// k-th and (K+1-k)-th nodes are exact negatives and the middle node of an
// odd K is exactly zero.
inline std::vector<double> chebyshev_nodes(int K) {
    if (K < 1) throw std::domain_error("chebyshev_nodes: K must be >= 1");
    std::vector<double> v(static_cast<size_t>(K));
    for (int k = 1; 2 * k <= K; ++k) {
        const double c = std::cos((2.0 * k - 1.0) * kPi / (2.0 * K));
        v[static_cast<size_t>(k - 1)] = c;
        v[static_cast<size_t>(K - k)] = -c;
    }
    if (K % 2 == 1) v[static_cast<size_t>(K / 2)] = 0.0;
    return v;
}

// sinc(x) = sin(x)/x with the removable singularity handled.
inline double sinc(double x) {
    if (std::fabs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace rissk
