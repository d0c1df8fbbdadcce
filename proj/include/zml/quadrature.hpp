// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_QUADRATURE_HPP
#define ZML_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "zml/config.hpp"

namespace zml {

/// Numerically integrate f over (a, b) with tanh-sinh quadrature in plain
/// doubles. Deliberately uncertified: this is the independent cross-check
/// route for the certified closed-form integrals, good to roughly 1e-13
/// relative for smooth integrands, and it tolerates integrable endpoint
/// singularities because the substitution pushes nodes toward the
/// endpoints doubly exponentially. The level doubles the node density
/// each round; failure to converge is a resource error.
inline double tanh_sinh(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-13,
                        unsigned max_level = 14) {
    require(b > a, errc::usage, "integration range is empty");
    const double half = (b - a) / 2;
    const double pi_half = 1.5707963267948966;

    // Evaluate the transformed integrand at parameter t = j*h. The
    // abscissa is built from its offset to the nearer endpoint using
    // 1 - tanh(u) = 2/(exp(2u) + 1); forming mid + half*tanh(u) instead
    // would cancel catastrophically and wreck integrands with endpoint
    // singularities. Nodes that still collapse onto an endpoint in
    // floating point are skipped; their weights are far below the target
    // tolerance.
    const auto node = [&](double t, double& x, double& w) {
        const double u = pi_half * std::sinh(t);
        const double offset = half * 2 / (std::exp(2 * std::fabs(u)) + 1);
        x = u >= 0 ? b - offset : a + offset;
        w = half * pi_half * std::cosh(t) / std::pow(std::cosh(u), 2);
        return x > a && x < b && w > 0 && std::isfinite(w);
    };

    const double t_max = 6.5; // tanh(pi/2 sinh 6.5) is 1 to double precision
    double h = 1.0;
    double sum = 0;
    {
        double x, w;
        if (node(0.0, x, w)) sum += w * f(x);
        for (double t = h; t <= t_max; t += h) {
            if (node(t, x, w)) sum += w * f(x);
            if (node(-t, x, w)) sum += w * f(x);
        }
    }
    double estimate = h * sum;
    for (unsigned level = 1; level <= max_level; ++level) {
        h /= 2;
        double extra = 0;
        double x, w;
        for (double t = h; t <= t_max; t += 2 * h) {
            if (node(t, x, w)) extra += w * f(x);
            if (node(-t, x, w)) extra += w * f(x);
        }
        const double refined = estimate / 2 + h * extra;
        const double change = std::fabs(refined - estimate);
        estimate = refined;
        if (level >= 3 && change <= rel_tol * std::fabs(estimate))
            return estimate;
    }
    throw Error(errc::resource,
                "quadrature did not converge at the requested level");
}

/// Cross-check value of int_0^T P(log(t/2pi)) dt for the degree-n
/// polynomial with coefficients c_r on x^(n - r), c_0 first. Split at
/// 2pi: the integrand has an integrable singularity at 0 and the split
/// keeps both panels smooth inside.
inline double quad_moment_polynomial(double T,
                                     const std::vector<double>& coeffs,
                                     double rel_tol = 1e-13) {
    require(!coeffs.empty(), errc::usage, "empty coefficient list");
    require(T > 0, errc::usage, "height must be positive");
    const double two_pi = 6.283185307179586;
    const auto poly = [&](double t) {
        const double x = std::log(t / two_pi);
        double acc = 0;
        for (double c : coeffs) acc = acc * x + c;
        return acc;
    };
    if (T <= two_pi) return tanh_sinh(poly, 0, T, rel_tol);
    return tanh_sinh(poly, 0, two_pi, rel_tol) +
           tanh_sinh(poly, two_pi, T, rel_tol);
}

/// Cross-check value of int_0^T c0 (|log(t/2pi)| + tau)^(k^2) dt, split
/// at 2pi where the absolute value has its kink.
inline double quad_moment_bound(double T, unsigned k, double c0, double tau,
                                double rel_tol = 1e-13) {
    require(k >= 1, errc::usage, "moment bound needs k >= 1");
    require(T > 0, errc::usage, "height must be positive");
    const double two_pi = 6.283185307179586;
    const double n = static_cast<double>(k) * k;
    const auto f = [&](double t) {
        return c0 * std::pow(std::fabs(std::log(t / two_pi)) + tau, n);
    };
    if (T <= two_pi) return tanh_sinh(f, 0, T, rel_tol);
    return tanh_sinh(f, 0, two_pi, rel_tol) +
           tanh_sinh(f, two_pi, T, rel_tol);
}

} // namespace zml

#endif // ZML_QUADRATURE_HPP
