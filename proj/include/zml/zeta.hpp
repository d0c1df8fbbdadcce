// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_ZETA_HPP
#define ZML_ZETA_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "zml/ball.hpp"
#include "zml/config.hpp"
#include "zml/primes.hpp"
#include "zml/rational.hpp"

namespace zml {

namespace detail {

inline unsigned ceil_log2_u64(std::uint64_t v) {
    // smallest e with 2^e >= v (v >= 1)
    return v <= 1 ? 0u : static_cast<unsigned>(std::bit_width(v - 1));
}

} // namespace detail

/// zeta(s) for integer s >= 2 as a certified ball. Cached: the prime sums
/// request the same arguments for every k in a sweep.
inline BallValue zeta_int(unsigned long s, unsigned bits) {
    require(s >= 2, errc::usage, "zeta_int needs s >= 2");
    static std::mutex mtx;
    static std::map<std::pair<unsigned long, unsigned>, BallValue> cache;
    std::lock_guard<std::mutex> lock(mtx);
    const auto key = std::make_pair(s, bits);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, BallValue::zeta_of_ui(s, bits)).first;
    return it->second;
}

/// Euler-Mascheroni constant as a certified ball.
inline BallValue euler_gamma(unsigned bits) {
    static std::mutex mtx;
    static std::map<unsigned, BallValue> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(bits);
    if (it == cache.end())
        it = cache.emplace(bits, BallValue::euler_const(bits)).first;
    return it->second;
}

namespace detail {

/// -zeta'(s) for large integer s by direct Dirichlet summation:
/// sum_{n>=2} log(n) n^-s with the integral tail bound
/// N^(1-s) (log N/(s-1) + 1/(s-1)^2). Only efficient once s is comparable
/// to the requested bit count.
inline BallValue neg_zeta_prime_direct(unsigned long s, mpfr_prec_t w) {
    const unsigned long lg_n =
        (s + static_cast<unsigned long>(w) + 10 + (s - 2)) / (s - 1);
    const unsigned long N = 1ul << std::min<unsigned long>(lg_n, 40);
    BallValue acc(w);
    for (unsigned long n = 2; n <= N; ++n)
        acc = acc + BallValue::log_of_ui(n, w) / BallValue::pow_of_ui(n, s, w);
    const BallValue nb = BallValue::from_ui(N, 64);
    const ExactRational s1(static_cast<long>(s - 1));
    BallValue tail = log(nb).div_ui(s - 1) +
                     BallValue::from_rational(ExactRational(1) / (s1 * s1), 64);
    tail = tail / BallValue::pow_of_ui(N, s - 1, 64);
    acc.add_error(tail);
    return acc;
}

} // namespace detail

/// -zeta'(s)/zeta(s) for integer s >= 2 as a certified ball.
///
/// Small s: the alternating-series (eta function) acceleration with exact
/// integer weights d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!),
/// differentiated termwise. The termwise sum approximates eta'(s) with an
/// error controlled by a Cauchy bound on the disk |z - s| <= 1/2: the
/// acceleration's error on that disk is below 3(1+2|Im z|)e^(pi|Im z|/2)
/// (3+sqrt(8))^-n < 13.2 (3+sqrt(8))^-n, so |eta error| and |eta' error|
/// are both below 32 (3+sqrt(8))^-n <= 2^(5 - 2.543 n).
/// Large s (>= max(64, (w+16)/10)): direct summation converges faster.
inline BallValue zeta_log_deriv(unsigned long s, unsigned bits) {
    require(s >= 2, errc::usage, "zeta_log_deriv needs s >= 2");
    static std::mutex mtx;
    static std::map<std::pair<unsigned long, unsigned>, BallValue> cache;
    std::lock_guard<std::mutex> lock(mtx);
    const auto key = std::make_pair(s, bits);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;

    const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + 32;
    BallValue result(w);
    if (s >= std::max<unsigned long>(64, (static_cast<unsigned long>(w) + 16) / 10)) {
        result = detail::neg_zeta_prime_direct(s, w) / zeta_int(s, static_cast<unsigned>(w));
    } else {
        const unsigned n =
            static_cast<unsigned>(static_cast<double>(w + 11) / 2.543) + 2;
        // d_k via the exact term recurrence
        // T_0 = 1, T_i = T_{i-1} * 4(n+i-1)(n-i+1) / ((2i)(2i-1)).
        std::vector<ExactRational> d(n + 1);
        ExactRational T(1);
        d[0] = T;
        for (unsigned i = 1; i <= n; ++i) {
            T *= ExactRational(4L * (n + i - 1)) *
                 ExactRational(static_cast<long>(n - i + 1));
            T /= ExactRational(2L * i) * ExactRational(2L * i - 1);
            d[i] = d[i - 1] + T;
        }
        BallValue eta_acc(w), etap_acc(w);
        for (unsigned k = 0; k < n; ++k) {
            BallValue term =
                BallValue::from_rational(d[k] - d[n], w) /
                BallValue::pow_of_ui(k + 1, s, w);
            if (k % 2 == 1) term = -term;
            eta_acc = eta_acc + term;
            if (k >= 1)
                etap_acc = etap_acc + term * BallValue::log_of_ui(k + 1, w);
        }
        const BallValue dn = BallValue::from_rational(d[n], w);
        BallValue eta = -(eta_acc / dn);
        BallValue etap = etap_acc / dn;
        const long err_exp =
            5 - static_cast<long>(std::floor(2.543 * static_cast<double>(n)));
        eta.add_error_2exp(err_exp);
        etap.add_error_2exp(err_exp);

        const BallValue zeta = zeta_int(s, static_cast<unsigned>(w));
        const BallValue u = BallValue::one(w).mul_2exp(1 - static_cast<long>(s));
        const BallValue denom = BallValue::one(w) - u;
        // Internal cross-check: eta/(1-2^(1-s)) must agree with the
        // independently computed zeta. Catches any defect in the weights.
        require((eta / denom).overlaps(zeta), errc::internal,
                "eta-acceleration and zeta backend disagree");
        const BallValue l2 = BallValue::log2_const(w);
        result = (l2 * u * zeta - etap) / (denom * zeta);
    }
    result = result.round_to(bits);
    cache.emplace(key, result);
    return result;
}

/// Prime zeta tail P(m) - sum_{p <= cutoff} p^-m for integer m >= 2:
/// the sum of p^-m over all primes ABOVE the excluded block.
///
/// P(m) itself comes from the Moebius-weighted log-zeta expansion
/// P(m) = sum_d mu(d)/d * log zeta(d m), truncated at D with tail
/// below 2^(2-(D+1)m) (using log zeta(s) <= 3*2^-s for s >= 2). The
/// excluded primes are subtracted as exact-power reciprocals.
///
/// Working precision is raised to bits + m*log2(cutoff) + 64: the result is
/// of order cutoff^(1-m), astronomically below P(m) ~ 2^-m, so the
/// subtraction cancels about m*log2(cutoff) leading bits. Callers then
/// multiply by series coefficients of order (4k^2)^m, which is what makes
/// the extra guard bits load-bearing rather than cosmetic.
inline BallValue prime_zeta(unsigned m, const PrimeBlock& exclude,
                            unsigned bits) {
    require(m >= 2, errc::usage, "prime_zeta needs m >= 2");
    static std::mutex mtx;
    static std::map<std::tuple<unsigned, std::uint64_t, unsigned>, BallValue>
        cache;
    std::lock_guard<std::mutex> lock(mtx);
    const auto key = std::make_tuple(m, exclude.cutoff, bits);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;

    const unsigned lgP = std::max(1u, detail::ceil_log2_u64(exclude.cutoff));
    const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + m * lgP + 64;
    const std::uint64_t D =
        std::max<std::uint64_t>(1, (static_cast<std::uint64_t>(w) + 16 + m - 1) / m);
    const std::vector<int> mu = detail::moebius_up_to(D);

    BallValue acc(w);
    for (std::uint64_t d = 1; d <= D; ++d) {
        if (mu[d] == 0) continue;
        const BallValue t =
            log(zeta_int(d * m, static_cast<unsigned>(w))).div_ui(d);
        acc = mu[d] > 0 ? acc + t : acc - t;
    }
    acc.add_error_2exp(2 - static_cast<long>((D + 1) * m));

    const BallValue one = BallValue::one(w);
    for (const std::uint32_t p : exclude.primes)
        acc = acc - one / BallValue::pow_of_ui(p, m, w);

    cache.emplace(key, acc);
    return acc;
}

/// Log-weighted analogue: sum of log(p) p^-m over primes above the excluded
/// block, via sum_d mu(d) * (-zeta'/zeta)(d m) minus the explicit block.
/// The Moebius tail uses -zeta'/zeta(s) <= 3*2^-s (valid for s >= 4; every
/// truncated term has d m >= 2(D+1) >= 4).
inline BallValue log_prime_sum(unsigned m, const PrimeBlock& exclude,
                               unsigned bits) {
    require(m >= 2, errc::usage, "log_prime_sum needs m >= 2");
    static std::mutex mtx;
    static std::map<std::tuple<unsigned, std::uint64_t, unsigned>, BallValue>
        cache;
    std::lock_guard<std::mutex> lock(mtx);
    const auto key = std::make_tuple(m, exclude.cutoff, bits);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;

    const unsigned lgP = std::max(1u, detail::ceil_log2_u64(exclude.cutoff));
    const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + m * lgP + 64;
    const std::uint64_t D =
        std::max<std::uint64_t>(1, (static_cast<std::uint64_t>(w) + 16 + m - 1) / m);
    const std::vector<int> mu = detail::moebius_up_to(D);

    BallValue acc(w);
    for (std::uint64_t d = 1; d <= D; ++d) {
        if (mu[d] == 0) continue;
        const BallValue t = zeta_log_deriv(d * m, static_cast<unsigned>(w));
        acc = mu[d] > 0 ? acc + t : acc - t;
    }
    acc.add_error_2exp(2 - static_cast<long>((D + 1) * m));

    for (const std::uint32_t p : exclude.primes)
        acc = acc - BallValue::log_of_ui(p, w) / BallValue::pow_of_ui(p, m, w);

    cache.emplace(key, acc);
    return acc;
}

} // namespace zml

#endif // ZML_ZETA_HPP
