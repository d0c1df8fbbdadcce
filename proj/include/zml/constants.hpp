// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_CONSTANTS_HPP
#define ZML_CONSTANTS_HPP

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <tuple>

#include "zml/ball.hpp"
#include "zml/config.hpp"
#include "zml/primes.hpp"
#include "zml/rational.hpp"
#include "zml/series.hpp"
#include "zml/zeta.hpp"

namespace zml {

/// The per-k arithmetic constants, evaluated together because they share
/// the per-prime hypergeometric work.
struct ArithmeticConstants {
    unsigned k = 0;
    BallValue a_k;          ///< Euler product over primes
    ExactRational g_k;      ///< exact lattice constant k^2! * prod j!/(j+k)!
    BallValue B_k;          ///< log-weighted prime sum
    BallValue tau_k;        ///< 2 B_k + 2 gamma k
    BallValue c0_k;         ///< a_k g_k / (k^2)!
    unsigned bits = 0;          ///< requested midpoint precision
    std::uint64_t prime_cutoff = 0;  ///< explicit prime range used
    unsigned tail_order = 0;         ///< series order M of the prime tails
};

/// Gauss hypergeometric F(a,b;c;t) for positive integer parameters and
/// exact rational 0 <= t < 1.
///
/// The partial sum is accumulated entirely in integers: with t = tn/td,
///   A_n = (a)_n (b)_n tn^n,   D_n = (c)_n n! td^n,
///   P_n = sum_{j<=n} A_j D_n/D_j,
/// so S_n = P_n/D_n is the exact value of the truncated series -- crucial
/// because individual terms (e.g. a=b=50, t=1/2) grow astronomically before
/// decaying, and floating accumulation would cancel catastrophically.
///
/// Truncation: the term ratio (a+j)(b+j)t/((c+j)(j+1)) is bounded for all
/// j >= n by q_n = ((a+n)/(n+1)) * max((b+n)/(c+n), 1) * t (both factors are
/// monotone toward their limits for integer parameters >= 1), so once
/// q_n < 1 the tail is at most term_n * q_n/(1-q_n); the loop stops when
/// that bound drops below 2^-(bits+40) of the partial sum and the bound is
/// folded into the radius.
inline BallValue hyp2f1(long a, long b, long c, const ExactRational& t,
                        unsigned bits) {
    require(a >= 1 && b >= 1 && c >= 1, errc::usage,
            "hyp2f1 parameters must be positive integers");
    require(t.sign() >= 0 && t < ExactRational(1), errc::usage,
            "hyp2f1 needs 0 <= t < 1");
    const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + 64;
    if (t.is_zero()) return BallValue::one(w);

    detail::scoped_mpz A(1), P(1), D(1);
    const long slack = static_cast<long>(bits) + 40;
    const unsigned long max_iter = 1u << 20;
    for (unsigned long n = 1; n <= max_iter; ++n) {
        // advance exact state to index n
        mpz_mul_ui(A, A, static_cast<unsigned long>(a) + n - 1);
        mpz_mul_ui(A, A, static_cast<unsigned long>(b) + n - 1);
        mpz_mul(A, A, t.num());
        mpz_mul_ui(P, P, (static_cast<unsigned long>(c) + n - 1) * n);
        mpz_mul(P, P, t.den());
        mpz_add(P, P, A);
        mpz_mul_ui(D, D, (static_cast<unsigned long>(c) + n - 1) * n);
        mpz_mul(D, D, t.den());

        // geometric ratio bound valid for every later term
        const ExactRational ab(a + static_cast<long>(n), static_cast<long>(n) + 1);
        ExactRational bc(b + static_cast<long>(n), c + static_cast<long>(n));
        if (bc < ExactRational(1)) bc = ExactRational(1);
        const ExactRational q = ab * bc * t;
        if (q >= ExactRational(1)) continue;
        const ExactRational r = q / (ExactRational(1) - q);

        // stop when A*r <= P * 2^-slack; cheap bit-length prefilter first
        const long szA = static_cast<long>(mpz_sizeinbase(A, 2));
        const long szP = static_cast<long>(mpz_sizeinbase(P, 2));
        const long szRn = static_cast<long>(mpz_sizeinbase(r.num(), 2));
        const long szRd = static_cast<long>(mpz_sizeinbase(r.den(), 2));
        const long lhs_hi = szA + szRn + slack;
        const long rhs_lo = szP + szRd - 2;
        bool stop = false;
        if (lhs_hi <= rhs_lo) {
            stop = true;
        } else if (lhs_hi <= szP + szRd + 2) {
            detail::scoped_mpz lhs, rhs;
            mpz_mul(lhs, A, r.num());
            mpz_mul_2exp(lhs, lhs, static_cast<unsigned long>(slack));
            mpz_mul(rhs, P, r.den());
            stop = mpz_cmp(lhs, rhs) <= 0;
        }
        if (stop) {
            BallValue value = BallValue::from_mpz(P, w) / BallValue::from_mpz(D, w);
            const BallValue tail = BallValue::from_mpz(A, 64) /
                                   BallValue::from_mpz(D, 64) *
                                   BallValue::from_rational(r, 64);
            value.add_error(tail);
            return value;
        }
    }
    throw Error(errc::resource,
                "hypergeometric series failed to reach the requested "
                "precision within the iteration budget");
}

/// Exact g_k = (k^2)! * prod_{j=0}^{k-1} j!/(j+k)!  (integer-valued).
inline ExactRational compute_g(unsigned k) {
    require(k >= 1, errc::usage, "compute_g needs k >= 1");
    ExactRational g = factorial(static_cast<unsigned long>(k) * k);
    for (unsigned j = 0; j < k; ++j)
        g *= factorial(j) / factorial(j + k);
    return g;
}

namespace detail {

/// log of the hypergeometric factor F(k,k;1;x) = sum_n C(k+n-1,n)^2 x^n as
/// an exact truncated series; cached per (k, order) since both prime tails
/// consume it.
inline TruncatedSeries f_log_series(unsigned k, unsigned order) {
    static std::mutex mtx;
    static std::map<std::pair<unsigned, unsigned>, TruncatedSeries> cache;
    std::lock_guard<std::mutex> lock(mtx);
    const auto key = std::make_pair(k, order);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
    TruncatedSeries f(order);
    for (unsigned n = 0; n <= order; ++n) {
        const ExactRational cb =
            binomial(static_cast<unsigned long>(k) + n - 1,
                     static_cast<long>(n));
        f.set(n, cb * cb);
    }
    const TruncatedSeries lf = series_log(f);
    cache.emplace(key, lf);
    return lf;
}

/// Everything downstream of the per-prime loop: the Euler product for a_k
/// and the log-weighted sum for B_k, with their certified prime tails.
struct EulerData {
    BallValue a;
    BallValue B;
};

inline EulerData euler_core(unsigned k, unsigned bits,
                            std::uint64_t cutoff, unsigned tail_order) {
    require(k >= 1, errc::usage, "constants need k >= 1");
    const ExactRational kk(static_cast<long>(k) * k);
    // The tail bounds need 1/(rho * cutoff) < 1 with rho = 1/(4k^2).
    require(cutoff > 4 * static_cast<std::uint64_t>(k) * k, errc::resource,
            "prime cutoff too small for this k: the tail bound needs "
            "cutoff > 4k^2; raise --prime-cutoff");
    const PrimeBlock block = primes_up_to(cutoff);
    const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + 64;

    // ---- explicit primes --------------------------------------------------
    BallValue prod = BallValue::one(w);
    BallValue bsum(w);
    for (const std::uint32_t p : block.primes) {
        const long pl = static_cast<long>(p);
        const ExactRational t(1, pl);
        const BallValue f1 = hyp2f1(k, k, 1, t, bits);
        const BallValue base =
            BallValue::from_rational(ExactRational(pl - 1, pl), w);
        prod = prod * (pow_ui(base, static_cast<unsigned long>(k) * k) * f1);
        if (k >= 2) {
            // k log(p) [1/(p-1) - F(k+1,k+1;2;1/p) / (p F(k,k;1;1/p))]
            const BallValue f2 = hyp2f1(k + 1, k + 1, 2, t, bits);
            const BallValue bracket =
                BallValue::from_rational(ExactRational(1, pl - 1), w) -
                f2 / (f1 * BallValue::from_ui(p, w));
            bsum = bsum + BallValue::log_of_ui(p, w).mul_si(k) * bracket;
        }
    }

    // ---- prime tails via series coefficients ------------------------------
    // log[(1-x)^{k^2} F(k,k;1;x)] = sum_{m>=2} c_m x^m, c_m = lf_m - k^2/m;
    // the per-prime B-term is sum_{m>=2} d_m log(p) x^m, d_m = k - m lf_m /k.
    const unsigned M = tail_order;
    const TruncatedSeries lf = f_log_series(k, M);
    require((lf[1] - kk).is_zero(), errc::internal,
            "local-factor log series must start at order 2");

    BallValue tz(w), tb(w);
    const bool need_b = k >= 2;
    for (unsigned m = 2; m <= M; ++m) {
        const ExactRational cm = lf[m] - kk / ExactRational(m);
        if (!cm.is_zero())
            tz = tz + BallValue::from_rational(cm, w) *
                          prime_zeta(m, block, bits);
        if (need_b) {
            const ExactRational dm =
                ExactRational(static_cast<long>(k)) -
                ExactRational(m) * lf[m] / ExactRational(static_cast<long>(k));
            if (!dm.is_zero())
                tb = tb + BallValue::from_rational(dm, w) *
                              log_prime_sum(m, block, bits);
        }
    }

    // ---- remainders beyond order M, via a Cauchy bound on |x| = rho -------
    // rho = 1/(4k^2). F and F' have nonnegative coefficients, so their
    // moduli on the circle peak at x = rho, and |F| >= 2 - F(rho) > 0 there;
    // F(rho) <= 4/3 because C(k+n-1,n)^2 <= k^(2n) = (4 rho)^(-n) * 4^(-n)...
    // the runtime check below only guards against implementation defects.
    const ExactRational rho = ExactRational(1) / (ExactRational(4) * kk);
    const BallValue f1r = hyp2f1(k, k, 1, rho, 96);
    const BallValue f2r = hyp2f1(k + 1, k + 1, 2, rho, 96);
    const BallValue two_minus = BallValue::from_si(2, 96) - f1r;
    require(two_minus.is_certainly_positive() &&
                f1r.certainly_lt(
                    BallValue::from_rational(ExactRational(19, 10), 96)),
            errc::resource, "hypergeometric circle bound out of range");
    const BallValue rho_b = BallValue::from_rational(rho, 96);
    const BallValue one96 = BallValue::one(96);
    // Coefficient bounds on the circle: |c_m| <= L rho^-m with
    // L = k^2 (-log(1-rho)) + (-log(2-F(rho))), and |d_m| <= U rho^-m with
    // U = k rho/(1-rho) + k rho F'(rho)/(k^2 (2-F(rho))), F' = k^2 F2.
    const BallValue L =
        (-log(one96 - rho_b)) * BallValue::from_rational(kk, 96) -
        log(two_minus);
    const BallValue U =
        rho_b.mul_si(static_cast<long>(k)) / (one96 - rho_b) +
        rho_b.mul_si(static_cast<long>(k)) * f2r / two_minus;

    // Prime sums above the cutoff: sum_{p>P} p^-m <= P^(1-m)/(m-1) and
    // sum_{p>P} log(p) p^-m <= P^(1-m)(log P + 1)/(m-1) for m > M >= 1, so
    //   R_a <= L (P/M)       * X^(M+1)/(1-X),
    //   R_B <= U P(log P+1)/M * X^(M+1)/(1-X),   X = 1/(rho P) = 4k^2/P < 1.
    const long Pl = static_cast<long>(cutoff);
    const ExactRational X = ExactRational(4) * kk / ExactRational(Pl);
    require(X < ExactRational(1), errc::resource, "tail ratio not convergent");
    const BallValue geo =
        pow_ui(BallValue::from_rational(X, 96), M + 1) /
        (one96 - BallValue::from_rational(X, 96));
    const BallValue ra =
        L * BallValue::from_rational(ExactRational(Pl, static_cast<long>(M)), 96) *
        geo;
    tz.add_error(ra);
    if (need_b) {
        const BallValue logp1 =
            log(BallValue::from_ui(cutoff, 96)) + one96;
        const BallValue rb =
            U * logp1 *
            BallValue::from_rational(ExactRational(Pl, static_cast<long>(M)),
                                     96) *
            geo;
        tb.add_error(rb);
    }

    EulerData out{prod * exp(tz), bsum};
    if (need_b) out.B = bsum + tb;
    return out;
}

/// Shared evaluation cache: concurrent reads, exclusive insertion.
inline ArithmeticConstants constants_cached(unsigned k, unsigned bits,
                                            std::uint64_t cutoff,
                                            unsigned tail_order);

} // namespace detail

/// a_k: the Euler product prod_p (1-1/p)^(k^2) F(k,k;1;1/p) with a
/// certified tail over primes beyond the cutoff.
inline BallValue compute_a(unsigned k, unsigned bits = 256,
                           std::uint64_t prime_cutoff = 100000,
                           unsigned tail_order = 30) {
    return detail::constants_cached(k, bits, prime_cutoff, tail_order).a_k;
}

/// B_k: sum_p k log(p) [1/(p-1) - F(k+1,k+1;2;1/p)/(p F(k,k;1;1/p))],
/// explicit below the cutoff, series-accelerated above it.
inline BallValue compute_B(unsigned k, unsigned bits = 256,
                           std::uint64_t prime_cutoff = 100000,
                           unsigned tail_order = 30) {
    return detail::constants_cached(k, bits, prime_cutoff, tail_order).B_k;
}

/// tau_k = 2 B_k + 2 gamma k.
inline BallValue compute_tau(unsigned k, unsigned bits = 256,
                             std::uint64_t prime_cutoff = 100000,
                             unsigned tail_order = 30) {
    return detail::constants_cached(k, bits, prime_cutoff, tail_order).tau_k;
}

/// c_0(k) = a_k g_k / (k^2)!.
inline BallValue compute_c0(unsigned k, unsigned bits = 256,
                            std::uint64_t prime_cutoff = 100000,
                            unsigned tail_order = 30) {
    return detail::constants_cached(k, bits, prime_cutoff, tail_order).c0_k;
}

/// Full constant bundle (cached).
inline ArithmeticConstants compute_constants(unsigned k, unsigned bits = 256,
                                             std::uint64_t prime_cutoff = 100000,
                                             unsigned tail_order = 30) {
    return detail::constants_cached(k, bits, prime_cutoff, tail_order);
}

namespace detail {

inline ArithmeticConstants constants_cached(unsigned k, unsigned bits,
                                            std::uint64_t cutoff,
                                            unsigned tail_order) {
    require(bits >= 64, errc::usage, "precision must be at least 64 bits");
    require(tail_order >= 4, errc::usage, "tail order must be at least 4");
    using Key = std::tuple<unsigned, unsigned, std::uint64_t, unsigned>;
    static std::shared_mutex mtx;
    static std::map<Key, ArithmeticConstants> cache;
    const Key key{k, bits, cutoff, tail_order};
    {
        std::shared_lock<std::shared_mutex> lock(mtx);
        if (const auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    const EulerData core = euler_core(k, bits, cutoff, tail_order);
    const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + 64;

    ArithmeticConstants out;
    out.k = k;
    out.a_k = core.a;
    out.g_k = compute_g(k);
    out.B_k = core.B;
    out.tau_k = core.B.mul_si(2) + euler_gamma(bits).mul_si(2L * k);
    out.c0_k =
        core.a * BallValue::from_rational(
                     out.g_k / factorial(static_cast<unsigned long>(k) * k), w);
    out.bits = bits;
    out.prime_cutoff = cutoff;
    out.tail_order = tail_order;

    std::unique_lock<std::shared_mutex> lock(mtx);
    cache.emplace(key, out);
    return out;
}

} // namespace detail

/// Closed-form diagnostic for the coefficients with a single nonzero tuple
/// entry: sgn * (k/w!) * sum_{p <= k^2} (log p)^w / p, where sgn is
/// (-1)^(w+1) when the nonzero entry sits in the first half and -1 when it
/// sits in the second half. The prime cutoff is exactly k^2 and no tail is
/// added: this is a diagnostic approximation, not a certified constant.
inline BallValue lincoeff_diagnostic(unsigned k, unsigned weight,
                                     bool first_half, unsigned bits = 256) {
    require(k >= 2, errc::usage, "lincoeff_diagnostic needs k >= 2");
    require(weight >= 1, errc::usage, "lincoeff_diagnostic needs weight >= 1");
    const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + 32;
    const PrimeBlock block =
        primes_up_to(static_cast<std::uint64_t>(k) * k);
    BallValue acc(w);
    for (const std::uint32_t p : block.primes)
        acc = acc + pow_ui(BallValue::log_of_ui(p, w), weight) /
                        BallValue::from_ui(p, w);
    acc = acc.mul_si(static_cast<long>(k)) *
          BallValue::from_rational(ExactRational(1) / factorial(weight), w);
    const bool positive = first_half && (weight % 2 == 1);
    return positive ? acc : -acc;
}

} // namespace zml

#endif // ZML_CONSTANTS_HPP

