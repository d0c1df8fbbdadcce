// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_BALL_HPP
#define ZML_BALL_HPP

#include <cstdio> // before mpfr.h so the formatted-output API is declared
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "zml/config.hpp"
#include "zml/rational.hpp"

namespace zml {

namespace detail {

/// RAII holder for a raw mpfr_t, so no code path can leak one.
struct raw_mpfr {
    mpfr_t v;
    explicit raw_mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    raw_mpfr(const raw_mpfr&) = delete;
    raw_mpfr& operator=(const raw_mpfr&) = delete;
    ~raw_mpfr() { mpfr_clear(v); }
    operator mpfr_ptr() { return v; }
    operator mpfr_srcptr() const { return v; }
};

} // namespace detail

/// Certified enclosure: an arbitrary-precision midpoint and a low-precision
/// radius such that the represented real number always lies in
/// [mid - rad, mid + rad].
///
/// Rounding discipline:
///  * midpoints are computed at the ball's precision with round-to-nearest,
///    and whenever MPFR reports the result inexact (nonzero ternary value)
///    one ulp of the midpoint is added to the radius;
///  * every radius operation is carried out at a fixed small precision
///    (RADIUS_PREC bits) rounding UP, so radii can only overestimate.
/// Consequently enclosure is preserved by every operation, and a radius of
/// zero certifies the midpoint is the exact value.
class BallValue {
public:
    static constexpr mpfr_prec_t RADIUS_PREC = 32;

    explicit BallValue(mpfr_prec_t prec = 256) {
        require(prec >= MPFR_PREC_MIN && prec <= 1 << 24, errc::usage,
                "unsupported ball precision");
        mpfr_init2(mid_, prec);
        mpfr_init2(rad_, RADIUS_PREC);
        mpfr_set_zero(mid_, 1);
        mpfr_set_zero(rad_, 1);
    }

    BallValue(const BallValue& o) {
        mpfr_init2(mid_, mpfr_get_prec(o.mid_));
        mpfr_init2(rad_, RADIUS_PREC);
        mpfr_set(mid_, o.mid_, MPFR_RNDN); // same precision: exact
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }

    BallValue(BallValue&& o) noexcept {
        mpfr_init2(mid_, mpfr_get_prec(o.mid_));
        mpfr_init2(rad_, RADIUS_PREC);
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
    }

    BallValue& operator=(const BallValue& o) {
        if (this != &o) {
            mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
            mpfr_set(mid_, o.mid_, MPFR_RNDN);
            mpfr_set(rad_, o.rad_, MPFR_RNDU);
        }
        return *this;
    }

    BallValue& operator=(BallValue&& o) noexcept {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
        return *this;
    }

    ~BallValue() {
        mpfr_clear(mid_);
        mpfr_clear(rad_);
    }

    // ----- construction -------------------------------------------------

    static BallValue from_si(long v, mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_set_si(b.mid_, v, MPFR_RNDN));
        return b;
    }

    static BallValue from_ui(unsigned long v, mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_set_ui(b.mid_, v, MPFR_RNDN));
        return b;
    }

    static BallValue from_mpz(mpz_srcptr z, mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_set_z(b.mid_, z, MPFR_RNDN));
        return b;
    }

    static BallValue from_rational(const ExactRational& q, mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_set_q(b.mid_, q.raw(), MPFR_RNDN));
        return b;
    }

    /// Reads a printed decimal (fixed or scientific) as the ball
    /// value +- half an ulp of its last printed digit -- the honest
    /// enclosure of a correctly rounded table entry.
    static BallValue from_decimal(const std::string& text, mpfr_prec_t prec) {
        std::string mant = text;
        long e10 = 0;
        if (const auto pos = text.find_first_of("eE");
            pos != std::string::npos) {
            mant = text.substr(0, pos);
            e10 = std::stol(text.substr(pos + 1));
        }
        long frac = 0;
        if (const auto dot = mant.find('.'); dot != std::string::npos)
            frac = static_cast<long>(mant.size() - dot - 1);
        const ExactRational value =
            ExactRational(mant) * ExactRational(10).pow(e10);
        const ExactRational quantum = ExactRational(10).pow(e10 - frac);
        BallValue b = from_rational(value, prec);
        b.add_error(from_rational(quantum / ExactRational(2), RADIUS_PREC + 2));
        return b;
    }

    static BallValue zero(mpfr_prec_t prec) { return BallValue(prec); }

    static BallValue one(mpfr_prec_t prec) { return from_si(1, prec); }

    static BallValue pi(mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_const_pi(b.mid_, MPFR_RNDN));
        return b;
    }

    static BallValue log2_const(mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_const_log2(b.mid_, MPFR_RNDN));
        return b;
    }

    static BallValue euler_const(mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_const_euler(b.mid_, MPFR_RNDN));
        return b;
    }

    /// base^e in a single correctly rounded step (1 ulp enclosure); much
    /// tighter and faster than repeated ball multiplication.
    static BallValue pow_of_ui(unsigned long base, unsigned long e,
                               mpfr_prec_t prec) {
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_ui_pow_ui(b.mid_, base, e, MPFR_RNDN));
        return b;
    }

    /// log(v) for a machine integer v >= 1, single rounding.
    static BallValue log_of_ui(unsigned long v, mpfr_prec_t prec) {
        require(v >= 1, errc::usage, "log of a non-positive integer");
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_log_ui(b.mid_, v, MPFR_RNDN));
        return b;
    }

    /// Riemann zeta at an integer argument s >= 2, via the backend's
    /// correctly rounded evaluation plus a 1 ulp radius.
    static BallValue zeta_of_ui(unsigned long s, mpfr_prec_t prec) {
        require(s >= 2, errc::usage, "zeta_of_ui needs s >= 2");
        BallValue b(prec);
        bump(b.rad_, b.mid_, mpfr_zeta_ui(b.mid_, s, MPFR_RNDN));
        return b;
    }

    // ----- queries -------------------------------------------------------

    mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }
    mpfr_srcptr mid() const { return mid_; }
    mpfr_srcptr rad() const { return rad_; }
    bool is_exact() const { return mpfr_zero_p(rad_); }
    double to_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }

    /// Upper bound on the radius, representable as a double.
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    bool contains_zero() const {
        // lower <= 0 <= upper  <=>  |mid| <= rad
        return mpfr_cmpabs(mid_, rad_) <= 0;
    }

    bool is_certainly_positive() const {
        return mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_) > 0;
    }

    bool is_certainly_negative() const {
        return mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_) > 0;
    }

    /// True when the exact rational q certainly lies inside the ball.
    /// (Conservative: may answer false for points within a rounding step of
    /// the boundary, never answers true for points outside.)
    bool contains_rational(const ExactRational& q) const {
        detail::raw_mpfr lo(precision() + 64), hi(precision() + 64);
        mpfr_sub_q(lo, mid_, q.raw(), MPFR_RNDD);
        mpfr_sub_q(hi, mid_, q.raw(), MPFR_RNDU);
        return mpfr_cmpabs(lo, rad_) <= 0 && mpfr_cmpabs(hi, rad_) <= 0;
    }

    /// Certified upper/lower interval endpoints as exact balls.
    BallValue upper_exact() const {
        BallValue b(precision() + RADIUS_PREC + 2);
        mpfr_add(b.mid_, mid_, rad_, MPFR_RNDU);
        return b;
    }

    BallValue lower_exact() const {
        BallValue b(precision() + RADIUS_PREC + 2);
        mpfr_sub(b.mid_, mid_, rad_, MPFR_RNDD);
        return b;
    }

    /// Every point of *this is <= every point of b (certified).
    bool certainly_le(const BallValue& b) const {
        const BallValue ua = upper_exact(), lb = b.lower_exact();
        return mpfr_cmp(ua.mid_, lb.mid_) <= 0;
    }

    bool certainly_lt(const BallValue& b) const {
        const BallValue ua = upper_exact(), lb = b.lower_exact();
        return mpfr_cmp(ua.mid_, lb.mid_) < 0;
    }

    /// The two enclosures cannot be told apart (their intervals intersect,
    /// up to conservative rounding). This is the right notion of "agrees
    /// with" for cross-checks between independent computations.
    bool overlaps(const BallValue& b) const {
        return !certainly_lt(b) && !b.certainly_lt(*this);
    }

    /// How many leading decimal digits of the midpoint are certified by the
    /// radius. Exact balls report a large sentinel.
    long certified_decimal_digits() const {
        if (is_exact()) return 100000;
        if (mpfr_zero_p(mid_)) return 0;
        if (mpfr_cmpabs(mid_, rad_) <= 0) return 0;
        const long bits = static_cast<long>(mpfr_get_exp(mid_)) -
                          static_cast<long>(mpfr_get_exp(rad_));
        const long digits = static_cast<long>(bits * 0.30102999566398) - 1;
        return std::max(digits, 0L);
    }

    // ----- error-budget plumbing ----------------------------------------

    /// Inflates the radius by an upper bound of |e| (midpoint magnitude
    /// plus e's own radius). Used to fold truncation-tail bounds into an
    /// enclosure.
    void add_error(const BallValue& e) {
        detail::raw_mpfr t(RADIUS_PREC);
        mpfr_abs(t, e.mid_, MPFR_RNDU);
        mpfr_add(rad_, rad_, t, MPFR_RNDU);
        mpfr_add(rad_, rad_, e.rad_, MPFR_RNDU);
    }

    /// Inflates the radius by exactly 2^e.
    void add_error_2exp(long e) {
        detail::raw_mpfr t(RADIUS_PREC);
        mpfr_set_ui_2exp(t, 1, e, MPFR_RNDU);
        mpfr_add(rad_, rad_, t, MPFR_RNDU);
    }

    /// Re-rounds the midpoint to a (typically lower) precision, folding the
    /// rounding error into the radius.
    BallValue round_to(mpfr_prec_t prec) const {
        BallValue b(prec);
        mpfr_set(b.rad_, rad_, MPFR_RNDU);
        bump(b.rad_, b.mid_, mpfr_set(b.mid_, mid_, MPFR_RNDN));
        return b;
    }

    // ----- arithmetic ----------------------------------------------------

    friend BallValue operator+(const BallValue& a, const BallValue& b) {
        BallValue r(out_prec(a, b));
        const int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    friend BallValue operator-(const BallValue& a, const BallValue& b) {
        BallValue r(out_prec(a, b));
        const int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    friend BallValue operator*(const BallValue& a, const BallValue& b) {
        BallValue r(out_prec(a, b));
        const int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        // |a||rb| + |b||ra| + ra*rb, all rounded up
        detail::raw_mpfr am(RADIUS_PREC), bm(RADIUS_PREC), acc(RADIUS_PREC),
            term(RADIUS_PREC);
        mpfr_abs(am, a.mid_, MPFR_RNDU);
        mpfr_abs(bm, b.mid_, MPFR_RNDU);
        mpfr_mul(acc, am, b.rad_, MPFR_RNDU);
        mpfr_mul(term, bm, a.rad_, MPFR_RNDU);
        mpfr_add(acc, acc, term, MPFR_RNDU);
        mpfr_mul(term, a.rad_, b.rad_, MPFR_RNDU);
        mpfr_add(r.rad_, acc, term, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    friend BallValue operator/(const BallValue& a, const BallValue& b) {
        require(!b.contains_zero(), errc::resource,
                "division by a ball containing zero");
        BallValue r(out_prec(a, b));
        const int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        // |x/y - a/b| <= (ra*|b| + rb*|a|) / (|b| * (|b| - rb))
        detail::raw_mpfr am_u(RADIUS_PREC), bm_u(RADIUS_PREC),
            bm_d(RADIUS_PREC), num(RADIUS_PREC), term(RADIUS_PREC),
            den(RADIUS_PREC);
        mpfr_abs(am_u, a.mid_, MPFR_RNDU);
        mpfr_abs(bm_u, b.mid_, MPFR_RNDU);
        mpfr_abs(bm_d, b.mid_, MPFR_RNDD);
        mpfr_mul(num, a.rad_, bm_u, MPFR_RNDU);
        mpfr_mul(term, b.rad_, am_u, MPFR_RNDU);
        mpfr_add(num, num, term, MPFR_RNDU);
        mpfr_sub(term, bm_d, b.rad_, MPFR_RNDD); // |b| - rb, rounded down
        require(mpfr_sgn(term.v) > 0, errc::resource,
                "division by a ball containing zero");
        mpfr_mul(den, bm_d, term, MPFR_RNDD);
        mpfr_div(r.rad_, num, den, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    BallValue operator-() const {
        BallValue r(precision());
        mpfr_neg(r.mid_, mid_, MPFR_RNDN); // exact
        mpfr_set(r.rad_, rad_, MPFR_RNDU);
        return r;
    }

    /// |x|: the midpoint flips sign exactly; the radius is unchanged
    /// (absolute value is 1-Lipschitz).
    BallValue abs_val() const {
        BallValue r(precision());
        mpfr_abs(r.mid_, mid_, MPFR_RNDN); // exact
        mpfr_set(r.rad_, rad_, MPFR_RNDU);
        return r;
    }

    BallValue mul_si(long c) const {
        BallValue r(precision());
        const int t = mpfr_mul_si(r.mid_, mid_, c, MPFR_RNDN);
        const unsigned long ac =
            c < 0 ? -static_cast<unsigned long>(c) : static_cast<unsigned long>(c);
        mpfr_mul_ui(r.rad_, rad_, ac, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    BallValue div_ui(unsigned long c) const {
        require(c != 0, errc::usage, "division by zero");
        BallValue r(precision());
        const int t = mpfr_div_ui(r.mid_, mid_, c, MPFR_RNDN);
        mpfr_div_ui(r.rad_, rad_, c, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    BallValue mul_2exp(long e) const {
        BallValue r(precision());
        mpfr_mul_2si(r.mid_, mid_, e, MPFR_RNDN); // exact
        mpfr_mul_2si(r.rad_, rad_, e, MPFR_RNDU); // exact
        return r;
    }

    friend BallValue pow_ui(const BallValue& a, unsigned long n) {
        BallValue result = one(a.precision());
        BallValue base = a;
        while (n > 0) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n > 0) base = base * base;
        }
        return result;
    }

    friend BallValue sqrt(const BallValue& a) {
        if (a.is_exact() && mpfr_zero_p(a.mid_)) return zero(a.precision());
        detail::raw_mpfr lo(RADIUS_PREC);
        mpfr_set(lo, a.mid_, MPFR_RNDD);
        mpfr_sub(lo, lo, a.rad_, MPFR_RNDD);
        require(mpfr_sgn(lo.v) > 0, errc::resource,
                "sqrt of a ball reaching non-positive values");
        BallValue r(a.precision());
        const int t = mpfr_sqrt(r.mid_, a.mid_, MPFR_RNDN);
        // |sqrt(x) - sqrt(m)| <= |x - m| / (2 sqrt(lo))
        detail::raw_mpfr s(RADIUS_PREC);
        mpfr_sqrt(s, lo, MPFR_RNDD);
        mpfr_mul_2si(s, s, 1, MPFR_RNDD);
        mpfr_div(r.rad_, a.rad_, s, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    friend BallValue exp(const BallValue& a) {
        BallValue r(a.precision());
        const int t = mpfr_exp(r.mid_, a.mid_, MPFR_RNDN);
        require(mpfr_number_p(r.mid_) != 0, errc::resource,
                "exp overflowed the floating-point range");
        // sup |exp(a+d) - exp(a)| over |d| <= rad  ==  exp(a)*(e^rad - 1)
        detail::raw_mpfr eu(RADIUS_PREC), em(RADIUS_PREC);
        mpfr_exp(eu, a.mid_, MPFR_RNDU);
        mpfr_expm1(em, a.rad_, MPFR_RNDU);
        mpfr_mul(em, em, eu, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, em, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    friend BallValue log(const BallValue& a) {
        detail::raw_mpfr lo(RADIUS_PREC), q(RADIUS_PREC);
        mpfr_set(lo, a.mid_, MPFR_RNDD);
        mpfr_sub(lo, lo, a.rad_, MPFR_RNDD);
        require(mpfr_sgn(lo.v) > 0, errc::resource,
                "log of a ball reaching non-positive values");
        BallValue r(a.precision());
        const int t = mpfr_log(r.mid_, a.mid_, MPFR_RNDN);
        // sup |log(a+d) - log(a)| over |d| <= rad  ==  -log(1 - rad/a)
        detail::raw_mpfr lod(RADIUS_PREC);
        mpfr_set(lod, a.mid_, MPFR_RNDD);
        mpfr_div(q, a.rad_, lod, MPFR_RNDU);
        mpfr_neg(q, q, MPFR_RNDD);                   // -rad/a, exact negate
        require(mpfr_cmp_si(q, -1) > 0, errc::resource,
                "log of a ball reaching non-positive values");
        mpfr_log1p(q, q, MPFR_RNDD);                 // <= log(1 - rad/a) <= 0
        mpfr_neg(q, q, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, q, MPFR_RNDU);
        bump(r.rad_, r.mid_, t);
        return r;
    }

    /// n-th root of a strictly positive ball, via exp(log(a)/n).
    friend BallValue root_ui(const BallValue& a, unsigned long n) {
        require(n >= 1, errc::usage, "zeroth root");
        if (n == 1) return a;
        return exp(log(a).div_ui(n));
    }

    // ----- printing ------------------------------------------------------

    /// Scientific notation with the requested significant digits
    /// (0 = as many as the radius certifies, capped at 40).
    std::string to_string(std::size_t digits = 0) const {
        if (digits == 0) {
            const long certified = certified_decimal_digits();
            digits = static_cast<std::size_t>(
                std::clamp<long>(certified, 1, 40));
        }
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", static_cast<int>(digits - 1), mid_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    /// Radius alone in scientific notation; "0" when the ball is exact.
    /// Printed straight from the bignum: tiny radii (common at large k)
    /// underflow a double.
    std::string radius_string() const {
        if (mpfr_zero_p(rad_)) return "0";
        char* s = nullptr;
        mpfr_asprintf(&s, "%.2Re", rad_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    std::string debug_string() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.20Re +/- %.3Re", mid_, rad_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    static mpfr_prec_t out_prec(const BallValue& a, const BallValue& b) {
        return std::max(a.precision(), b.precision());
    }

    /// Adds one ulp of `mid` to `rad` when MPFR reported the midpoint
    /// computation inexact.
    static void bump(mpfr_ptr rad, mpfr_srcptr mid, int ternary) {
        if (ternary == 0) return;
        require(!mpfr_zero_p(mid) && mpfr_number_p(mid),
                errc::internal, "inexact zero/non-finite midpoint");
        detail::raw_mpfr u(RADIUS_PREC);
        mpfr_set_ui_2exp(u, 1,
                         mpfr_get_exp(mid) - mpfr_get_prec(mid), MPFR_RNDU);
        mpfr_add(rad, rad, u, MPFR_RNDU);
    }

    mpfr_t mid_;
    mpfr_t rad_;
};

} // namespace zml

#endif // ZML_BALL_HPP
