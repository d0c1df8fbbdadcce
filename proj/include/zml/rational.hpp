// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_RATIONAL_HPP
#define ZML_RATIONAL_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include <gmp.h>

#include "zml/config.hpp"

namespace zml {

namespace detail {

/// RAII holder for a raw mpz_t used by exact integer accumulation loops.
struct scoped_mpz {
    mpz_t v;
    scoped_mpz() { mpz_init(v); }
    explicit scoped_mpz(unsigned long x) { mpz_init_set_ui(v, x); }
    scoped_mpz(const scoped_mpz&) = delete;
    scoped_mpz& operator=(const scoped_mpz&) = delete;
    ~scoped_mpz() { mpz_clear(v); }
    operator mpz_ptr() { return v; }
    operator mpz_srcptr() const { return v; }
};

} // namespace detail

/// Arbitrary-precision rational, eagerly canonicalized.
///
/// Invariant (established at every construction and mutation, not merely at
/// comparison time): gcd(num, den) == 1 and den > 0. GMP's mpq arithmetic
/// preserves canonical form once inputs are canonical, but raw construction
/// from parts does not -- mpq_set_si(q, 3, 6) really stores 3/6 -- so every
/// entry point below canonicalizes before the value escapes.
class ExactRational {
public:
    ExactRational() { mpq_init(q_); }

    ExactRational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }

    ExactRational(long num, long den) {
        require(den != 0, errc::usage, "rational with zero denominator");
        mpq_init(q_);
        // mpq_set_si takes the denominator as unsigned, so a negative den
        // would wrap; set the parts signed and let canonicalization move
        // the sign into the numerator.
        mpz_set_si(mpq_numref(q_), num);
        mpz_set_si(mpq_denref(q_), den);
        mpq_canonicalize(q_);
    }

    /// Parses "n", "-n", "n/d" (arbitrary size), or a plain decimal such as
    /// "100000000.643" (converted exactly, e.g. 100000000643/1000).
    explicit ExactRational(const std::string& text) {
        mpq_init(q_);
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            if (mpq_set_str(q_, text.c_str(), 10) != 0) {
                mpq_clear(q_);
                throw Error(errc::usage, "unparsable rational: " + text);
            }
            mpq_canonicalize(q_);
        } else {
            const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            const std::size_t frac = text.size() - dot - 1;
            if (mpz_set_str(mpq_numref(q_), digits.c_str(), 10) != 0) {
                mpq_clear(q_);
                throw Error(errc::usage, "unparsable decimal: " + text);
            }
            mpz_ui_pow_ui(mpq_denref(q_), 10, frac);
            mpq_canonicalize(q_);
        }
    }

    ExactRational(const ExactRational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }

    ExactRational(ExactRational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }

    ExactRational& operator=(const ExactRational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }

    ExactRational& operator=(ExactRational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }

    ~ExactRational() { mpq_clear(q_); }

    /// Adopts an mpz numerator/denominator pair, canonicalizing.
    static ExactRational from_mpz(mpz_srcptr num, mpz_srcptr den) {
        require(mpz_sgn(den) != 0, errc::usage,
                "rational with zero denominator");
        ExactRational r;
        mpz_set(mpq_numref(r.q_), num);
        mpz_set(mpq_denref(r.q_), den);
        mpq_canonicalize(r.q_);
        return r;
    }

    static ExactRational from_mpz(mpz_srcptr num) {
        ExactRational r;
        mpz_set(mpq_numref(r.q_), num);
        return r;
    }

    mpq_srcptr raw() const { return q_; }
    mpz_srcptr num() const { return mpq_numref(q_); }
    mpz_srcptr den() const { return mpq_denref(q_); }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
        ExactRational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
        ExactRational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
        ExactRational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend ExactRational operator/(const ExactRational& a, const ExactRational& b) {
        require(!b.is_zero(), errc::usage, "rational division by zero");
        ExactRational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    ExactRational operator-() const {
        ExactRational r;
        mpq_neg(r.q_, q_);
        return r;
    }

    ExactRational& operator+=(const ExactRational& b) { mpq_add(q_, q_, b.q_); return *this; }
    ExactRational& operator-=(const ExactRational& b) { mpq_sub(q_, q_, b.q_); return *this; }
    ExactRational& operator*=(const ExactRational& b) { mpq_mul(q_, q_, b.q_); return *this; }
    ExactRational& operator/=(const ExactRational& b) {
        require(!b.is_zero(), errc::usage, "rational division by zero");
        mpq_div(q_, q_, b.q_);
        return *this;
    }

    friend bool operator==(const ExactRational& a, const ExactRational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend bool operator!=(const ExactRational& a, const ExactRational& b) {
        return !(a == b);
    }
    friend bool operator<(const ExactRational& a, const ExactRational& b) {
        return mpq_cmp(a.q_, b.q_) < 0;
    }
    friend bool operator<=(const ExactRational& a, const ExactRational& b) {
        return mpq_cmp(a.q_, b.q_) <= 0;
    }
    friend bool operator>(const ExactRational& a, const ExactRational& b) {
        return mpq_cmp(a.q_, b.q_) > 0;
    }
    friend bool operator>=(const ExactRational& a, const ExactRational& b) {
        return mpq_cmp(a.q_, b.q_) >= 0;
    }

    ExactRational abs() const {
        ExactRational r;
        mpq_abs(r.q_, q_);
        return r;
    }

    /// Integer power; negative exponents invert (zero base rejected).
    ExactRational pow(long e) const {
        if (e == 0) return ExactRational(1);
        require(!is_zero() || e > 0, errc::usage,
                "zero rational raised to a negative power");
        const unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
        ExactRational r;
        mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), ae);
        mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), ae);
        // num/den coprime implies num^e/den^e coprime; no re-canonicalization
        // needed, but the sign convention is preserved since den > 0.
        if (e < 0) mpq_inv(r.q_, r.q_);
        return r;
    }

    /// "p/q" for non-integers, "p" otherwise; round-trips through the
    /// string constructor.
    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, q_);
        std::string out(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, out.size() + 1);
        return out;
    }

    double to_double() const { return mpq_get_d(q_); }

    friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
        return os << r.to_string();
    }

private:
    mpq_t q_;
};

/// n! as an exact rational (integer-valued).
inline ExactRational factorial(unsigned long n) {
    ExactRational r;
    mpz_t f;
    mpz_init(f);
    mpz_fac_ui(f, n);
    r = ExactRational::from_mpz(f);
    mpz_clear(f);
    return r;
}

/// Parses scientific notation such as "3.548884925e-148" into the exact
/// rational value of the printed digits (mantissa times a power of ten).
/// Plain decimals and integers fall through to the string constructor.
inline ExactRational rational_from_scientific(const std::string& text) {
    const auto e = text.find_first_of("eE");
    if (e == std::string::npos) return ExactRational(text);
    const ExactRational mantissa(text.substr(0, e));
    const std::string exp_text = text.substr(e + 1);
    require(!exp_text.empty(), errc::usage,
            "empty exponent in scientific literal: " + text);
    std::size_t used = 0;
    const long exponent = std::stol(exp_text, &used);
    require(used == exp_text.size(), errc::usage,
            "unparsable exponent in scientific literal: " + text);
    return mantissa * ExactRational(10).pow(exponent);
}

/// Binomial coefficient C(n, r) with the lattice-path convention:
/// zero when r < 0 or r > n.
inline ExactRational binomial(unsigned long n, long r) {
    if (r < 0 || static_cast<unsigned long>(r) > n) return ExactRational(0);
    ExactRational out;
    mpz_t b;
    mpz_init(b);
    mpz_bin_uiui(b, n, static_cast<unsigned long>(r));
    out = ExactRational::from_mpz(b);
    mpz_clear(b);
    return out;
}

} // namespace zml

#endif // ZML_RATIONAL_HPP
