// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_KPOLY_HPP
#define ZML_KPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zml/config.hpp"
#include "zml/rational.hpp"

namespace zml {

/// Polynomial in a single variable (conventionally the matrix size k) with
/// exact rational coefficients, stored ascending and normalized: no trailing
/// zero coefficients, so degree() is honest. The zero polynomial has an
/// empty coefficient vector and degree -1.
class KPolynomial {
public:
    KPolynomial() = default;

    KPolynomial(std::vector<ExactRational> coeffs) : c_(std::move(coeffs)) {
        normalize();
    }

    KPolynomial(const ExactRational& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }

    /// The monomial `c * k^e`.
    static KPolynomial monomial(const ExactRational& c, unsigned e) {
        if (c.is_zero()) return KPolynomial();
        std::vector<ExactRational> v(static_cast<std::size_t>(e) + 1);
        v.back() = c;
        return KPolynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    /// Coefficient of k^i (zero beyond the stored degree).
    ExactRational coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : ExactRational(0);
    }

    ExactRational evaluate(const ExactRational& x) const {
        ExactRational acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    friend KPolynomial operator+(const KPolynomial& a, const KPolynomial& b) {
        std::vector<ExactRational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return KPolynomial(std::move(v));
    }

    friend KPolynomial operator-(const KPolynomial& a, const KPolynomial& b) {
        std::vector<ExactRational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return KPolynomial(std::move(v));
    }

    friend KPolynomial operator*(const KPolynomial& a, const KPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return KPolynomial();
        std::vector<ExactRational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) v[i + j] += a.c_[i] * b.c_[j];
        }
        return KPolynomial(std::move(v));
    }

    KPolynomial scaled(const ExactRational& s) const {
        std::vector<ExactRational> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
        return KPolynomial(std::move(v));
    }

    KPolynomial operator-() const { return scaled(ExactRational(-1)); }

    friend bool operator==(const KPolynomial& a, const KPolynomial& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const KPolynomial& a, const KPolynomial& b) {
        return !(a == b);
    }

    /// Deterministic rendering, descending powers: "2*k^3 - 1/2*k + 5".
    std::string to_string(const std::string& var = "k") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const ExactRational& c = c_[i];
            if (c.is_zero()) continue;
            const ExactRational a = c.abs();
            if (out.empty()) {
                if (c.sign() < 0) out += "-";
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            const bool unit = (a == ExactRational(1));
            if (i == 0) {
                out += a.to_string();
            } else {
                if (!unit) out += a.to_string() + "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<ExactRational> c_;
};

/// Exact polynomial through the given (integer abscissa, value) points via
/// Newton divided differences. Duplicate abscissae are rejected. The result
/// has degree <= points-1 and reproduces every sample exactly.
inline KPolynomial poly_interpolate(
    const std::vector<std::pair<long, ExactRational>>& points) {
    require(!points.empty(), errc::usage, "interpolation needs points");
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            require(points[i].first != points[j].first, errc::usage,
                    "interpolation abscissae must be distinct");

    // Divided-difference table, in place over a copy of the values.
    std::vector<ExactRational> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            const ExactRational dx(points[i].first - points[i - level].first);
            dd[i] = (dd[i] - dd[i - 1]) / dx;
        }

    // Assemble sum dd[j] * prod_{i<j} (x - x_i), Horner-style from the top.
    KPolynomial acc(dd[n - 1]);
    for (std::size_t j = n - 1; j-- > 0;) {
        KPolynomial lin({ExactRational(-points[j].first), ExactRational(1)});
        acc = acc * lin + KPolynomial(dd[j]);
    }
    return acc;
}

} // namespace zml

#endif // ZML_KPOLY_HPP
