// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_SERIES_HPP
#define ZML_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "zml/config.hpp"
#include "zml/rational.hpp"

namespace zml {

/// Power series truncated at a fixed order M: coefficients for x^0 .. x^M,
/// all exact rationals. Binary operations truncate to the smaller order --
/// a truncation is only trustworthy up to the order both operands carry --
/// and never read beyond it.
class TruncatedSeries {
public:
    /// Zero series of the given truncation order.
    explicit TruncatedSeries(unsigned order)
        : c_(static_cast<std::size_t>(order) + 1) {}

    TruncatedSeries(std::vector<ExactRational> coeffs)
        : c_(std::move(coeffs)) {
        require(!c_.empty(), errc::usage, "series needs at least order 0");
    }

    unsigned order() const { return static_cast<unsigned>(c_.size() - 1); }

    const ExactRational& operator[](std::size_t i) const { return c_[i]; }

    void set(std::size_t i, ExactRational v) {
        require(i < c_.size(), errc::usage, "series coefficient out of range");
        c_[i] = std::move(v);
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a,
                                     const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a,
                                     const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }

    /// Cauchy product, truncated to the smaller operand order.
    friend TruncatedSeries operator*(const TruncatedSeries& a,
                                     const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (std::size_t m = 0; m < r.c_.size(); ++m) {
            ExactRational acc;
            for (std::size_t j = 0; j <= m; ++j)
                if (!a.c_[j].is_zero() && !b.c_[m - j].is_zero())
                    acc += a.c_[j] * b.c_[m - j];
            r.c_[m] = std::move(acc);
        }
        return r;
    }

    TruncatedSeries scaled(const ExactRational& s) const {
        TruncatedSeries r(order());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.order() != b.order()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }

private:
    std::vector<ExactRational> c_;
};

/// Substitutes `inner` (which must have zero constant term, so the result
/// is again a power series) into `outer`. Horner evaluation with truncated
/// products; result order = min of the operand orders.
inline TruncatedSeries series_compose(const TruncatedSeries& outer,
                                      const TruncatedSeries& inner) {
    require(inner[0].is_zero(), errc::usage,
            "series composition needs a zero constant term inside");
    const unsigned M = std::min(outer.order(), inner.order());
    TruncatedSeries inner_m(M);
    for (unsigned i = 0; i <= M; ++i) inner_m.set(i, inner[i]);
    // Horner from the highest retained outer coefficient down to x^0.
    TruncatedSeries acc(M);
    acc.set(0, outer[M]);
    for (int j = static_cast<int>(M) - 1; j >= 0; --j) {
        acc = acc * inner_m;
        acc.set(0, acc[0] + outer[static_cast<std::size_t>(j)]);
    }
    return acc;
}

/// log of a series with constant term exactly 1. Uses the differential
/// recurrence m*l_m = m*f_m - sum_{j=1}^{m-1} j*l_j*f_{m-j}, which keeps
/// every step exact.
inline TruncatedSeries series_log(const TruncatedSeries& f) {
    require(f[0] == ExactRational(1), errc::usage,
            "series_log needs constant term 1");
    const unsigned M = f.order();
    TruncatedSeries l(M);
    for (unsigned m = 1; m <= M; ++m) {
        ExactRational acc = ExactRational(static_cast<long>(m)) * f[m];
        for (unsigned j = 1; j < m; ++j)
            if (!l[j].is_zero() && !f[m - j].is_zero())
                acc -= ExactRational(static_cast<long>(j)) * l[j] * f[m - j];
        l.set(m, acc / ExactRational(static_cast<long>(m)));
    }
    return l;
}

/// exp of a series with constant term exactly 0. Differential recurrence
/// m*e_m = sum_{j=1}^{m} j*g_j*e_{m-j}, e_0 = 1.
inline TruncatedSeries series_exp(const TruncatedSeries& g) {
    require(g[0].is_zero(), errc::usage, "series_exp needs constant term 0");
    const unsigned M = g.order();
    TruncatedSeries e(M);
    e.set(0, ExactRational(1));
    for (unsigned m = 1; m <= M; ++m) {
        ExactRational acc;
        for (unsigned j = 1; j <= m; ++j)
            if (!g[j].is_zero() && !e[m - j].is_zero())
                acc += ExactRational(static_cast<long>(j)) * g[j] * e[m - j];
        e.set(m, acc / ExactRational(static_cast<long>(m)));
    }
    return e;
}

} // namespace zml

#endif // ZML_SERIES_HPP
