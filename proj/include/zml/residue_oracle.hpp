// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_RESIDUE_ORACLE_HPP
#define ZML_RESIDUE_ORACLE_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "zml/config.hpp"
#include "zml/rational.hpp"

namespace zml {

/// Sparse multivariate polynomial with exact rational coefficients and a
/// hard per-variable exponent cap. Monomials that exceed the cap in any
/// variable are dropped; since every operation here only ever adds
/// nonnegative exponents, dropping high monomials never disturbs the
/// coefficients at or below the cap, which are the only ones extracted.
/// Exponent vectors are packed into one 64-bit key (base max_exp+1,
/// variable 0 least significant), so iteration order is deterministic.
class SparseMultiPoly {
public:
    SparseMultiPoly(unsigned nvars, unsigned max_exp)
        : nvars_(nvars), base_(static_cast<std::uint64_t>(max_exp) + 1) {
        require(nvars >= 1, errc::usage, "polynomial needs a variable");
        // The packed key must fit 64 bits: base^nvars <= 2^63.
        std::uint64_t cap = 1;
        for (unsigned i = 0; i < nvars; ++i) {
            require(cap <= (std::uint64_t{1} << 63) / base_, errc::usage,
                    "exponent cap too large to pack");
            cap *= base_;
        }
    }

    unsigned nvars() const { return nvars_; }
    unsigned max_exp() const { return static_cast<unsigned>(base_ - 1); }
    std::size_t term_count() const { return terms_.size(); }

    static SparseMultiPoly constant(unsigned nvars, unsigned max_exp,
                                    const ExactRational& c) {
        SparseMultiPoly p(nvars, max_exp);
        if (!c.is_zero()) p.terms_.emplace(0, c);
        return p;
    }

    /// Add c * prod z_i^{e_i}; silently dropped when an exponent exceeds
    /// the cap. Cancelled coefficients are erased so term_count stays
    /// meaningful.
    void add_term(const std::vector<unsigned>& exps, const ExactRational& c) {
        require(exps.size() == nvars_, errc::usage,
                "exponent vector has the wrong arity");
        for (unsigned e : exps)
            if (e >= base_) return;
        if (c.is_zero()) return;
        add_packed(pack(exps), c);
    }

    /// Coefficient of prod z_i^{e_i}; zero beyond the cap (nothing above
    /// it is ever needed, so nothing above it is stored).
    ExactRational coeff(const std::vector<unsigned>& exps) const {
        require(exps.size() == nvars_, errc::usage,
                "exponent vector has the wrong arity");
        for (unsigned e : exps)
            if (e >= base_) return ExactRational(0);
        auto it = terms_.find(pack(exps));
        return it == terms_.end() ? ExactRational(0) : it->second;
    }

    SparseMultiPoly operator*(const SparseMultiPoly& o) const {
        require(nvars_ == o.nvars_ && base_ == o.base_, errc::usage,
                "polynomial shapes differ");
        SparseMultiPoly r(nvars_, max_exp());
        for (const auto& [ka, ca] : terms_) {
            const std::vector<unsigned> ea = unpack(ka);
            for (const auto& [kb, cb] : o.terms_) {
                const std::vector<unsigned> eb = unpack(kb);
                std::uint64_t key = 0;
                bool keep = true;
                for (unsigned i = nvars_; i-- > 0;) {
                    const unsigned e = ea[i] + eb[i];
                    if (e >= base_) {
                        keep = false;
                        break;
                    }
                    key = key * base_ + e;
                }
                if (keep) r.add_packed(key, ca * cb);
            }
        }
        return r;
    }

    /// Multiply by the linear factor (z_i - z_j) in place-efficient form.
    SparseMultiPoly mul_linear_diff(unsigned i, unsigned j) const {
        require(i < nvars_ && j < nvars_ && i != j, errc::usage,
                "bad variable pair");
        SparseMultiPoly r(nvars_, max_exp());
        const std::uint64_t pi = var_place(i), pj = var_place(j);
        for (const auto& [key, c] : terms_) {
            if (exponent_at(key, i) + 1 < base_) r.add_packed(key + pi, c);
            if (exponent_at(key, j) + 1 < base_) r.add_packed(key + pj, -c);
        }
        return r;
    }

    /// Multiply by the truncated single-variable exponential
    ///   sum_{a=0}^{cap} (scale * z_i)^a / a!.
    /// Truncating each variable's exponential at the cap is exact for
    /// every extracted coefficient: omitted terms only produce exponents
    /// beyond the cap in z_i.
    SparseMultiPoly mul_var_exp(unsigned i, const ExactRational& scale) const {
        require(i < nvars_, errc::usage, "variable out of range");
        std::vector<ExactRational> w;
        ExactRational term(1);
        for (unsigned a = 0; a < base_; ++a) {
            w.push_back(term);
            term = term * scale / ExactRational(static_cast<long>(a) + 1);
        }
        SparseMultiPoly r(nvars_, max_exp());
        const std::uint64_t pi = var_place(i);
        for (const auto& [key, c] : terms_) {
            const unsigned e = exponent_at(key, i);
            for (unsigned a = 0; e + a < base_; ++a) {
                if (w[a].is_zero()) continue;
                r.add_packed(key + pi * a, c * w[a]);
            }
        }
        return r;
    }

private:
    void add_packed(std::uint64_t key, const ExactRational& c) {
        auto [it, fresh] = terms_.emplace(key, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::uint64_t pack(const std::vector<unsigned>& exps) const {
        std::uint64_t key = 0;
        for (unsigned i = nvars_; i-- > 0;) key = key * base_ + exps[i];
        return key;
    }

    std::vector<unsigned> unpack(std::uint64_t key) const {
        std::vector<unsigned> exps(nvars_);
        for (unsigned i = 0; i < nvars_; ++i) {
            exps[i] = static_cast<unsigned>(key % base_);
            key /= base_;
        }
        return exps;
    }

    std::uint64_t var_place(unsigned i) const {
        std::uint64_t p = 1;
        for (unsigned n = 0; n < i; ++n) p *= base_;
        return p;
    }

    unsigned exponent_at(std::uint64_t key, unsigned i) const {
        return static_cast<unsigned>((key / var_place(i)) % base_);
    }

    unsigned nvars_;
    std::uint64_t base_;
    std::map<std::uint64_t, ExactRational> terms_;
};

namespace detail {

/// Squared Vandermonde prod_{i<j, i,j in vars} (z_j - z_i)^2 over the
/// given variable subset, built by expanding the product of differences
/// once and squaring the expanded form.
inline SparseMultiPoly squared_difference_product(
    unsigned nvars, unsigned cap, const std::vector<unsigned>& vars) {
    SparseMultiPoly d = SparseMultiPoly::constant(nvars, cap, ExactRational(1));
    for (std::size_t a = 0; a < vars.size(); ++a)
        for (std::size_t b = a + 1; b < vars.size(); ++b)
            d = d.mul_linear_diff(vars[b], vars[a]);
    return d * d;
}

/// Expansion table for the single-half residue: the squared difference
/// product of z_1..z_k times prod_i e^{z_i}, every variable capped at
/// `cap`. The coefficient of prod z_j^{2k - lambda_j - 1} in this table,
/// scaled by (-1)^binom(k,2)/k!, is the lattice-count coefficient.
inline SparseMultiPoly nk_oracle_table(unsigned k, unsigned cap) {
    std::vector<unsigned> vars(k);
    for (unsigned i = 0; i < k; ++i) vars[i] = i;
    SparseMultiPoly f = squared_difference_product(k, cap, vars);
    for (unsigned i = 0; i < k; ++i)
        f = f.mul_var_exp(i, ExactRational(1));
    return f;
}

/// Expansion table for the two-half residue at scale parameter x: squared
/// difference products of each half, the unsquared cross product
/// prod_{i,j} (z_i - z_{k+j}), and per-variable exponentials with rate
/// +x/2 on the first half and -x/2 on the second.
inline SparseMultiPoly p_oracle_table(unsigned k, const ExactRational& x,
                                      unsigned cap) {
    const unsigned n = 2 * k;
    std::vector<unsigned> first(k), second(k);
    for (unsigned i = 0; i < k; ++i) {
        first[i] = i;
        second[i] = k + i;
    }
    SparseMultiPoly f = squared_difference_product(n, cap, first) *
                        squared_difference_product(n, cap, second);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j)
            f = f.mul_linear_diff(i, k + j);
    const ExactRational half_x = x / ExactRational(2);
    for (unsigned i = 0; i < k; ++i) f = f.mul_var_exp(i, half_x);
    for (unsigned j = 0; j < k; ++j) f = f.mul_var_exp(k + j, -half_x);
    return f;
}

/// Shared cache of oracle tables; building one is the expensive part and
/// every query against the same k (and x) reuses it.
struct OracleCache {
    std::shared_mutex mutex;
    std::map<unsigned, SparseMultiPoly> nk_tables;
    std::map<std::pair<unsigned, std::string>, SparseMultiPoly> p_tables;

    static OracleCache& instance() {
        static OracleCache cache;
        return cache;
    }
};

inline const SparseMultiPoly& nk_table_cached(unsigned k) {
    auto& cache = OracleCache::instance();
    {
        std::shared_lock lock(cache.mutex);
        auto it = cache.nk_tables.find(k);
        if (it != cache.nk_tables.end()) return it->second;
    }
    SparseMultiPoly table = nk_oracle_table(k, 2 * k - 1);
    std::unique_lock lock(cache.mutex);
    return cache.nk_tables.emplace(k, std::move(table)).first->second;
}

inline const SparseMultiPoly& p_table_cached(unsigned k,
                                             const ExactRational& x) {
    auto& cache = OracleCache::instance();
    const auto key = std::make_pair(k, x.to_string());
    {
        std::shared_lock lock(cache.mutex);
        auto it = cache.p_tables.find(key);
        if (it != cache.p_tables.end()) return it->second;
    }
    SparseMultiPoly table = p_oracle_table(k, x, 2 * k - 1);
    std::unique_lock lock(cache.mutex);
    return cache.p_tables.emplace(key, std::move(table)).first->second;
}

} // namespace detail

/// Independent single-half coefficient via direct series expansion: reads
/// the coefficient of prod z_j^{2k - lambda_j - 1} off the expanded
/// table, normalized by the value at the zero tuple. The entries are
/// slot-sensitive here -- permuting them must not change the result, and
/// the recursion-based engine is checked against this value elsewhere.
/// Supported for 2 <= k <= 5; any entry >= 2k asks for a negative power,
/// whose coefficient in a polynomial is zero.
inline ExactRational nk_oracle(unsigned k, const std::vector<unsigned>& lambda) {
    require(k >= 2 && k <= 5, errc::usage,
            "single-half oracle supports 2 <= k <= 5");
    require(lambda.size() <= k, errc::usage,
            "oracle tuple has more than k entries");
    for (unsigned v : lambda)
        if (v >= 2 * k) return ExactRational(0);

    const SparseMultiPoly& table = detail::nk_table_cached(k);
    std::vector<unsigned> target(k, 2 * k - 1), zero_target(k, 2 * k - 1);
    for (std::size_t i = 0; i < lambda.size(); ++i) target[i] -= lambda[i];
    const ExactRational num = table.coeff(target);
    const ExactRational den = table.coeff(zero_target);
    require(!den.is_zero(), errc::internal, "oracle zero-tuple value vanished");
    return num / den;
}

/// Absolute value of the single-half coefficient at the zero tuple:
/// (-1)^binom(k,2)/k! times the extracted coefficient. Equal to
/// prod_{j=0}^{k-1} j!/(j+k)! -- the same number the factorial-product
/// normalization constant encodes -- which the tests assert.
inline ExactRational nk_oracle_zero_value(unsigned k) {
    require(k >= 2 && k <= 5, errc::usage,
            "single-half oracle supports 2 <= k <= 5");
    const SparseMultiPoly& table = detail::nk_table_cached(k);
    const std::vector<unsigned> zero_target(k, 2 * k - 1);
    ExactRational v = table.coeff(zero_target) / factorial(k);
    if ((k * (k - 1) / 2) % 2 == 1) v = -v;
    return v;
}

/// Absolute value of the two-half coefficient at the zero tuple:
/// (-1)^k/(k!)^2 times the extracted coefficient. Must equal the
/// single-half zero value for every k, which the tests assert.
inline ExactRational p_oracle_zero_value(unsigned k,
                                         const ExactRational& x =
                                             ExactRational(1),
                                         unsigned max_k = 3) {
    require(k >= 2 && k <= 4, errc::usage,
            "two-half oracle supports 2 <= k <= 4");
    require(k <= max_k, errc::usage,
            "two-half oracle restricted to k <= " + std::to_string(max_k));
    const SparseMultiPoly& table = detail::p_table_cached(k, x);
    const std::vector<unsigned> zero_target(2 * k, 2 * k - 1);
    ExactRational v =
        table.coeff(zero_target) / (factorial(k) * factorial(k));
    if (k % 2 == 1) v = -v;
    return v;
}

/// Independent two-half coefficient ratio at scale x (the x-dependence is
/// the scaling law p(x, alpha) = x^{k^2 - |alpha|} p(1, alpha), checked in
/// the tests). Entries are slot-sensitive: positions 0..k-1 form the
/// first half, k..2k-1 the second. Table sizes grow as (2k)^{2k}, so k=2
/// and k=3 are always available while k=4 must be opted into via
/// `max_k` (it costs minutes and substantial memory).
inline ExactRational p_oracle(unsigned k, const std::vector<unsigned>& alpha,
                              const ExactRational& x = ExactRational(1),
                              unsigned max_k = 3) {
    require(k >= 2 && k <= 4, errc::usage,
            "two-half oracle supports 2 <= k <= 4");
    require(k <= max_k, errc::usage,
            "two-half oracle restricted to k <= " + std::to_string(max_k) +
                "; raise oracle-max-k to opt in");
    require(alpha.size() == 2 * k, errc::usage,
            "two-half oracle needs exactly 2k entries");
    for (unsigned v : alpha)
        if (v >= 2 * k) return ExactRational(0);

    const SparseMultiPoly& table = detail::p_table_cached(k, x);
    std::vector<unsigned> target(2 * k), zero_target(2 * k, 2 * k - 1);
    for (std::size_t i = 0; i < alpha.size(); ++i)
        target[i] = 2 * k - alpha[i] - 1;
    const ExactRational num = table.coeff(target);
    const ExactRational den = table.coeff(zero_target);
    require(!den.is_zero(), errc::internal, "oracle zero-tuple value vanished");
    return num / den;
}

} // namespace zml

#endif // ZML_RESIDUE_ORACLE_HPP
