// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_NK_HPP
#define ZML_NK_HPP

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "zml/ball.hpp"
#include "zml/config.hpp"
#include "zml/kpoly.hpp"
#include "zml/rational.hpp"
#include "zml/tuples.hpp"

namespace zml {

namespace detail {

/// Cache of computed coefficient ratios keyed by (k, canonical entries).
/// Reads take a shared lock; inserts take an exclusive one. Values are
/// deterministic, so a racing duplicate insert is harmless.
struct NkCache {
    std::shared_mutex mutex;
    std::map<std::pair<unsigned, std::vector<unsigned>>, ExactRational> map;

    static NkCache& instance() {
        static NkCache cache;
        return cache;
    }

    bool lookup(const std::pair<unsigned, std::vector<unsigned>>& key,
                ExactRational& out) {
        std::shared_lock lock(mutex);
        auto it = map.find(key);
        if (it == map.end()) return false;
        out = it->second;
        return true;
    }

    void store(const std::pair<unsigned, std::vector<unsigned>>& key,
               const ExactRational& value) {
        std::unique_lock lock(mutex);
        map.emplace(key, value);
    }
};

/// One weight-lowering expansion step. For a canonical tuple with largest
/// entry L = v1 + 1 the ratio satisfies
///
///   [L, rest] = (2k - L) [v1, rest]
///               - 2 sum_j ( delta_j [v1 - D_j, t_j + D_j, rest \ t_j]
///                           + sum_{l=0}^{D_j} [v1 - l, t_j + l, rest \ t_j] )
///
/// where t_j runs over the other k-1 slots (zeros included),
/// D_j = floor((v1 - t_j)/2), and delta_j = -1/2 when v1 - t_j is even,
/// else 0. Slots with t_j = L contribute nothing (D_j = -1). Every term on
/// the right has weight exactly one less than the left. Equal slot values
/// are grouped: the k - m zero slots enter as a single group with
/// multiplicity k - m.
inline std::vector<std::pair<long, std::vector<unsigned>>> nk_expand(
    unsigned k, const std::vector<unsigned>& t) {
    require(!t.empty(), errc::internal, "expansion of the empty tuple");
    require(t.size() <= k, errc::internal, "tuple has more than k entries");

    const unsigned lam_max = t.front();
    const unsigned v1 = lam_max - 1;
    const std::vector<unsigned> rest(t.begin() + 1, t.end());

    const auto canon = [](std::vector<unsigned> v) {
        std::sort(v.begin(), v.end(), std::greater<unsigned>());
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    };

    std::vector<std::pair<long, std::vector<unsigned>>> deps;

    // Leading term: the largest entry lowered by one. Computed signed:
    // the identity holds for any entry size, including lam_max > 2k.
    {
        std::vector<unsigned> u = rest;
        u.push_back(v1);
        deps.emplace_back(
            2 * static_cast<long>(k) - static_cast<long>(lam_max), canon(u));
    }

    // Group the remaining slot values with multiplicities; the zero slots
    // form one group of size k - (number of nonzero entries).
    std::map<unsigned, long> groups;
    for (unsigned v : rest) ++groups[v];
    const long zero_slots = static_cast<long>(k - t.size());
    if (zero_slots > 0) groups[0] += zero_slots;

    for (const auto& [v, cnt] : groups) {
        if (v == lam_max) continue; // v1 - v = -1: empty sum, delta = 0
        // Remove one occurrence of v from the companion entries (a zero
        // "entry" is simply absent from the canonical vector).
        std::vector<unsigned> base;
        bool dropped = (v == 0);
        for (unsigned w : rest) {
            if (!dropped && w == v) {
                dropped = true;
                continue;
            }
            base.push_back(w);
        }
        const unsigned delta_cap = (v1 - v) / 2;
        for (unsigned l = 0; l <= delta_cap; ++l) {
            std::vector<unsigned> u = base;
            u.push_back(v1 - l);
            u.push_back(v + l);
            deps.emplace_back(-2 * cnt, canon(u));
        }
        if ((v1 - v) % 2 == 0) {
            // The half-weight correction: -2 * delta_j = +1 on the
            // balanced split (v1 + v)/2, (v1 + v)/2.
            std::vector<unsigned> u = base;
            u.push_back((v1 + v) / 2);
            u.push_back((v1 + v) / 2);
            deps.emplace_back(cnt, canon(u));
        }
    }

    // Every expansion lowers the weight by exactly one.
    unsigned wt = 0;
    for (unsigned v : t) wt += v;
    for (const auto& [c, u] : deps) {
        (void)c;
        unsigned wu = 0;
        for (unsigned v : u) wu += v;
        require(wu + 1 == wt, errc::internal,
                "expansion failed to lower the weight by one");
    }
    return deps;
}

} // namespace detail

/// Ratio of the lattice-count coefficient at `lambda` to its value at the
/// zero tuple, for k slots. Computed by iterating the weight-lowering
/// expansion down to the empty tuple, whose ratio is 1 by definition, with
/// all intermediate values memoized process-wide. Any entry >= 2k makes
/// the coefficient vanish identically.
inline ExactRational nk_ratio(unsigned k, const HalfTuple& lambda) {
    require(k >= 1, errc::usage, "nk_ratio needs k >= 1");
    require(lambda.size() <= k, errc::usage,
            "tuple has more than k nonzero entries");
    if (lambda.max_entry() >= 2 * k) return ExactRational(0);
    if (lambda.empty()) return ExactRational(1);

    auto& cache = detail::NkCache::instance();
    const auto key_of = [k](const std::vector<unsigned>& e) {
        return std::make_pair(k, e);
    };

    ExactRational found(0);
    if (cache.lookup(key_of(lambda.entries()), found)) return found;

    // Explicit worklist: a tuple is resolved once all the tuples in its
    // expansion are; weights strictly decrease, so this terminates at the
    // empty tuple.
    std::map<std::vector<unsigned>,
             std::vector<std::pair<long, std::vector<unsigned>>>>
        expansions;
    std::vector<std::vector<unsigned>> work{lambda.entries()};
    while (!work.empty()) {
        const std::vector<unsigned> cur = work.back();
        if (cur.empty() || cache.lookup(key_of(cur), found)) {
            work.pop_back();
            continue;
        }
        auto it = expansions.find(cur);
        if (it == expansions.end())
            it = expansions.emplace(cur, detail::nk_expand(k, cur)).first;

        bool ready = true;
        for (const auto& [c, dep] : it->second) {
            (void)c;
            if (dep.empty()) continue;
            if (!cache.lookup(key_of(dep), found)) {
                work.push_back(dep);
                ready = false;
            }
        }
        if (!ready) continue;

        ExactRational value(0);
        for (const auto& [c, dep] : it->second) {
            ExactRational dv(1);
            if (!dep.empty()) {
                const bool hit = cache.lookup(key_of(dep), dv);
                require(hit, errc::internal, "dependency vanished from cache");
            }
            value = value + ExactRational(c) * dv;
        }
        cache.store(key_of(cur), value);
        work.pop_back();
    }

    const bool hit = cache.lookup(key_of(lambda.entries()), found);
    require(hit, errc::internal, "worklist finished without a result");
    return found;
}

/// The ratio at a fixed entry pattern, as a polynomial in k. The ratio is
/// a polynomial of degree at most the pattern weight w, so interpolating
/// on w+1 nodes determines it; two further nodes are evaluated as an
/// independent confirmation and any mismatch is a hard error.
inline KPolynomial nk_polynomial(const HalfTuple& pattern) {
    const unsigned w = pattern.weight();
    const unsigned m = static_cast<unsigned>(pattern.size());
    const unsigned kmin = std::max(m, 2u);

    std::vector<std::pair<long, ExactRational>> points;
    for (unsigned k = kmin; k <= kmin + w; ++k)
        points.emplace_back(static_cast<long>(k), nk_ratio(k, pattern));
    KPolynomial poly = poly_interpolate(points);

    for (unsigned k = kmin + w + 1; k <= kmin + w + 2; ++k) {
        require(poly.evaluate(ExactRational(static_cast<long>(k))) ==
                    nk_ratio(k, pattern),
                errc::internal,
                "interpolated ratio polynomial fails at a held-out node");
    }
    return poly;
}

/// Result of checking one tuple against the growth bound
///   |ratio| <= 16^w (log(w+10))^w k^w / (lambda_1 ... lambda_m),  w = |lambda|.
/// The left side is exact; the right side is transcendental and evaluated
/// as a ball, so `pass` means the inequality is certified: the exact left
/// side is at most the lower edge of the right-side ball.
struct NkBoundReport {
    unsigned k = 0;
    HalfTuple lambda;
    ExactRational lhs_abs;
    BallValue rhs;
    bool pass = false;
};

inline NkBoundReport nk_bound_check(unsigned k, const HalfTuple& lambda,
                                    unsigned bits = 128) {
    require(k >= 1, errc::usage, "bound check needs k >= 1");
    require(lambda.weight() < k, errc::usage,
            "the growth bound requires |lambda| < k");

    NkBoundReport report;
    report.k = k;
    report.lambda = lambda;

    const ExactRational ratio = nk_ratio(k, lambda);
    report.lhs_abs = ratio.sign() < 0 ? -ratio : ratio;

    const unsigned w = lambda.weight();
    ExactRational denom(1);
    for (unsigned v : lambda.entries())
        denom = denom * ExactRational(static_cast<long>(v));
    const ExactRational exact_part =
        (ExactRational(16).pow(w) * ExactRational(static_cast<long>(k)).pow(w)) /
        denom;
    BallValue rhs = BallValue::from_rational(exact_part, bits);
    if (w > 0)
        rhs = rhs * pow_ui(BallValue::log_of_ui(w + 10, bits), w);
    report.rhs = rhs;
    report.pass =
        BallValue::from_rational(report.lhs_abs, bits).certainly_le(rhs);
    return report;
}

} // namespace zml

#endif // ZML_NK_HPP
