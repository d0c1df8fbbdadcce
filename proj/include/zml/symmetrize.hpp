// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_SYMMETRIZE_HPP
#define ZML_SYMMETRIZE_HPP

#include <map>
#include <utility>
#include <vector>

#include "zml/config.hpp"
#include "zml/nk.hpp"
#include "zml/rational.hpp"
#include "zml/tuples.hpp"

namespace zml {

/// Outcome of folding the second half of a shift tuple into the first:
/// a signed rational prefactor and an integer-weighted combination of
/// single-half tuples,
///
///   p(alpha) / p(0) = prefactor * sum_t multiplicity(t) * ratio(t).
///
/// With d nonzero entries in the second half, the prefactor is
/// (-1)^d / prod_{j=1}^{d} (k - d + j) and the multiplicities add up to
/// prod_{j=1}^{d} (k + d - j).
struct SymmetrizedForm {
    ExactRational prefactor = ExactRational(1);
    std::map<HalfTuple, long long> terms;
};

/// Fold the second half of `alpha` into the first, one entry per round.
/// Each round removes the smallest nonzero entry of the (canonically
/// sorted) second half and adds its value onto every other position in
/// turn -- the k first-half slots, zeros included, and the d-1 remaining
/// second-half entries -- contributing a factor -1/(k - d + 1) where d is
/// the current second-half size. Equal outcomes are merged after every
/// round, so the term count stays at the number of distinct tuples rather
/// than the number of branch paths.
inline SymmetrizedForm symmetrize(const FullTuple& alpha) {
    const unsigned k = alpha.k();
    SymmetrizedForm out;

    using State = std::pair<HalfTuple, HalfTuple>;
    std::map<State, long long> live;
    live[{alpha.first(), alpha.second()}] = 1;

    // Every branch removes exactly one second-half entry per round (the
    // moved value lands on a slot that stays nonzero), so all live states
    // share the same second-half size d.
    for (std::size_t d = alpha.second().size(); d >= 1; --d) {
        out.prefactor = out.prefactor /
                        ExactRational(-(static_cast<long>(k) -
                                        static_cast<long>(d) + 1));
        std::map<State, long long> next;
        for (const auto& [state, mult] : live) {
            const HalfTuple& first = state.first;
            const HalfTuple& second = state.second;
            require(second.size() == d, errc::internal,
                    "second-half sizes diverged across branches");
            const unsigned moved = second.min_entry();
            const HalfTuple base = second.drop_min();

            // Targets 1..k: the first-half slots (zeros included).
            for (std::size_t slot = 0; slot < k; ++slot)
                next[{first.add_at(slot, moved, k), base}] += mult;

            // Targets k+1..k+d-1: the remaining second-half entries.
            for (std::size_t slot = 0; slot < base.size(); ++slot)
                next[{first, base.add_at(slot, moved, k)}] += mult;
        }
        live = std::move(next);
    }

    for (const auto& [state, mult] : live) {
        require(state.second.empty(), errc::internal,
                "second half not fully folded");
        out.terms[state.first] += mult;
    }
    return out;
}

/// Ratio p(alpha)/p(0) for a full 2k-entry shift tuple, obtained by
/// symmetrizing the second half away and evaluating each resulting
/// single-half tuple with the weight-lowering recursion. Tuples that pick
/// up an entry >= 2k vanish inside nk_ratio.
inline ExactRational p_of_alpha(const FullTuple& alpha) {
    const unsigned k = alpha.k();
    require(k >= 2, errc::usage, "p_of_alpha needs k >= 2");

    const SymmetrizedForm form = symmetrize(alpha);
    ExactRational sum(0);
    for (const auto& [tuple, mult] : form.terms)
        sum = sum + ExactRational(static_cast<long>(mult)) * nk_ratio(k, tuple);
    return form.prefactor * sum;
}

} // namespace zml

#endif // ZML_SYMMETRIZE_HPP
