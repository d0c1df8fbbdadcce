// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_TUPLES_HPP
#define ZML_TUPLES_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "zml/config.hpp"

namespace zml {

/// One half of a shift tuple: a multiset of nonnegative integers spread
/// over k slots. Every quantity computed from a half is invariant under
/// permuting its slots, so the canonical form -- entries sorted in
/// decreasing order, zero slots trimmed -- is the identity of the value.
/// The slot count k lives with the caller; a HalfTuple only stores its
/// nonzero entries.
class HalfTuple {
public:
    HalfTuple() = default;

    explicit HalfTuple(std::vector<unsigned> entries) : e_(std::move(entries)) {
        std::sort(e_.begin(), e_.end(), std::greater<unsigned>());
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }

    /// Parse a comma-separated entry list such as "3,2,1". An empty string
    /// or "0" denotes the empty tuple.
    static HalfTuple parse(const std::string& text) {
        std::vector<unsigned> v;
        std::string token;
        std::istringstream in(text);
        while (std::getline(in, token, ',')) {
            if (token.empty()) continue;
            std::size_t used = 0;
            unsigned long value = 0;
            try {
                value = std::stoul(token, &used, 10);
            } catch (const std::exception&) {
                throw Error(errc::usage, "unparsable tuple entry: " + token);
            }
            require(used == token.size(), errc::usage,
                    "unparsable tuple entry: " + token);
            require(value <= 1000000, errc::usage,
                    "tuple entry out of range: " + token);
            v.push_back(static_cast<unsigned>(value));
        }
        return HalfTuple(std::move(v));
    }

    /// Canonical entries: strictly positive, sorted in decreasing order.
    const std::vector<unsigned>& entries() const { return e_; }

    /// Number of nonzero entries (written m(lambda) in formulas).
    std::size_t size() const { return e_.size(); }

    bool empty() const { return e_.empty(); }

    /// Sum of the entries (the weight |lambda|).
    unsigned weight() const {
        return std::accumulate(e_.begin(), e_.end(), 0u);
    }

    unsigned max_entry() const { return e_.empty() ? 0 : e_.front(); }

    /// Smallest nonzero entry; only meaningful when non-empty.
    unsigned min_entry() const {
        require(!e_.empty(), errc::internal, "min_entry of an empty tuple");
        return e_.back();
    }

    /// Copy with one occurrence of the smallest nonzero entry removed.
    HalfTuple drop_min() const {
        require(!e_.empty(), errc::internal, "drop_min of an empty tuple");
        HalfTuple r = *this;
        r.e_.pop_back();
        return r;
    }

    /// Copy with `value` added onto the entry at `slot` (0-based over all k
    /// slots; slots >= size() hold zero). The result is re-canonicalized.
    HalfTuple add_at(std::size_t slot, unsigned value, unsigned k) const {
        require(slot < k, errc::internal, "tuple slot out of range");
        std::vector<unsigned> v = e_;
        if (slot < v.size())
            v[slot] += value;
        else
            v.push_back(value);
        return HalfTuple(std::move(v));
    }

    bool operator==(const HalfTuple& o) const { return e_ == o.e_; }
    bool operator!=(const HalfTuple& o) const { return e_ != o.e_; }
    bool operator<(const HalfTuple& o) const { return e_ < o.e_; }

    std::string to_string() const {
        if (e_.empty()) return "0";
        std::ostringstream out;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) out << ',';
            out << e_[i];
        }
        return out.str();
    }

private:
    std::vector<unsigned> e_;
};

/// A full shift tuple alpha: 2k slots split into two halves of k slots
/// each. Both halves are order-insensitive for every quantity computed
/// here, so each is stored canonically.
class FullTuple {
public:
    FullTuple(unsigned k, HalfTuple first, HalfTuple second)
        : k_(k), first_(std::move(first)), second_(std::move(second)) {
        require(k >= 1, errc::usage, "full tuple needs k >= 1");
        require(first_.size() <= k, errc::usage,
                "first half has more than k nonzero entries");
        require(second_.size() <= k, errc::usage,
                "second half has more than k nonzero entries");
    }

    /// Parse "a,b,c;d,e" where ';' separates the halves. A missing ';'
    /// means the second half is empty, so "3,2,1" equals "3,2,1;".
    static FullTuple parse(unsigned k, const std::string& text) {
        const std::size_t semi = text.find(';');
        require(text.find(';', semi == std::string::npos ? semi : semi + 1) ==
                    std::string::npos,
                errc::usage, "tuple may contain at most one ';'");
        if (semi == std::string::npos)
            return FullTuple(k, HalfTuple::parse(text), HalfTuple());
        return FullTuple(k, HalfTuple::parse(text.substr(0, semi)),
                         HalfTuple::parse(text.substr(semi + 1)));
    }

    unsigned k() const { return k_; }
    const HalfTuple& first() const { return first_; }
    const HalfTuple& second() const { return second_; }

    /// Total weight |alpha| over both halves.
    unsigned weight() const { return first_.weight() + second_.weight(); }

    /// Tuple with the two halves exchanged.
    FullTuple swapped() const { return FullTuple(k_, second_, first_); }

    std::string to_string() const {
        return first_.to_string() + ";" + second_.to_string();
    }

private:
    unsigned k_;
    HalfTuple first_;
    HalfTuple second_;
};

} // namespace zml

#endif // ZML_TUPLES_HPP
