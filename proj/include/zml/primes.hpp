// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_PRIMES_HPP
#define ZML_PRIMES_HPP

#include <cstdint>
#include <mutex>
#include <map>
#include <vector>

#include "zml/config.hpp"

namespace zml {

/// The finite prime range [2, cutoff] handled explicitly by prime sums.
/// A default-constructed block (cutoff 1, no primes) means "exclude
/// nothing".
struct PrimeBlock {
    std::uint64_t cutoff = 1;
    std::vector<std::uint32_t> primes;

    static PrimeBlock none() { return PrimeBlock{}; }
};

namespace detail {

inline std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i)
                composite[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

/// Moebius function on [1, limit] via a smallest-prime-factor sieve.
inline std::vector<int> moebius_up_to(std::uint64_t limit) {
    std::vector<int> mu(limit + 1, 1);
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            mu[i] = -1;
        }
        for (const std::uint32_t p : primes) {
            const std::uint64_t ip = i * p;
            if (ip > limit) break;
            composite[ip] = true;
            if (i % p == 0) {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    return mu;
}

} // namespace detail

/// All primes <= cutoff, ascending. Results are cached per cutoff since the
/// constants pipeline requests the same block for every k.
inline PrimeBlock primes_up_to(std::uint64_t cutoff) {
    require(cutoff >= 2, errc::usage, "primes_up_to needs cutoff >= 2");
    require(cutoff <= (std::uint64_t{1} << 32), errc::usage,
            "prime cutoff too large");
    static std::mutex mtx;
    static std::map<std::uint64_t, std::vector<std::uint32_t>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(cutoff);
    if (it == cache.end())
        it = cache.emplace(cutoff, detail::sieve_primes(cutoff)).first;
    return PrimeBlock{cutoff, it->second};
}

} // namespace zml

#endif // ZML_PRIMES_HPP
