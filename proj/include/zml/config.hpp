// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_CONFIG_HPP
#define ZML_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zml {

/// Failure categories. The CLI maps these onto process exit codes:
/// verification -> 1, resource -> 2, internal -> 2, usage -> 64.
enum class errc {
    usage,        ///< invalid argument / precondition violation
    verification, ///< a certified check failed (mismatch, bound violated)
    resource,     ///< precision / truncation budget cannot deliver the result
    internal      ///< logic error, broken invariant
};

/// Exception carrying a failure category alongside the message.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what_arg)
        : std::runtime_error(what_arg), code_(code) {}

    errc code() const noexcept { return code_; }

    /// Process exit code the CLI should use for this failure. Verification
    /// mismatches get 1, exhausted precision/truncation budgets (and broken
    /// internal invariants, which we treat the same way) get 2, and bad
    /// invocations get the conventional usage code 64.
    int exit_code() const noexcept {
        switch (code_) {
            case errc::usage: return 64;
            case errc::verification: return 1;
            case errc::resource: return 2;
            case errc::internal: return 2;
        }
        return 2;
    }

private:
    errc code_;
};

inline void require(bool cond, errc code, const std::string& msg) {
    if (!cond) throw Error(code, msg);
}

/// Shared run-time knobs, fed from CLI flags. Validation happens in
/// `validate()` so programmatic users get the same errors as CLI users.
struct RunConfig {
    unsigned precision_bits = 256;  ///< ball midpoint precision (>= 64)
    std::uint64_t prime_cutoff = 100000;  ///< finite prime range (>= 1000)
    unsigned tail_order = 30;       ///< truncation order of prime tails (>= 4)
    std::string format = "csv";     ///< output format: "csv" | "json"
    unsigned oracle_max_k = 3;      ///< largest k the residue oracle expands
    bool show_error = false;        ///< print radii alongside midpoints

    void validate() const {
        require(precision_bits >= 64, errc::usage,
                "precision-bits must be at least 64");
        require(prime_cutoff >= 1000, errc::usage,
                "prime-cutoff must be at least 1000");
        require(tail_order >= 4, errc::usage,
                "tail-order must be at least 4");
        require(format == "csv" || format == "json", errc::usage,
                "format must be 'csv' or 'json'");
    }
};

/// Directory holding the embedded reference tables. The build bakes in a
/// default; the ZML_DATA_DIR environment variable overrides it.
std::string data_dir();

} // namespace zml

#include <cstdlib>

namespace zml {

inline std::string data_dir() {
    if (const char* env = std::getenv("ZML_DATA_DIR"); env && *env)
        return env;
#ifdef ZML_DEFAULT_DATA_DIR
    return ZML_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

} // namespace zml

#endif // ZML_CONFIG_HPP
