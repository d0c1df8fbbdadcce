// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#ifndef ZML_CLI_HPP
#define ZML_CLI_HPP

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "zml/ball.hpp"
#include "zml/coeff_table.hpp"
#include "zml/config.hpp"
#include "zml/constants.hpp"
#include "zml/moments.hpp"
#include "zml/nk.hpp"
#include "zml/rational.hpp"
#include "zml/residue_oracle.hpp"
#include "zml/symmetrize.hpp"
#include "zml/tuples.hpp"
#include "zml/verify.hpp"
#include "zml/zeta.hpp"

namespace zml::cli {

/// Everything a subcommand needs besides the shared RunConfig. Parsed by
/// the binary's argument layer; tests construct it directly.
struct Options {
    RunConfig cfg;
    std::vector<unsigned> ks;   ///< expanded --k values, in given order
    std::string tuple;          ///< raw --tuple text
    bool r_max_set = false;
    unsigned r_max = 0;
    std::string input;          ///< --input path; empty = embedded fixture
    std::string height = "100000000.643"; ///< --T, the integration height
    std::string suite;          ///< verify positional argument
};

/// Expands --k specifications: each may be a single value, a
/// comma-separated list, or an inclusive range "a..b". Order preserved.
inline std::vector<unsigned> parse_k_values(
    const std::vector<std::string>& specs) {
    std::vector<unsigned> out;
    for (const std::string& spec : specs) {
        std::istringstream in(spec);
        std::string token;
        while (std::getline(in, token, ',')) {
            if (token.empty()) continue;
            const std::size_t dots = token.find("..");
            unsigned long lo = 0, hi = 0;
            try {
                std::size_t used = 0;
                if (dots == std::string::npos) {
                    lo = hi = std::stoul(token, &used, 10);
                    require(used == token.size(), errc::usage,
                            "unparsable k value: " + token);
                } else {
                    const std::string a = token.substr(0, dots);
                    const std::string b = token.substr(dots + 2);
                    lo = std::stoul(a, &used, 10);
                    require(used == a.size(), errc::usage,
                            "unparsable k range: " + token);
                    hi = std::stoul(b, &used, 10);
                    require(used == b.size(), errc::usage,
                            "unparsable k range: " + token);
                }
            } catch (const Error&) {
                throw;
            } catch (const std::exception&) {
                throw Error(errc::usage, "unparsable k value: " + token);
            }
            require(lo >= 1, errc::usage, "k must be at least 1");
            require(lo <= hi, errc::usage, "empty k range: " + token);
            require(hi <= 100000, errc::usage, "k out of range: " + token);
            for (unsigned long k = lo; k <= hi; ++k)
                out.push_back(static_cast<unsigned>(k));
        }
    }
    return out;
}

// ----- deterministic row emission ----------------------------------------

namespace detail {

inline std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

/// Streams rows as either CSV (header + rows) or JSON objects, one per
/// line. Field order is fixed by the caller, values are pre-rendered
/// strings, so output is byte-identical across runs for a fixed config.
class RowWriter {
public:
    RowWriter(std::ostream& out, const RunConfig& cfg)
        : out_(out), json_(cfg.format == "json") {}

    using Fields = std::vector<std::pair<std::string, std::string>>;

    void row(const Fields& fields) {
        if (json_) {
            nlohmann::ordered_json obj;
            for (const auto& [key, value] : fields) obj[key] = value;
            out_ << obj.dump() << '\n';
            return;
        }
        if (!header_written_) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                out_ << (i ? "," : "") << detail::csv_escape(fields[i].first);
            out_ << '\n';
            header_written_ = true;
        }
        for (std::size_t i = 0; i < fields.size(); ++i)
            out_ << (i ? "," : "") << detail::csv_escape(fields[i].second);
        out_ << '\n';
    }

    /// Report-only annotations: CSV comment line / JSON note object.
    void comment(const std::string& text) {
        if (json_) {
            nlohmann::ordered_json obj;
            obj["note"] = text;
            out_ << obj.dump() << '\n';
        } else {
            out_ << "# " << text << '\n';
        }
    }

private:
    std::ostream& out_;
    bool json_ = false;
    bool header_written_ = false;
};

namespace detail {

/// Midpoint at certified digits; radius appended on request. The radius
/// prints straight from the bignum (tiny radii underflow a double).
inline std::string ball_cell(const BallValue& v, const RunConfig& cfg) {
    if (!cfg.show_error) return v.to_string();
    return v.to_string() + "+/-" + v.radius_string();
}

inline std::string digits_cell(const BallValue& v) {
    const long digits = v.certified_decimal_digits();
    return digits >= 100000 ? "exact" : std::to_string(digits);
}

/// Loads a coefficient table from --input, or from the named embedded
/// fixture when no --input was given.
inline CoefficientTable load_coefficients(const Options& opt,
                                          const std::string& fixture) {
    const std::string path =
        opt.input.empty() ? data_dir() + "/" + fixture : opt.input;
    return CoefficientTable::load(path, opt.cfg.precision_bits);
}

inline BallValue parse_height(const Options& opt) {
    const ExactRational T = rational_from_scientific(opt.height);
    require(T.sign() > 0, errc::usage, "height T must be positive");
    return BallValue::from_rational(T, opt.cfg.precision_bits);
}

} // namespace detail

// ----- subcommands ---------------------------------------------------------

/// `constants --k ...`: one row of certified constants per k, then a
/// report-only comparison of log a_k against the classical asymptotic
/// -k^2 log(2 e^gamma log k) for k >= 10.
inline int cmd_constants(std::ostream& out, const Options& opt) {
    require(!opt.ks.empty(), errc::usage, "constants needs --k");
    RowWriter w(out, opt.cfg);
    std::vector<ArithmeticConstants> computed;
    for (unsigned k : opt.ks) {
        ArithmeticConstants c;
        try {
            c = compute_constants(k, opt.cfg.precision_bits,
                                  opt.cfg.prime_cutoff, opt.cfg.tail_order);
        } catch (const Error& e) {
            if (e.code() == errc::resource)
                throw Error(errc::resource,
                            "k=" + std::to_string(k) + ": " + e.what());
            throw;
        }
        const BallValue g_ball =
            BallValue::from_rational(c.g_k, opt.cfg.precision_bits);
        w.row({{"k", std::to_string(k)},
               {"a_k", detail::ball_cell(c.a_k, opt.cfg)},
               {"a_digits", detail::digits_cell(c.a_k)},
               {"g_k", detail::ball_cell(g_ball, opt.cfg)},
               {"g_digits", detail::digits_cell(g_ball)},
               {"B_k", detail::ball_cell(c.B_k, opt.cfg)},
               {"B_digits", detail::digits_cell(c.B_k)},
               {"tau_k", detail::ball_cell(c.tau_k, opt.cfg)},
               {"tau_digits", detail::digits_cell(c.tau_k)},
               {"c0_k", detail::ball_cell(c.c0_k, opt.cfg)},
               {"c0_digits", detail::digits_cell(c.c0_k)}});
        computed.push_back(c);
    }
    // Diagnostic only: how close log a_k already sits to its k -> infinity
    // shape. No tolerance is attached; the deviation is the report.
    const unsigned bits = opt.cfg.precision_bits;
    for (std::size_t i = 0; i < opt.ks.size(); ++i) {
        const unsigned k = opt.ks[i];
        if (k < 10) continue;
        const BallValue log_a = log(computed[i].a_k);
        const BallValue predicted =
            -(BallValue::log2_const(bits) + euler_gamma(bits) +
              log(BallValue::log_of_ui(k, bits)))
                 .mul_si(static_cast<long>(k) * k);
        const BallValue deviation =
            log_a / predicted - BallValue::one(bits);
        w.comment("log-a diagnostic: k=" + std::to_string(k) +
                  " log_a=" + log_a.to_string(10) +
                  " asymptotic=" + predicted.to_string(10) +
                  " rel_dev=" + deviation.to_string(3));
    }
    return 0;
}

/// `nk --tuple ...` with --k: exact residue ratios at those k. Without
/// --k: the interpolated polynomial in k for the tuple's pattern.
inline int cmd_nk(std::ostream& out, const Options& opt) {
    require(!opt.tuple.empty(), errc::usage, "nk needs --tuple");
    const HalfTuple lambda = HalfTuple::parse(opt.tuple);
    RowWriter w(out, opt.cfg);
    if (opt.ks.empty()) {
        const KPolynomial poly = nk_polynomial(lambda);
        w.row({{"tuple", lambda.to_string()},
               {"weight", std::to_string(lambda.weight())},
               {"degree", std::to_string(poly.degree())},
               {"polynomial", poly.to_string()}});
        return 0;
    }
    for (unsigned k : opt.ks) {
        require(lambda.size() <= k, errc::usage,
                "tuple has more than k nonzero entries at k=" +
                    std::to_string(k));
        w.row({{"k", std::to_string(k)},
               {"tuple", lambda.to_string()},
               {"value", nk_ratio(k, lambda).to_string()}});
    }
    return 0;
}

/// `pk --k ... --tuple "a,b;c"`: exact two-half coefficient ratios.
inline int cmd_pk(std::ostream& out, const Options& opt) {
    require(!opt.ks.empty(), errc::usage, "pk needs --k");
    require(!opt.tuple.empty(), errc::usage, "pk needs --tuple");
    RowWriter w(out, opt.cfg);
    for (unsigned k : opt.ks) {
        const FullTuple alpha = FullTuple::parse(k, opt.tuple);
        w.row({{"k", std::to_string(k)},
               {"tuple", alpha.to_string()},
               {"weight", std::to_string(alpha.weight())},
               {"value", p_of_alpha(alpha).to_string()}});
    }
    return 0;
}

/// `symmetrize --k K --tuple ...`: the signed single-half combination the
/// two-half ratio folds into: a global rational prefactor followed by one
/// row per surviving tuple with its multiplicity.
inline int cmd_symmetrize(std::ostream& out, const Options& opt) {
    require(opt.ks.size() == 1, errc::usage,
            "symmetrize needs exactly one --k");
    require(!opt.tuple.empty(), errc::usage, "symmetrize needs --tuple");
    const unsigned k = opt.ks.front();
    const FullTuple alpha = FullTuple::parse(k, opt.tuple);
    const SymmetrizedForm form = symmetrize(alpha);
    RowWriter w(out, opt.cfg);
    w.row({{"k", std::to_string(k)},
           {"component", "prefactor"},
           {"tuple", alpha.to_string()},
           {"value", form.prefactor.to_string()}});
    for (const auto& [tuple, mult] : form.terms)
        w.row({{"k", std::to_string(k)},
               {"component", "term"},
               {"tuple", tuple.to_string()},
               {"value", std::to_string(mult)}});
    return 0;
}

/// `oracle --k K --tuple ...`: evaluates the independent sparse-polynomial
/// residue route next to the recursion/symmetrizer route and reports
/// whether they agree exactly. A ';' in the tuple selects the two-half
/// form. Exit 1 on disagreement.
inline int cmd_oracle(std::ostream& out, const Options& opt) {
    require(opt.ks.size() == 1, errc::usage, "oracle needs exactly one --k");
    require(!opt.tuple.empty(), errc::usage, "oracle needs --tuple");
    const unsigned k = opt.ks.front();
    RowWriter w(out, opt.cfg);

    ExactRational oracle, engine;
    std::string display;
    if (opt.tuple.find(';') != std::string::npos) {
        const FullTuple alpha = FullTuple::parse(k, opt.tuple);
        std::vector<unsigned> slots(2 * k, 0);
        for (std::size_t i = 0; i < alpha.first().size(); ++i)
            slots[i] = alpha.first().entries()[i];
        for (std::size_t i = 0; i < alpha.second().size(); ++i)
            slots[k + i] = alpha.second().entries()[i];
        oracle = p_oracle(k, slots, ExactRational(1), opt.cfg.oracle_max_k);
        engine = p_of_alpha(alpha);
        display = alpha.to_string();
    } else {
        const HalfTuple lambda = HalfTuple::parse(opt.tuple);
        require(lambda.size() <= k, errc::usage,
                "tuple has more than k nonzero entries");
        oracle = nk_oracle(k, lambda.entries());
        engine = nk_ratio(k, lambda);
        display = lambda.to_string();
    }
    const bool match = oracle == engine;
    w.row({{"k", std::to_string(k)},
           {"tuple", display},
           {"oracle", oracle.to_string()},
           {"engine", engine.to_string()},
           {"match", match ? "true" : "false"}});
    return match ? 0 : 1;
}

/// `ratios [--k ...] [--r-max R] [--input FILE]`: reference coefficients
/// next to the asymptotic prediction and their ratio.
inline int cmd_ratios(std::ostream& out, const Options& opt) {
    const CoefficientTable table =
        detail::load_coefficients(opt, "table1.jsonl");
    std::vector<unsigned> ks = opt.ks.empty() ? table.ks() : opt.ks;
    RowWriter w(out, opt.cfg);
    for (unsigned k : ks) {
        const unsigned r_max = opt.r_max_set ? opt.r_max : table.max_r(k);
        for (const RatioRow& row : ratio_table(table, k, r_max, opt.cfg))
            w.row({{"k", std::to_string(row.k)},
                   {"r", std::to_string(row.r)},
                   {"reference", detail::ball_cell(row.reference, opt.cfg)},
                   {"predicted", detail::ball_cell(row.predicted, opt.cfg)},
                   {"ratio", detail::ball_cell(row.ratio, opt.cfg)}});
    }
    return 0;
}

/// `bounds [--k ...] [--input FILE]`: certified check of the coefficient
/// envelope |c_r| <= tau^r C(k^2,r) c_0 per ingested row. Exit 1 only on
/// a certified violation; overlapping enclosures report `indeterminate`.
inline int cmd_bounds(std::ostream& out, const Options& opt) {
    const CoefficientTable table =
        detail::load_coefficients(opt, "table1.jsonl");
    std::vector<unsigned> ks = opt.ks.empty() ? table.ks() : opt.ks;
    RowWriter w(out, opt.cfg);
    bool violated = false;
    for (unsigned k : ks) {
        for (const BoundCheckRow& row :
             check_coefficient_bound(table, k, opt.cfg)) {
            w.row({{"k", std::to_string(row.k)},
                   {"r", std::to_string(row.r)},
                   {"abs_coefficient",
                    detail::ball_cell(row.lhs_abs, opt.cfg)},
                   {"envelope", detail::ball_cell(row.rhs, opt.cfg)},
                   {"verdict", to_string(row.verdict)}});
            violated = violated || row.verdict == BoundVerdict::fail;
        }
    }
    return violated ? 1 : 0;
}

/// `integrals --k ... [--T x] [--input FILE]`: moment-integral quantities
/// at height T. The full polynomial integral needs all k^2 + 1
/// coefficients; those are derivable internally only for k = 1 and
/// otherwise come from --input, so the column is empty when unavailable.
inline int cmd_integrals(std::ostream& out, const Options& opt) {
    require(!opt.ks.empty(), errc::usage, "integrals needs --k");
    const BallValue T = detail::parse_height(opt);
    const unsigned bits = opt.cfg.precision_bits;
    CoefficientTable table;
    if (!opt.input.empty())
        table = CoefficientTable::load(opt.input, bits);

    RowWriter w(out, opt.cfg);
    for (unsigned k : opt.ks) {
        std::string pk_cell;
        std::vector<BallValue> coeffs;
        if (k == 1 && opt.input.empty()) {
            // P_1(x) = x + 2 gamma is the one internally known polynomial.
            coeffs = {BallValue::one(bits), euler_gamma(bits).mul_2exp(1)};
        } else if (!opt.input.empty()) {
            bool complete = true;
            for (unsigned r = 0; r <= k * k && complete; ++r)
                complete = table.find(k, r) != nullptr;
            if (complete)
                for (unsigned r = 0; r <= k * k; ++r)
                    coeffs.push_back(table.find(k, r)->value);
        }
        if (!coeffs.empty())
            pk_cell = detail::ball_cell(integral_Pk(T, coeffs), opt.cfg);
        w.row({{"k", std::to_string(k)},
               {"T", opt.height},
               {"polynomial_integral", pk_cell},
               {"leading_order",
                detail::ball_cell(leading_term(T, k, opt.cfg), opt.cfg)},
               {"upper_bound",
                detail::ball_cell(integral_bound(T, k, opt.cfg), opt.cfg)}});
    }
    return 0;
}

/// `mt-bound [--T x] [--k K]`: the moment-implied bound on the largest
/// squared magnitude up to height T, optimized over k unless --k pins it.
inline int cmd_mt_bound(std::ostream& out, const Options& opt) {
    require(opt.ks.size() <= 1, errc::usage, "mt-bound takes at most one --k");
    const BallValue T = detail::parse_height(opt);
    const unsigned k_override = opt.ks.empty() ? 0 : opt.ks.front();
    const MTBoundReport rep = mT_bound(T, opt.cfg, k_override);
    RowWriter w(out, opt.cfg);
    w.row({{"T", opt.height},
           {"k_opt", std::to_string(rep.k_opt)},
           {"k_used", std::to_string(rep.k_used)},
           {"first_factor", detail::ball_cell(rep.first_factor, opt.cfg)},
           {"second_factor", detail::ball_cell(rep.second_factor, opt.cfg)},
           {"bound", detail::ball_cell(rep.bound, opt.cfg)},
           {"envelope", detail::ball_cell(rep.envelope, opt.cfg)}});
    w.comment(rep.constants_note);
    return 0;
}

/// `emit-ratio-plot --k K [--r-max R] [--input FILE]`: plot-ready CSV of
/// reference/prediction ratios, one row per r. Always CSV regardless of
/// --format: the row shape `r,ratio_mid,ratio_radius` is the contract.
inline int cmd_emit_ratio_plot(std::ostream& out, const Options& opt) {
    require(opt.ks.size() == 1, errc::usage,
            "emit-ratio-plot needs exactly one --k");
    const unsigned k = opt.ks.front();
    const CoefficientTable table =
        detail::load_coefficients(opt, "table1.jsonl");
    const std::vector<unsigned> present = table.ks();
    const bool has_k =
        std::find(present.begin(), present.end(), k) != present.end();
    // With no data for this k at all, still enumerate which rows were
    // wanted: ratio_table reports every missing (k, r) pair in one error.
    const unsigned r_max =
        opt.r_max_set ? opt.r_max : (has_k ? table.max_r(k) : 7);
    const std::vector<RatioRow> rows = ratio_table(table, k, r_max, opt.cfg);
    out << "r,ratio_mid,ratio_radius\n";
    for (const RatioRow& row : rows)
        out << row.r << ',' << row.ratio.to_string() << ','
            << row.ratio.radius_string() << '\n';
    return 0;
}

/// `verify SUITE`: runs one named suite and prints machine-readable
/// per-case rows. Exit 0 iff no case failed; indeterminate bound cases
/// print as WARN and do not fail the run.
inline int cmd_verify(std::ostream& out, const Options& opt) {
    VerifyReport rep;
    if (opt.suite == "oracle") {
        rep = verify_oracle_suite(opt.cfg);
    } else if (opt.suite == "fixtures") {
        rep = verify_fixture_suite();
    } else if (opt.suite == "bounds") {
        rep = verify_bound_suite(
            detail::load_coefficients(opt, "table1.jsonl"), opt.cfg);
    } else if (opt.suite == "table1") {
        const CoefficientTable coeffs =
            detail::load_coefficients(opt, "table1.jsonl");
        const CoefficientTable ratios = CoefficientTable::load(
            data_dir() + "/table1_ratios.csv", opt.cfg.precision_bits);
        rep = verify_table1_suite(coeffs, ratios, opt.cfg);
    } else if (opt.suite == "table2") {
        const std::string path =
            opt.input.empty() ? data_dir() + "/table2.csv" : opt.input;
        rep = verify_table2_suite(load_table2(path), opt.cfg,
                                  rational_from_scientific(opt.height));
    } else {
        throw Error(errc::usage,
                    "unknown suite '" + opt.suite +
                        "' (expected oracle|fixtures|bounds|table1|table2)");
    }

    RowWriter w(out, opt.cfg);
    for (const VerifyCase& c : rep.cases)
        w.row({{"status", c.status}, {"case", c.name}, {"detail", c.detail}});
    w.comment("suite=" + opt.suite + " cases=" +
              std::to_string(rep.cases.size()) +
              " pass=" + std::to_string(rep.passes) +
              " warn=" + std::to_string(rep.warns) +
              " fail=" + std::to_string(rep.fails));
    return rep.all_pass() ? 0 : 1;
}

} // namespace zml::cli

#endif // ZML_CLI_HPP
