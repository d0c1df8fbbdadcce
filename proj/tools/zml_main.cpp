// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <zml/cli.hpp>

int main(int argc, char** argv) {
    CLI::App app{"certified computations around moment-polynomial "
                 "coefficient asymptotics"};
    app.require_subcommand(1);

    zml::cli::Options opt;
    std::vector<std::string> k_specs;

    app.add_option("--k", k_specs,
                   "k values: single, comma-separated, or inclusive a..b");
    auto* r_max_opt =
        app.add_option("--r-max", opt.r_max, "largest coefficient index r");
    app.add_option("--tuple", opt.tuple,
                   "tuple entries, comma-separated; ';' separates halves");
    app.add_option("--precision-bits", opt.cfg.precision_bits,
                   "ball midpoint precision (>= 64)");
    app.add_option("--prime-cutoff", opt.cfg.prime_cutoff,
                   "explicit prime range for Euler products (>= 1000)");
    app.add_option("--tail-order", opt.cfg.tail_order,
                   "truncation order of the prime tails (>= 4)");
    app.add_option("--format", opt.cfg.format, "output format: csv | json");
    app.add_flag("--show-error", opt.cfg.show_error,
                 "append the certified radius to every numeric cell");
    app.add_option("--input", opt.input,
                   "coefficient file overriding the embedded fixture");
    app.add_option("--oracle-max-k", opt.cfg.oracle_max_k,
                   "largest k the residue oracle may expand (k=4 is costly)");
    app.add_option("--T", opt.height,
                   "integration height T as a decimal string");

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"constants", "certified arithmetic constants per k"},
        {"nk", "single-half residue ratios or their k-polynomial"},
        {"pk", "two-half coefficient ratios"},
        {"symmetrize", "fold a two-half tuple into single-half terms"},
        {"oracle", "cross-check a tuple against the independent residue "
                   "extraction"},
        {"verify", "run a named verification suite"},
        {"ratios", "reference coefficients against the asymptotic "
                   "prediction"},
        {"bounds", "certified coefficient-envelope checks"},
        {"integrals", "moment-integral quantities at height T"},
        {"mt-bound", "moment-implied bound on the largest squared value"},
        {"emit-ratio-plot", "plot-ready CSV of coefficient ratios"},
    };
    for (const auto& [name, description] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->fallthrough();
        if (name == "verify")
            sub->add_option("suite", opt.suite,
                            "oracle | fixtures | bounds | table1 | table2")
                ->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        opt.cfg.validate();
        opt.ks = zml::cli::parse_k_values(k_specs);
        if (r_max_opt->count() > 0) opt.r_max_set = true;

        if (app.got_subcommand("constants"))
            return zml::cli::cmd_constants(std::cout, opt);
        if (app.got_subcommand("nk")) return zml::cli::cmd_nk(std::cout, opt);
        if (app.got_subcommand("pk")) return zml::cli::cmd_pk(std::cout, opt);
        if (app.got_subcommand("symmetrize"))
            return zml::cli::cmd_symmetrize(std::cout, opt);
        if (app.got_subcommand("oracle"))
            return zml::cli::cmd_oracle(std::cout, opt);
        if (app.got_subcommand("verify"))
            return zml::cli::cmd_verify(std::cout, opt);
        if (app.got_subcommand("ratios"))
            return zml::cli::cmd_ratios(std::cout, opt);
        if (app.got_subcommand("bounds"))
            return zml::cli::cmd_bounds(std::cout, opt);
        if (app.got_subcommand("integrals"))
            return zml::cli::cmd_integrals(std::cout, opt);
        if (app.got_subcommand("mt-bound"))
            return zml::cli::cmd_mt_bound(std::cout, opt);
        if (app.got_subcommand("emit-ratio-plot"))
            return zml::cli::cmd_emit_ratio_plot(std::cout, opt);
        std::cerr << "error: no subcommand selected\n";
        return 64;
    } catch (const zml::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
