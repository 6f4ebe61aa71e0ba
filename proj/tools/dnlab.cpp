#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dnlab/analytic.hpp"
#include "dnlab/dnlift.hpp"
#include "dnlab/weilfin.hpp"

using namespace dnlab;

namespace {

struct CommonOpts {
    std::string out;
    std::string format = "json";
    std::string config;
    unsigned long long seed = 0;
    double tol = 1e-9;
    long long bound = 500;
};

int write_report(const VerificationReport& rep, const CommonOpts& c) {
    std::string text = c.format == "csv" ? rep.to_csv() : rep.to_json();
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        if (!f) {
            std::cerr << "cannot open output file " << c.out << "\n";
            return 2;
        }
        f << text;
    } else {
        std::cout << text << "\n";
    }
    for (auto& e : rep.entries)
        std::cout << (e.pass ? "pass" : (e.warning_only ? "warn" : "FAIL")) << "  " << e.identity << "\n";
    if (rep.partial) return 3;
    return rep.all_pass() ? 0 : 1;
}

// a JSON config file may supply any flag; command-line values win
void merge_config(CLI::App& app, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(f);
    std::vector<std::string> args;
    for (auto& [key, value] : j.items()) {
        auto* opt = app.get_option_no_throw("--" + key);
        if (!opt) throw CLI::ValidationError("--config", "unknown key " + key);
        if (opt->count() > 0) continue; // command line wins
        if (value.is_boolean()) {
            if (value.get<bool>()) opt->add_result("true");
        } else {
            opt->add_result(value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dnlab: base-change lifts of weight-one forms, finite Weil-representation identities, and the Stark-unit chain"};
    app.require_subcommand(1);

    CommonOpts c;

    // ---- lift ----
    auto* lift = app.add_subcommand("lift", "compute the lift table and verify the base-change identities");
    long long lift_D = 5;
    std::string lift_source = "dihedral:-23";
    std::vector<long long> require_primes;
    lift->add_option("--D", lift_D, "real quadratic discriminant");
    lift->add_option("--source", lift_source, "dihedral:<disc> or file:<path>");
    lift->add_option("--bound", c.bound, "ideal norm bound");
    lift->add_option("--require-prime", require_primes, "primes whose split coefficient must be covered");
    lift->add_option("--out", c.out, "report output path");
    lift->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    lift->add_option("--seed", c.seed, "deterministic seed");
    lift->add_option("--config", c.config, "JSON config file supplying any flag");

    // ---- weil ----
    auto* weil = app.add_subcommand("weil", "finite Weil-representation identity checks");
    std::string weil_case = "pft";
    long long weil_p = 3, weil_D = 13, weil_char_order = 0;
    weil->add_option("--case", weil_case, "pft | hecke-split | hecke-inert | consistency")
        ->check(CLI::IsMember({"pft", "hecke-split", "hecke-inert", "consistency"}));
    weil->add_option("--p", weil_p, "odd prime");
    weil->add_option("--D", weil_D, "quadratic field discriminant");
    weil->add_option("--char-order", weil_char_order, "order of the level character (selects the level-N model)");
    weil->add_option("--out", c.out, "report output path");
    weil->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    weil->add_option("--seed", c.seed, "deterministic seed");
    weil->add_option("--config", c.config, "JSON config file supplying any flag");

    // ---- stark ----
    auto* stark = app.add_subcommand("stark", "the explicit-example identity chain");
    StarkOptions sopts;
    bool skip_delta = false;
    std::string delta_cache;
    stark->add_option("--tol", sopts.quad_rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    stark->add_option("--unit-bound", sopts.unit_search_bound, "unit search coefficient bound")
        ->check(CLI::PositiveNumber);
    stark->add_option("--coeff-bound", sopts.coeff_bound, "coefficient table bound");
    stark->add_flag("--skip-delta-search", skip_delta, "skip the bounded unit search for delta");
    stark->add_option("--delta-cache", delta_cache, "file with cached delta coordinates (num den pairs)");
    stark->add_option("--out", c.out, "report output path");
    stark->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    stark->add_option("--seed", c.seed, "deterministic seed");
    stark->add_option("--config", c.config, "JSON config file supplying any flag");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // flag/config errors are configuration errors
    }

    try {
        if (!c.config.empty()) {
            if (lift->parsed()) merge_config(*lift, c.config);
            if (weil->parsed()) merge_config(*weil, c.config);
            if (stark->parsed()) merge_config(*stark, c.config);
        }

        if (lift->parsed()) {
            CoefficientTable f0;
            if (lift_source.rfind("dihedral:", 0) == 0) {
                long long disc = std::stoll(lift_source.substr(9));
                f0 = dihedral_coeffs(disc, std::max(c.bound, (long long)200));
            } else if (lift_source.rfind("file:", 0) == 0) {
                ImportResult imp = import_qexp(lift_source.substr(5));
                if (imp.warning_flag)
                    for (auto& w : imp.warnings) std::cerr << "import warning: " << w << "\n";
                f0 = imp.table;
            } else {
                std::cerr << "bad --source\n";
                return 2;
            }
            LiftConfig cfg = LiftConfig::make(lift_D, std::move(f0));
            for (long long p : require_primes) {
                if (p > c.bound) {
                    std::cerr << "requested prime " << p << " exceeds bound " << c.bound
                              << "; rerun with --bound >= " << p << "\n";
                    return 2;
                }
            }
            VerificationReport rep = verify_base_change(cfg, c.bound);
            if (!c.out.empty()) {
                LiftTable t = lift_table(cfg, c.bound);
                std::ofstream tf(c.out + ".table");
                tf << lift_table_to_text(t);
            }
            return write_report(rep, c);
        }

        if (weil->parsed()) {
            if (weil_p == 2 || !is_prime(weil_p)) {
                std::cerr << "p must be an odd prime\n";
                return 2;
            }
            VerificationReport rep;
            if (weil_case == "hecke-split") {
                rep = hecke_average(weil_p, SplitType::Split, weil_D, c.seed);
            } else if (weil_case == "hecke-inert") {
                rep = hecke_average(weil_p, SplitType::Inert, weil_D, c.seed);
            } else if (weil_case == "pft") {
                FiniteModel md = weil_D % weil_p == 0 ? FiniteModel::ramified(weil_p, weil_D)
                                 : weil_char_order > 1
                                     ? FiniteModel::level_n(weil_p, weil_D,
                                                            DirichletCharacter::prime_power_order(weil_p, weil_char_order))
                                     : FiniteModel::generic(weil_p, weil_D);
                rep = verify_pft(md);
            } else { // consistency
                FiniteModel md = weil_D % weil_p == 0 ? FiniteModel::ramified(weil_p, weil_D)
                                                      : FiniteModel::generic(weil_p, weil_D);
                rep = verify_metaplectic(md, c.seed);
                VerificationReport inv = verify_invariance(md);
                for (auto& e : inv.entries) rep.add(e);
            }
            return write_report(rep, c);
        }

        if (stark->parsed()) {
            sopts.skip_delta_search = skip_delta;
            if (!delta_cache.empty()) sopts.delta_cache_path = delta_cache;
            sopts.seed = c.seed;
            VerificationReport rep = run_stark_chain(sopts);
            return write_report(rep, c);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
