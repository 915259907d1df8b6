#include "cohn/cli.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "cohn/lte.hpp"
#include "cohn/serialize.hpp"
#include "cohn/sieve.hpp"

namespace cohn {

namespace {

Natural parse_natural(const std::string& text, const char* flag) {
    Natural n;
    if (text.empty() || n.set_str(text, 10) != 0 || sgn(n) < 0)
        throw std::invalid_argument(std::string(flag) + " expects a nonnegative integer, got '" +
                                    text + "'");
    return n;
}

Integer parse_integer(const std::string& text, const char* flag) {
    Integer n;
    if (text.empty() || n.set_str(text, 10) != 0)
        throw std::invalid_argument(std::string(flag) + " expects an integer, got '" + text +
                                    "'");
    return n;
}

struct RawArgs {
    std::string n_text;
    std::string a_text;
    std::string b_text;
    std::string mode = "brute";
    std::string output = "table";
};

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    RawArgs raw;

    CLI::App app{"toolkit for Cohn-type equations (a^k-1)(b^k-1) = x^n"};
    app.require_subcommand(1);
    app.add_option("--out", raw.output, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--workers", cfg.workers, "worker threads for searches")
        ->envname("COHN_WORKERS")
        ->check(CLI::PositiveNumber);

    auto* nu_cmd = app.add_subcommand("nu", "p-adic valuation nu_p(n)");
    nu_cmd->fallthrough();
    nu_cmd->add_option("--p", cfg.p, "prime")->required();
    nu_cmd->add_option("--n", raw.n_text, "subject, n >= 1")->required();

    auto* lte_cmd = app.add_subcommand("lte", "nu_p(a^k - b^k) by lifting the exponent");
    lte_cmd->fallthrough();
    lte_cmd->add_option("--a", raw.a_text)->required();
    lte_cmd->add_option("--b", raw.b_text)->required();
    lte_cmd->add_option("--k", cfg.k, "positive exponent")->required();
    lte_cmd->add_option("--p", cfg.p, "prime with p | a-b, p coprime to ab")->required();

    auto* con_cmd = app.add_subcommand("constraints", "exponent constraints forced on k");
    con_cmd->fallthrough();
    con_cmd->add_option("--q", cfg.q, "odd prime exponent")->required();
    con_cmd->add_flag("--full", cfg.full_bound,
                      "full factored divisor of k (small primes, large primes, lcm part)");

    auto* audit_cmd = app.add_subcommand("audit", "replay the prime-by-prime induction");
    audit_cmd->fallthrough();
    audit_cmd->add_option("--q", cfg.q, "odd prime")->required();

    auto* end_cmd = app.add_subcommand("endgame", "final contradiction inequality at (k, q)");
    end_cmd->fallthrough();
    end_cmd->add_option("--k", cfg.k, "exponent, q | k")->required();
    end_cmd->add_option("--q", cfg.q, "odd prime")->required();

    auto* search_cmd = app.add_subcommand("search", "scan k for solutions of the family");
    search_cmd->fallthrough();
    search_cmd->add_option("--a", cfg.family_a, "smaller base (default 2)");
    search_cmd->add_option("--b", cfg.family_b, "larger base (default 3)");
    search_cmd->add_option("--kmax", cfg.k_max, "largest exponent k to scan")->required();
    search_cmd->add_option("--nmin", cfg.n_min, "smallest power tested (brute mode)");
    search_cmd->add_option("--nmax", cfg.n_max, "largest power tested (brute mode)");
    search_cmd->add_option("--mode", raw.mode, "brute | pruned")
        ->check(CLI::IsMember({"brute", "pruned"}));
    search_cmd->add_option("--qset", cfg.q_set, "odd prime exponents for pruned mode")
        ->delimiter(',');
    search_cmd->add_flag("--extended", cfg.extended, "also filter on nu_5, nu_7");
    search_cmd->add_option("--budget-bits", cfg.budget_bits,
                           "bit budget for materializing N in the exact fallback");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    if (app.got_subcommand(nu_cmd)) {
        cfg.cmd = Subcommand::nu;
        cfg.n = parse_natural(raw.n_text, "--n");
    } else if (app.got_subcommand(lte_cmd)) {
        cfg.cmd = Subcommand::lte;
        cfg.a = parse_integer(raw.a_text, "--a");
        cfg.b = parse_integer(raw.b_text, "--b");
    } else if (app.got_subcommand(con_cmd)) {
        cfg.cmd = Subcommand::constraints;
    } else if (app.got_subcommand(audit_cmd)) {
        cfg.cmd = Subcommand::audit;
    } else if (app.got_subcommand(end_cmd)) {
        cfg.cmd = Subcommand::endgame;
    } else {
        cfg.cmd = Subcommand::search;
        cfg.pruned = raw.mode == "pruned";
        if (cfg.pruned && cfg.q_set.empty())
            throw std::invalid_argument("--mode pruned requires --qset");
        if (!cfg.pruned && !cfg.q_set.empty())
            throw std::invalid_argument("--qset requires --mode pruned");
        if (!cfg.pruned && cfg.n_min > cfg.n_max)
            throw std::invalid_argument("--nmin exceeds --nmax");
    }
    cfg.output = raw.output == "json" ? OutputFormat::json : OutputFormat::table;
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const bool json = cfg.output == OutputFormat::json;
    switch (cfg.cmd) {
        case Subcommand::nu: {
            ValuationFact fact = nu(Prime(cfg.p), cfg.n);
            if (json)
                out << valuation_fact_json(fact).dump() << '\n';
            else
                out << fact.valuation << '\n';
            break;
        }
        case Subcommand::lte: {
            ValuationFact fact = lte_valuation(LteInput(cfg.a, cfg.b, cfg.k, Prime(cfg.p)));
            if (json)
                out << valuation_fact_json(fact).dump() << '\n';
            else
                out << fact.valuation << '\n';
            break;
        }
        case Subcommand::constraints: {
            const Prime q(cfg.q);
            if (cfg.full_bound) {
                FactoredBound bound = k_lower_bound(q);
                out << (json ? factored_bound_json(q, bound).dump() + "\n"
                             : factored_bound_table(q, bound));
            } else {
                ConstraintSet cs = small_prime_constraints(q);
                out << (json ? constraint_set_json(cs).dump() + "\n" : constraint_set_table(cs));
            }
            break;
        }
        case Subcommand::audit: {
            AuditTrail trail = induction_audit(Prime(cfg.q));
            out << (json ? audit_trail_json(trail).dump() + "\n" : audit_trail_table(trail));
            break;
        }
        case Subcommand::endgame: {
            const Prime q(cfg.q);
            EndgameWitness w = endgame_witness(cfg.k, q);
            bool verdict = endgame_contradiction(cfg.k, q);
            out << (json ? endgame_json(w, verdict).dump() + "\n" : endgame_table(w, verdict));
            break;
        }
        case Subcommand::search: {
            SearchOptions options;
            options.workers = cfg.workers;
            options.budget_bits = cfg.budget_bits;
            options.extended_filters = cfg.extended;
            const EquationFamily family(cfg.family_a, cfg.family_b);
            if (cfg.k_max >= 5000)
                err << "search: family=(" << family.base_a << "," << family.base_b
                    << ") k_max=" << cfg.k_max << " workers=" << options.workers << '\n';
            std::optional<SearchReport> report;
            if (cfg.pruned) {
                std::vector<Prime> qs;
                qs.reserve(cfg.q_set.size());
                for (std::uint64_t q : cfg.q_set) qs.emplace_back(q);
                report = pruned_search(family, cfg.k_max, qs, options);
            } else {
                report = brute_force_search(family, cfg.k_max, cfg.n_min, cfg.n_max, options);
            }
            out << (json ? report_to_jsonl(*report) : report_to_table(*report));
            break;
        }
    }
    return 0;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        RunConfig cfg = parse_args(args);
        return run(cfg, out, err);
    } catch (const HelpRequested& help) {
        out << help.text;
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cohn
