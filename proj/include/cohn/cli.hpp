#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cohn/arith.hpp"

namespace cohn {

enum class Subcommand { nu, lte, constraints, audit, endgame, search };

enum class OutputFormat { table, json };

/// Thrown by parse_args when --help is requested; carries the help text.
struct HelpRequested {
    std::string text;
};

// Parsed, validated invocation. Flag combinations are checked before any
// computation starts.
struct RunConfig {
    Subcommand cmd = Subcommand::search;
    OutputFormat output = OutputFormat::table;
    unsigned workers = 1;

    // nu / lte
    std::uint64_t p = 0;
    Natural n;
    Integer a;
    Integer b;
    std::uint64_t k = 0;

    // constraints / audit / endgame
    std::uint64_t q = 0;
    bool full_bound = false;

    // search
    std::uint64_t family_a = 2;
    std::uint64_t family_b = 3;
    std::uint64_t k_max = 0;
    std::uint64_t n_min = 2;
    std::uint64_t n_max = 20;
    std::vector<std::uint64_t> q_set;
    bool pruned = false;
    bool extended = false;
    unsigned long budget_bits = 1UL << 20;
};

/// Throws std::invalid_argument (usage) on bad flags or combinations.
RunConfig parse_args(const std::vector<std::string>& args);

/// Dispatches a validated config. Reports go to out, diagnostics to err.
/// Returns 0 on success, 2 on internal invariant failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full front end: parse argv, run, map errors to exit codes
/// (0 ok, 1 usage, 2 internal).
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohn
