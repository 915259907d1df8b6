#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "cohn/arith.hpp"
#include "cohn/lemmas.hpp"
#include "cohn/sieve.hpp"

namespace cohn {

// Every machine-readable object carries a top-level "schema": 1 so golden
// files survive format evolution.
inline constexpr int kSchemaVersion = 1;

std::string derivation_name(Derivation d);
Derivation derivation_from_name(const std::string& name);

nlohmann::json valuation_fact_json(const ValuationFact& fact);
ValuationFact valuation_fact_from_json(const nlohmann::json& j);

nlohmann::json constraint_set_json(const ConstraintSet& cs);
ConstraintSet constraint_set_from_json(const nlohmann::json& j);

nlohmann::json factored_bound_json(const Prime& q, const FactoredBound& bound);

nlohmann::json audit_trail_json(const AuditTrail& trail);
AuditTrail audit_trail_from_json(const nlohmann::json& j);

nlohmann::json endgame_json(const EndgameWitness& witness, bool contradiction);
std::pair<EndgameWitness, bool> endgame_from_json(const nlohmann::json& j);

/// JSON lines: a header object, one outcome line per k (brute) or per (k, q)
/// (pruned), then a summary line listing solutions.
std::string report_to_jsonl(const SearchReport& report);
SearchReport report_from_jsonl(const std::string& text);

std::string report_to_table(const SearchReport& report);
std::string constraint_set_table(const ConstraintSet& cs);
std::string factored_bound_table(const Prime& q, const FactoredBound& bound);
std::string audit_trail_table(const AuditTrail& trail);
std::string endgame_table(const EndgameWitness& witness, bool contradiction);

}  // namespace cohn
