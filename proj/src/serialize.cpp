#include "cohn/serialize.hpp"

#include <sstream>

namespace cohn {

using nlohmann::json;

std::string derivation_name(Derivation d) {
    switch (d) {
        case Derivation::direct: return "direct";
        case Derivation::lte_odd: return "lte-odd";
        case Derivation::lte_2_odd_k: return "lte-2-odd-k";
        case Derivation::lte_2_even_k: return "lte-2-even-k";
    }
    throw std::logic_error("unknown derivation");
}

Derivation derivation_from_name(const std::string& name) {
    if (name == "direct") return Derivation::direct;
    if (name == "lte-odd") return Derivation::lte_odd;
    if (name == "lte-2-odd-k") return Derivation::lte_2_odd_k;
    if (name == "lte-2-even-k") return Derivation::lte_2_even_k;
    throw std::invalid_argument("unknown derivation: " + name);
}

json valuation_fact_json(const ValuationFact& fact) {
    json j{{"schema", kSchemaVersion},
           {"p", fact.prime.value()},
           {"valuation", fact.valuation},
           {"derivation", derivation_name(fact.derivation)}};
    if (fact.subject) j["subject"] = fact.subject->get_str();
    return j;
}

ValuationFact valuation_fact_from_json(const json& j) {
    ValuationFact fact{Prime(j.at("p").get<std::uint64_t>()),
                       j.at("valuation").get<unsigned long>(), std::nullopt,
                       derivation_from_name(j.at("derivation").get<std::string>())};
    if (j.contains("subject")) fact.subject = Natural(j.at("subject").get<std::string>());
    return fact;
}

json constraint_set_json(const ConstraintSet& cs) {
    json bounds = json::object();
    for (const auto& [p, e] : cs.bounds) bounds[std::to_string(p.value())] = e;
    return json{{"schema", kSchemaVersion}, {"q", cs.q.value()}, {"bounds", bounds}};
}

ConstraintSet constraint_set_from_json(const json& j) {
    ConstraintSet cs{Prime(j.at("q").get<std::uint64_t>()), {}};
    for (const auto& [key, value] : j.at("bounds").items())
        cs.bounds.emplace(Prime(std::stoull(key)), value.get<unsigned long>());
    return cs;
}

json factored_bound_json(const Prime& q, const FactoredBound& bound) {
    json b = json::object();
    for (const auto& [p, e] : bound) b[std::to_string(p.value())] = e;
    return json{{"schema", kSchemaVersion}, {"q", q.value()}, {"bound", b}};
}

static std::string claim_name(AuditClaim c) {
    return c == AuditClaim::pm1_divides_k ? "pm1-divides-k" : "p-exponent-bound";
}

static AuditClaim claim_from_name(const std::string& s) {
    if (s == "pm1-divides-k") return AuditClaim::pm1_divides_k;
    if (s == "p-exponent-bound") return AuditClaim::p_exponent_bound;
    throw std::invalid_argument("unknown audit claim: " + s);
}

json audit_trail_json(const AuditTrail& trail) {
    json steps = json::array();
    for (const AuditStep& step : trail.steps) {
        json checks = json::array();
        for (const AuditComparison& c : step.checks)
            checks.push_back(json{{"r", c.r.value()},
                                  {"valuation", c.lhs_valuation},
                                  {"bound", c.bound},
                                  {"holds", c.holds}});
        steps.push_back(json{{"p", step.p.value()},
                             {"claim", claim_name(step.claim)},
                             {"guaranteed", step.guaranteed},
                             {"checks", checks}});
    }
    return json{{"schema", kSchemaVersion}, {"q", trail.q.value()}, {"steps", steps}};
}

AuditTrail audit_trail_from_json(const json& j) {
    AuditTrail trail{Prime(j.at("q").get<std::uint64_t>()), {}};
    for (const json& s : j.at("steps")) {
        AuditStep step{Prime(s.at("p").get<std::uint64_t>()),
                       claim_from_name(s.at("claim").get<std::string>()),
                       s.at("guaranteed").get<unsigned long>(),
                       {}};
        for (const json& c : s.at("checks"))
            step.checks.push_back(AuditComparison{Prime(c.at("r").get<std::uint64_t>()),
                                                  c.at("valuation").get<unsigned long>(),
                                                  c.at("bound").get<unsigned long>(),
                                                  c.at("holds").get<bool>()});
        trail.steps.push_back(std::move(step));
    }
    return trail;
}

json endgame_json(const EndgameWitness& w, bool contradiction) {
    return json{{"schema", kSchemaVersion},
                {"k", w.k},
                {"q", w.q.value()},
                {"a", w.a.get_str()},
                {"b", w.b.get_str()},
                {"X", w.x_base.get_str()},
                {"Y", w.y_base.get_str()},
                {"t_min", w.t_min},
                {"b_below_a_squared", w.b < w.a * w.a},
                {"contradiction", contradiction}};
}

std::pair<EndgameWitness, bool> endgame_from_json(const json& j) {
    EndgameWitness w{j.at("k").get<std::uint64_t>(),
                     Prime(j.at("q").get<std::uint64_t>()),
                     Natural(j.at("a").get<std::string>()),
                     Natural(j.at("b").get<std::string>()),
                     Natural(j.at("X").get<std::string>()),
                     Natural(j.at("Y").get<std::string>()),
                     j.at("t_min").get<std::uint64_t>()};
    return {w, j.at("contradiction").get<bool>()};
}

static std::string status_name(OutcomeStatus s) {
    switch (s) {
        case OutcomeStatus::solution: return "solution";
        case OutcomeStatus::pruned: return "pruned";
        case OutcomeStatus::exhausted: return "exhausted";
        case OutcomeStatus::unresolved: return "unresolved";
    }
    throw std::logic_error("unknown status");
}

static json record_line(std::uint64_t k, const QRecord& rec) {
    json line{{"type", "outcome"}, {"k", k}, {"q", rec.q}};
    switch (rec.kind) {
        case QRecordKind::constraint_reject:
            line["status"] = "pruned";
            line["reason"] = json{{"filter", "constraint"},
                                  {"prime", rec.prime},
                                  {"required", rec.required},
                                  {"actual", rec.actual}};
            break;
        case QRecordKind::valuation_reject:
            line["status"] = "pruned";
            line["reason"] =
                json{{"filter", "valuation"}, {"prime", rec.prime}, {"valuation", rec.actual}};
            break;
        case QRecordKind::exact_reject:
            line["status"] = "exhausted";
            break;
        case QRecordKind::budget_exceeded:
            line["status"] = "unresolved";
            line["reason"] = json{{"filter", "budget"}};
            break;
        case QRecordKind::solution_found:
            line["status"] = "solution";
            line["x"] = rec.x->get_str();
            line["n"] = rec.q;
            break;
    }
    return line;
}

std::string report_to_jsonl(const SearchReport& report) {
    std::ostringstream out;
    json header{{"schema", kSchemaVersion},
                {"type", "header"},
                {"family", json::array({report.family.base_a, report.family.base_b})},
                {"mode", report.mode == SearchMode::brute ? "brute" : "pruned"},
                {"k_max", report.k_max}};
    if (report.mode == SearchMode::brute) {
        header["n_min"] = report.n_min;
        header["n_max"] = report.n_max;
    } else {
        header["q_set"] = report.q_set;
        header["budget_bits"] = report.budget_bits;
        header["extended"] = report.extended;
    }
    out << header.dump() << '\n';

    for (const SearchOutcome& o : report.outcomes) {
        if (report.mode == SearchMode::brute) {
            json line{{"type", "outcome"}, {"k", o.k}, {"status", status_name(o.status)}};
            if (o.sol) {
                line["x"] = o.sol->x.get_str();
                line["n"] = o.sol->n;
            }
            out << line.dump() << '\n';
        } else {
            for (const QRecord& rec : o.records) out << record_line(o.k, rec).dump() << '\n';
        }
    }

    json sols = json::array();
    for (const Solution& s : report.solutions)
        sols.push_back(json{{"k", s.k}, {"x", s.x.get_str()}, {"n", s.n}});
    out << json{{"type", "summary"}, {"count", report.solutions.size()}, {"solutions", sols}}
               .dump()
        << '\n';
    return out.str();
}

static QRecord record_from_line(const json& line) {
    QRecord rec;
    rec.q = line.at("q").get<std::uint64_t>();
    const std::string status = line.at("status").get<std::string>();
    if (status == "solution") {
        rec.kind = QRecordKind::solution_found;
        rec.x = Natural(line.at("x").get<std::string>());
    } else if (status == "exhausted") {
        rec.kind = QRecordKind::exact_reject;
    } else if (status == "unresolved") {
        rec.kind = QRecordKind::budget_exceeded;
    } else {
        const json& reason = line.at("reason");
        if (reason.at("filter") == "constraint") {
            rec.kind = QRecordKind::constraint_reject;
            rec.prime = reason.at("prime").get<std::uint64_t>();
            rec.required = reason.at("required").get<unsigned long>();
            rec.actual = reason.at("actual").get<unsigned long>();
        } else {
            rec.kind = QRecordKind::valuation_reject;
            rec.prime = reason.at("prime").get<std::uint64_t>();
            rec.actual = reason.at("valuation").get<unsigned long>();
        }
    }
    return rec;
}

static OutcomeStatus aggregate_status(const SearchOutcome& o) {
    if (o.sol) return OutcomeStatus::solution;
    bool any_budget = false, any_exact = false;
    for (const QRecord& rec : o.records) {
        any_budget |= rec.kind == QRecordKind::budget_exceeded;
        any_exact |= rec.kind == QRecordKind::exact_reject;
    }
    if (any_budget) return OutcomeStatus::unresolved;
    if (any_exact) return OutcomeStatus::exhausted;
    return OutcomeStatus::pruned;
}

SearchReport report_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty report");
    const json header = json::parse(line);
    if (header.at("type") != "header") throw std::invalid_argument("missing report header");

    const auto& fam = header.at("family");
    SearchReport report{EquationFamily(fam.at(0).get<std::uint64_t>(),
                                       fam.at(1).get<std::uint64_t>()),
                        header.at("mode") == "brute" ? SearchMode::brute : SearchMode::pruned,
                        header.at("k_max").get<std::uint64_t>(),
                        0, 0, {}, 0, false, {}, {}};
    if (report.mode == SearchMode::brute) {
        report.n_min = header.at("n_min").get<std::uint64_t>();
        report.n_max = header.at("n_max").get<std::uint64_t>();
    } else {
        report.q_set = header.at("q_set").get<std::vector<std::uint64_t>>();
        report.budget_bits = header.at("budget_bits").get<unsigned long>();
        report.extended = header.at("extended").get<bool>();
    }

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        if (j.at("type") == "summary") {
            for (const json& s : j.at("solutions"))
                report.solutions.push_back(Solution{s.at("k").get<std::uint64_t>(),
                                                    Natural(s.at("x").get<std::string>()),
                                                    s.at("n").get<std::uint64_t>()});
            break;
        }
        const std::uint64_t k = j.at("k").get<std::uint64_t>();
        if (report.mode == SearchMode::brute) {
            SearchOutcome o;
            o.k = k;
            const std::string status = j.at("status").get<std::string>();
            if (status == "solution") {
                o.status = OutcomeStatus::solution;
                o.sol = Solution{k, Natural(j.at("x").get<std::string>()),
                                 j.at("n").get<std::uint64_t>()};
            } else {
                o.status = OutcomeStatus::exhausted;
            }
            report.outcomes.push_back(std::move(o));
        } else {
            if (report.outcomes.empty() || report.outcomes.back().k != k) {
                SearchOutcome o;
                o.k = k;
                report.outcomes.push_back(std::move(o));
            }
            SearchOutcome& o = report.outcomes.back();
            QRecord rec = record_from_line(j);
            if (rec.kind == QRecordKind::solution_found && !o.sol)
                o.sol = Solution{k, *rec.x, rec.q};
            o.records.push_back(std::move(rec));
        }
    }
    if (report.mode == SearchMode::pruned)
        for (SearchOutcome& o : report.outcomes) o.status = aggregate_status(o);
    return report;
}

static std::string record_detail(const QRecord& rec) {
    std::ostringstream s;
    switch (rec.kind) {
        case QRecordKind::constraint_reject:
            s << "constraint: nu_" << rec.prime << "(k)=" << rec.actual << " < " << rec.required;
            break;
        case QRecordKind::valuation_reject:
            s << "valuation: nu_" << rec.prime << "(N)=" << rec.actual << " not divisible by q";
            break;
        case QRecordKind::exact_reject:
            s << "exact root test failed";
            break;
        case QRecordKind::budget_exceeded:
            s << "N exceeds bit budget";
            break;
        case QRecordKind::solution_found:
            s << "x=" << rec.x->get_str() << " n=" << rec.q;
            break;
    }
    return s.str();
}

std::string report_to_table(const SearchReport& report) {
    std::ostringstream out;
    out << "family=(" << report.family.base_a << "," << report.family.base_b << ")";
    if (report.mode == SearchMode::brute) {
        out << " mode=brute k_max=" << report.k_max << " n=[" << report.n_min << ","
            << report.n_max << "]\n";
        out << "     k  status     detail\n";
        for (const SearchOutcome& o : report.outcomes) {
            out.width(6);
            out << o.k;
            out << "  ";
            std::string st = status_name(o.status);
            st.resize(9, ' ');
            out << st << "  ";
            if (o.sol)
                out << "x=" << o.sol->x.get_str() << " n=" << o.sol->n;
            else
                out << "-";
            out << '\n';
        }
    } else {
        out << " mode=pruned k_max=" << report.k_max << " q_set={";
        for (std::size_t i = 0; i < report.q_set.size(); ++i)
            out << (i ? "," : "") << report.q_set[i];
        out << "} budget_bits=" << report.budget_bits
            << " extended=" << (report.extended ? "true" : "false") << '\n';
        out << "     k      q  status      detail\n";
        for (const SearchOutcome& o : report.outcomes) {
            for (const QRecord& rec : o.records) {
                out.width(6);
                out << o.k;
                out.width(7);
                out << rec.q;
                out << "  ";
                json line = record_line(o.k, rec);
                std::string st = line.at("status").get<std::string>();
                st.resize(10, ' ');
                out << st << "  " << record_detail(rec) << '\n';
            }
        }
    }
    if (report.solutions.empty()) {
        out << "solutions: none\n";
    } else {
        out << "solutions:\n";
        for (const Solution& s : report.solutions)
            out << "  k=" << s.k << " x=" << s.x.get_str() << " n=" << s.n << '\n';
    }
    return out.str();
}

std::string constraint_set_table(const ConstraintSet& cs) {
    std::ostringstream out;
    out << "q = " << cs.q.value() << "\nprime  min_exponent\n";
    for (const auto& [p, e] : cs.bounds) {
        out.width(5);
        out << p.value();
        out << "  " << e << '\n';
    }
    return out.str();
}

std::string factored_bound_table(const Prime& q, const FactoredBound& bound) {
    std::ostringstream out;
    out << "q = " << q.value() << "\nprime  min_exponent\n";
    for (const auto& [p, e] : bound) {
        out.width(5);
        out << p.value();
        out << "  " << e << '\n';
    }
    return out.str();
}

std::string audit_trail_table(const AuditTrail& trail) {
    std::ostringstream out;
    out << "q = " << trail.q.value() << '\n';
    for (const AuditStep& step : trail.steps) {
        out << "p=" << step.p.value() << " claim=" << claim_name(step.claim)
            << " guaranteed_exponent=" << step.guaranteed;
        if (!step.checks.empty()) {
            out << " checks:";
            for (const AuditComparison& c : step.checks)
                out << " nu_" << c.r.value() << "(p-1)=" << c.lhs_valuation << "<=" << c.bound
                    << (c.holds ? " ok" : " FAIL");
        }
        out << '\n';
    }
    return out.str();
}

std::string endgame_table(const EndgameWitness& w, bool contradiction) {
    std::ostringstream out;
    out << "k=" << w.k << " q=" << w.q.value() << '\n'
        << "a = 2^k-1 = " << w.a.get_str() << '\n'
        << "b = 3^k-1 = " << w.b.get_str() << '\n'
        << "X = " << w.x_base.get_str() << " Y = " << w.y_base.get_str() << " t_min=" << w.t_min
        << '\n'
        << "b < a^2: " << ((w.b < w.a * w.a) ? "yes" : "no") << '\n'
        << "contradiction (no q-th power possible): " << (contradiction ? "yes" : "no") << '\n';
    return out.str();
}

}  // namespace cohn
