#include <algorithm>
#include <cstdio>

#include "heredilat/cli.hpp"

namespace heredilat::cli {

void CheckRecord::add(bool ok, std::optional<double> margin, const std::function<json()>& witness) {
    ++total;
    if (margin) worst_margin = worst_margin ? std::min(*worst_margin, *margin) : *margin;
    if (ok) return;
    if (failures++ == 0) first_failure = witness ? witness() : json(total - 1);
}

CheckRecord& SuiteReport::check(const std::string& id, const std::string& anchor, bool advisory) {
    for (CheckRecord& c : checks)
        if (c.id == id) return c;
    checks.push_back(CheckRecord{id, anchor, advisory, 0, 0, std::nullopt, nullptr});
    return checks.back();
}

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.advisory || c.pass(); });
}

json to_json(const CheckRecord& c) {
    json j;
    j["id"] = c.id;
    j["anchor"] = c.anchor;
    j["pass"] = c.pass();
    j["advisory"] = c.advisory;
    j["total"] = c.total;
    j["failures"] = c.failures;
    if (c.worst_margin) j["worst_margin"] = *c.worst_margin;
    if (!c.first_failure.is_null()) j["witness"] = c.first_failure;
    return j;
}

json to_json(const SuiteReport& s) {
    json j;
    j["suite"] = s.suite;
    j["anchor"] = s.anchor;
    j["trials"] = s.trials;
    j["pass"] = s.pass();
    json checks = json::array();
    for (const CheckRecord& c : s.checks) checks.push_back(to_json(c));
    j["checks"] = std::move(checks);
    if (!s.notes.empty()) j["notes"] = s.notes;
    return j;
}

json to_json(const speclab::MarginReport& m) {
    json j;
    j["lemma"] = speclab::to_string(m.lemma);
    j["kind"] = m.kind == speclab::BoundKind::upper ? "upper" : "lower";
    j["lhs"] = m.lhs;
    j["bound"] = m.bound;
    j["margin"] = m.margin;
    j["eps"] = m.eps;
    j["lambda"] = m.lambda;
    j["delta"] = m.delta;
    j["inputs_digest"] = m.inputs_digest;
    return j;
}

std::string to_text(const SuiteReport& s) {
    std::string out = s.suite + ": " + (s.pass() ? "PASS" : "FAIL") + " (" + std::to_string(s.trials) + " trials)\n";
    for (const CheckRecord& c : s.checks) {
        char margin[64] = "";
        if (c.worst_margin) std::snprintf(margin, sizeof margin, ", worst margin %.3g", *c.worst_margin);
        out += "  " + std::string(c.pass() ? "ok  " : (c.advisory ? "note" : "FAIL")) + " " + c.id + "  " +
               std::to_string(c.total - c.failures) + "/" + std::to_string(c.total) + margin + "\n";
    }
    for (const std::string& n : s.notes) out += "  note: " + n + "\n";
    return out;
}

}  // namespace heredilat::cli
