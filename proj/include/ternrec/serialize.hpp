#pragma once

// JSON forms of specs and reports. Key order is fixed so output is reproducible.

#include <nlohmann/json.hpp>

#include <string>

#include "ternrec/charpoly.hpp"
#include "ternrec/experiments.hpp"
#include "ternrec/modular.hpp"
#include "ternrec/recurrence.hpp"
#include "ternrec/representation.hpp"

namespace ternrec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Accepts a preset name (string), {"preset": name}, or an object with the six integer
/// keys a1, a2, a3, u0, u1, u2. Throws InvalidInput on anything else, including
/// |a_i| >= 2^31 and a3 = 0.
RecurrenceSpec spec_from_json(const Json& j);
/// Parses JSON text, then spec_from_json. A bare word that is not JSON is tried as a preset name.
RecurrenceSpec parse_spec(const std::string& text);

Json to_json(const RecurrenceSpec& spec);
Json to_json(const PolyAnalysis& analysis);
Json to_json(const PrimeProfile& profile);
Json to_json(const ExperimentReport& report);
Json to_json(const ExponentSolution& solution);
Json to_json(const MembershipRecord& record);
/// Counts, densities and sieve-set sizes (no per-n records).
Json summary_json(const CountReport& report);

}  // namespace ternrec
