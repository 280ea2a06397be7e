#include "ternrec/serialize.hpp"

#include <limits>
#include <variant>

#include "ternrec/errors.hpp"

namespace ternrec {

namespace {

std::int64_t integer_field(const Json& j, const char* key, std::int64_t bound) {
    if (!j.contains(key)) throw InvalidInput(std::string("spec is missing \"") + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw InvalidInput(std::string("spec field \"") + key + "\" must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(bound))
        throw InvalidInput(std::string("spec field \"") + key + "\" is out of range");
    const auto x = v.get<std::int64_t>();
    if (x >= bound || x <= -bound) throw InvalidInput(std::string("spec field \"") + key + "\" is out of range");
    return x;
}

RecurrenceSpec from_preset_name(const std::string& name) {
    const auto preset = parse_preset(name);
    if (!preset) throw InvalidInput("unknown preset \"" + name + "\"");
    return preset_spec(*preset);
}

std::string roots_text(const CubicFactorization& f) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Irreducible>) {
                return "irreducible";
            } else if constexpr (std::is_same_v<T, LinearTimesQuadratic>) {
                return "linear_times_quadratic";
            } else if constexpr (std::is_same_v<T, ThreeLinear>) {
                return "three_linear";
            } else {
                return "repeated_root";
            }
        },
        f);
}

Json factorization_json(const CubicFactorization& f) {
    Json j;
    j["kind"] = roots_text(f);
    if (const auto* lq = std::get_if<LinearTimesQuadratic>(&f)) {
        j["root"] = lq->a;
        j["quadratic"] = {1, lq->b, lq->c};
    } else if (const auto* tl = std::get_if<ThreeLinear>(&f)) {
        j["roots"] = Json::array();
        for (auto r : tl->roots) j["roots"].push_back(r);
    } else if (const auto* rr = std::get_if<RepeatedRoot>(&f)) {
        j["roots"] = Json::array();
        for (const auto& [root, mult] : rr->roots) j["roots"].push_back({{"root", root}, {"multiplicity", mult}});
    }
    return j;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["holds"] = v.holds;
    if (!v.holds) j["reason"] = v.reason;
    return j;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

RecurrenceSpec spec_from_json(const Json& j) {
    if (j.is_string()) return from_preset_name(j.get<std::string>());
    if (!j.is_object()) throw InvalidInput("spec must be a preset name or an object");
    if (j.contains("preset")) {
        if (j.size() != 1 || !j.at("preset").is_string())
            throw InvalidInput("a preset spec takes only the \"preset\" key");
        return from_preset_name(j.at("preset").get<std::string>());
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "a1" && key != "a2" && key != "a3" && key != "u0" && key != "u1" && key != "u2")
            throw InvalidInput("unknown spec field \"" + key + "\"");
    }
    constexpr std::int64_t kCoefficientBound = std::int64_t{1} << 31;
    constexpr std::int64_t kInitialBound = std::int64_t{1} << 62;
    RecurrenceSpec s;
    s.a1 = integer_field(j, "a1", kCoefficientBound);
    s.a2 = integer_field(j, "a2", kCoefficientBound);
    s.a3 = integer_field(j, "a3", kCoefficientBound);
    s.u0 = integer_field(j, "u0", kInitialBound);
    s.u1 = integer_field(j, "u1", kInitialBound);
    s.u2 = integer_field(j, "u2", kInitialBound);
    s.validate();
    return s;
}

RecurrenceSpec parse_spec(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error&) {
        if (parse_preset(text)) return from_preset_name(text);
        throw InvalidInput("spec is neither JSON nor a preset name: " + text);
    }
    return spec_from_json(j);
}

Json to_json(const RecurrenceSpec& spec) {
    Json j;
    if (const auto preset = identify_preset(spec)) j["preset"] = std::string(preset_name(*preset));
    j["a1"] = spec.a1;
    j["a2"] = spec.a2;
    j["a3"] = spec.a3;
    j["u0"] = spec.u0;
    j["u1"] = spec.u1;
    j["u2"] = spec.u2;
    return j;
}

Json to_json(const PolyAnalysis& a) {
    Json j;
    j["discriminant"] = a.discriminant.get_str();
    j["factorization"] = factorization_json(a.factorization);
    j["galois"] = to_string(a.galois_label);
    j["cond_i"] = verdict_json(a.cond_i);
    j["cond_ii"] = verdict_json(a.cond_ii);
    j["cond_iii"] = verdict_json(a.cond_iii);
    j["degenerate"] = a.degenerate;
    j["gamma"] = a.gamma;
    j["all_conditions"] = a.all_conditions();
    return j;
}

Json to_json(const PrimeProfile& p) {
    Json j;
    j["p"] = p.p;
    j["root_count"] = to_string(p.root_count);
    j["in_Z"] = p.in_Z;
    j["alpha"] = optional_json(p.alpha);
    j["t_p"] = p.t_p;
    j["k_p"] = optional_json(p.k_p);
    j["ord_alpha"] = optional_json(p.ord_alpha);
    j["ord_ratio"] = optional_json(p.ord_ratio);
    j["mult_order"] = optional_json(p.mult_order);
    return j;
}

Json to_json(const ExperimentReport& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = r.name;
    j["parameters"] = Json::object();
    for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
    j["observations"] = Json::array();
    for (const auto& [k, v] : r.observations) j["observations"].push_back({{"label", k}, {"value", v}});
    j["violations"] = Json::array();
    for (const auto& v : r.violations) {
        Json item;
        item["check"] = v.check;
        for (const auto& [k, val] : v.fields) item[k] = val;
        j["violations"].push_back(item);
    }
    j["pass"] = r.pass;
    return j;
}

Json to_json(const ExponentSolution& s) {
    Json j;
    j["delta"] = s.delta;
    j["kappa"] = s.kappa;
    j["lambda"] = s.lambda;
    j["kappa_delta"] = s.exponent;
    j["kappa_upper"] = s.kappa_upper;
    j["residual"] = s.residual;
    return j;
}

Json to_json(const MembershipRecord& r) {
    Json j;
    j["n"] = r.n();
    j["status"] = to_string(r.status());
    j["method"] = to_string(r.method());
    if (r.status() == MemberStatus::Member) {
        j["u"] = r.u().get_str();
        j["v"] = r.v().get_str();
    }
    if (r.obstruction_prime()) j["obstruction_p"] = *r.obstruction_prime();
    if (!r.note().empty()) j["note"] = r.note();
    return j;
}

Json summary_json(const CountReport& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["x"] = r.x;
    j["n_exact"] = r.n_exact;
    j["counts"] = {{"member", r.members}, {"nonmember", r.non_members}, {"obstructed", r.obstructed}, {"unknown", r.unknown}};
    j["upper_bound"] = r.upper_bound;
    j["lower_bound"] = r.lower_bound;
    j["upper_density"] = r.upper_density;
    j["lower_density"] = r.lower_density;
    j["m1_smooth_count"] = r.m1_count;
    j["m2_square_multiple_count"] = r.m2_count;
    return j;
}

}  // namespace ternrec
