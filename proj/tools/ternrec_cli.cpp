// ternrec: command-line front end.
//
// Exit codes: 0 success or pass, 1 input error, 2 a condition or verification failed,
// 3 a budget ran out.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ternrec/charpoly.hpp"
#include "ternrec/errors.hpp"
#include "ternrec/experiments.hpp"
#include "ternrec/modular.hpp"
#include "ternrec/numtheory.hpp"
#include "ternrec/parallel.hpp"
#include "ternrec/representation.hpp"
#include "ternrec/serialize.hpp"
#include "ternrec/sieve.hpp"

namespace {

using namespace ternrec;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kFailed = 2;
constexpr int kBudget = 3;

// Values as given on the command line; unset ones fall back to the config file, then defaults.
struct Flags {
    std::string preset, spec, config;
    std::optional<std::uint64_t> x, n_exact, p_max, scan_states, term_digits;
    std::optional<unsigned> threads;
    std::optional<double> factor_timeout;
    std::optional<std::string> output, format;
    std::string summary;
    std::string experiment;
    std::vector<std::string> params;
};

struct RunConfig {
    std::optional<RecurrenceSpec> spec;
    std::optional<std::uint64_t> x;
    std::uint64_t n_exact = 120;
    unsigned threads = 1;
    double factor_timeout_s = 10.0;
    std::uint64_t scan_states = ScanBudget{}.max_states;
    std::uint64_t term_digits = TermBudget{}.max_digits;
    std::string output;  // empty: stdout
    std::string format = "csv";

    RecurrenceSpec require_spec() const {
        if (!spec) throw InvalidInput("no sequence given (use --preset, --spec or --config)");
        return *spec;
    }
    ScanBudget scan_budget() const { return ScanBudget{scan_states, ScanBudget{}.direct_period_limit}; }
    MembershipOptions membership_options() const {
        MembershipOptions o;
        o.represent.factor_budget = FactorBudget::from_seconds(factor_timeout_s);
        o.term_budget.max_digits = term_digits;
        return o;
    }
};

template <class T>
T json_number(const Json& j, const char* key) {
    if (!j.is_number()) throw InvalidInput(std::string("config field \"") + key + "\" must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (j.is_number_float()) {
            const double d = j.get<double>();
            if (d != static_cast<double>(static_cast<std::uint64_t>(d)))
                throw InvalidInput(std::string("config field \"") + key + "\" must be an integer");
            return static_cast<T>(d);
        }
        if (!j.is_number_unsigned()) throw InvalidInput(std::string("config field \"") + key + "\" must be nonnegative");
    }
    return j.get<T>();
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read config file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInput("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw InvalidInput("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "spec") {
            cfg.spec = spec_from_json(value);
        } else if (key == "x") {
            cfg.x = json_number<std::uint64_t>(value, "x");
        } else if (key == "n_exact") {
            cfg.n_exact = json_number<std::uint64_t>(value, "n_exact");
        } else if (key == "threads") {
            cfg.threads = json_number<unsigned>(value, "threads");
        } else if (key == "budgets") {
            if (!value.is_object()) throw InvalidInput("config field \"budgets\" must be an object");
            for (const auto& [bk, bv] : value.items()) {
                if (bk == "factor_timeout_s")
                    cfg.factor_timeout_s = json_number<double>(bv, "factor_timeout_s");
                else if (bk == "scan_states")
                    cfg.scan_states = json_number<std::uint64_t>(bv, "scan_states");
                else if (bk == "term_digits")
                    cfg.term_digits = json_number<std::uint64_t>(bv, "term_digits");
                else
                    throw InvalidInput("unknown budget \"" + bk + "\"");
            }
        } else if (key == "output") {
            if (!value.is_object()) throw InvalidInput("config field \"output\" must be an object");
            if (value.contains("path")) cfg.output = value.at("path").get<std::string>();
            if (value.contains("format")) cfg.format = value.at("format").get<std::string>();
        } else {
            throw InvalidInput("unknown config field \"" + key + "\"");
        }
    }
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg;
    cfg.threads = resolve_thread_count(f.threads);
    if (!f.config.empty()) {
        const bool env_or_default_threads = !f.threads;
        const unsigned keep = cfg.threads;
        apply_config_file(f.config, cfg);
        if (!env_or_default_threads) cfg.threads = keep;
    }
    if (!f.preset.empty() && !f.spec.empty()) throw InvalidInput("give either --preset or --spec, not both");
    if (!f.preset.empty()) {
        const auto p = parse_preset(f.preset);
        if (!p) throw InvalidInput("unknown preset \"" + f.preset + "\"");
        cfg.spec = preset_spec(*p);
    }
    if (!f.spec.empty()) cfg.spec = parse_spec(f.spec);
    if (f.x) cfg.x = *f.x;
    if (f.n_exact) cfg.n_exact = *f.n_exact;
    if (f.threads) cfg.threads = *f.threads;
    if (f.factor_timeout) cfg.factor_timeout_s = *f.factor_timeout;
    if (f.scan_states) cfg.scan_states = *f.scan_states;
    if (f.term_digits) cfg.term_digits = *f.term_digits;
    if (f.output) cfg.output = *f.output;
    if (f.format) cfg.format = *f.format;

    if (cfg.threads == 0) throw InvalidInput("thread count must be at least 1");
    if (!(cfg.factor_timeout_s > 0) || cfg.scan_states == 0 || cfg.term_digits == 0)
        throw InvalidInput("budgets must be positive");
    if (cfg.format != "csv" && cfg.format != "json") throw InvalidInput("format must be csv or json");
    return cfg;
}

// Writes to the configured file, or stdout when none is set.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw InvalidInput("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string opt(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

int cmd_analyze(const RunConfig& cfg) {
    const RecurrenceSpec spec = cfg.require_spec();
    if (const auto p = identify_preset(spec); p && !is_ternary(*p))
        throw InvalidInput(std::string(preset_name(*p)) + " is not a ternary recurrence");
    const PolyAnalysis a = check_conditions(spec);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = to_json(spec);
    j["analysis"] = to_json(a);
    Output out(cfg.output);
    out.stream() << j.dump(2) << '\n';
    if (!a.all_conditions()) {
        for (const auto* v : {&a.cond_i, &a.cond_ii, &a.cond_iii})
            if (!v->holds) std::cerr << "condition failed: " << v->reason << '\n';
        return kFailed;
    }
    return kOk;
}

int cmd_primes(const RunConfig& cfg, std::uint64_t p_max) {
    const RecurrenceSpec spec = cfg.require_spec();
    spec.validate();
    const ScanBudget budget = cfg.scan_budget();
    Output out(cfg.output);
    std::ostream& os = out.stream();
    const bool csv = cfg.format == "csv";
    if (csv) os << "p,root_count,in_Z,alpha,t_p,k_p,ord_alpha,ord_ratio,mult_order\n";
    Json rows = Json::array();

    // Profiles start at p_max = 3; smaller bounds give the header alone.
    const std::vector<u64> primes = p_max >= 3 ? primes_up_to(p_max) : std::vector<u64>{};
    std::uint64_t z = 0;
    int status = kOk;
    constexpr std::size_t kBlock = 512;
    for (std::size_t lo = 0; lo < primes.size() && status == kOk; lo += kBlock) {
        const std::size_t hi = std::min(primes.size(), lo + kBlock);
        std::vector<std::optional<PrimeProfile>> block(hi - lo);
        std::vector<std::string> failures(hi - lo);
        parallel_for(lo, hi, cfg.threads, [&](std::uint64_t i) {
            try {
                block[i - lo] = profile_any_prime(spec, primes[i], budget);
            } catch (const BudgetExceeded& e) {
                failures[i - lo] = e.what();
            }
        }, 4);
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (!block[i]) {
                std::cerr << "budget exceeded at p = " << primes[lo + i] << ": " << failures[i] << '\n';
                status = kBudget;
                break;
            }
            const PrimeProfile& p = *block[i];
            z += p.in_Z;
            if (csv) {
                os << p.p << ',' << to_string(p.root_count) << ',' << (p.in_Z ? "true" : "false") << ','
                   << opt(p.alpha) << ',' << p.t_p << ',' << opt(p.k_p) << ',' << opt(p.ord_alpha) << ','
                   << opt(p.ord_ratio) << ',' << opt(p.mult_order) << '\n';
            } else {
                rows.push_back(to_json(p));
            }
        }
        os.flush();
    }
    if (!csv) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["spec"] = to_json(spec);
        j["p_max"] = p_max;
        j["primes"] = rows;
        os << j.dump(2) << '\n';
    }
    const std::uint64_t pi = primes.size();
    std::cerr << "#Z(" << p_max << ")/pi(" << p_max << ") = " << z << "/" << pi;
    if (pi) std::cerr << " = " << static_cast<double>(z) / static_cast<double>(pi);
    std::cerr << '\n';
    return status;
}

int cmd_count(const RunConfig& cfg, const std::string& summary_path) {
    const RecurrenceSpec spec = cfg.require_spec();
    if (!cfg.x) throw InvalidInput("count needs --x");
    if (*cfg.x == 0) throw InvalidInput("--x must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    const CountReport report = count_range(spec, *cfg.x, cfg.n_exact, cfg.threads, cfg.membership_options());
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json summary = summary_json(report);
    summary["spec"] = to_json(spec);
    summary["threads"] = cfg.threads;
    summary["wall_time_s"] = wall;

    Output out(cfg.output);
    std::ostream& os = out.stream();
    if (cfg.format == "csv") {
        os << "n,status,u,v,obstruction_p\n";
        for (const auto& r : report.records) {
            os << r.n() << ',' << to_string(r.status()) << ',';
            if (r.status() == MemberStatus::Member) os << r.u().get_str() << ',' << r.v().get_str();
            else os << ',';
            os << ',';
            if (r.obstruction_prime()) os << *r.obstruction_prime();
            os << '\n';
        }
    } else {
        Json j = summary;
        j["records"] = Json::array();
        for (const auto& r : report.records) j["records"].push_back(to_json(r));
        os << j.dump(2) << '\n';
    }
    if (!summary_path.empty()) {
        std::ofstream s(summary_path, std::ios::binary);
        if (!s) throw InvalidInput("cannot write " + summary_path);
        s << summary.dump(2) << '\n';
    } else {
        std::cerr << summary.dump(2) << '\n';
    }
    return kOk;
}

// key=value pairs from --param.
class Params {
public:
    explicit Params(const std::vector<std::string>& raw) {
        for (const auto& kv : raw) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) throw InvalidInput("--param expects key=value, got " + kv);
            values_[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
    }
    std::uint64_t u64(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) {
        const auto s = take(key);
        if (!s) {
            if (!fallback) throw InvalidInput("missing --param " + key);
            return *fallback;
        }
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(*s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s->size() || (*s)[0] == '-') throw InvalidInput("--param " + key + " must be a nonnegative integer");
        return v;
    }
    double real(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const auto s = take(key);
        if (!s) {
            if (!fallback) throw InvalidInput("missing --param " + key);
            return *fallback;
        }
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(*s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s->size()) throw InvalidInput("--param " + key + " must be a number");
        return v;
    }
    std::optional<std::string> text(const std::string& key) { return take(key); }
    void finish() const {
        if (!values_.empty()) throw InvalidInput("unused --param " + values_.begin()->first);
    }

private:
    std::optional<std::string> take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        std::string v = it->second;
        values_.erase(it);
        return v;
    }
    std::map<std::string, std::string> values_;
};

ExperimentReport count_report(const std::string& name, std::vector<std::pair<std::string, std::string>> params,
                              std::uint64_t value, std::optional<std::uint64_t> expect) {
    ExperimentReport r;
    r.name = name;
    r.parameters = std::move(params);
    r.observations = {{"count", static_cast<double>(value)}};
    if (expect) {
        r.parameters.emplace_back("expect", std::to_string(*expect));
        if (value != *expect)
            r.violations.push_back({"count == expect", {{"count", std::to_string(value)}, {"expect", std::to_string(*expect)}}});
    }
    r.pass = r.violations.empty();
    return r;
}

std::optional<std::uint64_t> optional_u64(Params& p, const std::string& key) {
    if (const auto s = p.text(key)) {
        Params one({key + "=" + *s});
        return one.u64(key);
    }
    return std::nullopt;
}

std::string real_text(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

ExperimentReport run_experiment(const std::string& name, Params& p, const RunConfig& cfg) {
    SweepOptions sweep{cfg.threads, cfg.scan_budget()};
    if (name == "z-density") {
        const auto x = p.u64("x", 1'000'000);
        const double tol = p.real("tolerance", 0.05);
        return z_density(cfg.require_spec(), x, tol);
    }
    if (name == "orders") {
        const auto lo = p.u64("p_min", 100), hi = p.u64("p_max", 100'000);
        return order_sweep(cfg.require_spec(), lo, hi, sweep);
    }
    if (name == "multipliers") {
        const auto lo = p.u64("p_min", 3), hi = p.u64("p_max", 10'000);
        return multiplier_sweep(cfg.require_spec(), lo, hi, sweep);
    }
    if (name == "beukers") return beukers_zero_count(cfg.require_spec(), p.u64("n_max", 500));
    if (name == "char-sums") return char_sum_sweep(cfg.require_spec(), p.u64("p_max", 1000), sweep);
    if (name == "smooth-count") {
        const auto x = p.u64("x");
        const double y = p.real("y");
        const auto expect = optional_u64(p, "expect");
        return count_report(name, {{"x", std::to_string(x)}, {"y", real_text(y)}}, smooth_count(x, y), expect);
    }
    if (name == "divisor-interval") {
        const auto x = p.u64("x");
        const double y = p.real("y"), z = p.real("z");
        const auto expect = optional_u64(p, "expect");
        return count_report(name, {{"x", std::to_string(x)}, {"y", real_text(y)}, {"z", real_text(z)}},
                            divisor_interval_count(x, y, z), expect);
    }
    if (name == "shifted-prime") {
        const auto x = p.u64("x");
        const double y = p.real("y"), z = p.real("z");
        const double lam = p.real("lam");
        if (lam != 1.0 && lam != -1.0) throw InvalidInput("--param lam must be 1 or -1");
        const auto expect = optional_u64(p, "expect");
        return count_report(name,
                            {{"x", std::to_string(x)}, {"y", real_text(y)}, {"z", real_text(z)}, {"lam", real_text(lam)}},
                            shifted_prime_count(x, y, z, static_cast<int>(lam)), expect);
    }
    if (name == "omega") {
        const auto n = p.u64("n");
        const double z3 = p.real("z3"), y2 = p.real("y2");
        const auto expect = optional_u64(p, "expect");
        return count_report(name, {{"n", std::to_string(n)}, {"z3", real_text(z3)}, {"y2", real_text(y2)}},
                            omega_IZ(cfg.require_spec(), n, z3, y2), expect);
    }
    if (name == "counterexample-density") {
        const auto preset = identify_preset(cfg.require_spec());
        if (!preset) throw InvalidInput("counterexample-density needs one of the counterexample presets");
        return counterexample_density(*preset, p.u64("x", 1000), cfg.threads);
    }
    if (name == "density-shape") {
        std::vector<std::uint64_t> cutoffs;
        std::istringstream list(p.text("cutoffs").value_or("1000,10000,100000"));
        for (std::string item; std::getline(list, item, ',');) {
            Params one({"x=" + item});
            cutoffs.push_back(one.u64("x"));
        }
        return density_shape(cfg.require_spec(), cutoffs, p.u64("n_exact", cfg.n_exact), cfg.threads);
    }
    if (name == "mid-divisor") {
        const auto pm = p.u64("p_max", 100'000);
        const double c = p.real("c", 20.0 / std::pow(solve_exponents().kappa, 2));
        return mid_divisor_census(pm, c);
    }
    throw InvalidInput("unknown experiment \"" + name + "\"");
}

int cmd_verify(const RunConfig& cfg, const Flags& f) {
    Params params(f.params);
    const ExperimentReport report = run_experiment(f.experiment, params, cfg);
    params.finish();
    Output out(cfg.output);
    out.stream() << to_json(report).dump(2) << '\n';
    std::cerr << report.name << ": " << (report.pass ? "PASS" : "FAIL");
    for (const auto& [k, v] : report.observations) std::cerr << "  " << k << "=" << v;
    std::cerr << '\n';
    for (const auto& v : report.violations) std::cerr << "  violation: " << v.check << '\n';
    return report.pass ? kOk : kFailed;
}

int cmd_constants(const RunConfig& cfg) {
    const ExponentSolution s = solve_exponents();
    Output out(cfg.output);
    std::ostream& os = out.stream();
    if (cfg.format == "json") {
        Json j = to_json(s);
        j = Json{{"schema_version", kSchemaVersion}, {"constants", j}};
        os << j.dump(2) << '\n';
        return kOk;
    }
    char line[64];
    for (const auto& [label, value] : {std::pair{"delta", s.delta}, std::pair{"kappa", s.kappa},
                                       std::pair{"lambda", s.lambda}, std::pair{"kappa_delta", s.exponent}}) {
        std::snprintf(line, sizeof line, "%-12s%.7g\n", label, value);
        os << line;
    }
    return kOk;
}

void add_input_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--preset", f.preset, "Preset sequence: tribonacci, pow2-plus-fib, pow2-plus-n, square-pow, "
                                          "five-fib-sq-minus-4, fibonacci");
    cmd->add_option("--spec", f.spec, R"(Sequence as JSON, e.g. {"a1":1,"a2":1,"a3":1,"u0":0,"u1":0,"u2":1})");
    cmd->add_option("--config", f.config, "JSON config file (flags override its values)");
    cmd->add_option("--threads", f.threads, "Worker threads (default: TERNARY_THREADS, else all cores)");
    cmd->add_option("--factor-timeout", f.factor_timeout, "Factorization budget per number, in seconds of work");
    cmd->add_option("--scan-states", f.scan_states, "Cap on states visited by a period scan");
    cmd->add_option("--term-digits", f.term_digits, "Cap on decimal digits of exact terms");
    cmd->add_option("-o,--output", f.output, "Write the main output here instead of stdout");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ternary recurrences: conditions, mod-p structure and u^2 + n v^2 representations"};
    app.require_subcommand(1);
    Flags flags;

    auto* analyze = app.add_subcommand("analyze", "Check the three conditions on the characteristic polynomial (JSON)");
    add_input_options(analyze, flags);

    auto* primes = app.add_subcommand(
        "primes", "Per-prime profile CSV with columns p,root_count,in_Z,alpha,t_p,k_p,ord_alpha,ord_ratio,mult_order");
    add_input_options(primes, flags);
    primes->add_option("--max", flags.p_max, "Largest prime to profile")->required();

    auto* count = app.add_subcommand(
        "count", "Classify n <= x; CSV columns n,status,u,v,obstruction_p, JSON summary on stderr");
    add_input_options(count, flags);
    count->add_option("--x", flags.x, "Upper end of the range");
    count->add_option("--n-exact", flags.n_exact, "Decide exactly for n up to this (default 120)");
    count->add_option("--summary", flags.summary, "Write the JSON summary here instead of stderr");

    auto* verify = app.add_subcommand(
        "verify", "Run an experiment: z-density, orders, multipliers, beukers, char-sums, smooth-count, "
                  "divisor-interval, shifted-prime, omega, counterexample-density, density-shape, mid-divisor");
    add_input_options(verify, flags);
    verify->add_option("experiment", flags.experiment, "Experiment name")->required();
    verify->add_option("--param", flags.params, "Experiment parameter key=value (repeatable)");
    verify->add_option("--n-exact", flags.n_exact, "Exact-decision cutoff for density-shape");

    auto* constants = app.add_subcommand("constants", "Print delta, kappa, lambda and kappa*delta");
    add_input_options(constants, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (constants->parsed() && !flags.format) flags.format = "csv";
        const RunConfig cfg = resolve(flags);
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (primes->parsed()) return cmd_primes(cfg, *flags.p_max);
        if (count->parsed()) return cmd_count(cfg, flags.summary);
        if (verify->parsed()) return cmd_verify(cfg, flags);
        if (constants->parsed()) return cmd_constants(cfg);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
