#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "cellrev/debruijn.hpp"
#include "cellrev/engine.hpp"
#include "cellrev/prng.hpp"
#include "cellrev/report_json.hpp"
#include "cellrev/rule.hpp"
#include "cellrev/synthesis.hpp"
#include "cellrev/tree.hpp"

namespace cellrev::cli {

namespace {

using nlohmann::json;

struct RuleArgs {
    int d = 0;
    int m = 0;
    int lr = -1;
    std::string text;
};

void add_rule_flags(CLI::App* sub, RuleArgs& a, bool required = true) {
    sub->add_option("--d", a.d, "number of states")->check(CLI::Range(2, 10));
    sub->add_option("--m", a.m, "neighborhood size")->check(CLI::Range(2, 9));
    sub->add_option("--lr", a.lr, "left radius (default floor((m-1)/2))");
    auto* o = sub->add_option("--rule", a.text,
                              "rule digits, most significant RMT first; 'd=.. m=.. rule=..' header form; "
                              "or a 10-digit permutation when d=10 m=3");
    if (required) o->required();
}

Rule resolve_rule(const RuleArgs& a) {
    if (a.text.rfind("d=", 0) == 0) return parse_rule_spec(a.text);
    if (a.d == 0 || a.m == 0) {
        if (a.d != 0 || a.m != 0) throw DomainError("give both --d and --m, or neither");
        return parse_rule_spec(a.text);
    }
    if (a.d == 10 && a.m == 3 && a.text.size() == 10) return rule_from_permutation(a.text);
    return parse_rule(a.text, a.d, a.m, a.lr);
}

struct ConfigArgs {
    std::string config;
    std::size_t n = 0;
};

void add_config_flags(CLI::App* sub, ConfigArgs& c) {
    auto* a = sub->add_option("--config", c.config, "initial configuration digits");
    auto* b = sub->add_option("--n", c.n, "use the seed 0^(n-1)1 of this size")->check(CLI::PositiveNumber);
    a->excludes(b);
}

Config resolve_config(const ConfigArgs& c, const Rule& rule) {
    if (!c.config.empty()) return parse_config(c.config, rule.d);
    if (c.n == 0) throw DomainError("give --config or --n");
    Config cfg(c.n, 0);
    cfg.back() = 1;
    return cfg;
}

std::string join_states(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw DomainError("write failed for " + path);
}

StrategyKind parse_kind(const std::string& s) {
    if (s == "I") return StrategyKind::StrategyI;
    if (s == "II") return StrategyKind::StrategyII;
    if (s == "III") return StrategyKind::StrategyIII;
    if (s == "decimal") return StrategyKind::DecimalHeuristic;
    return StrategyKind::Permutation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cellrev: reversibility, synthesis and PRNG tools for 1-D cellular automata", "cellrev"};
    app.require_subcommand(1);
    bool asJson = false;

    RuleArgs ra;
    ConfigArgs ca;

    auto* classify = app.add_subcommand("classify", "reversibility class over all sizes n");
    add_rule_flags(classify, ra);
    classify->add_flag("--json", asJson, "machine-readable output");

    long long size = 0;
    auto* check = app.add_subcommand("check", "reversibility at one size n");
    add_rule_flags(check, ra);
    check->add_option("--size", size, "number of cells")->required();
    check->add_flag("--json", asJson, "machine-readable output");

    auto* info = app.add_subcommand("info", "balance, linearity, information flow, fixed points");
    add_rule_flags(info, ra);
    info->add_flag("--json", asJson, "machine-readable output");

    std::string strategy = "II", outPath;
    std::size_t count = 1;
    std::uint64_t rngSeed = 1;
    int runLimit = 3, minReverseFlow = 8, d = 3, m = 3;
    bool asPerm = false, filter = false, lenient = false;
    auto* synth = app.add_subcommand("synthesize", "generate rules");
    synth->add_option("--strategy", strategy, "I, II, III, decimal or perm")
        ->check(CLI::IsMember({"I", "II", "III", "decimal", "perm"}));
    synth->add_option("--d", d, "number of states")->check(CLI::Range(2, 10));
    synth->add_option("--m", m, "neighborhood size")->check(CLI::Range(2, 9));
    synth->add_option("--count", count, "rules to emit")->check(CLI::PositiveNumber);
    synth->add_option("--seed", rngSeed, "generator seed");
    synth->add_option("--l", runLimit, "run limit for the decimal heuristic")->check(CLI::PositiveNumber);
    synth->add_flag("--filter", filter, "keep only rules passing the randomness filter");
    synth->add_option("--min-reverse-flow", minReverseFlow, "filter: lower bound on min(left, right) flow");
    synth->add_flag("--lenient", lenient, "filter: skip the trivial-isolation check");
    synth->add_flag("--as-perm", asPerm, "print permutation-generated rules as their 10-digit permutation");
    synth->add_option("--out", outPath, "write rules to this file");

    std::size_t steps = 0;
    auto* evolveCmd = app.add_subcommand("evolve", "print successive configurations");
    add_rule_flags(evolveCmd, ra);
    add_config_flags(evolveCmd, ca);
    evolveCmd->add_option("--steps", steps, "number of steps")->required();

    std::uint64_t maxSteps = 100000000;
    auto* cycle = app.add_subcommand("cycle", "cycle length reached from a configuration");
    add_rule_flags(cycle, ra);
    add_config_flags(cycle, ca);
    cycle->add_option("--max-steps", maxSteps, "step budget")->check(CLI::PositiveNumber);
    cycle->add_flag("--json", asJson, "machine-readable output");

    std::string ppmPath;
    auto* spacetime = app.add_subcommand("spacetime", "space-time diagram as a PPM image");
    add_rule_flags(spacetime, ra);
    add_config_flags(spacetime, ca);
    spacetime->add_option("--steps", steps, "number of steps")->required();
    spacetime->add_option("--out", ppmPath, "PPM output path")->required();

    std::string scheme = "bin", seedDigits;
    int window = 20, blocks = 1;
    std::uint64_t outputs = 0;
    std::string format = "raw";
    auto* prng = app.add_subcommand("prng", "window-based random number stream");
    add_rule_flags(prng, ra);
    prng->add_option("--scheme", scheme, "tri, dec or bin")->check(CLI::IsMember({"tri", "dec", "bin"}));
    prng->add_option("--width,--window", window, "window length (tri, dec)")->check(CLI::PositiveNumber);
    prng->add_option("--blocks", blocks, "32-bit blocks per word (bin)")->check(CLI::PositiveNumber);
    prng->add_option("--seed", seedDigits, "window seed digits")->required();
    prng->add_option("--count", outputs, "number of outputs")->required();
    prng->add_option("--out", outPath, "raw byte output path (default stdout)");
    prng->add_option("--format", format, "raw bytes or decimal-lines")->check(CLI::IsMember({"raw", "decimal-lines"}));
    prng->add_flag("--json", asJson, "print layout and byte count as JSON");

    std::vector<const char*> argv{"cellrev"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        out << sub->help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return UsageFailure;
    }

    try {
        if (*classify) {
            const Rule rule = resolve_rule(ra);
            const auto rep = cellrev::classify(rule);
            if (asJson) {
                auto j = report_to_json(rep);
                j["rule"] = rule.to_string();
                j["d"] = rule.d;
                j["m"] = rule.m;
                out << j.dump() << "\n";
            } else {
                out << describe(rep) << "\n";
            }
        } else if (*check) {
            const Rule rule = resolve_rule(ra);
            const auto res = check_reversible(rule, size);
            if (asJson) {
                auto j = fixed_size_to_json(res, size);
                j["rule"] = rule.to_string();
                out << j.dump() << "\n";
            } else {
                out << (res.reversible ? "Reversible" : "Irreversible") << " (M=" << res.M << ")\n";
            }
        } else if (*info) {
            const Rule rule = resolve_rule(ra);
            const auto flow = information_flow(rule);
            const auto q = quiescent_states(rule);
            std::vector<int> fpPeriods;
            for (const auto& fp : fixed_point_attractors(rule))
                if (fp.period > 1) fpPeriods.push_back(static_cast<int>(fp.period));
            const bool verified = verify_rule(rule);
            const auto perm = permutation_form(rule);
            if (asJson) {
                json j{{"rule", rule.to_string()},
                       {"d", rule.d},
                       {"m", rule.m},
                       {"balanced", is_balanced(rule)},
                       {"linear", is_linear(rule)},
                       {"flow", {{"left", flow.leftChanges}, {"right", flow.rightChanges}, {"total", flow.totalRmts}}},
                       {"quiescent", q},
                       {"nontrivialFixedPointCycles", fpPeriods.size()},
                       {"verifyRule", verified}};
                if (perm) j["permutation"] = *perm;
                out << j.dump() << "\n";
            } else {
                out << "d=" << rule.d << " m=" << rule.m << " lr=" << rule.lr << "\n";
                out << "balanced: " << (is_balanced(rule) ? "yes" : "no") << "\n";
                out << "linear: " << (is_linear(rule) ? "yes" : "no") << "\n";
                out << "flows left=" << flow.leftChanges << " right=" << flow.rightChanges << " of " << flow.totalRmts
                    << "\n";
                out << "quiescent=" << join_states(q) << "\n";
                out << "non-trivial fixed-point cycles: " << fpPeriods.size() << "\n";
                out << "verifyRule: " << (verified ? "pass" : "fail") << "\n";
                if (perm) out << "permutation: " << *perm << "\n";
            }
        } else if (*synth) {
            StrategySpec spec;
            spec.kind = parse_kind(strategy);
            spec.d = d;
            spec.m = m;
            if (spec.kind == StrategyKind::DecimalHeuristic || spec.kind == StrategyKind::Permutation) {
                spec.d = 10;
                spec.m = 3;
            }
            spec.rngSeed = rngSeed;
            spec.l = runLimit;
            spec.minReverseFlow = minReverseFlow;
            spec.strict = !lenient;
            std::vector<Rule> rules;
            if (!filter) {
                rules = generate_strategy(spec, count);
            } else {
                const std::size_t budget = 1000 * count;
                std::size_t tried = 0;
                while (rules.size() < count) {
                    if (tried >= budget) throw DomainError("filter rejected " + std::to_string(tried) + " candidates");
                    for (auto& r : generate_strategy(spec, 1))
                        if (randomness_filter(r, spec).pass) rules.push_back(std::move(r));
                    ++tried;
                    ++spec.rngSeed;
                }
            }
            std::ostringstream text;
            for (const auto& r : rules) {
                const auto p = asPerm ? permutation_form(r) : std::nullopt;
                text << (p ? *p : r.to_string()) << "\n";
            }
            if (outPath.empty())
                out << text.str();
            else
                write_text(outPath, text.str());
        } else if (*evolveCmd) {
            const Rule rule = resolve_rule(ra);
            for (const auto& c : evolve(rule, resolve_config(ca, rule), steps)) out << config_string(c) << "\n";
        } else if (*cycle) {
            const Rule rule = resolve_rule(ra);
            const auto res = cycle_length(rule, resolve_config(ca, rule), maxSteps);
            if (asJson) {
                json j{{"truncated", res.truncated},
                       {"cycleLength", res.cycleLength ? json(*res.cycleLength) : json(nullptr)},
                       {"tailLength", res.tailLength}};
                out << j.dump() << "\n";
            } else if (res.truncated) {
                out << "no repeat within " << maxSteps << " steps\n";
            } else {
                out << "cycle=" << *res.cycleLength << " tail=" << res.tailLength << "\n";
            }
            if (res.truncated) return DomainFailure;
        } else if (*spacetime) {
            const Rule rule = resolve_rule(ra);
            write_ppm(spacetime_raster(rule, resolve_config(ca, rule), steps, default_palette(rule.d)), ppmPath);
        } else if (*prng) {
            const Rule rule = resolve_rule(ra);
            const auto layout = scheme == "tri" ? tri_layout(window)
                                : scheme == "dec" ? decimal_layout(window)
                                                  : binary_layout(blocks);
            Generator gen(rule, layout);
            gen.seed(seedDigits);
            const StreamSpec ss{layout.bits, outputs};
            std::uint64_t bytes = 0;
            if (format == "decimal-lines") {
                emit_decimal_lines(gen, outputs, out);
            } else if (!outPath.empty()) {
                bytes = emit_stream(gen, ss, outPath);
            } else if (!asJson) {
                bytes = emit_stream(gen, ss, out);
            } else {
                std::ostringstream sink;
                bytes = emit_stream(gen, ss, sink);
            }
            if (asJson)
                out << json{{"scheme", scheme_name(layout.scheme)},
                            {"window", layout.window},
                            {"cells", layout.cells},
                            {"bits", layout.bits},
                            {"count", outputs},
                            {"bytes", bytes}}
                           .dump()
                    << "\n";
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return DomainFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return DomainFailure;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return DomainFailure;
    }
    return Ok;
}

}  // namespace cellrev::cli
