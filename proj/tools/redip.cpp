// Command-line front end: parse, infer, query, check, export-dot, oracle.
#include "redip/constructions.hpp"
#include "redip/errors.hpp"
#include "redip/inference.hpp"
#include "redip/oracle.hpp"
#include "redip/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace redip;
using json = nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kSyntax = 1,
    kInfeasible = 2,
    kIo = 3,
    kOracleFailure = 4,
    kSemantic = 5,
};

struct Options {
    std::string file;
    std::string prior_file;
    bool as_json = false;
    int digits = 6;
    bool unnormalized = false;
    std::string marginal_var;
    std::uint64_t upto = 10;
    std::string query;
    std::string at;
    std::string output;
    std::string mode = "enumerate";
    std::uint64_t trunc = 60;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool is_json_file(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

struct Loaded {
    ParsedProgram parsed;
    Pga prior;
};

Loaded load_program(const Options& o) {
    std::filesystem::path path(o.file);
    ParsedProgram parsed = parse(read_file(o.file), path.parent_path());
    Pga prior = o.prior_file.empty() ? dirac_prior(parsed.alphabet) : align_prior(load_pga(o.prior_file), parsed.alphabet);
    return {std::move(parsed), std::move(prior)};
}

json number(const Rational& r, int digits) { return {{"exact", to_string(r)}, {"decimal", to_decimal(r, digits)}}; }

std::string human(const Rational& r, int digits) {
    std::string exact = to_string(r);
    std::string dec = to_decimal(r, digits);
    return exact == dec ? exact : exact + " (" + dec + ")";
}

Valuation parse_assignment(const std::string& text, const Alphabet& alphabet) {
    Valuation v(alphabet.size());
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw SyntaxError("expected name=value in --at, got '" + item + "'", 1, 1);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        std::string name = trim(item.substr(0, eq));
        std::string value = trim(item.substr(eq + 1));
        if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
            throw SyntaxError("value of " + name + " must be a natural number", 1, eq + 2);
        v[alphabet.index_of(name)] = std::stoull(value);
    }
    return v;
}

int cmd_parse(const Options& o) {
    ParsedProgram p = parse(read_file(o.file), std::filesystem::path(o.file).parent_path());
    if (o.as_json) {
        json out = {{"alphabet", p.alphabet.names()},
                    {"program", pretty(*p.program)},
                    {"size", program_size(*p.program)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << pretty(*p.program) << "\n";
        std::cout << "variables: ";
        for (std::size_t i = 0; i < p.alphabet.size(); ++i) std::cout << (i ? ", " : "") << p.alphabet.name(i);
        std::cout << "\nsize: " << program_size(*p.program) << "\n";
    }
    return kOk;
}

int cmd_infer(const Options& o) {
    Loaded l = load_program(o);
    Inference inf = infer(*l.parsed.program, l.prior);
    const Pga& result = o.unnormalized ? inf.unnormalized : inf.posterior;
    const Alphabet& alphabet = l.prior.alphabet();

    std::optional<Rational> query;
    if (!o.query.empty()) query = guard_probability(result, parse_guard(o.query, alphabet));
    std::vector<Rational> dist;
    if (!o.marginal_var.empty()) dist = marginal(result, o.marginal_var, o.upto);

    if (o.as_json) {
        json out = {{"normalizing_constant", number(inf.normalizing_constant, o.digits)},
                    {"violation_mass", number(inf.violation_mass, o.digits)},
                    {"normalized", !o.unnormalized}};
        if (query) out["query"] = {{"guard", o.query}, {"probability", number(*query, o.digits)}};
        if (!o.marginal_var.empty()) {
            json values = json::array();
            for (std::size_t k = 0; k < dist.size(); ++k)
                values.push_back({{"value", k}, {"probability", number(dist[k], o.digits)}});
            out["marginal"] = {{"variable", o.marginal_var}, {"values", values}};
        }
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "normalizing constant = " << human(inf.normalizing_constant, o.digits) << "\n";
    std::cout << "violation mass = " << human(inf.violation_mass, o.digits) << "\n";
    if (query) std::cout << "P(" << o.query << ") = " << human(*query, o.digits) << "\n";
    for (std::size_t k = 0; k < dist.size(); ++k)
        std::cout << "P(" << o.marginal_var << " = " << k << ") = " << human(dist[k], o.digits) << "\n";
    return kOk;
}

int cmd_query(const Options& o) {
    Loaded l = load_program(o);
    Inference inf = infer(*l.parsed.program, l.prior);
    const Pga& result = o.unnormalized ? inf.unnormalized : inf.posterior;
    const Alphabet& alphabet = l.prior.alphabet();
    Rational value;
    std::string kind;
    std::string label;
    if (!o.at.empty()) {
        Valuation sigma = parse_assignment(o.at, alphabet);
        value = coefficient(result, sigma);
        kind = "coefficient";
        label = "P(" + to_string(alphabet, sigma) + ")";
    } else if (!o.query.empty()) {
        value = guard_probability(result, parse_guard(o.query, alphabet));
        kind = "guard-probability";
        label = "P(" + o.query + ")";
    } else {
        throw SyntaxError("query needs --guard or --at", 1, 1);
    }
    if (o.as_json) {
        json out = {{"kind", kind}, {"value", number(value, o.digits)}, {"normalized", !o.unnormalized}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << label << " = " << human(value, o.digits) << "\n";
    }
    return kOk;
}

Pga load_automaton(const Options& o) {
    if (is_json_file(o.file)) return load_pga(o.file);
    Loaded l = load_program(o);
    Pga unnormalized = translate(*l.parsed.program, l.prior);
    if (o.unnormalized) return unnormalized;
    return normalize(unnormalized);
}

int cmd_check(const Options& o) {
    Pga a = is_json_file(o.file) ? load_pga(o.file) : [&] {
        Loaded l = load_program(o);
        return translate(*l.parsed.program, l.prior);
    }();
    ValidationReport r = validate_pga(a);
    if (o.as_json) {
        json out = {{"mass", r.mass.is_infinite() ? json("inf") : json(to_string(r.mass.value()))},
                    {"pga", r.is_pga},
                    {"states", a.num_states()},
                    {"transitions", a.size()},
                    {"issues", r.issues}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "mass = " << to_string(r.mass) << ", PGA: " << (r.is_pga ? "yes" : "no") << "\n";
        std::cout << "states: " << a.num_states() << ", transitions: " << a.size() << "\n";
        for (const auto& issue : r.issues) std::cout << issue << "\n";
    }
    return kOk;
}

int cmd_export_dot(const Options& o) {
    std::string dot = export_dot(load_automaton(o));
    if (o.output.empty() || o.output == "-") {
        std::cout << dot;
        return kOk;
    }
    std::ofstream out(o.output);
    if (!out || !(out << dot)) throw IoError("cannot write " + o.output);
    return kOk;
}

int oracle_enumerate(const Options& o, const Loaded& l) {
    Verdict v = compare(*l.parsed.program, l.prior, o.trunc);
    if (o.as_json) {
        json out = {{"mode", "enumerate"},
                    {"pass", v.pass},
                    {"checked", v.checked},
                    {"worst_discrepancy", number(v.worst_discrepancy, o.digits)},
                    {"residual", number(v.residual, o.digits)},
                    {"failures", v.failures}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (v.pass ? "PASS" : "FAIL") << ": " << v.checked << " values checked\n";
        std::cout << "worst discrepancy = " << to_decimal(v.worst_discrepancy, o.digits) << "\n";
        std::cout << "residual = " << to_decimal(v.residual, o.digits) << "\n";
        for (const auto& f : v.failures) std::cout << f << "\n";
    }
    return v.pass ? kOk : kOracleFailure;
}

// Frequencies within five standard errors (plus one count) of the exact
// probabilities pass.
bool within_tolerance(double frequency, double p, std::uint64_t n) {
    double se = std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(n));
    return std::abs(frequency - p) <= 5 * se + 1.0 / static_cast<double>(n);
}

int oracle_mc(const Options& o, const Loaded& l) {
    const Alphabet& alphabet = l.prior.alphabet();
    SampleReport r = mc_sample(*l.parsed.program, l.prior, o.seed, o.samples);
    Rational prior_mass = mass(l.prior).value();
    Pga unnormalized = scale_initial(translate(*l.parsed.program, l.prior), 1 / prior_mass);
    Rational nc = mass(unnormalized).value();

    std::vector<std::string> failures;
    auto n = static_cast<double>(r.samples);
    double violation_freq = static_cast<double>(r.violations) / n;
    if (!within_tolerance(violation_freq, Rational(1 - nc).get_d(), r.samples))
        failures.push_back("violation frequency " + std::to_string(violation_freq) + " vs " + to_decimal(1 - nc, 6));
    if (!r.terminal.empty()) {
        Valuation bound(alphabet.size());
        for (const auto& [sigma, k] : r.terminal)
            for (std::size_t i = 0; i < bound.arity(); ++i) bound[i] = std::max(bound[i], sigma[i]);
        auto table = coefficient_table(unnormalized, bound);
        for (const auto& [sigma, k] : r.terminal) {
            double f = static_cast<double>(k) / n;
            Rational p = table.at(sigma);
            if (!within_tolerance(f, p.get_d(), r.samples))
                failures.push_back("frequency of " + to_string(alphabet, sigma) + " is " + std::to_string(f) +
                                   " vs " + to_decimal(p, 6));
        }
    }

    std::optional<double> freq;
    std::optional<Rational> exact;
    if (!o.query.empty()) {
        Guard g = parse_guard(o.query, alphabet);
        freq = r.conditional_frequency([&](const Valuation& v) { return guard_satisfies(alphabet, v, g); });
        if (nc != 0) exact = guard_probability(unnormalized, g) / nc;
    }

    bool pass = failures.empty();
    if (o.as_json) {
        json out = {{"mode", "mc"},
                    {"pass", pass},
                    {"samples", r.samples},
                    {"seed", o.seed},
                    {"violation_frequency", violation_freq},
                    {"violation_mass", number(1 - nc, o.digits)},
                    {"failures", failures}};
        if (freq) {
            out["query"] = {{"guard", o.query}, {"conditional_frequency", *freq}};
            if (exact) out["query"]["exact"] = number(*exact, o.digits);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (pass ? "PASS" : "FAIL") << ": " << r.samples << " samples, seed " << o.seed << "\n";
        std::cout << "violation frequency = " << violation_freq << " (exact " << to_decimal(1 - nc, o.digits) << ")\n";
        if (freq) {
            std::cout << "P(" << o.query << " | no violation) ~ " << *freq;
            if (exact) std::cout << " (exact " << human(*exact, o.digits) << ")";
            std::cout << "\n";
        }
        for (const auto& f : failures) std::cout << f << "\n";
    }
    return pass ? kOk : kOracleFailure;
}

int cmd_oracle(const Options& o) {
    Loaded l = load_program(o);
    if (o.mode == "mc") return oracle_mc(o, l);
    return oracle_enumerate(o, l);
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const SourceError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kSyntax;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kSyntax;
    } catch (const InvalidWeight& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kSyntax;
    } catch (const UnknownVariable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSyntax;
    } catch (const InfeasibleObservation& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const ZeroMass& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSemantic;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact inference for loop-free discrete probabilistic programs via generating automata"};
    app.require_subcommand(1);
    Options o;
    int status = kOk;

    auto add_common = [&](CLI::App* sub, bool with_prior) {
        sub->add_option("file", o.file, "program (.redip) or automaton (.json)")->required();
        sub->add_flag("--json", o.as_json, "machine-readable output");
        sub->add_option("--digits", o.digits, "significant digits of decimal renderings")->check(CLI::Range(1, 100));
        if (with_prior) sub->add_option("--prior", o.prior_file, "prior automaton as PGA JSON (default: all zero)");
    };

    auto* parse_cmd = app.add_subcommand("parse", "parse and desugar a program");
    add_common(parse_cmd, false);
    parse_cmd->callback([&] { status = run_guarded([&] { return cmd_parse(o); }); });

    auto* infer_cmd = app.add_subcommand("infer", "compute the posterior of a program");
    add_common(infer_cmd, true);
    infer_cmd->add_option("--marginal", o.marginal_var, "print the posterior marginal of this variable");
    infer_cmd->add_option("--upto", o.upto, "largest value of the marginal");
    infer_cmd->add_option("--query", o.query, "posterior probability of a guard");
    infer_cmd->add_flag("--unnormalized", o.unnormalized, "skip normalization");
    infer_cmd->callback([&] { status = run_guarded([&] { return cmd_infer(o); }); });

    auto* query_cmd = app.add_subcommand("query", "posterior probability of a guard or a valuation");
    add_common(query_cmd, true);
    auto* guard_opt = query_cmd->add_option("--guard", o.query, "guard such as \"r >= 1\"");
    auto* at_opt = query_cmd->add_option("--at", o.at, "valuation such as \"x=2,r=0\"");
    guard_opt->excludes(at_opt);
    query_cmd->add_flag("--unnormalized", o.unnormalized, "query the unnormalized posterior");
    query_cmd->callback([&] { status = run_guarded([&] { return cmd_query(o); }); });

    auto* check_cmd = app.add_subcommand("check", "mass and validity of an automaton or translated program");
    add_common(check_cmd, true);
    check_cmd->callback([&] { status = run_guarded([&] { return cmd_check(o); }); });

    auto* dot_cmd = app.add_subcommand("export-dot", "write the posterior automaton in Graphviz format");
    add_common(dot_cmd, true);
    dot_cmd->add_option("-o,--output", o.output, "output file (default: standard output)");
    dot_cmd->add_flag("--unnormalized", o.unnormalized, "export the unnormalized posterior");
    dot_cmd->callback([&] { status = run_guarded([&] { return cmd_export_dot(o); }); });

    auto* oracle_cmd = app.add_subcommand("oracle", "compare against the operational semantics");
    add_common(oracle_cmd, true);
    oracle_cmd->add_option("--mode", o.mode, "enumerate or mc")->check(CLI::IsMember({"enumerate", "mc"}));
    oracle_cmd->add_option("--trunc", o.trunc, "largest enumerated sample of infinite-support distributions");
    oracle_cmd->add_option("--samples", o.samples, "number of Monte Carlo runs")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    oracle_cmd->add_option("--query", o.query, "guard whose conditional frequency is reported (mc mode)");
    oracle_cmd->callback([&] { status = run_guarded([&] { return cmd_oracle(o); }); });

    CLI11_PARSE(app, argc, argv);
    return status;
}
