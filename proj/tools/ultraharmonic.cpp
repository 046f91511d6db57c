#include "ultraharmonic/apsearch.hpp"
#include "ultraharmonic/error.hpp"
#include "ultraharmonic/experiments.hpp"
#include "ultraharmonic/harmonic.hpp"
#include "ultraharmonic/report.hpp"
#include "ultraharmonic/syndetic.hpp"
#include "ultraharmonic/ultra.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ultraharmonic;

namespace {

struct Flags {
    std::optional<Nat> horizon;
    std::string checkpoints;
    bool exact = false;
    std::string format = "json";
    bool strict = false;
    std::string config;
    bool timing = false;
    std::string output;
};

struct Session {
    Config config;
    bool strict = false;
    bool unknown = false;  // some verdict came back Unknown
    fs::path exe_dir;
};

fs::path exe_directory(const char* argv0)
{
    std::error_code ec;
    auto self = fs::read_symlink("/proc/self/exe", ec);
    if (ec) self = fs::absolute(argv0, ec);
    return self.parent_path();
}

void install_primes(const Session& s, Nat limit)
{
    limit = std::min(limit, kMemoryWarningHorizon);
    if (auto t = primes::installed_table(); t && t->limit() >= limit) return;
    fs::path dir = s.config.cache_dir.value_or(s.exe_dir / "ultraharmonic-data");
    try {
        primes::install_table(std::make_shared<primes::PrimeTable>(primes::load_or_build(dir, limit)));
    } catch (const std::exception& e) {
        std::cerr << "warning: sieve cache in " << dir.string() << " unavailable (" << e.what()
                  << "); sieving in memory\n";
        primes::install_table(std::make_shared<primes::PrimeTable>(primes::PrimeTable::build(limit)));
    }
}

Json error_json(const std::exception& e)
{
    Json j{{"message", e.what()}};
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        j["kind"] = kind_name(err->kind());
        if (const auto* syn = dynamic_cast<const SyntaxError*>(err)) j["position"] = syn->position;
        if (const auto* ins = dynamic_cast<const InsufficientDataError*>(err)) j["progress"] = ins->progress;
    } else {
        j["kind"] = "internal";
    }
    return j;
}

// Runs one step, timing it; a thrown error becomes an error record and marks
// the report failed.
template <class Fn>
void step(Report& report, const std::string& name, Json base, Fn&& fn)
{
    auto t0 = std::chrono::steady_clock::now();
    try {
        fn(base);
    } catch (const std::exception& e) {
        base["error"] = error_json(e);
        report.fail();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.add(std::move(base), name, ms);
}

ColoringSpec parse_coloring(const std::string& text)
{
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (kind == "mod") return ResidueMod{std::stoull(rest)};
        if (kind == "blocks") {
            Blocks b;
            std::stringstream ss(rest);
            std::string run;
            while (std::getline(ss, run, ',')) {
                auto x = run.find('x');
                if (x == std::string::npos) throw InputError("block run '" + run + "' is not COLORxLENGTH");
                b.runs.emplace_back(std::stoull(run.substr(0, x)), std::stoull(run.substr(x + 1)));
            }
            return b;
        }
        if (kind == "file") {
            auto last = rest.rfind(':');
            if (last == std::string::npos) throw InputError("file coloring needs file:PATH:HORIZON");
            return FileColoring{rest.substr(0, last), std::stoull(rest.substr(last + 1))};
        }
    } catch (const std::invalid_argument&) {
        throw InputError("malformed coloring '" + text + "'");
    } catch (const std::out_of_range&) {
        throw InputError("malformed coloring '" + text + "'");
    }
    throw InputError("unknown coloring '" + text + "' (mod:R, blocks:CxL,..., file:PATH:H)");
}

bool mentions_primes(const std::vector<std::string>& texts)
{
    for (const auto& t : texts)
        if (t.find("primes") != std::string::npos) return true;
    return false;
}

ClassifyOptions classify_options(const Session& s)
{
    ClassifyOptions o;
    o.exact = s.config.precision == Precision::Exact;
    o.limits = s.config.limits;
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Harmonic sets, Glazer sums and progression search on structured subsets of N"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", ULTRAHARMONIC_VERSION);

    Flags flags;
    app.add_option("--horizon", flags.horizon, "global horizon cap (values scanned)");
    app.add_option("--checkpoints", flags.checkpoints, "partial-sum checkpoints, ascending, comma separated");
    app.add_flag("--exact", flags.exact, "exact rational partial sums");
    app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--strict", flags.strict, "exit 2 when any verdict is Unknown");
    app.add_option("--config", flags.config, "key=value configuration file");
    app.add_flag("--timing", flags.timing, "record wall times (reports are otherwise byte-stable)");
    app.add_option("-o,--output", flags.output, "write the report here instead of stdout");

    auto* classify_cmd = app.add_subcommand("classify", "harmonicity verdicts with certificates");
    std::vector<std::string> exprs;
    bool psyndetic = false;
    std::string partition;
    classify_cmd->add_option("expr", exprs, "set expressions")->required();
    classify_cmd->add_flag("--psyndetic", psyndetic, "also classify piecewise syndeticity");
    classify_cmd->add_option("--partition", partition, "colour and classify each class (mod:R | blocks:CxL,... | file:PATH:H)");

    auto* gaps_cmd = app.add_subcommand("gaps", "gap profile and prime gap certificates");
    std::vector<std::string> gap_exprs;
    Nat gaps_upto = 100'000;
    std::optional<Nat> cert_bound;
    gaps_cmd->add_option("expr", gap_exprs, "set expressions");
    gaps_cmd->add_option("--upto", gaps_upto, "profile horizon")->capture_default_str();
    gaps_cmd->add_option("--certificate", cert_bound, "factorial prime-gap certificate of this length");

    auto* ap_cmd = app.add_subcommand("ap", "arithmetic progression search");
    std::string ap_expr;
    Nat ap_length = 3;
    Nat ap_upto = 10'000;
    bool ap_longest = false;
    Nat ap_cap = kDefaultApCap;
    ap_cmd->add_option("expr", ap_expr, "set expression")->required();
    ap_cmd->add_option("-k,--length", ap_length, "progression length")->capture_default_str();
    ap_cmd->add_option("--upto", ap_upto, "search horizon")->capture_default_str();
    ap_cmd->add_flag("--longest", ap_longest, "longest progression up to --cap terms");
    ap_cmd->add_option("--cap", ap_cap, "length cap for --longest")->capture_default_str();

    auto* extract_cmd = app.add_subcommand("extract", "infinite anharmonic subset of a harmonic set");
    std::string ex_a, ex_b;
    std::size_t ex_count = 5;
    extract_cmd->add_option("a", ex_a, "harmonic set")->required();
    extract_cmd->add_option("b", ex_b, "infinite anharmonic set")->required();
    extract_cmd->add_option("-k,--count", ex_count, "values to extract")->capture_default_str();

    auto* glazer_cmd = app.add_subcommand("glazer", "filter bases, FIP and Glazer sums");
    std::vector<std::string> base_f, base_g, members;
    std::string principal;
    glazer_cmd->add_option("--f", base_f, "element of the first base (repeatable)");
    glazer_cmd->add_option("--g", base_g, "element of the second base (repeatable)");
    glazer_cmd->add_option("--member", members, "test membership in the sum (repeatable)");
    glazer_cmd->add_option("--principal", principal, "n,m: principal sum e(n)+e(m), with --member sets");
    Nat glazer_upto = FilterBase::kDefaultHorizon;
    glazer_cmd->add_option("--upto", glazer_upto, "scan horizon for witnesses and sampling")->capture_default_str();

    auto* exp_cmd = app.add_subcommand("experiment", "property suites");
    std::vector<std::string> exp_names;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::string> exp_a, exp_b;
    std::optional<std::size_t> exp_k;
    exp_cmd->add_option("name", exp_names, "suite name or 'all'")->required();
    exp_cmd->add_option("--seed", seed, "corpus seed")->capture_default_str();
    exp_cmd->add_option("--a", exp_a, "extraction: harmonic set");
    exp_cmd->add_option("--b", exp_b, "extraction: anharmonic set");
    exp_cmd->add_option("--k", exp_k, "extraction: count");

    auto* report_cmd = app.add_subcommand("report", "re-render a saved report");
    std::string report_path;
    report_cmd->add_option("input", report_path, "report file")->required();

    CLI11_PARSE(app, argc, argv);

    Session s;
    s.exe_dir = exe_directory(argv[0]);
    s.strict = flags.strict;
    std::vector<std::string> command(argv + 1, argv + argc);

    try {
        if (!flags.config.empty()) s.config = Config::load(flags.config);
        if (flags.horizon) s.config.apply("horizon", std::to_string(*flags.horizon));
        if (!flags.checkpoints.empty()) s.config.apply("checkpoints", flags.checkpoints);
        if (flags.exact) s.config.precision = Precision::Exact;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (s.config.limits.horizon_cap > kMemoryWarningHorizon) {
        std::cerr << "warning: horizon " << s.config.limits.horizon_cap
                  << " is above 10^8; sieves and scans may need several GB of memory\n";
    }

    auto emit = [&](const std::string& text) -> bool {
        if (flags.output.empty()) {
            std::cout << text;
            return true;
        }
        std::ofstream out(flags.output, std::ios::binary);
        out << text;
        if (!out) std::cerr << "error: cannot write " << flags.output << "\n";
        return static_cast<bool>(out);
    };

    if (report_cmd->parsed()) {
        try {
            Json j = load_report(report_path);
            if (!emit(flags.format == "text" ? render_text(j) : render_json(j))) return 1;
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    Report report(command, s.config, flags.timing);
    auto note = [&](Truth t) { s.unknown = s.unknown || t == Truth::Unknown; };

    if (classify_cmd->parsed()) {
        if (mentions_primes(exprs)) install_primes(s, s.config.limits.horizon_cap);
        for (const auto& text : exprs) {
            step(report, "classify", Json{{"command", "classify"}, {"input", text}}, [&](Json& rec) {
                SetExpr e = parse(text);
                rec["expression"] = print(e);
                Verdict v = classify(e, classify_options(s));
                note(v.value);
                rec["harmonic"] = to_json(v);
                if (psyndetic) {
                    SyndeticVerdict sv = classify_psyndetic(e);
                    note(sv.value);
                    rec["psyndetic"] = to_json(sv);
                }
                if (!partition.empty()) {
                    Json classes = Json::array();
                    for (const auto& cc : partition_classify(e, parse_coloring(partition), classify_options(s))) {
                        note(cc.verdict.value);
                        classes.push_back(Json{{"class", cc.label}, {"members", print(cc.members)},
                                               {"verdict", to_json(cc.verdict)}});
                    }
                    rec["partition"] = std::move(classes);
                }
            });
        }
    } else if (gaps_cmd->parsed()) {
        if (gap_exprs.empty() && !cert_bound) {
            std::cerr << "error: gaps needs an expression or --certificate\n";
            return 1;
        }
        if (mentions_primes(gap_exprs)) install_primes(s, gaps_upto);
        for (const auto& text : gap_exprs) {
            step(report, "gaps", Json{{"command", "gaps"}, {"input", text}}, [&](Json& rec) {
                SetExpr e = parse(text);
                rec["expression"] = print(e);
                rec["profile"] = to_json(gap_profile(e, std::min(gaps_upto, s.config.limits.horizon_cap)));
            });
        }
        if (cert_bound) {
            step(report, "certificate", Json{{"command", "gaps"}, {"bound", *cert_bound}}, [&](Json& rec) {
                auto c = prime_gap_certificate(*cert_bound);
                rec["gap_certificate"] = to_json(c);
                rec["valid"] = validate_certificate(c);
            });
        }
    } else if (ap_cmd->parsed()) {
        Nat upto = std::min(ap_upto, s.config.limits.horizon_cap);
        if (mentions_primes({ap_expr})) install_primes(s, upto);
        step(report, ap_longest ? "longest_ap" : "find_ap", Json{{"command", "ap"}, {"input", ap_expr}, {"horizon", upto}},
             [&](Json& rec) {
                 SetExpr e = parse(ap_expr);
                 rec["expression"] = print(e);
                 auto w = ap_longest ? longest_ap(e, upto, ap_cap) : find_ap(e, ap_length, upto);
                 if (!ap_longest) rec["length"] = ap_length;
                 else rec["cap"] = ap_cap;
                 rec["witness"] = w ? to_json(*w) : Json(nullptr);
                 if (w) rec["verified"] = verify_witness(e, *w);
             });
    } else if (extract_cmd->parsed()) {
        if (mentions_primes({ex_a, ex_b})) install_primes(s, s.config.limits.horizon_cap);
        step(report, "extract", Json{{"command", "extract"}, {"a", ex_a}, {"b", ex_b}, {"count", ex_count}},
             [&](Json& rec) {
                 rec["extraction"] = to_json(anharmonic_subset(parse(ex_a), parse(ex_b), ex_count, s.config.limits));
             });
    } else if (glazer_cmd->parsed()) {
        auto parse_all = [](const std::vector<std::string>& v) {
            std::vector<SetExpr> out;
            for (const auto& t : v) out.push_back(parse(t));
            return out;
        };
        if (!principal.empty()) {
            step(report, "principal", Json{{"command", "glazer"}, {"principal", principal}}, [&](Json& rec) {
                auto comma = principal.find(',');
                if (comma == std::string::npos) throw InputError("--principal expects n,m");
                Nat n = std::stoull(principal.substr(0, comma));
                Nat m = std::stoull(principal.substr(comma + 1));
                auto sum = principal_sum(n, m);
                rec["sum"] = sum.point;
                Json tests = Json::array();
                for (const auto& text : members) {
                    SetExpr a = parse(text);
                    tests.push_back(Json{{"set", print(a)},
                                         {"member", sum.contains(a)},
                                         {"by_definition", principal_sum_contains_by_definition(a, n, m)}});
                }
                rec["members"] = std::move(tests);
            });
        }
        if (!base_f.empty()) {
            step(report, "glazer", Json{{"command", "glazer"}, {"f", base_f}, {"g", base_g}}, [&](Json& rec) {
                FilterBase f = FilterBase::canonical(parse_all(base_f), glazer_upto);
                rec["F"] = to_json(f);
                Verdict hf = is_harmonic_base(f, classify_options(s));
                note(hf.value);
                rec["F_harmonic"] = to_json(hf);
                if (base_g.empty()) return;
                FilterBase g = FilterBase::canonical(parse_all(base_g), glazer_upto);
                rec["G"] = to_json(g);
                Verdict hg = is_harmonic_base(g, classify_options(s));
                note(hg.value);
                rec["G_harmonic"] = to_json(hg);
                FilterBase sum = glazer_sum_base(f, g);
                rec["sum"] = to_json(sum);
                Json verdicts = Json::array();
                for (const auto& el : sum.elements()) {
                    Verdict v = classify(el.set, classify_options(s));
                    note(v.value);
                    verdicts.push_back(to_json(v));
                }
                rec["sum_verdicts"] = std::move(verdicts);
                Json tests = Json::array();
                for (const auto& text : members) {
                    SetExpr a = parse(text);
                    GlazerVerdict v = glazer_member(a, f, g, glazer_upto);
                    note(v.value);
                    Json t = to_json(v);
                    t["set"] = print(a);
                    tests.push_back(std::move(t));
                }
                rec["members"] = std::move(tests);
            });
        } else if (principal.empty()) {
            std::cerr << "error: glazer needs --f (and --g) or --principal\n";
            return 1;
        }
    } else if (exp_cmd->parsed()) {
        std::vector<std::string> names = exp_names;
        if (names.size() == 1 && names[0] == "all") names = experiment_names();
        install_primes(s, s.config.limits.horizon_cap);
        for (const auto& name : names) {
            step(report, "experiment " + name, Json{{"command", "experiment"}, {"name", name}}, [&](Json& rec) {
                ExperimentOptions o;
                o.config = s.config;
                o.seed = seed;
                o.a = exp_a;
                o.b = exp_b;
                o.k = exp_k;
                ExperimentResult r = run_experiment(name, o);
                rec["result"] = r.json();
                if (!r.passed()) report.fail();
            });
        }
    }

    if (!emit(flags.format == "text" ? render_text(report.json()) : report.dump())) return 1;
    if (report.failed()) return 1;
    if (s.strict && s.unknown) return 2;
    return 0;
}
