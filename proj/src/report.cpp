#include "ultraharmonic/report.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ultraharmonic {
namespace {

constexpr std::size_t kGapListLimit = 1000;

Json exact_json(const mpq_class& q)
{
    std::string s = to_string(q);
    if (s.size() <= kExactStringLimit) return s;
    return Json{{"elided", true},
                {"num_bits", mpz_sizeinbase(q.get_num_mpz_t(), 2)},
                {"den_bits", mpz_sizeinbase(q.get_den_mpz_t(), 2)}};
}

const Json* find(const Json& j, const char* key)
{
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

bool is_derivation(const Json& j)
{
    return j.is_object() && j.contains("rule") && j.contains("subject") && j.contains("premises");
}

void tree(std::ostringstream& out, const Json& d, int depth)
{
    out << std::string(2 * depth, ' ') << "- " << d.at("rule").get<std::string>() << ": "
        << d.at("subject").get<std::string>() << "\n";
    for (const auto& p : d.at("premises")) tree(out, p, depth + 1);
}

std::string scalar(const Json& j)
{
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void divisor_table(std::ostringstream& out, const Json& c, int depth)
{
    std::string pad(2 * depth, ' ');
    mpz_class start(c.at("start").get<std::string>());
    out << pad << "prime-free run of " << c.at("length").get<Nat>() << " from " << start.get_str() << "\n";
    out << pad << "  position    divisor\n";
    Nat i = 0;
    for (const auto& d : c.at("divisors")) {
        mpz_class pos = start + i++;
        out << pad << "  " << pos.get_str() << "    " << d.get<Nat>() << "\n";
    }
}

void render(std::ostringstream& out, const Json& j, int depth)
{
    std::string pad(2 * depth, ' ');
    for (const auto& [key, value] : j.items()) {
        if (is_derivation(value)) {
            out << pad << key << ":\n";
            tree(out, value, depth + 1);
        } else if (key == "gap_certificate" && value.is_object()) {
            out << pad << key << ":\n";
            divisor_table(out, value, depth + 1);
        } else if (value.is_object()) {
            out << pad << key << ":\n";
            render(out, value, depth + 1);
        } else if (value.is_array()) {
            bool flat = std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_primitive(); });
            if (flat) {
                out << pad << key << ": [";
                for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : "") << scalar(value[i]);
                out << "]\n";
            } else {
                out << pad << key << ":\n";
                for (const auto& v : value) {
                    out << pad << "  -\n";
                    if (v.is_object()) render(out, v, depth + 2);
                    else out << pad << "    " << v.dump() << "\n";
                }
            }
        } else {
            out << pad << key << ": " << scalar(value) << "\n";
        }
    }
}

}  // namespace

Json to_json(const Derivation& d)
{
    Json premises = Json::array();
    for (const auto& p : d.premises) premises.push_back(to_json(p));
    return Json{{"rule", d.rule}, {"subject", d.subject}, {"premises", std::move(premises)}};
}

Derivation derivation_from_json(const Json& j)
{
    if (!is_derivation(j)) throw SchemaError("derivation node needs rule, subject and premises");
    Derivation d{j.at("rule").get<std::string>(), j.at("subject").get<std::string>(), {}};
    for (const auto& p : j.at("premises")) d.premises.push_back(derivation_from_json(p));
    return d;
}

Json to_json(const PartialSumDiag& d)
{
    Json cps = Json::array();
    for (const auto& c : d.checkpoints) {
        Json cp{{"horizon", c.horizon}, {"terms", c.terms}, {"sum", c.value}};
        if (c.exact) cp["exact"] = exact_json(*c.exact);
        cps.push_back(std::move(cp));
    }
    return Json{{"precision", d.exact ? "exact" : "fast"}, {"checkpoints", std::move(cps)}};
}

Json to_json(const Verdict& v)
{
    Json j{{"value", harmonic_name(v.value)}};
    if (v.derivation) j["derivation"] = to_json(*v.derivation);
    if (v.diagnostic) j["diagnostic"] = to_json(*v.diagnostic);
    return j;
}

Json to_json(const GapProfile& p)
{
    Json profile = Json::array();
    for (auto [b, run] : p.profile) profile.push_back(Json::array({b, run}));
    std::size_t shown = std::min(p.gaps.size(), kGapListLimit);
    Json j{{"horizon", p.horizon},
           {"elements", p.elements},
           {"max_gap", p.max_gap},
           {"profile", std::move(profile)},
           {"gap_count", p.gaps.size()},
           {"gaps", std::vector<Nat>(p.gaps.begin(), p.gaps.begin() + static_cast<std::ptrdiff_t>(shown))}};
    if (shown < p.gaps.size()) j["gaps_truncated"] = true;
    return j;
}

Json to_json(const GapCertificate& c)
{
    return Json{{"bound", c.bound}, {"start", c.start.get_str()}, {"length", c.length}, {"divisors", c.divisors}};
}

GapCertificate certificate_from_json(const Json& j)
{
    try {
        GapCertificate c;
        c.bound = j.at("bound").get<Nat>();
        c.start = mpz_class(j.at("start").get<std::string>());
        c.length = j.at("length").get<Nat>();
        c.divisors = j.at("divisors").get<std::vector<Nat>>();
        return c;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("malformed gap certificate: ") + e.what());
    }
}

Json to_json(const SyndeticVerdict& v)
{
    Json j{{"value", truth_name(v.value)}};
    if (v.derivation) j["derivation"] = to_json(*v.derivation);
    if (v.bound) j["bound"] = *v.bound;
    if (v.certificate) j["gap_certificate"] = to_json(*v.certificate);
    if (v.profile) j["profile"] = to_json(*v.profile);
    return j;
}

Json to_json(const APWitness& w) { return Json{{"start", w.start}, {"diff", w.diff}, {"length", w.length}}; }

Json to_json(const TranslationCheck& t)
{
    return Json{{"s", t.s},
                {"n_of_s", t.n_of_s},
                {"n", t.n},
                {"lhs", exact_json(t.lhs)},
                {"rhs", exact_json(t.rhs)},
                {"lhs_approx", t.lhs.get_d()},
                {"rhs_approx", t.rhs.get_d()},
                {"holds", t.holds}};
}

Json to_json(const FipVerdict& f)
{
    Json w = Json::array();
    for (const auto& x : f.witnesses) {
        Json item{{"indices", x.indices}, {"method", x.method}};
        item["common"] = x.common ? Json(*x.common) : Json(nullptr);
        w.push_back(std::move(item));
    }
    return Json{{"value", truth_name(f.value)}, {"witnesses", std::move(w)}};
}

Json to_json(const FilterBase& f)
{
    Json base = Json::array();
    Json provenance = Json::array();
    Json irreducible = Json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& el = f.elements()[i];
        base.push_back(print(el.set));
        provenance.push_back(el.provenance);
        if (el.irreducible) irreducible.push_back(i);
    }
    return Json{{"base", std::move(base)},
                {"provenance", std::move(provenance)},
                {"irreducible", std::move(irreducible)},
                {"fip", to_json(f.fip())}};
}

Json to_json(const GlazerVerdict& v)
{
    Json j{{"value", truth_name(v.value)}};
    if (v.derivation) j["derivation"] = to_json(*v.derivation);
    if (!v.samples.empty()) {
        Json s = Json::array();
        for (const auto& x : v.samples)
            s.push_back(Json{{"i", x.i}, {"j", x.j}, {"sampled", x.sampled}, {"contained", x.contained},
                             {"refuted", x.refuted}});
        j["samples"] = std::move(s);
    }
    return j;
}

Json to_json(const Extraction& e) { return Json{{"values", e.values}, {"paired", e.paired}}; }

Json to_json(const Containment& c)
{
    Json j{{"verdict", truth_name(c.verdict)}};
    if (c.witness) j["witness"] = *c.witness;
    if (c.derivation) j["derivation"] = to_json(*c.derivation);
    return j;
}

Json to_json(const Config& c)
{
    Json j{{"horizon", c.limits.horizon_cap},
           {"exact_term_cap", c.limits.exact_term_cap},
           {"checkpoints", c.limits.checkpoints},
           {"precision", c.precision == Precision::Exact ? "exact" : "fast"}};
    if (c.cache_dir) j["cache_dir"] = c.cache_dir->string();
    return j;
}

Report::Report(std::vector<std::string> command, const Config& config, bool timing)
    : command_(std::move(command)), config_(to_json(config)), timing_(timing)
{
}

void Report::add(Json record, const std::string& step, double wall_ms)
{
    results_.push_back(std::move(record));
    steps_.push_back(Json{{"name", step}, {"wall_ms", timing_ ? wall_ms : 0.0}});
}

Json Report::json() const
{
    return Json{{"schema", kReportSchema},
                {"tool", {{"name", "ultraharmonic"}, {"version", ULTRAHARMONIC_VERSION}}},
                {"command", command_},
                {"config", config_},
                {"results", results_},
                {"steps", steps_},
                {"status", failed_ ? "error" : "ok"}};
}

std::string Report::dump() const { return render_json(json()); }

Json parse_report(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
        throw SchemaError("report has no schema tag (expected " + std::string(kReportSchema) + ")");
    auto schema = j["schema"].get<std::string>();
    if (schema != kReportSchema)
        throw SchemaError("report schema " + schema + " does not match supported schema " + kReportSchema);
    for (const char* key : {"results", "steps", "command", "config"}) {
        if (!find(j, key)) throw SchemaError(std::string("report is missing \"") + key + "\"");
    }
    return j;
}

Json load_report(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read report " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_report(buf.str());
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_text(const Json& report)
{
    std::ostringstream out;
    out << "ultraharmonic report (" << report.at("schema").get<std::string>() << ")\n";
    out << "command:";
    for (const auto& c : report.at("command")) out << " " << c.get<std::string>();
    out << "\n";
    if (auto status = find(report, "status")) out << "status: " << scalar(*status) << "\n";
    out << "config:\n";
    render(out, report.at("config"), 1);
    const auto& results = report.at("results");
    const auto& steps = report.at("steps");
    for (std::size_t i = 0; i < results.size(); ++i) {
        out << "\n== result " << i + 1;
        if (i < steps.size()) out << " (" << steps[i].at("name").get<std::string>() << ", "
                                  << scalar(steps[i].at("wall_ms")) << " ms)";
        out << "\n";
        render(out, results[i], 1);
    }
    return out.str();
}

}  // namespace ultraharmonic
