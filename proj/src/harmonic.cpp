#include "ultraharmonic/harmonic.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

namespace ultraharmonic {
namespace {

using K = SetExpr::Kind;

constexpr Nat kWitnessHorizon = 1 << 20;  // search range for a member of a sumset operand
constexpr Nat kValidationHorizon = 10'000;
constexpr Nat kHindmanMax = Nat{1} << 40;

namespace rule {
constexpr const char* ap = "AP harmonic";
constexpr const char* primes = "Primes harmonic";
constexpr const char* finite = "Finite anharmonic";
constexpr const char* powers = "Powers anharmonic";
constexpr const char* kth = "KthPowers anharmonic";
constexpr const char* simplified = "simplification";
constexpr const char* shift_h = "shift preserves harmonic";
constexpr const char* shift_a = "shift preserves anharmonic";
constexpr const char* lshift_h = "left shift preserves harmonic";
constexpr const char* lshift_a = "left shift preserves anharmonic (Hindman decomposition)";
constexpr const char* union_h = "union with a harmonic operand";
constexpr const char* union_a = "union of anharmonic operands";
constexpr const char* subset_a = "subset of an anharmonic operand";
constexpr const char* diff_h = "harmonic minus anharmonic";
constexpr const char* sumset_h = "sumset contains a translate of a harmonic operand";
constexpr const char* inter_eq = "intersection equals an operand";
constexpr const char* partition = "partition regularity";
constexpr const char* element = "element of operand";
}  // namespace rule

struct RuleResult {
    Truth value = Truth::Unknown;
    std::optional<Derivation> derivation;
};

RuleResult yes(const char* r, const SetExpr& s, std::vector<Derivation> premises = {})
{
    return {Truth::Yes, Derivation{r, print(s), std::move(premises)}};
}

RuleResult no(const char* r, const SetExpr& s, std::vector<Derivation> premises = {})
{
    return {Truth::No, Derivation{r, print(s), std::move(premises)}};
}

RuleResult rules(const SetExpr& s);
RuleResult operand(const SetExpr& c) { return rules(c); }

RuleResult rules(const SetExpr& s)
{
    switch (s.kind()) {
    case K::Finite:
    case K::FromFile: return no(rule::finite, s);
    case K::AP: return yes(rule::ap, s);
    case K::Primes: return yes(rule::primes, s);
    case K::Powers: return no(rule::powers, s);
    case K::KthPowers: return no(rule::kth, s);
    case K::Shifted: {
        auto r = operand(s.children()[0]);
        if (r.value == Truth::Yes) return yes(rule::shift_h, s, {std::move(*r.derivation)});
        if (r.value == Truth::No) return no(rule::shift_a, s, {std::move(*r.derivation)});
        return {};
    }
    case K::LeftShift: {
        auto r = operand(s.children()[0]);
        if (r.value == Truth::Yes) return yes(rule::lshift_h, s, {std::move(*r.derivation)});
        if (r.value == Truth::No) return no(rule::lshift_a, s, {std::move(*r.derivation)});
        return {};
    }
    case K::Union: {
        std::vector<Derivation> anharmonic;
        bool all_anharmonic = true;
        for (const auto& c : s.children()) {
            auto r = operand(c);
            if (r.value == Truth::Yes) return yes(rule::union_h, s, {std::move(*r.derivation)});
            if (r.value == Truth::No) anharmonic.push_back(std::move(*r.derivation));
            else all_anharmonic = false;
        }
        if (all_anharmonic) return no(rule::union_a, s, std::move(anharmonic));
        return {};
    }
    case K::Intersection: {
        std::vector<RuleResult> parts;
        for (const auto& c : s.children()) {
            parts.push_back(operand(c));
            if (parts.back().value == Truth::No) return no(rule::subset_a, s, {std::move(*parts.back().derivation)});
        }
        // an operand contained in all the others is the intersection itself
        for (std::size_t i = 0; i < s.children().size(); ++i) {
            if (parts[i].value == Truth::Unknown) continue;
            std::vector<Derivation> premises{*parts[i].derivation};
            bool inside_all = true;
            for (std::size_t j = 0; j < s.children().size() && inside_all; ++j) {
                if (j == i) continue;
                auto inc = prove_contains(s.children()[j], s.children()[i]);
                if (inc) premises.push_back(std::move(*inc));
                else inside_all = false;
            }
            if (inside_all) {
                return {parts[i].value, Derivation{rule::inter_eq, print(s), std::move(premises)}};
            }
        }
        return {};
    }
    case K::Difference: {
        auto a = operand(s.children()[0]);
        if (a.value == Truth::No) return no(rule::subset_a, s, {std::move(*a.derivation)});
        if (a.value != Truth::Yes) return {};
        auto b = operand(s.children()[1]);
        if (b.value == Truth::No) return yes(rule::diff_h, s, {std::move(*a.derivation), std::move(*b.derivation)});
        return {};
    }
    case K::Sumset: {
        for (int side = 0; side < 2; ++side) {
            const SetExpr& h = s.children()[side];
            const SetExpr& other = s.children()[1 - side];
            auto r = operand(h);
            if (r.value != Truth::Yes) continue;
            auto u = take(other, 1, kWitnessHorizon);
            if (u.empty()) continue;
            Derivation elem{rule::element, std::to_string(u.front()) + " ∈ " + print(other), {}};
            return yes(rule::sumset_h, s, {std::move(*r.derivation), std::move(elem)});
        }
        return {};
    }
    }
    return {};
}

std::vector<Nat> usable_checkpoints(const ClassifyOptions& options)
{
    std::vector<Nat> out;
    for (Nat c : options.limits.checkpoints) {
        if (c > options.limits.horizon_cap) break;
        if (options.exact && c > options.limits.exact_term_cap) break;
        out.push_back(c);
    }
    return out;
}

// --- certificate validation -------------------------------------------------

std::optional<SetExpr> reparse(const std::string& text)
{
    try {
        return parse(text);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<Truth> check(const Derivation& d);

bool premise_is(const Derivation& p, const SetExpr& expected, Truth value)
{
    return p.subject == print(expected) && check(p) == value;
}

bool premise_is_child(const Derivation& p, const SetExpr& parent, Truth value)
{
    return std::any_of(parent.children().begin(), parent.children().end(),
                       [&](const SetExpr& c) { return premise_is(p, c, value); });
}

std::optional<Truth> check(const Derivation& d)
{
    auto subject = reparse(d.subject);
    if (!subject) return std::nullopt;
    const SetExpr& s = *subject;
    const auto& p = d.premises;
    const std::string& r = d.rule;
    auto is = [&](K k) { return s.kind() == k; };

    if (r == rule::ap && is(K::AP)) return Truth::Yes;
    if (r == rule::primes && is(K::Primes)) return Truth::Yes;
    if (r == rule::finite && (is(K::Finite) || is(K::FromFile) || simplify(s).is_empty_finite())) return Truth::No;
    if (r == rule::powers && is(K::Powers)) return Truth::No;
    if (r == rule::kth && is(K::KthPowers)) return Truth::No;
    if (r == rule::simplified && p.size() == 1) {
        auto target = reparse(p[0].subject);
        if (!target || *target != simplify(s)) return std::nullopt;
        return check(p[0]);
    }
    if (p.empty()) return std::nullopt;
    if ((r == rule::shift_h || r == rule::shift_a) && is(K::Shifted)) {
        Truth t = r == rule::shift_h ? Truth::Yes : Truth::No;
        if (premise_is(p[0], s.children()[0], t)) return t;
    }
    if ((r == rule::lshift_h || r == rule::lshift_a) && is(K::LeftShift)) {
        Truth t = r == rule::lshift_h ? Truth::Yes : Truth::No;
        if (premise_is(p[0], s.children()[0], t)) return t;
    }
    if (r == rule::union_h && is(K::Union) && premise_is_child(p[0], s, Truth::Yes)) return Truth::Yes;
    if (r == rule::union_a && is(K::Union) && p.size() == s.children().size()) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!premise_is(p[i], s.children()[i], Truth::No)) return std::nullopt;
        return Truth::No;
    }
    if (r == rule::subset_a) {
        if (is(K::Intersection) && premise_is_child(p[0], s, Truth::No)) return Truth::No;
        if (is(K::Difference) && premise_is(p[0], s.children()[0], Truth::No)) return Truth::No;
    }
    if (r == rule::diff_h && is(K::Difference) && p.size() == 2 && premise_is(p[0], s.children()[0], Truth::Yes) &&
        premise_is(p[1], s.children()[1], Truth::No))
        return Truth::Yes;
    if (r == rule::sumset_h && is(K::Sumset) && p.size() == 2) {
        for (int side = 0; side < 2; ++side) {
            if (!premise_is(p[0], s.children()[side], Truth::Yes)) continue;
            const SetExpr& other = s.children()[1 - side];
            const std::string& claim = p[1].subject;
            auto sep = claim.find(" ∈ ");
            if (p[1].rule != rule::element || sep == std::string::npos) return std::nullopt;
            Nat u = 0;
            auto [ptr, ec] = std::from_chars(claim.data(), claim.data() + sep, u);
            if (ec != std::errc() || !member(other, u)) return std::nullopt;
            return Truth::Yes;
        }
    }
    if (r == rule::inter_eq && is(K::Intersection) && p.size() == s.children().size()) {
        auto chosen = reparse(p[0].subject);
        auto value = check(p[0]);
        if (!chosen || !value) return std::nullopt;
        auto it = std::find(s.children().begin(), s.children().end(), *chosen);
        if (it == s.children().end()) return std::nullopt;
        for (const auto& c : s.children()) {
            if (c == *chosen) continue;
            if (!prove_contains(c, *chosen)) return std::nullopt;
        }
        return value;
    }
    if (r == rule::partition && p.size() >= 1 && check(p[0]) == Truth::Yes) {
        auto whole = reparse(p[0].subject);
        if (!whole) return std::nullopt;
        // the classes must cover the whole set (checked up to a horizon)
        std::vector<SetExpr> classes{s};
        for (std::size_t i = 1; i < p.size(); ++i) {
            auto c = reparse(p[i].subject);
            if (!c || check(p[i]) != Truth::No) return std::nullopt;
            classes.push_back(*c);
        }
        for (Nat v : enumerate(*whole, kValidationHorizon)) {
            if (std::none_of(classes.begin(), classes.end(), [v](const SetExpr& c) { return member(c, v); }))
                return std::nullopt;
        }
        return Truth::Yes;
    }
    return std::nullopt;
}

std::string residue_label(Nat residue, Nat modulus)
{
    return "≡ " + std::to_string(residue) + " (mod " + std::to_string(modulus) + ")";
}

std::map<Nat, std::vector<Nat>> read_coloring(const FileColoring& coloring)
{
    std::ifstream in(coloring.path);
    if (!in) throw InputError("cannot read coloring file '" + coloring.path + "'");
    std::map<Nat, std::vector<Nat>> by_color;
    std::vector<bool> seen(coloring.horizon + 1, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto sp = line.find(' ');
        Nat n = 0;
        Nat color = 0;
        bool ok = sp != std::string::npos;
        if (ok) {
            auto r1 = std::from_chars(line.data(), line.data() + sp, n);
            auto r2 = std::from_chars(line.data() + sp + 1, line.data() + line.size(), color);
            ok = r1.ec == std::errc() && r1.ptr == line.data() + sp && r2.ec == std::errc() &&
                 r2.ptr == line.data() + line.size() && n >= 1;
        }
        if (!ok) throw InputError(coloring.path + ":" + std::to_string(lineno) + ": expected 'n color'");
        if (n > coloring.horizon) continue;
        if (seen[n]) throw InputError(coloring.path + ":" + std::to_string(lineno) + ": " + std::to_string(n) + " colored twice");
        seen[n] = true;
        by_color[color].push_back(n);
    }
    for (Nat n = 1; n <= coloring.horizon; ++n) {
        if (!seen[n]) throw InputError("coloring file does not cover " + std::to_string(n));
    }
    return by_color;
}

}  // namespace

const char* harmonic_name(Truth t)
{
    switch (t) {
    case Truth::Yes: return "Harmonic";
    case Truth::No: return "Anharmonic";
    case Truth::Unknown: return "Unknown";
    }
    return "?";
}

Verdict classify(const SetExpr& e, const ClassifyOptions& options)
{
    SetExpr s = simplify(e);
    RuleResult r = rules(s);
    Verdict v;
    v.value = r.value;
    if (r.value != Truth::Unknown) {
        if (s == e) v.derivation = std::move(r.derivation);
        else v.derivation = Derivation{rule::simplified, print(e), {std::move(*r.derivation)}};
        return v;
    }
    if (options.diagnostics) {
        auto checkpoints = usable_checkpoints(options);
        if (!checkpoints.empty()) v.diagnostic = partial_sums(s, checkpoints, options.exact, options.limits);
    }
    return v;
}

std::optional<Truth> validate_harmonic_certificate(const Derivation& d) { return check(d); }

PartialSumDiag partial_sums(const SetExpr& e, const std::vector<Nat>& checkpoints, bool exact, const Limits& limits)
{
    PartialSumDiag diag;
    diag.exact = exact;
    if (checkpoints.empty()) return diag;
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw PreconditionError("checkpoints must be ascending");
    if (checkpoints.back() > limits.horizon_cap)
        throw ConfigError("checkpoint " + std::to_string(checkpoints.back()) + " exceeds the horizon cap " +
                          std::to_string(limits.horizon_cap));
    std::vector<Nat> values = enumerate(e, checkpoints.back());
    if (exact && values.size() > limits.exact_term_cap)
        throw ConfigError("exact mode is capped at " + std::to_string(limits.exact_term_cap) + " terms, needed " +
                          std::to_string(values.size()));

    CompensatedSum fast;
    mpq_class running = 0;
    std::size_t done = 0;
    for (Nat h : checkpoints) {
        auto end = static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), h) - values.begin());
        std::span<const Nat> segment(values.data() + done, end - done);
        for (Nat v : segment) fast.add(1.0 / static_cast<double>(v));
        Checkpoint cp{h, end, 0.0, std::nullopt};
        if (exact) {
            running += exact_reciprocal_sum(segment);
            cp.exact = running;
            cp.value = running.get_d();
        } else {
            cp.value = fast.value();
        }
        diag.checkpoints.push_back(std::move(cp));
        done = end;
    }
    return diag;
}

TranslationCheck check_translation_inequality(const SetExpr& e, Nat s, std::size_t n, const Limits& limits)
{
    if (s == 0) throw DomainError("shift must be positive");
    SetExpr simplified = simplify(e);
    if (simplified.kind() == K::Finite || simplified.kind() == K::FromFile)
        throw PreconditionError("translation check needs an infinite set");
    auto a = take(simplified, n, limits.horizon_cap);
    if (a.size() < n)
        throw InsufficientDataError("only " + std::to_string(a.size()) + " of " + std::to_string(n) +
                                        " elements below the horizon cap",
                                    a.size());
    auto first_large = std::find_if(a.begin(), a.end(), [s](Nat v) { return v >= s; });
    if (first_large == a.end())
        throw PreconditionError("N(s) lies beyond the first " + std::to_string(n) + " elements");
    TranslationCheck out;
    out.s = s;
    out.n = n;
    out.n_of_s = static_cast<std::size_t>(first_large - a.begin()) + 1;
    if (out.n_of_s >= n) throw PreconditionError("N must exceed N(s) = " + std::to_string(out.n_of_s));
    std::span<const Nat> all(a);
    out.lhs = exact_reciprocal_sum(all, s, 1);
    out.rhs = exact_reciprocal_sum(all.first(out.n_of_s), s, 1) + exact_reciprocal_sum(all.subspan(out.n_of_s), 0, 2);
    out.holds = out.lhs >= out.rhs;
    return out;
}

HindmanCheck hindman_identity_check(Nat a, Nat x)
{
    if (x == 0 || a <= x) throw DomainError("hindman identity needs a > x >= 1");
    if (a > kHindmanMax) throw DomainError("a exceeds the 128-bit exact range");
    using Int = Fraction::Int;
    Int ai = a;
    Int xi = x;
    HindmanCheck out;
    out.lhs = Fraction(1, ai);
    out.rhs = Fraction(1, ai - xi) - Fraction(xi, ai * (ai - xi));
    out.equal = out.lhs == out.rhs;
    return out;
}

double correction_series(const SetExpr& e, Nat x, Nat horizon)
{
    if (x == 0) throw DomainError("x must be positive");
    CompensatedSum sum;
    Enumerator it(left_shift(e, x), horizon);
    while (auto y = it.next()) {
        auto yf = static_cast<double>(*y);
        sum.add(1.0 / (yf * static_cast<double>(*y + x)));
    }
    return sum.value();
}

mpq_class telescoped_correction(Nat x, Nat horizon)
{
    if (x == 0 || horizon == 0) throw DomainError("telescoped correction needs horizon, x >= 1");
    mpq_class tail = 0;
    for (Nat j = horizon + 1; j <= horizon + x; ++j) tail += mpq_class(1, j);
    return correction_limit(x) - tail / x;
}

mpq_class correction_limit(Nat x)
{
    if (x == 0) throw DomainError("x must be positive");
    mpq_class h = 0;
    for (Nat j = 1; j <= x; ++j) h += mpq_class(1, j);
    return h / x;
}

std::vector<ColorClass> partition_classify(const SetExpr& e, const ColoringSpec& coloring,
                                           const ClassifyOptions& options)
{
    std::vector<ColorClass> classes;
    if (const auto* mod = std::get_if<ResidueMod>(&coloring)) {
        if (mod->modulus < 2) throw DomainError("residue coloring needs modulus >= 2");
        for (Nat i = 1; i <= mod->modulus; ++i) {
            SetExpr cls = simplify(SetExpr::intersection_of({e, SetExpr::ap(i, mod->modulus)}));
            classes.push_back({residue_label(i % mod->modulus, mod->modulus), cls, {}});
        }
    } else if (const auto* blocks = std::get_if<Blocks>(&coloring)) {
        Nat period = 0;
        for (auto [color, length] : blocks->runs) {
            if (length == 0) throw DomainError("block lengths must be positive");
            period += length;
        }
        if (period == 0 || period > 4096) throw DomainError("block period must lie in 1..4096");
        std::map<Nat, std::vector<SetExpr>> by_color;
        Nat pos = 1;
        for (auto [color, length] : blocks->runs) {
            for (Nat j = 0; j < length; ++j) by_color[color].push_back(SetExpr::ap(pos++, period));
        }
        for (auto& [color, aps] : by_color) {
            SetExpr pattern = aps.size() == 1 ? aps.front() : SetExpr::union_of(aps);
            classes.push_back({"color " + std::to_string(color),
                               simplify(SetExpr::intersection_of({e, pattern})), {}});
        }
    } else {
        const auto& file = std::get<FileColoring>(coloring);
        for (auto& [color, values] : read_coloring(file)) {
            classes.push_back({"color " + std::to_string(color),
                               simplify(SetExpr::intersection_of({e, SetExpr::finite(values)})), {}});
        }
        classes.push_back({"uncolored (> " + std::to_string(file.horizon) + ")",
                           simplify(SetExpr::intersection_of({e, SetExpr::ap(file.horizon + 1, 1)})), {}});
    }

    ClassifyOptions quiet = options;
    quiet.diagnostics = false;
    for (auto& c : classes) c.verdict = classify(c.members, quiet);

    Verdict whole = classify(e, quiet);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].verdict.value != Truth::No) open.push_back(i);
    if (whole.value == Truth::Yes && open.size() == 1 && classes[open[0]].verdict.value == Truth::Unknown) {
        std::vector<Derivation> premises{*whole.derivation};
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (i != open[0]) premises.push_back(*classes[i].verdict.derivation);
        auto& target = classes[open[0]];
        target.verdict.value = Truth::Yes;
        target.verdict.derivation = Derivation{rule::partition, print(target.members), std::move(premises)};
    }
    if (options.diagnostics) {
        for (auto& c : classes) {
            if (c.verdict.value != Truth::Unknown) continue;
            auto checkpoints = usable_checkpoints(options);
            if (!checkpoints.empty())
                c.verdict.diagnostic = partial_sums(c.members, checkpoints, options.exact, options.limits);
        }
    }
    return classes;
}

Extraction anharmonic_subset(const SetExpr& a, const SetExpr& b, std::size_t count, const Limits& limits)
{
    ClassifyOptions quiet;
    quiet.diagnostics = false;
    if (classify(a, quiet).value != Truth::Yes) throw PreconditionError("a must classify Harmonic");
    if (classify(b, quiet).value != Truth::No) throw PreconditionError("b must classify Anharmonic");
    SetExpr sb = simplify(b);
    if (sb.kind() == K::Finite || sb.kind() == K::FromFile) throw PreconditionError("b must be infinite");

    Extraction out;
    Enumerator as(a, limits.horizon_cap);
    Enumerator bs(b, limits.horizon_cap);
    std::optional<Nat> cur = as.next();
    while (out.values.size() < count) {
        auto bk = bs.next();
        if (!bk) {
            throw InsufficientDataError("b ran past the horizon cap after " + std::to_string(out.values.size()) +
                                            " of " + std::to_string(count) + " values",
                                        out.values.size());
        }
        while (cur && *cur <= *bk) cur = as.next();
        if (!cur) {
            throw InsufficientDataError("a has no element above " + std::to_string(*bk) + " below the horizon cap; " +
                                            std::to_string(out.values.size()) + " of " + std::to_string(count) +
                                            " values found",
                                        out.values.size());
        }
        if (out.values.empty() || out.values.back() != *cur) {
            out.values.push_back(*cur);
            out.paired.push_back(*bk);
        }
    }
    return out;
}

}  // namespace ultraharmonic
