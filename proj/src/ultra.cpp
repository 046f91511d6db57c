#include "ultraharmonic/ultra.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>

namespace ultraharmonic {
namespace {

using K = SetExpr::Kind;

constexpr std::size_t kMaxSubfamily = 3;
constexpr std::size_t kShiftSamples = 32;

void subfamilies(std::size_t n, std::size_t size, std::size_t from, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == size) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subfamilies(n, size, i + 1, cur, out);
        cur.pop_back();
    }
}

std::string describe_sets(const std::vector<SetExpr>& sets)
{
    std::string out = "{";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) out += "; ";
        out += print(sets[i]);
    }
    return out + "}";
}

}  // namespace

FipVerdict fip_check(const std::vector<SetExpr>& base, Nat horizon)
{
    if (base.empty()) throw PreconditionError("filter base must be non-empty");
    FipVerdict v;
    bool all_witnessed = true;
    for (std::size_t size = 1; size <= std::min(kMaxSubfamily, base.size()); ++size) {
        std::vector<std::vector<std::size_t>> families;
        std::vector<std::size_t> cur;
        subfamilies(base.size(), size, 0, cur, families);
        for (auto& idx : families) {
            std::vector<SetExpr> parts;
            for (auto i : idx) parts.push_back(base[i]);
            SetExpr meet = simplify(parts.size() == 1 ? parts.front() : SetExpr::intersection_of(parts));
            FipWitness w{idx, std::nullopt, "none"};
            if (meet.is_empty_finite()) {
                w.method = "empty";
                v.value = Truth::No;
                v.witnesses = {std::move(w)};
                return v;
            }
            if (meet.kind() == K::AP) {
                w.common = meet.first();
                w.method = "symbolic";
            } else if (auto first = take(meet, 1, horizon); !first.empty()) {
                w.common = first.front();
                w.method = "scan";
            } else {
                all_witnessed = false;
            }
            v.witnesses.push_back(std::move(w));
        }
    }
    v.value = all_witnessed ? Truth::Yes : Truth::Unknown;
    return v;
}

FilterBase FilterBase::canonical(const std::vector<SetExpr>& base, Nat horizon)
{
    if (base.empty()) throw PreconditionError("filter base must be non-empty");
    std::vector<SetExpr> given;
    for (const auto& e : base) {
        SetExpr s = simplify(e);
        if (std::find(given.begin(), given.end(), s) == given.end()) given.push_back(s);
    }
    FipVerdict fip = fip_check(given, horizon);
    if (fip.value == Truth::No) {
        std::string which;
        for (auto i : fip.witnesses.front().indices) which += " " + print(given[i]) + ";";
        throw PreconditionError("base lacks the finite intersection property: empty intersection of" + which);
    }

    FilterBase out;
    for (std::size_t i = 0; i < given.size(); ++i)
        out.elements_.push_back({given[i], "given #" + std::to_string(i), false, std::nullopt});
    auto known = [&](const SetExpr& s) {
        return std::any_of(out.elements_.begin(), out.elements_.end(), [&](const BaseElement& b) { return b.set == s; });
    };
    for (std::size_t i = 0; i < given.size(); ++i) {
        for (std::size_t j = i + 1; j < given.size(); ++j) {
            const SetExpr& a = given[i];
            const SetExpr& b = given[j];
            if (prove_contains(a, b) || prove_contains(b, a)) continue;  // meet is already a base element
            SetExpr meet = simplify(SetExpr::intersection_of({a, b}));
            if (known(meet)) continue;
            bool irreducible = meet.kind() == K::Intersection;
            out.elements_.push_back({meet,
                                     "#" + std::to_string(i) + " ∩ #" + std::to_string(j) +
                                         (irreducible ? " (irreducible)" : ""),
                                     irreducible, std::nullopt});
        }
    }
    out.fip_ = std::move(fip);
    return out;
}

FilterBase FilterBase::from_elements(std::vector<BaseElement> elements, FipVerdict fip)
{
    if (elements.empty()) throw PreconditionError("filter base must be non-empty");
    FilterBase out;
    out.elements_ = std::move(elements);
    out.fip_ = std::move(fip);
    return out;
}

std::vector<SetExpr> FilterBase::sets() const
{
    std::vector<SetExpr> out;
    for (const auto& e : elements_) out.push_back(e.set);
    return out;
}

std::string FilterBase::describe() const { return describe_sets(sets()); }

PrincipalUF principal_sum(Nat n, Nat m)
{
    if (n == 0 || m == 0) throw DomainError("principal ultrafilters sit on positive integers");
    return PrincipalUF{n + m};
}

bool principal_sum_contains_by_definition(const SetExpr& a, Nat n, Nat m)
{
    PrincipalUF p{n};
    PrincipalUF q{m};
    // X = {x : A - x ∈ p}; membership of X in q is membership of q's point.
    auto in_x = [&](Nat x) { return p.contains(left_shift(a, x)); };
    return in_x(q.point);
}

FilterBase glazer_sum_base(const FilterBase& f, const FilterBase& g)
{
    if (f.fip().value == Truth::No || g.fip().value == Truth::No)
        throw PreconditionError("Glazer sum needs bases with the finite intersection property");
    std::vector<BaseElement> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            SetExpr sum = simplify(SetExpr::sumset(f.elements()[i].set, g.elements()[j].set));
            out.push_back({sum, "F#" + std::to_string(i) + " ⊕ G#" + std::to_string(j), false,
                           std::make_pair(i, j)});
        }
    }
    FipVerdict fip;
    fip.value = f.fip().value == Truth::Yes && g.fip().value == Truth::Yes ? Truth::Yes : Truth::Unknown;
    return FilterBase::from_elements(std::move(out), std::move(fip));
}

GlazerVerdict glazer_member(const SetExpr& a, const FilterBase& f, const FilterBase& g, Nat horizon)
{
    FilterBase sums = glazer_sum_base(f, g);
    GlazerVerdict v;
    for (const auto& el : sums.elements()) {
        if (auto inc = prove_contains(a, el.set)) {
            v.value = Truth::Yes;
            v.derivation = Derivation{"contains a Glazer sum base element", print(a),
                                      {Derivation{"sumset base element " + el.provenance, print(el.set), {}},
                                       std::move(*inc)}};
            return v;
        }
    }
    for (const auto& el : sums.elements()) {
        if (provably_disjoint(a, el.set)) {
            v.value = Truth::No;
            v.derivation = Derivation{"disjoint from a Glazer sum base element", print(a),
                                      {Derivation{"sumset base element " + el.provenance, print(el.set), {}},
                                       Derivation{"disjoint by simplification",
                                                  print(a) + " ∩ " + print(el.set) + " = ∅", {}}}};
            return v;
        }
    }
    for (const auto& el : sums.elements()) {
        auto [i, j] = *el.source;
        ShiftSample s{i, j, 0, 0, 0};
        const SetExpr& fi = f.elements()[i].set;
        for (Nat x : take(g.elements()[j].set, kShiftSamples, horizon)) {
            ++s.sampled;
            auto c = contains(left_shift(a, x), fi, horizon);
            if (c.verdict == Truth::Yes) ++s.contained;
            else if (c.verdict == Truth::No) ++s.refuted;
        }
        v.samples.push_back(s);
    }
    return v;
}

Verdict is_harmonic_base(const FilterBase& f, const ClassifyOptions& options)
{
    Verdict out;
    std::vector<Derivation> harmonic;
    std::optional<Verdict> first_unknown;
    ClassifyOptions quiet = options;
    quiet.diagnostics = false;
    for (const auto& el : f.elements()) {
        Verdict v = classify(el.set, quiet);
        if (v.value == Truth::No) {
            out.value = Truth::No;
            out.derivation = Derivation{"base contains an anharmonic set", f.describe(), {std::move(*v.derivation)}};
            return out;
        }
        if (v.value == Truth::Yes) harmonic.push_back(std::move(*v.derivation));
        else if (!first_unknown) first_unknown = classify(el.set, options);
    }
    if (first_unknown) {
        out.diagnostic = std::move(first_unknown->diagnostic);
        return out;
    }
    out.value = Truth::Yes;
    out.derivation = Derivation{"every base element is harmonic, hence every superset", f.describe(),
                                std::move(harmonic)};
    return out;
}

std::optional<Nat> sumset_contract_violation(const SetExpr& fi, const SetExpr& gj, Nat horizon)
{
    SetExpr sum = simplify(SetExpr::sumset(fi, gj));
    auto f_values = enumerate(fi, horizon);
    for (Nat x : enumerate(gj, horizon)) {
        for (Nat y : f_values) {
            if (y + x > horizon) break;
            if (!member(sum, y + x)) return x;
        }
    }
    return std::nullopt;
}

}  // namespace ultraharmonic
