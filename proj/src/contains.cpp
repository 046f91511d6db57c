#include "node.hpp"
#include "ultraharmonic/setexpr.hpp"

#include <algorithm>

namespace ultraharmonic {
namespace {

using K = SetExpr::Kind;

constexpr int kMaxDepth = 8;
constexpr std::size_t kSumsetProbe = 4;       // known elements of a sumset operand tried as translates
constexpr Nat kSumsetProbeHorizon = 1 << 20;

std::string inclusion(const SetExpr& a, const SetExpr& b) { return print(b) + " ⊆ " + print(a); }

Derivation leaf(std::string rule, const SetExpr& a, const SetExpr& b)
{
    return Derivation{std::move(rule), inclusion(a, b), {}};
}

std::optional<Derivation> prove(const SetExpr& a, const SetExpr& b, int depth);

bool finite_like(const SetExpr& e) { return e.kind() == K::Finite || e.kind() == K::FromFile; }

std::optional<Derivation> prove_raw(const SetExpr& a, const SetExpr& b, int depth)
{
    if (b.is_empty_finite()) return leaf("empty set is a subset", a, b);
    if (a == b) return leaf("reflexivity", a, b);
    if (a.is_naturals()) return leaf("N contains every set", a, b);
    if (finite_like(b)) {
        if (std::all_of(b.values().begin(), b.values().end(), [&](Nat v) { return member(a, v); }))
            return leaf("finite: every element is a member", a, b);
        return std::nullopt;
    }
    if (a.kind() == K::AP && b.kind() == K::AP) {
        if (b.diff() % a.diff() == 0 && b.first() >= a.first() && (b.first() - a.first()) % a.diff() == 0)
            return leaf("AP inclusion", a, b);
        return std::nullopt;
    }
    if (a.kind() == K::Powers && b.kind() == K::Powers) {
        Nat q = b.base();
        while (q % a.base() == 0) q /= a.base();
        if (q == 1) return leaf("powers inclusion", a, b);
        return std::nullopt;
    }
    if (a.kind() == K::KthPowers && b.kind() == K::KthPowers) {
        if (b.k() % a.k() == 0) return leaf("kth powers inclusion", a, b);
        return std::nullopt;
    }
    if (depth >= kMaxDepth) return std::nullopt;

    auto step = [&](std::string rule, std::vector<Derivation> premises) {
        return Derivation{std::move(rule), inclusion(a, b), std::move(premises)};
    };

    switch (b.kind()) {
    case K::Union: {
        std::vector<Derivation> premises;
        for (const auto& c : b.children()) {
            auto d = prove(a, c, depth + 1);
            if (!d) {
                premises.clear();
                break;
            }
            premises.push_back(std::move(*d));
        }
        if (!premises.empty()) return step("union of subsets", std::move(premises));
        break;
    }
    case K::Intersection:
        for (const auto& c : b.children()) {
            if (auto d = prove(a, c, depth + 1)) return step("intersection inside an operand", {std::move(*d)});
        }
        break;
    case K::Difference:
        if (auto d = prove(a, b.children()[0], depth + 1)) return step("difference inside minuend", {std::move(*d)});
        break;
    default: break;
    }

    switch (a.kind()) {
    case K::Union:
        for (const auto& c : a.children()) {
            if (auto d = prove(c, b, depth + 1)) return step("subset of a union operand", {std::move(*d)});
        }
        break;
    case K::Intersection: {
        std::vector<Derivation> premises;
        for (const auto& c : a.children()) {
            auto d = prove(c, b, depth + 1);
            if (!d) return std::nullopt;
            premises.push_back(std::move(*d));
        }
        return step("subset of every intersection operand", std::move(premises));
    }
    case K::Difference: {
        auto d = prove(a.children()[0], b, depth + 1);
        if (d && provably_disjoint(b, a.children()[1])) {
            Derivation disjoint{"disjoint by simplification", print(b) + " ∩ " + print(a.children()[1]) + " = ∅", {}};
            return step("subset of minuend, disjoint from subtrahend", {std::move(*d), std::move(disjoint)});
        }
        break;
    }
    case K::Shifted:
        if (b.kind() == K::Shifted && b.offset() >= a.offset()) {
            SetExpr inner_b = b.offset() == a.offset() ? b.children()[0]
                                                      : simplify(SetExpr::shifted(b.children()[0], b.offset() - a.offset()));
            if (auto d = prove(a.children()[0], inner_b, depth + 1)) return step("shift is monotone", {std::move(*d)});
        }
        break;
    case K::LeftShift:
        if (b.kind() == K::LeftShift && b.offset() == a.offset()) {
            if (auto d = prove(a.children()[0], b.children()[0], depth + 1))
                return step("left shift is monotone", {std::move(*d)});
        }
        break;
    case K::Sumset: {
        const SetExpr& c = a.children()[0];
        const SetExpr& d = a.children()[1];
        if (b.kind() == K::Sumset) {
            auto l = prove(c, b.children()[0], depth + 1);
            auto r = l ? prove(d, b.children()[1], depth + 1) : std::nullopt;
            if (l && r) return step("sumset is monotone", {std::move(*l), std::move(*r)});
        }
        for (int side = 0; side < 2; ++side) {
            const SetExpr& known = side == 0 ? c : d;
            const SetExpr& other = side == 0 ? d : c;
            for (Nat u : take(known, kSumsetProbe, kSumsetProbeHorizon)) {
                SetExpr translate = simplify(SetExpr::shifted(other, u));
                if (auto p = prove(translate, b, depth + 1)) {
                    Derivation elem{"element of operand", std::to_string(u) + " ∈ " + print(known), {}};
                    return step("sumset contains a translate", {std::move(elem), std::move(*p)});
                }
            }
        }
        break;
    }
    default: break;
    }
    return std::nullopt;
}

std::optional<Derivation> prove(const SetExpr& a, const SetExpr& b, int depth)
{
    return prove_raw(simplify(a), simplify(b), depth);
}

}  // namespace

std::optional<Derivation> prove_contains(const SetExpr& a, const SetExpr& b) { return prove(a, b, 0); }

Containment contains(const SetExpr& a, const SetExpr& b, Nat horizon)
{
    if (auto d = prove_contains(a, b)) return {Truth::Yes, std::nullopt, std::move(d)};
    Enumerator it(b, horizon);
    while (auto v = it.next()) {
        if (!member(a, *v)) return {Truth::No, *v, std::nullopt};
    }
    return {};
}

}  // namespace ultraharmonic
