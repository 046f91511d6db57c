#include "node.hpp"
#include "ultraharmonic/setexpr.hpp"

#include <algorithm>
#include <numeric>

namespace ultraharmonic {
namespace {

using K = SetExpr::Kind;
using i128 = __int128;

constexpr Nat kMaxFiniteExpansion = 64;   // Sumset(Finite, X) expands into at most this many translates
constexpr Nat kMaxConductor = 1 << 16;    // Sumset(AP, AP) exception list bound
constexpr i128 kNatLimit = static_cast<i128>(1) << 62;

struct ApMeet {
    bool reduced = false;  // false: overflow, leave the intersection alone
    bool empty = false;
    Nat first = 0;
    Nat diff = 0;
};

i128 ext_gcd(i128 a, i128 b, i128& x, i128& y)
{
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    i128 x1, y1;
    i128 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

i128 mod(i128 a, i128 m)
{
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

// AP(a1,d1) ∩ AP(a2,d2) by the Chinese remainder theorem.
ApMeet meet(Nat a1, Nat d1, Nat a2, Nat d2)
{
    i128 p, q;
    i128 g = ext_gcd(d1, d2, p, q);
    i128 delta = static_cast<i128>(a2) - static_cast<i128>(a1);
    if (delta % g != 0) return {true, true, 0, 0};
    i128 m2 = d2 / g;
    i128 lcm = static_cast<i128>(d1) * m2;
    if (lcm > kNatLimit) return {};
    i128 t = mod(mod(delta / g, m2) * mod(p, m2), m2);
    i128 residue = mod(static_cast<i128>(a1) + static_cast<i128>(d1) * t, lcm);
    i128 lo = std::max(a1, a2);
    i128 first = lo + mod(residue - lo, lcm);
    if (first > kNatLimit) return {};
    return {true, false, static_cast<Nat>(first), static_cast<Nat>(lcm)};
}

SetExpr simplify_shifted(const SetExpr& inner, Nat s);
SetExpr simplify_left_shift(const SetExpr& inner, Nat x);

SetExpr simplify_union(const std::vector<SetExpr>& raw)
{
    std::vector<SetExpr> parts;
    std::vector<Nat> finite_values;
    auto absorb = [&](auto&& self, const SetExpr& e) -> void {
        SetExpr s = simplify(e);
        if (s.kind() == K::Union) {
            for (const auto& c : s.children()) self(self, c);
        } else if (s.kind() == K::Finite) {
            finite_values.insert(finite_values.end(), s.values().begin(), s.values().end());
        } else if (std::find(parts.begin(), parts.end(), s) == parts.end()) {
            parts.push_back(s);
        }
    };
    for (const auto& e : raw) absorb(absorb, e);

    // drop APs that sit inside another AP
    std::vector<SetExpr> kept;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const SetExpr& p = parts[i];
        bool covered = false;
        if (p.kind() == K::AP) {
            for (std::size_t j = 0; j < parts.size() && !covered; ++j) {
                if (i == j || parts[j].kind() != K::AP) continue;
                const SetExpr& q = parts[j];
                bool inside = p.diff() % q.diff() == 0 && p.first() >= q.first() &&
                              (p.first() - q.first()) % q.diff() == 0;
                // of two equal APs keep the earlier one
                covered = inside && (p != q || j < i);
            }
        }
        if (!covered) kept.push_back(p);
    }

    std::vector<Nat> loose;
    for (Nat v : finite_values) {
        if (std::none_of(kept.begin(), kept.end(), [v](const SetExpr& c) { return member(c, v); }))
            loose.push_back(v);
    }
    if (!loose.empty()) kept.insert(kept.begin(), SetExpr::finite(std::move(loose)));
    if (kept.empty()) return SetExpr::empty();
    if (kept.size() == 1) return kept.front();
    return SetExpr::union_of(std::move(kept));
}

SetExpr simplify_intersection(const std::vector<SetExpr>& raw)
{
    std::vector<SetExpr> parts;
    auto absorb = [&](auto&& self, const SetExpr& e) -> void {
        SetExpr s = simplify(e);
        if (s.kind() == K::Intersection) {
            for (const auto& c : s.children()) self(self, c);
        } else if (std::find(parts.begin(), parts.end(), s) == parts.end()) {
            parts.push_back(s);
        }
    };
    for (const auto& e : raw) absorb(absorb, e);

    for (const auto& p : parts) {
        if (p.is_empty_finite()) return SetExpr::empty();
    }
    // a finite operand turns the whole intersection into a membership filter
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].kind() != K::Finite && parts[i].kind() != K::FromFile) continue;
        std::vector<Nat> out;
        for (Nat v : parts[i].values()) {
            bool all = true;
            for (std::size_t j = 0; j < parts.size() && all; ++j)
                if (j != i) all = member(parts[j], v);
            if (all) out.push_back(v);
        }
        return SetExpr::finite(std::move(out));
    }

    // fold every AP operand into one by CRT
    std::vector<SetExpr> rest;
    std::optional<SetExpr> ap;
    std::size_t ap_slot = 0;
    for (const auto& p : parts) {
        if (p.kind() != K::AP) {
            rest.push_back(p);
            continue;
        }
        if (!ap) {
            ap = p;
            ap_slot = rest.size();
            rest.push_back(p);
            continue;
        }
        ApMeet m = meet(ap->first(), ap->diff(), p.first(), p.diff());
        if (!m.reduced) {
            rest.push_back(p);
            continue;
        }
        if (m.empty) return SetExpr::empty();
        ap = SetExpr::ap(m.first, m.diff);
        rest[ap_slot] = *ap;
    }
    parts = std::move(rest);

    if (parts.size() > 1) {
        std::erase_if(parts, [](const SetExpr& p) { return p.is_naturals(); });
        if (parts.empty()) return SetExpr::naturals();
    }

    // Primes ∩ AP(a,d) with g = gcd(a,d) > 1 holds at most the prime g
    bool has_primes = std::any_of(parts.begin(), parts.end(), [](const SetExpr& p) { return p.kind() == K::Primes; });
    if (has_primes) {
        for (const auto& p : parts) {
            if (p.kind() != K::AP) continue;
            Nat g = std::gcd(p.first(), p.diff());
            if (g == 1) continue;
            std::vector<Nat> candidate;
            if (primes::is_prime(g) &&
                std::all_of(parts.begin(), parts.end(), [g](const SetExpr& c) { return member(c, g); }))
                candidate.push_back(g);
            return SetExpr::finite(std::move(candidate));
        }
    }

    if (parts.size() == 1) return parts.front();
    return SetExpr::intersection_of(std::move(parts));
}

SetExpr simplify_difference(const SetExpr& raw_a, const SetExpr& raw_b)
{
    SetExpr a = simplify(raw_a);
    SetExpr b = simplify(raw_b);
    if (b.is_empty_finite()) return a;
    if (a.is_empty_finite() || a == b || b.is_naturals()) return SetExpr::empty();
    if (a.kind() == K::Finite || a.kind() == K::FromFile) {
        std::vector<Nat> out;
        for (Nat v : a.values())
            if (!member(b, v)) out.push_back(v);
        return SetExpr::finite(std::move(out));
    }
    if (provably_disjoint(a, b)) return a;
    return SetExpr::difference(a, b);
}

// Elements of the numerical semigroup generated by coprime p, q below its
// conductor (p-1)(q-1).
std::vector<Nat> semigroup_below_conductor(Nat p, Nat q)
{
    Nat conductor = (p - 1) * (q - 1);
    std::vector<Nat> out;
    for (Nat m = 0; m < conductor; ++m) {
        for (Nat i = 0; i * p <= m; ++i) {
            if ((m - i * p) % q == 0) {
                out.push_back(m);
                break;
            }
        }
    }
    return out;
}

SetExpr simplify_sumset(const SetExpr& raw_a, const SetExpr& raw_b)
{
    SetExpr a = simplify(raw_a);
    SetExpr b = simplify(raw_b);
    if (a.is_empty_finite() || b.is_empty_finite()) return SetExpr::empty();

    auto finite_like = [](const SetExpr& e) { return e.kind() == K::Finite || e.kind() == K::FromFile; };
    if (finite_like(a) && finite_like(b)) {
        std::vector<Nat> sums;
        if (a.values().size() * b.values().size() <= kMaxFiniteExpansion * kMaxFiniteExpansion) {
            for (Nat u : a.values())
                for (Nat v : b.values()) sums.push_back(u + v);
            return SetExpr::finite(std::move(sums));
        }
    }
    for (int side = 0; side < 2; ++side) {
        const SetExpr& f = side == 0 ? a : b;
        const SetExpr& x = side == 0 ? b : a;
        if (!finite_like(f) || f.values().size() > kMaxFiniteExpansion) continue;
        std::vector<SetExpr> translates;
        for (Nat u : f.values()) translates.push_back(SetExpr::shifted(x, u));
        return simplify_union(translates);
    }

    if (a.kind() == K::AP && b.kind() == K::AP) {
        Nat g = std::gcd(a.diff(), b.diff());
        Nat p = a.diff() / g;
        Nat q = b.diff() / g;
        if ((p - 1) * static_cast<i128>(q - 1) <= kMaxConductor) {
            Nat conductor = (p - 1) * (q - 1);
            Nat base = a.first() + b.first();
            std::vector<Nat> low;
            for (Nat m : semigroup_below_conductor(p, q)) low.push_back(base + g * m);
            SetExpr tail = SetExpr::ap(base + g * conductor, g);
            if (low.empty()) return tail;
            return SetExpr::union_of({SetExpr::finite(std::move(low)), tail});
        }
    }
    return SetExpr::sumset(a, b);
}

SetExpr simplify_shifted(const SetExpr& inner, Nat s)
{
    switch (inner.kind()) {
    case K::AP:
        if (inner.first() <= ~Nat{0} - s) return SetExpr::ap(inner.first() + s, inner.diff());
        break;
    case K::Finite: {
        if (!inner.values().empty() && inner.values().back() > ~Nat{0} - s) break;
        std::vector<Nat> out;
        for (Nat v : inner.values()) out.push_back(v + s);
        return SetExpr::finite(std::move(out));
    }
    case K::Shifted: return simplify_shifted(inner.children()[0], detail::saturating_add(inner.offset(), s));
    case K::Union: {
        std::vector<SetExpr> parts;
        for (const auto& c : inner.children()) parts.push_back(SetExpr::shifted(c, s));
        return simplify_union(parts);
    }
    default: break;
    }
    return SetExpr::shifted(inner, s);
}

SetExpr simplify_left_shift(const SetExpr& inner, Nat x)
{
    switch (inner.kind()) {
    case K::AP: {
        Nat f = inner.first();
        Nat d = inner.diff();
        if (f > x) return SetExpr::ap(f - x, d);
        // first term strictly above x
        Nat steps = (x - f) / d + 1;
        return SetExpr::ap(f + steps * d - x, d);
    }
    case K::Finite: {
        std::vector<Nat> out;
        for (Nat v : inner.values())
            if (v > x) out.push_back(v - x);
        return SetExpr::finite(std::move(out));
    }
    case K::LeftShift: return simplify_left_shift(inner.children()[0], detail::saturating_add(inner.offset(), x));
    case K::Shifted: {
        Nat s = inner.offset();
        const SetExpr& y = inner.children()[0];
        if (s == x) return y;
        if (s > x) return simplify_shifted(y, s - x);
        return simplify_left_shift(y, x - s);
    }
    case K::Union: {
        std::vector<SetExpr> parts;
        for (const auto& c : inner.children()) parts.push_back(SetExpr::left_shifted(c, x));
        return simplify_union(parts);
    }
    default: break;
    }
    return SetExpr::left_shifted(inner, x);
}

}  // namespace

SetExpr simplify(const SetExpr& e)
{
    switch (e.kind()) {
    case K::Finite:
    case K::AP:
    case K::Powers:
    case K::KthPowers:
    case K::Primes:
    case K::FromFile: return e;
    case K::Shifted: {
        SetExpr inner = simplify(e.children()[0]);
        if (inner.is_empty_finite()) return inner;
        return simplify_shifted(inner, e.offset());
    }
    case K::LeftShift: {
        SetExpr inner = simplify(e.children()[0]);
        if (inner.is_empty_finite()) return inner;
        return simplify_left_shift(inner, e.offset());
    }
    case K::Union: return simplify_union(e.children());
    case K::Intersection: return simplify_intersection(e.children());
    case K::Difference: return simplify_difference(e.children()[0], e.children()[1]);
    case K::Sumset: return simplify_sumset(e.children()[0], e.children()[1]);
    }
    return e;
}

bool provably_disjoint(const SetExpr& a, const SetExpr& b)
{
    return simplify(SetExpr::intersection_of({a, b})).is_empty_finite();
}

}  // namespace ultraharmonic
