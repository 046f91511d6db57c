#pragma once

// Independent brute-force semantics used as test oracles. Nothing here calls
// into the library's enumeration, membership or primality code.

#include "ultraharmonic/setexpr.hpp"

#include <vector>

namespace oracle {

using ultraharmonic::Nat;
using ultraharmonic::SetExpr;

inline bool trial_prime(Nat n)
{
    if (n < 2) return false;
    for (Nat d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<char> sieve(Nat limit)
{
    std::vector<char> p(limit + 1, 1);
    p[0] = 0;
    if (limit >= 1) p[1] = 0;
    for (Nat i = 2; i * i <= limit; ++i)
        if (p[i])
            for (Nat j = i * i; j <= limit; j += i) p[j] = 0;
    return p;
}

// bits[n] for 0 <= n <= h; bits[0] is always 0.
inline std::vector<char> bits(const SetExpr& e, Nat h)
{
    using K = SetExpr::Kind;
    std::vector<char> out(h + 1, 0);
    switch (e.kind()) {
    case K::Finite:
    case K::FromFile:
        for (Nat v : e.values())
            if (v <= h) out[v] = 1;
        break;
    case K::AP:
        for (Nat n = e.first(); n <= h; n += e.diff()) out[n] = 1;
        break;
    case K::Powers:
        for (Nat p = e.base(); p <= h; p *= e.base()) {
            out[p] = 1;
            if (p > h / e.base()) break;
        }
        break;
    case K::KthPowers:
        for (Nat n = 1;; ++n) {
            Nat p = 1;
            bool over = false;
            for (Nat i = 0; i < e.k(); ++i) {
                if (p > h / n) {
                    over = true;
                    break;
                }
                p *= n;
            }
            if (over || p > h) break;
            out[p] = 1;
        }
        break;
    case K::Primes: {
        auto p = sieve(h);
        for (Nat n = 0; n <= h; ++n) out[n] = p[n];
        break;
    }
    case K::Shifted: {
        auto in = bits(e.children()[0], h);
        for (Nat n = e.offset() + 1; n <= h; ++n) out[n] = in[n - e.offset()];
        break;
    }
    case K::LeftShift: {
        auto in = bits(e.children()[0], h + e.offset());
        for (Nat n = 1; n <= h; ++n) out[n] = in[n + e.offset()];
        break;
    }
    case K::Union:
        for (const auto& c : e.children()) {
            auto in = bits(c, h);
            for (Nat n = 1; n <= h; ++n) out[n] |= in[n];
        }
        break;
    case K::Intersection:
        for (Nat n = 1; n <= h; ++n) out[n] = 1;
        for (const auto& c : e.children()) {
            auto in = bits(c, h);
            for (Nat n = 1; n <= h; ++n) out[n] &= in[n];
        }
        break;
    case K::Difference: {
        auto a = bits(e.children()[0], h);
        auto b = bits(e.children()[1], h);
        for (Nat n = 1; n <= h; ++n) out[n] = a[n] && !b[n];
        break;
    }
    case K::Sumset: {
        auto a = bits(e.children()[0], h);
        auto b = bits(e.children()[1], h);
        for (Nat u = 1; u <= h; ++u) {
            if (!a[u]) continue;
            for (Nat v = 1; u + v <= h; ++v)
                if (b[v]) out[u + v] = 1;
        }
        break;
    }
    }
    out[0] = 0;
    return out;
}

inline std::vector<Nat> members(const SetExpr& e, Nat h)
{
    auto b = bits(e, h);
    std::vector<Nat> out;
    for (Nat n = 1; n <= h; ++n)
        if (b[n]) out.push_back(n);
    return out;
}

}  // namespace oracle
