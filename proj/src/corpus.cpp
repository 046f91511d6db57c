#include "ultraharmonic/corpus.hpp"

namespace ultraharmonic {

Nat Corpus::uniform(Nat lo, Nat hi) { return lo + rng_() % (hi - lo + 1); }

bool Corpus::coin(unsigned percent) { return rng_() % 100 < percent; }

std::vector<Nat> Corpus::finite_values(std::size_t max_count, Nat max_value)
{
    std::size_t n = uniform(1, max_count);
    std::vector<Nat> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(uniform(1, max_value));
    return v;
}

SetExpr Corpus::primitive()
{
    switch (uniform(0, 5)) {
    case 0: return SetExpr::finite(finite_values(8, 200));
    case 1:
    case 2: return SetExpr::ap(uniform(1, 30), uniform(1, 12));
    case 3: return SetExpr::powers(uniform(2, 5));
    case 4: return SetExpr::kth_powers(uniform(2, 4));
    default: return SetExpr::primes();
    }
}

SetExpr Corpus::definite()
{
    SetExpr e = primitive();
    switch (uniform(0, 3)) {
    case 0: return SetExpr::shifted(e, uniform(1, 50));
    case 1: return SetExpr::left_shifted(e, uniform(1, 50));
    default: return e;
    }
}

SetExpr Corpus::infinite()
{
    SetExpr e = coin(50) ? SetExpr::ap(uniform(1, 40), uniform(1, 20)) : SetExpr::primes();
    switch (uniform(0, 2)) {
    case 0: return SetExpr::shifted(e, uniform(1, 100));
    case 1: return SetExpr::left_shifted(e, uniform(1, 10));
    default: return e;
    }
}

SetExpr Corpus::expression(int depth)
{
    if (depth <= 0 || coin(30)) return primitive();
    auto sub = [&] { return expression(depth - 1); };
    switch (uniform(0, 6)) {
    case 0: return SetExpr::shifted(sub(), uniform(1, 20));
    case 1: return SetExpr::left_shifted(sub(), uniform(1, 20));
    case 2: {
        std::vector<SetExpr> parts;
        for (Nat i = uniform(2, 3); i > 0; --i) parts.push_back(sub());
        return SetExpr::union_of(std::move(parts));
    }
    case 3: {
        std::vector<SetExpr> parts;
        for (Nat i = uniform(2, 3); i > 0; --i) parts.push_back(sub());
        return SetExpr::intersection_of(std::move(parts));
    }
    case 4: return SetExpr::difference(sub(), sub());
    case 5: return SetExpr::sumset(sub(), SetExpr::finite(finite_values(4, 30)));
    default: return SetExpr::sumset(sub(), sub());
    }
}

std::vector<SetExpr> Corpus::harmonic_base()
{
    Nat point = uniform(1, 60);
    std::vector<SetExpr> base;
    for (Nat i = uniform(1, 3); i > 0; --i) {
        Nat d = uniform(1, 12);
        Nat first = (point - 1) % d + 1;
        base.push_back(SetExpr::ap(first + d * uniform(0, 3), d));
    }
    if (coin(30)) base.push_back(SetExpr::union_of({base.front(), SetExpr::powers(uniform(2, 4))}));
    return base;
}

std::vector<SetExpr> Corpus::fip_base()
{
    switch (uniform(0, 4)) {
    case 0: return {SetExpr::powers(uniform(2, 5))};
    case 1: return {SetExpr::finite(finite_values(5, 100))};
    case 2: return {SetExpr::kth_powers(uniform(2, 3)), SetExpr::ap(1, 1 + uniform(0, 3))};
    case 3: return {SetExpr::primes()};
    default: return harmonic_base();
    }
}

}  // namespace ultraharmonic
