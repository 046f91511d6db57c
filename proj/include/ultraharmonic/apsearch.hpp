#pragma once

#include "ultraharmonic/setexpr.hpp"

#include <optional>

namespace ultraharmonic {

struct APWitness {
    Nat start = 0;
    Nat diff = 0;
    Nat length = 0;

    Nat last() const { return start + (length - 1) * diff; }
    friend bool operator==(const APWitness&, const APWitness&) = default;
};

inline constexpr Nat kDefaultApCap = 12;

// Lexicographically least (start, diff) progression of exactly k terms with
// every term <= horizon, or nullopt.
std::optional<APWitness> find_ap(const SetExpr& e, Nat k, Nat horizon);

bool verify_witness(const SetExpr& e, const APWitness& w);

// Longest progression (length <= k_cap) inside e ∩ [1, horizon]; ties go to
// the smaller start, then the smaller diff. nullopt when nothing of length 3
// exists.
std::optional<APWitness> longest_ap(const SetExpr& e, Nat horizon, Nat k_cap = kDefaultApCap);

}  // namespace ultraharmonic
