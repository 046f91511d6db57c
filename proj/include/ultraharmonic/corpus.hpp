#pragma once

#include "ultraharmonic/setexpr.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ultraharmonic {

// Seeded generator of random expressions. Draws use plain modular reduction
// of mt19937_64 output so a seed names the same corpus on every platform.
class Corpus {
public:
    explicit Corpus(std::uint64_t seed) : rng_(seed) {}

    Nat uniform(Nat lo, Nat hi);  // inclusive
    bool coin(unsigned percent);

    // Finite, AP, Powers, KthPowers or Primes with small parameters.
    SetExpr primitive();
    // A primitive, possibly shifted either way; the classifier gives every
    // one of these a definite verdict.
    SetExpr definite();
    // AP, Primes or shifts of them: plenty of elements at desk scale.
    SetExpr infinite();
    // Any constructor except FromFile, nested up to `depth`.
    SetExpr expression(int depth = 3);

    std::vector<Nat> finite_values(std::size_t max_count, Nat max_value);

    // Progressions through a common point, optionally with one harmonic
    // union; canonicalizes to a harmonic base.
    std::vector<SetExpr> harmonic_base();
    // A base with the finite intersection property (not necessarily harmonic).
    std::vector<SetExpr> fip_base();

private:
    std::mt19937_64 rng_;
};

}  // namespace ultraharmonic
