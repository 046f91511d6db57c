#pragma once

#include "ultraharmonic/config.hpp"
#include "ultraharmonic/setexpr.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

namespace ultraharmonic {

struct GapProfile {
    Nat horizon = 0;
    std::size_t elements = 0;
    std::vector<Nat> gaps;  // successive differences of enumerate(e, horizon)
    // bound b -> most consecutive elements whose successive gaps are all <= b;
    // keyed by every distinct gap value
    std::map<Nat, std::size_t> profile;
    Nat max_gap = 0;

    // Value of the step function at an arbitrary bound.
    std::size_t longest_run(Nat bound) const;
};

// b consecutive integers start, ..., start+b-1, each with a recorded proper
// divisor, none of them prime.
struct GapCertificate {
    Nat bound = 0;
    mpz_class start;
    Nat length = 0;
    std::vector<Nat> divisors;
};

struct SyndeticVerdict {
    Truth value = Truth::Unknown;
    std::optional<Derivation> derivation;
    std::optional<Nat> bound;                    // Yes: a gap bound that admits arbitrarily long windows
    std::optional<GapCertificate> certificate;   // Primes: factorial gap witness
    std::optional<GapProfile> profile;           // Unknown: finite-prefix diagnostic
};

struct SyndeticOptions {
    bool diagnostics = true;
    Nat profile_horizon = 100'000;
    Nat certificate_bound = 10;
};

GapProfile gap_profile(const SetExpr& e, Nat horizon);

// Piecewise syndetic: some bound b admits arbitrarily long runs whose
// successive gaps are <= b. Definite verdicts come from structure only.
SyndeticVerdict classify_psyndetic(const SetExpr& e, const SyndeticOptions& options = {});

inline constexpr Nat kMaxCertificateBound = 20;

// start = (b+1)! + 2; position i divides (b+1)! + i for i = 2..b+1.
GapCertificate prime_gap_certificate(Nat b);

// Every recorded divisor properly divides its position (arbitrary precision).
bool validate_certificate(const GapCertificate& c);

}  // namespace ultraharmonic
