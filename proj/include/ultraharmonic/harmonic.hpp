#pragma once

#include "ultraharmonic/config.hpp"
#include "ultraharmonic/rational.hpp"
#include "ultraharmonic/setexpr.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ultraharmonic {

struct Checkpoint {
    Nat horizon = 0;
    Nat terms = 0;    // elements summed
    double value = 0; // compensated double, always present
    std::optional<mpq_class> exact;
};

// Partial sums of reciprocals at ascending horizons; non-decreasing.
struct PartialSumDiag {
    std::vector<Checkpoint> checkpoints;
    bool exact = false;
};

// Three-valued answer. For harmonicity Yes = Harmonic, No = Anharmonic.
// Definite values carry a derivation; Unknown carries the diagnostic.
struct Verdict {
    Truth value = Truth::Unknown;
    std::optional<Derivation> derivation;
    std::optional<PartialSumDiag> diagnostic;
};

const char* harmonic_name(Truth t);

struct ClassifyOptions {
    bool diagnostics = true;  // compute partial sums for Unknown verdicts
    bool exact = false;       // exact rationals for those partial sums (checkpoints <= exact cap)
    Limits limits;
};

// Sound rule-based harmonicity verdict. Axioms: AP and Primes harmonic,
// Finite, Powers and KthPowers anharmonic. Closure: unions, shifts in both
// directions, differences, sumsets and subset/superset steps.
Verdict classify(const SetExpr& e, const ClassifyOptions& options = {});

// Checks a harmonicity certificate: every node must be a known rule applied to
// a subject whose structure matches its premises. Returns the conclusion the
// certificate proves, or nullopt when it does not check out.
std::optional<Truth> validate_harmonic_certificate(const Derivation& d);

// Sum of 1/a over enumerate(e, H) at each checkpoint H.
PartialSumDiag partial_sums(const SetExpr& e, const std::vector<Nat>& checkpoints, bool exact,
                            const Limits& limits = {});

struct TranslationCheck {
    Nat s = 0;
    std::size_t n_of_s = 0;  // min{n : a_n >= s}, 1-based
    std::size_t n = 0;
    mpq_class lhs;  // sum_{n<=N} 1/(a_n + s)
    mpq_class rhs;  // sum_{n<=N(s)} 1/(a_n + s) + sum_{N(s)<n<=N} 1/(2 a_n)
    bool holds = false;
};

// Evaluates both sides of the left-translation bound exactly.
TranslationCheck check_translation_inequality(const SetExpr& e, Nat s, std::size_t n, const Limits& limits = {});

struct HindmanCheck {
    Fraction lhs;  // 1/a
    Fraction rhs;  // 1/(a-x) - x/(a(a-x))
    bool equal = false;
};

// 1/a = 1/(a-x) - x/(a(a-x)) for a > x >= 1.
HindmanCheck hindman_identity_check(Nat a, Nat x);

// sum over y in e - x with y <= horizon of 1/(y(y+x)), i.e. 1/(a(a-x)) for
// a = y + x in e. Compensated double.
double correction_series(const SetExpr& e, Nat x, Nat horizon);

// Closed form of the same series for e = N:
// (1/x) * (H_x - (H_{horizon+x} - H_horizon)), evaluated exactly.
mpq_class telescoped_correction(Nat x, Nat horizon);

// Its limit (1/x) * H_x.
mpq_class correction_limit(Nat x);

struct ResidueMod {
    Nat modulus = 2;
};

// Periodic colouring: the (color, length) runs repeat forever starting at 1.
struct Blocks {
    std::vector<std::pair<Nat, Nat>> runs;
};

// Lines "n color" covering every n <= horizon.
struct FileColoring {
    std::string path;
    Nat horizon = 0;
};

using ColoringSpec = std::variant<ResidueMod, Blocks, FileColoring>;

struct ColorClass {
    std::string label;
    SetExpr members;
    Verdict verdict;
};

std::vector<ColorClass> partition_classify(const SetExpr& e, const ColoringSpec& coloring,
                                           const ClassifyOptions& options = {});

struct Extraction {
    std::vector<Nat> values;  // c_1 < c_2 < ...
    std::vector<Nat> paired;  // b_k that produced each c
};

// For each b_k take the first element of a exceeding it, keeping distinct
// values, until `count` values are collected.
Extraction anharmonic_subset(const SetExpr& a, const SetExpr& b, std::size_t count, const Limits& limits = {});

}  // namespace ultraharmonic
