#pragma once

#include "ultraharmonic/harmonic.hpp"
#include "ultraharmonic/setexpr.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ultraharmonic {

// Witness for one subfamily (by base index) of a base: a common element, or
// a symbolic proof that the subfamily has empty intersection.
struct FipWitness {
    std::vector<std::size_t> indices;
    std::optional<Nat> common;
    std::string method;  // "symbolic", "scan", "empty", "none"
};

struct FipVerdict {
    Truth value = Truth::Unknown;
    std::vector<FipWitness> witnesses;
};

// Checks every subfamily of size 1..3. No needs a symbolic emptiness proof;
// Yes needs a common element for each subfamily.
FipVerdict fip_check(const std::vector<SetExpr>& base, Nat horizon);

struct BaseElement {
    SetExpr set;
    std::string provenance;
    bool irreducible = false;                                // adjoined intersection that did not reduce
    std::optional<std::pair<std::size_t, std::size_t>> source;  // (i, j) for Glazer sum elements
};

// Finite approximation of a filter on N by a base of structured sets.
class FilterBase {
public:
    inline static constexpr Nat kDefaultHorizon = 10'000;

    // Simplifies, removes duplicates and adjoins one round of pairwise
    // intersections. PreconditionError when the base provably lacks the
    // finite intersection property.
    static FilterBase canonical(const std::vector<SetExpr>& base, Nat horizon = kDefaultHorizon);

    // Takes elements as given; used for Glazer sums.
    static FilterBase from_elements(std::vector<BaseElement> elements, FipVerdict fip);

    const std::vector<BaseElement>& elements() const { return elements_; }
    std::vector<SetExpr> sets() const;
    const FipVerdict& fip() const { return fip_; }
    std::size_t size() const { return elements_.size(); }

    // {e1; e2; ...} in the expression grammar.
    std::string describe() const;

private:
    std::vector<BaseElement> elements_;
    FipVerdict fip_;
};

// Principal ultrafilter e(n) = {A : n in A}.
struct PrincipalUF {
    Nat point = 0;
    bool contains(const SetExpr& a) const { return member(a, point); }
};

// e(n) + e(m) = e(n + m).
PrincipalUF principal_sum(Nat n, Nat m);

// A ∈ e(n) + e(m) evaluated straight from the Glazer definition:
// is {x : A - x ∈ e(n)} a member of e(m)?
bool principal_sum_contains_by_definition(const SetExpr& a, Nat n, Nat m);

// Base {F_i ⊕ G_j}. Every A containing some F_i ⊕ G_j lies in p + q for all
// ultrafilters p ⊇ F, q ⊇ G.
FilterBase glazer_sum_base(const FilterBase& f, const FilterBase& g);

struct ShiftSample {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t sampled = 0;    // x drawn from G_j
    std::size_t contained = 0;  // F_i ⊆ A - x proved
    std::size_t refuted = 0;    // counterexample found
};

struct GlazerVerdict {
    Truth value = Truth::Unknown;
    std::optional<Derivation> derivation;
    std::vector<ShiftSample> samples;  // Unknown only
};

GlazerVerdict glazer_member(const SetExpr& a, const FilterBase& f, const FilterBase& g, Nat horizon);

// Harmonic when every base element is harmonic (all supersets then are),
// Anharmonic when some element is anharmonic.
Verdict is_harmonic_base(const FilterBase& f, const ClassifyOptions& options = {});

// For every x in G_j up to the horizon, F_i ⊆ (F_i ⊕ G_j) - x holds on the
// enumerated prefix of F_i. Returns the first failing x.
std::optional<Nat> sumset_contract_violation(const SetExpr& fi, const SetExpr& gj, Nat horizon);

}  // namespace ultraharmonic
