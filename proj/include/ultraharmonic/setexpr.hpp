#pragma once

#include "ultraharmonic/primes.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ultraharmonic {

class SetExpr;

namespace detail {
struct Node;
class Source;
}  // namespace detail

// Immutable symbolic description of a subset of N = {1, 2, 3, ...}.
// Copies share structure; every operation below is a pure function.
class SetExpr {
public:
    enum class Kind {
        Finite,
        AP,
        Powers,
        KthPowers,
        Primes,
        Shifted,
        LeftShift,
        Union,
        Intersection,
        Difference,
        Sumset,
        FromFile,
    };

    // Values may arrive unsorted or with duplicates; zero is a DomainError.
    static SetExpr finite(std::vector<Nat> values);
    static SetExpr empty() { return finite({}); }
    static SetExpr ap(Nat first, Nat diff);
    static SetExpr naturals() { return ap(1, 1); }
    static SetExpr powers(Nat base);
    static SetExpr kth_powers(Nat k);
    static SetExpr primes();
    static SetExpr shifted(SetExpr inner, Nat s);
    static SetExpr left_shifted(SetExpr inner, Nat x);
    static SetExpr union_of(std::vector<SetExpr> parts);
    static SetExpr intersection_of(std::vector<SetExpr> parts);
    static SetExpr difference(SetExpr a, SetExpr b);
    static SetExpr sumset(SetExpr a, SetExpr b);
    // Reads and validates the file immediately (InputError on bad data).
    static SetExpr from_file(const std::string& path);

    Kind kind() const;

    // Finite / FromFile values, ascending.
    const std::vector<Nat>& values() const;
    Nat first() const;   // AP
    Nat diff() const;    // AP
    Nat base() const;    // Powers
    Nat k() const;       // KthPowers
    Nat offset() const;  // Shifted s, LeftShift x
    const std::string& path() const;  // FromFile
    // Shifted/LeftShift: one child. Difference/Sumset: two. Union/Intersection: n.
    const std::vector<SetExpr>& children() const;

    bool is_empty_finite() const { return kind() == Kind::Finite && values().empty(); }
    bool is_naturals() const { return kind() == Kind::AP && first() == 1 && diff() == 1; }

    friend bool operator==(const SetExpr& a, const SetExpr& b);
    friend bool operator!=(const SetExpr& a, const SetExpr& b) { return !(a == b); }

private:
    explicit SetExpr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const detail::Node> node_;
};

const char* kind_name(SetExpr::Kind kind);

// Membership. Total for every constructor.
bool member(const SetExpr& e, Nat n);

// Pull-based ascending stream of the members of e that are <= horizon.
class Enumerator {
public:
    Enumerator(const SetExpr& e, Nat horizon);
    Enumerator(Enumerator&&) noexcept;
    Enumerator& operator=(Enumerator&&) noexcept;
    ~Enumerator();

    std::optional<Nat> next();

private:
    std::unique_ptr<detail::Source> source_;
};

std::vector<Nat> enumerate(const SetExpr& e, Nat horizon);

// First `count` members (fewer if the horizon is reached first).
std::vector<Nat> take(const SetExpr& e, std::size_t count, Nat horizon);

// Rough number of members <= horizon; used to pick the cheapest stream to
// drive intersections and sumsets.
double estimated_count(const SetExpr& e, Nat horizon);

// s + e
SetExpr shift(const SetExpr& e, Nat s);
// e - x = {y >= 1 : y + x in e}
SetExpr left_shift(const SetExpr& e, Nat x);

SetExpr simplify(const SetExpr& e);

// Returns true only when a ∩ b = ∅ is proved symbolically.
bool provably_disjoint(const SetExpr& a, const SetExpr& b);

enum class Truth { Yes, No, Unknown };
const char* truth_name(Truth t);

// One node of a rule derivation: `rule` applied to `subject` (printed in the
// expression grammar) from the listed premises.
struct Derivation {
    std::string rule;
    std::string subject;
    std::vector<Derivation> premises;
};

struct Containment {
    Truth verdict = Truth::Unknown;
    std::optional<Nat> witness;           // No: member of b outside a
    std::optional<Derivation> derivation;  // Yes
};

// Is b a subset of a? Yes only from a symbolic derivation, No only with a
// counterexample <= horizon.
Containment contains(const SetExpr& a, const SetExpr& b, Nat horizon);

// The symbolic half of contains(): a derivation of b ⊆ a, or nullopt.
std::optional<Derivation> prove_contains(const SetExpr& a, const SetExpr& b);

// Expression language. print() output always parses back.
std::string print(const SetExpr& e);
SetExpr parse(std::string_view text);

}  // namespace ultraharmonic
