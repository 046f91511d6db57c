#pragma once

#include "ultraharmonic/setexpr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ultraharmonic::detail {

struct Node {
    SetExpr::Kind kind;
    Nat a = 0;  // AP first, Powers base, KthPowers k, shift offset
    Nat b = 0;  // AP diff
    std::vector<Nat> values;
    std::vector<SetExpr> children;
    std::string path;
};

class Source {
public:
    virtual ~Source() = default;
    virtual std::optional<Nat> next() = 0;
};

std::unique_ptr<Source> make_source(const SetExpr& e, Nat horizon);

inline Nat saturating_add(Nat a, Nat b) { return a > ~Nat{0} - b ? ~Nat{0} : a + b; }

// Exact integer k-th root (floor).
Nat iroot(Nat n, Nat k);

// Checked power; nullopt on overflow.
std::optional<Nat> checked_pow(Nat base, Nat exp);

}  // namespace ultraharmonic::detail
