#include "ultraharmonic/apsearch.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <vector>

namespace ultraharmonic {
namespace {

constexpr Nat kBitmapLimit = Nat{1} << 27;

// Membership over the enumerated prefix: a bitmap for moderate horizons,
// binary search beyond.
class PrefixSet {
public:
    PrefixSet(const SetExpr& e, Nat horizon) : horizon_(horizon), values_(enumerate(e, horizon))
    {
        if (horizon <= kBitmapLimit) {
            bits_.assign(horizon + 1, false);
            for (Nat v : values_) bits_[v] = true;
        }
    }

    const std::vector<Nat>& values() const { return values_; }

    bool contains(Nat v) const
    {
        if (v == 0 || v > horizon_) return false;
        if (!bits_.empty()) return bits_[v];
        return std::binary_search(values_.begin(), values_.end(), v);
    }

private:
    Nat horizon_;
    std::vector<Nat> values_;
    std::vector<bool> bits_;
};

}  // namespace

std::optional<APWitness> find_ap(const SetExpr& e, Nat k, Nat horizon)
{
    if (k < 3) throw DomainError("progression length must be at least 3");
    PrefixSet set(e, horizon);
    const auto& v = set.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            Nat d = v[j] - v[i];
            // d only grows with j, so the first overshoot ends this start
            if (d > (horizon - v[i]) / (k - 1)) break;
            Nat t = 2;
            while (t < k && set.contains(v[i] + t * d)) ++t;
            if (t == k) return APWitness{v[i], d, k};
        }
    }
    return std::nullopt;
}

bool verify_witness(const SetExpr& e, const APWitness& w)
{
    if (w.start == 0 || w.diff == 0 || w.length == 0) return false;
    for (Nat t = 0; t < w.length; ++t) {
        if (t > 0 && w.diff > (~Nat{0} - w.start) / t) return false;
        if (!member(e, w.start + t * w.diff)) return false;
    }
    return true;
}

std::optional<APWitness> longest_ap(const SetExpr& e, Nat horizon, Nat k_cap)
{
    if (k_cap < 3) throw DomainError("k_cap must be at least 3");
    PrefixSet set(e, horizon);
    const auto& v = set.values();
    APWitness best{0, 0, 2};
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (horizon - v[i] + 1 <= best.length) break;
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            Nat d = v[j] - v[i];
            if ((horizon - v[i]) / d + 1 <= best.length) break;
            // a progression with a member before v[i] was already counted from there
            if (v[i] > d && set.contains(v[i] - d)) continue;
            Nat len = 2;
            while (len < k_cap && set.contains(v[i] + len * d)) ++len;
            if (len > best.length) {
                best = {v[i], d, len};
                if (len == k_cap) return best;
            }
        }
    }
    if (best.length < 3) return std::nullopt;
    return best;
}

}  // namespace ultraharmonic
