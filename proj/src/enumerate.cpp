#include "node.hpp"
#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <queue>

namespace ultraharmonic {
namespace detail {
namespace {

using K = SetExpr::Kind;

class EmptySource final : public Source {
public:
    std::optional<Nat> next() override { return std::nullopt; }
};

class ListSource final : public Source {
public:
    ListSource(SetExpr e, Nat horizon) : e_(std::move(e)), horizon_(horizon) {}

    std::optional<Nat> next() override
    {
        const auto& v = e_.values();
        if (i_ >= v.size() || v[i_] > horizon_) return std::nullopt;
        return v[i_++];
    }

private:
    SetExpr e_;
    Nat horizon_;
    std::size_t i_ = 0;
};

class ApSource final : public Source {
public:
    ApSource(Nat first, Nat diff, Nat horizon) : cur_(first), diff_(diff), horizon_(horizon) {}

    std::optional<Nat> next() override
    {
        if (done_ || cur_ > horizon_) return std::nullopt;
        Nat v = cur_;
        if (cur_ > horizon_ - diff_) done_ = true;  // also guards overflow
        else cur_ += diff_;
        return v;
    }

private:
    Nat cur_;
    Nat diff_;
    Nat horizon_;
    bool done_ = false;
};

class PowersSource final : public Source {
public:
    PowersSource(Nat base, Nat horizon) : cur_(base), base_(base), horizon_(horizon) {}

    std::optional<Nat> next() override
    {
        if (done_ || cur_ > horizon_) return std::nullopt;
        Nat v = cur_;
        if (cur_ > horizon_ / base_) done_ = true;
        else cur_ *= base_;
        return v;
    }

private:
    Nat cur_;
    Nat base_;
    Nat horizon_;
    bool done_ = false;
};

class KthPowersSource final : public Source {
public:
    KthPowersSource(Nat k, Nat horizon) : k_(k), horizon_(horizon) {}

    std::optional<Nat> next() override
    {
        auto v = checked_pow(n_, k_);
        if (!v || *v > horizon_) return std::nullopt;
        ++n_;
        return *v;
    }

private:
    Nat n_ = 1;
    Nat k_;
    Nat horizon_;
};

class TablePrimesSource final : public Source {
public:
    TablePrimesSource(std::shared_ptr<const primes::PrimeTable> table, Nat horizon)
        : table_(std::move(table)), horizon_(horizon) {}

    std::optional<Nat> next() override
    {
        if (cur_ > horizon_) return std::nullopt;
        auto p = table_->next_prime(cur_);
        if (!p || *p > horizon_) {
            cur_ = horizon_ + 1;
            return std::nullopt;
        }
        cur_ = *p + 1;
        return p;
    }

private:
    std::shared_ptr<const primes::PrimeTable> table_;
    Nat horizon_;
    Nat cur_ = 2;
};

class SieveSource final : public Source {
public:
    explicit SieveSource(Nat horizon) : sieve_(2, horizon) {}
    std::optional<Nat> next() override { return sieve_.next(); }

private:
    primes::SegmentedSieve sieve_;
};

class ShiftedSource final : public Source {
public:
    ShiftedSource(const SetExpr& inner, Nat s, Nat horizon) : inner_(inner, horizon - s), s_(s) {}

    std::optional<Nat> next() override
    {
        auto v = inner_.next();
        if (!v) return std::nullopt;
        return *v + s_;
    }

private:
    Enumerator inner_;
    Nat s_;
};

class LeftShiftSource final : public Source {
public:
    LeftShiftSource(const SetExpr& inner, Nat x, Nat horizon)
        : inner_(inner, saturating_add(horizon, x)), x_(x), horizon_(horizon) {}

    std::optional<Nat> next() override
    {
        while (auto v = inner_.next()) {
            if (*v <= x_) continue;
            if (*v - x_ > horizon_) return std::nullopt;
            return *v - x_;
        }
        return std::nullopt;
    }

private:
    Enumerator inner_;
    Nat x_;
    Nat horizon_;
};

class UnionSource final : public Source {
public:
    UnionSource(const std::vector<SetExpr>& parts, Nat horizon)
    {
        for (const auto& p : parts) streams_.emplace_back(p, horizon);
        for (std::size_t i = 0; i < streams_.size(); ++i) advance(i);
    }

    std::optional<Nat> next() override
    {
        while (!heap_.empty()) {
            auto [v, i] = heap_.top();
            heap_.pop();
            advance(i);
            if (last_ && *last_ == v) continue;
            last_ = v;
            return v;
        }
        return std::nullopt;
    }

private:
    using Item = std::pair<Nat, std::size_t>;

    void advance(std::size_t i)
    {
        if (auto v = streams_[i].next()) heap_.emplace(*v, i);
    }

    std::vector<Enumerator> streams_;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap_;
    std::optional<Nat> last_;
};

// Drives the cheapest operand and filters by membership in the rest.
class FilterSource final : public Source {
public:
    FilterSource(const SetExpr& lead, std::vector<SetExpr> keep, std::vector<SetExpr> drop, Nat horizon)
        : lead_(lead, horizon), keep_(std::move(keep)), drop_(std::move(drop)) {}

    std::optional<Nat> next() override
    {
        while (auto v = lead_.next()) {
            bool ok = std::all_of(keep_.begin(), keep_.end(), [&](const SetExpr& c) { return member(c, *v); }) &&
                      std::none_of(drop_.begin(), drop_.end(), [&](const SetExpr& c) { return member(c, *v); });
            if (ok) return v;
        }
        return std::nullopt;
    }

private:
    Enumerator lead_;
    std::vector<SetExpr> keep_;
    std::vector<SetExpr> drop_;
};

// Block-wise convolution: the sparser operand is pulled element by element,
// the denser one is kept as a bitset, and each block of output values is the
// OR of the translates u + dense. Blocks double in size so short prefixes
// stay cheap.
class SumsetSource final : public Source {
public:
    SumsetSource(const SetExpr& sparse, const SetExpr& dense, Nat horizon)
        : sparse_(sparse, horizon), dense_(dense, horizon), horizon_(horizon)
    {
    }

    std::optional<Nat> next() override
    {
        while (true) {
            while (word_ < block_.size()) {
                if (block_[word_]) {
                    int bit = std::countr_zero(block_[word_]);
                    block_[word_] &= block_[word_] - 1;
                    return lo_ + word_ * 64 + static_cast<Nat>(bit);
                }
                ++word_;
            }
            if (done_ || !fill()) return std::nullopt;
        }
    }

private:
    static constexpr Nat kFirstBlock = 1 << 12;
    static constexpr Nat kMaxBlock = 1 << 22;

    // Bits [pos, pos + 64) of the dense bitset; negative positions read as 0.
    std::uint64_t window(std::int64_t pos) const
    {
        if (pos <= -64) return 0;
        if (pos < 0) return bits_.empty() ? 0 : bits_[0] << (-pos);
        auto w = static_cast<std::size_t>(pos / 64);
        auto sh = static_cast<unsigned>(pos % 64);
        std::uint64_t lo = w < bits_.size() ? bits_[w] : 0;
        if (sh == 0) return lo;
        std::uint64_t hi = w + 1 < bits_.size() ? bits_[w + 1] : 0;
        return (lo >> sh) | (hi << (64 - sh));
    }

    void extend_dense(Nat upto)
    {
        while (!dense_done_ && dense_top_ < upto) {
            auto v = dense_.next();
            if (!v) {
                dense_done_ = true;
                break;
            }
            dense_top_ = *v;
            if (bits_.size() <= *v / 64) bits_.resize(*v / 64 + 1, 0);
            bits_[*v / 64] |= std::uint64_t{1} << (*v % 64);
        }
    }

    bool fill()
    {
        if (next_lo_ > horizon_) {
            done_ = true;
            return false;
        }
        lo_ = next_lo_;
        Nat hi = lo_ + std::min(size_, horizon_ - lo_ + 1);  // exclusive
        next_lo_ = hi;
        size_ = std::min(size_ * 2, kMaxBlock);

        while (!sparse_done_ && (us_.empty() || us_.back() + 1 < hi)) {
            auto u = sparse_.next();
            if (!u) sparse_done_ = true;
            else us_.push_back(*u);
        }
        block_.assign((hi - lo_ + 63) / 64, 0);
        word_ = 0;
        if (us_.empty()) {
            done_ = sparse_done_;
            return !done_;
        }
        extend_dense(hi - us_.front());
        std::size_t nwords = block_.size();
        Nat tail = (hi - lo_) % 64;
        // bits past hi start set so a saturated block is all ones
        if (tail) block_.back() = ~((std::uint64_t{1} << tail) - 1);
        std::size_t full = 0;  // block_[0, full) is all ones
        for (std::size_t i = 0; i < us_.size() && us_[i] + 1 < hi; ++i) {
            if (i % 32 == 0) {
                while (full < nwords && block_[full] == ~std::uint64_t{0}) ++full;
                if (full == nwords) break;
            }
            auto base = static_cast<std::int64_t>(lo_) - static_cast<std::int64_t>(us_[i]);
            std::size_t w0 = base < 0 ? static_cast<std::size_t>(-base) / 64 : 0;
            for (std::size_t w = std::max(w0, full); w < nwords; ++w)
                block_[w] |= window(base + static_cast<std::int64_t>(64 * w));
        }
        if (tail) block_.back() &= (std::uint64_t{1} << tail) - 1;
        if (sparse_done_ && dense_done_ && us_.back() + dense_top_ < hi) done_ = true;
        return true;
    }

    Enumerator sparse_;
    Enumerator dense_;
    Nat horizon_;
    std::vector<Nat> us_;
    bool sparse_done_ = false;
    std::vector<std::uint64_t> bits_;
    Nat dense_top_ = 0;
    bool dense_done_ = false;
    std::vector<std::uint64_t> block_;
    std::size_t word_ = 0;
    Nat lo_ = 2;
    Nat next_lo_ = 2;
    Nat size_ = kFirstBlock;
    bool done_ = false;
};

std::size_t cheapest(const std::vector<SetExpr>& parts, Nat horizon)
{
    std::size_t best = 0;
    double best_count = estimated_count(parts[0], horizon);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        double c = estimated_count(parts[i], horizon);
        if (c < best_count) {
            best = i;
            best_count = c;
        }
    }
    return best;
}

}  // namespace

std::unique_ptr<Source> make_source(const SetExpr& e, Nat horizon)
{
    if (horizon == 0) return std::make_unique<EmptySource>();
    switch (e.kind()) {
    case K::Finite:
    case K::FromFile: return std::make_unique<ListSource>(e, horizon);
    case K::AP: return std::make_unique<ApSource>(e.first(), e.diff(), horizon);
    case K::Powers: return std::make_unique<PowersSource>(e.base(), horizon);
    case K::KthPowers: return std::make_unique<KthPowersSource>(e.k(), horizon);
    case K::Primes:
        if (auto table = primes::installed_table(); table && horizon <= table->limit())
            return std::make_unique<TablePrimesSource>(std::move(table), horizon);
        return std::make_unique<SieveSource>(horizon);
    case K::Shifted:
        if (horizon <= e.offset()) return std::make_unique<EmptySource>();
        return std::make_unique<ShiftedSource>(e.children()[0], e.offset(), horizon);
    case K::LeftShift: return std::make_unique<LeftShiftSource>(e.children()[0], e.offset(), horizon);
    case K::Union: return std::make_unique<UnionSource>(e.children(), horizon);
    case K::Intersection: {
        std::size_t lead = cheapest(e.children(), horizon);
        std::vector<SetExpr> rest;
        for (std::size_t i = 0; i < e.children().size(); ++i)
            if (i != lead) rest.push_back(e.children()[i]);
        return std::make_unique<FilterSource>(e.children()[lead], std::move(rest), std::vector<SetExpr>{},
                                              horizon);
    }
    case K::Difference:
        return std::make_unique<FilterSource>(e.children()[0], std::vector<SetExpr>{},
                                              std::vector<SetExpr>{e.children()[1]}, horizon);
    case K::Sumset: {
        const SetExpr& a = e.children()[0];
        const SetExpr& b = e.children()[1];
        bool drive_a = estimated_count(a, horizon) <= estimated_count(b, horizon);  // a is sparser
        return std::make_unique<SumsetSource>(drive_a ? a : b, drive_a ? b : a, horizon);
    }
    }
    return std::make_unique<EmptySource>();
}

}  // namespace detail

Enumerator::Enumerator(const SetExpr& e, Nat horizon) : source_(detail::make_source(e, horizon)) {}
Enumerator::Enumerator(Enumerator&&) noexcept = default;
Enumerator& Enumerator::operator=(Enumerator&&) noexcept = default;
Enumerator::~Enumerator() = default;

std::optional<Nat> Enumerator::next() { return source_->next(); }

std::vector<Nat> enumerate(const SetExpr& e, Nat horizon)
{
    std::vector<Nat> out;
    Enumerator it(e, horizon);
    while (auto v = it.next()) out.push_back(*v);
    return out;
}

std::vector<Nat> take(const SetExpr& e, std::size_t count, Nat horizon)
{
    std::vector<Nat> out;
    Enumerator it(e, horizon);
    while (out.size() < count) {
        auto v = it.next();
        if (!v) break;
        out.push_back(*v);
    }
    return out;
}

}  // namespace ultraharmonic
