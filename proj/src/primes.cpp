#include "ultraharmonic/primes.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <string>

namespace ultraharmonic {

const char* kind_name(Error::Kind kind) noexcept
{
    switch (kind) {
    case Error::Kind::Input: return "input";
    case Error::Kind::Syntax: return "syntax";
    case Error::Kind::Domain: return "domain";
    case Error::Kind::Config: return "config";
    case Error::Kind::InsufficientData: return "insufficient-data";
    case Error::Kind::Precondition: return "precondition";
    case Error::Kind::Schema: return "schema";
    }
    return "unknown";
}

namespace primes {
namespace {

using u128 = unsigned __int128;

Nat mul_mod(Nat a, Nat b, Nat m) { return static_cast<Nat>(static_cast<u128>(a) * b % m); }

Nat pow_mod(Nat base, Nat exp, Nat m)
{
    Nat result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(Nat n, Nat d, int r, Nat a)
{
    a %= n;
    if (a == 0) return true;
    Nat x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

constexpr std::array<Nat, 3> kSmallBases = {2, 7, 61};  // exact below 4759123141
constexpr std::array<Nat, 7> kLargeBases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};

std::vector<Nat> small_sieve(Nat limit)
{
    std::vector<Nat> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (Nat i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (Nat j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

Nat isqrt(Nat n)
{
    auto r = static_cast<Nat>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr std::size_t kSegmentOdds = 1 << 18;
constexpr char kMagic[8] = {'U', 'H', 'S', 'I', 'E', 'V', 'E', '1'};

std::mutex g_table_mutex;
std::shared_ptr<const PrimeTable> g_table;

}  // namespace

bool is_prime(Nat n)
{
    if (n < 2) return false;
    for (Nat p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < 37 * 37) return true;
    Nat d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    auto passes = [&](const auto& bases) {
        return std::all_of(bases.begin(), bases.end(),
                           [&](Nat a) { return strong_probable_prime(n, d, r, a); });
    };
    return n < 4759123141ULL ? passes(kSmallBases) : passes(kLargeBases);
}

std::vector<Nat> primes_up_to(Nat limit)
{
    std::vector<Nat> out;
    SegmentedSieve sieve(2, limit);
    while (auto p = sieve.next()) out.push_back(*p);
    return out;
}

PrimeTable PrimeTable::build(Nat limit)
{
    std::vector<std::uint64_t> bits(limit / 128 + 1, 0);
    SegmentedSieve sieve(3, limit);
    while (auto p = sieve.next()) {
        Nat i = *p / 2;
        bits[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return PrimeTable(limit, std::move(bits));
}

bool PrimeTable::is_prime(Nat n) const
{
    if (n > limit_) return primes::is_prime(n);
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    Nat i = n / 2;
    return (bits_[i / 64] >> (i % 64)) & 1;
}

std::optional<Nat> PrimeTable::next_prime(Nat n) const
{
    if (n <= 2) return limit_ >= 2 ? std::optional<Nat>(2) : std::nullopt;
    if (n > limit_) return std::nullopt;
    Nat i = n / 2;  // index of n if odd, of n+1 if even
    std::size_t word = i / 64;
    std::uint64_t w = bits_[word] & (~std::uint64_t{0} << (i % 64));
    while (true) {
        if (w) {
            Nat p = 2 * (word * 64 + static_cast<Nat>(std::countr_zero(w))) + 1;
            if (p > limit_) return std::nullopt;
            return p;
        }
        if (++word >= bits_.size()) return std::nullopt;
        w = bits_[word];
    }
}

std::optional<PrimeTable> PrimeTable::load(const std::filesystem::path& file, Nat limit)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    Nat stored = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&stored), sizeof stored);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0 || stored != limit) return std::nullopt;
    std::vector<std::uint64_t> bits(limit / 128 + 1);
    in.read(reinterpret_cast<char*>(bits.data()),
            static_cast<std::streamsize>(bits.size() * sizeof(std::uint64_t)));
    if (!in) return std::nullopt;
    return PrimeTable(limit, std::move(bits));
}

void PrimeTable::save(const std::filesystem::path& file) const
{
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write sieve cache " + file.string());
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&limit_), sizeof limit_);
    out.write(reinterpret_cast<const char*>(bits_.data()),
              static_cast<std::streamsize>(bits_.size() * sizeof(std::uint64_t)));
}

std::filesystem::path cache_file_name(Nat limit)
{
    return "primes-" + std::to_string(limit) + ".bits";
}

PrimeTable load_or_build(const std::filesystem::path& dir, Nat limit)
{
    auto file = dir / cache_file_name(limit);
    if (auto table = PrimeTable::load(file, limit)) return std::move(*table);
    auto table = PrimeTable::build(limit);
    std::filesystem::create_directories(dir);
    table.save(file);
    return table;
}

void install_table(std::shared_ptr<const PrimeTable> table)
{
    std::lock_guard lock(g_table_mutex);
    g_table = std::move(table);
}

std::shared_ptr<const PrimeTable> installed_table()
{
    std::lock_guard lock(g_table_mutex);
    return g_table;
}

SegmentedSieve::SegmentedSieve(Nat lo, Nat hi) : hi_(hi)
{
    if (lo < 2) lo = 2;
    if (lo > hi) {
        done_ = true;
        seg_lo_ = 0;
        return;
    }
    emit_two_ = lo <= 2;
    seg_lo_ = std::max<Nat>(lo | 1, 3);
    if (seg_lo_ > hi_) {
        done_ = !emit_two_;
        cursor_ = 0;
        return;
    }
    fill_segment();
}

void SegmentedSieve::fill_segment()
{
    Nat count = std::min<Nat>(kSegmentOdds, (hi_ - seg_lo_) / 2 + 1);
    segment_.assign(count, 0);
    Nat seg_hi = seg_lo_ + 2 * (count - 1);
    Nat need = isqrt(seg_hi);
    if (need > base_limit_) {
        // grow geometrically so long streams re-sieve the base rarely
        base_limit_ = std::min(isqrt(hi_), std::max(need, 2 * base_limit_));
        base_ = small_sieve(base_limit_);
        if (!base_.empty()) base_.erase(base_.begin());  // drop 2
    }
    for (Nat p : base_) {
        u128 sq = static_cast<u128>(p) * p;
        if (sq > seg_hi) break;
        Nat start = sq >= seg_lo_ ? static_cast<Nat>(sq) : ((seg_lo_ + p - 1) / p) * p;
        if (start % 2 == 0) start += p;
        for (Nat v = start; v <= seg_hi; v += 2 * p) segment_[(v - seg_lo_) / 2] = 1;
    }
    if (seg_lo_ == 1) segment_[0] = 1;
    cursor_ = 0;
}

std::optional<Nat> SegmentedSieve::next()
{
    if (emit_two_) {
        emit_two_ = false;
        return 2;
    }
    while (!done_) {
        while (cursor_ < segment_.size()) {
            std::size_t i = cursor_++;
            if (!segment_[i]) return seg_lo_ + 2 * i;
        }
        Nat next_lo = seg_lo_ + 2 * segment_.size();
        if (segment_.empty() || next_lo > hi_ || next_lo < seg_lo_) {
            done_ = true;
            break;
        }
        seg_lo_ = next_lo;
        fill_segment();
    }
    return std::nullopt;
}

}  // namespace primes
}  // namespace ultraharmonic
