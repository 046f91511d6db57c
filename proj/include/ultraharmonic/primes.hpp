#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

namespace ultraharmonic {

using Nat = std::uint64_t;

namespace primes {

// Deterministic for every 64-bit input: Miller-Rabin with a base set chosen
// by the magnitude of n.
bool is_prime(Nat n);

std::vector<Nat> primes_up_to(Nat limit);

// Bit table over the odd numbers <= limit. Used as a process-wide cache for
// prime enumeration and persisted by the CLI between runs.
class PrimeTable {
public:
    static PrimeTable build(Nat limit);

    // Returns nullopt when the file is missing, truncated or was written for a
    // different limit.
    static std::optional<PrimeTable> load(const std::filesystem::path& file, Nat limit);
    void save(const std::filesystem::path& file) const;

    Nat limit() const noexcept { return limit_; }
    bool is_prime(Nat n) const;

    // Smallest prime >= n that is <= limit().
    std::optional<Nat> next_prime(Nat n) const;

private:
    PrimeTable(Nat limit, std::vector<std::uint64_t> bits) : limit_(limit), bits_(std::move(bits)) {}

    Nat limit_ = 0;
    std::vector<std::uint64_t> bits_;  // bit i set <=> 2i+1 is prime
};

// File name used for a cached table of the given limit.
std::filesystem::path cache_file_name(Nat limit);

// Loads the cached table from dir, rebuilding (and rewriting) it when the file
// is absent or keyed by another limit.
PrimeTable load_or_build(const std::filesystem::path& dir, Nat limit);

void install_table(std::shared_ptr<const PrimeTable> table);
std::shared_ptr<const PrimeTable> installed_table();

// Lazy ascending stream of the primes in [lo, hi], sieved one segment at a
// time.
class SegmentedSieve {
public:
    SegmentedSieve(Nat lo, Nat hi);

    std::optional<Nat> next();

private:
    void fill_segment();

    Nat hi_;
    Nat seg_lo_;  // odd, first value of the current segment
    std::vector<Nat> base_;
    Nat base_limit_ = 0;
    std::vector<std::uint8_t> segment_;  // composite flags for odd values
    std::size_t cursor_ = 0;
    bool emit_two_ = false;
    bool done_ = false;
};

}  // namespace primes
}  // namespace ultraharmonic
