#pragma once

#include "ultraharmonic/primes.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ultraharmonic {

// Work caps shared by every module.
struct Limits {
    Nat horizon_cap = 10'000'000;      // largest value any scan may reach
    Nat exact_term_cap = 1'000'000;    // most terms an exact-rational sum may take
    std::vector<Nat> checkpoints = {1'000, 10'000, 100'000, 1'000'000, 10'000'000};
};

enum class Precision { Fast, Exact };

// Runtime configuration as read from a key=value file and overridden by
// command-line flags.
struct Config {
    Limits limits;
    Precision precision = Precision::Fast;
    std::optional<std::filesystem::path> cache_dir;

    // Keys: horizon, checkpoints (comma list), precision (fast|exact),
    // cache_dir. '#' starts a comment. Unknown keys are a ConfigError.
    static Config load(const std::filesystem::path& file);
    void apply(const std::string& key, const std::string& value);
};

std::vector<Nat> parse_checkpoints(const std::string& text);

// Above this horizon the CLI warns about memory use.
inline constexpr Nat kMemoryWarningHorizon = 100'000'000;

}  // namespace ultraharmonic
