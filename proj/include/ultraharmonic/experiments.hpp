#pragma once

#include "ultraharmonic/config.hpp"
#include "ultraharmonic/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ultraharmonic {

struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    Json details = Json::object();  // witnesses, sample values, first failures

    bool passed() const { return cases > 0 && failures == 0; }
};

struct ExperimentResult {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;

    bool passed() const;
    Json json() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct ExperimentOptions {
    Config config;
    std::uint64_t seed = kDefaultSeed;
    // extraction only: run this pair instead of the fixed vectors
    std::optional<std::string> a;
    std::optional<std::string> b;
    std::optional<std::size_t> k;
};

// fact1, fact2, fact3-identity, extraction, glazer-principal, glazer-ideal,
// vdw-desk, mertens
const std::vector<std::string>& experiment_names();

// InputError for an unknown name.
ExperimentResult run_experiment(const std::string& name, const ExperimentOptions& options = {});

inline constexpr double kEulerGamma = 0.5772156649;
inline constexpr double kMertensConstant = 0.2614972128;

}  // namespace ultraharmonic
