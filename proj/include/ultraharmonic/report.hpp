#pragma once

#include "ultraharmonic/apsearch.hpp"
#include "ultraharmonic/config.hpp"
#include "ultraharmonic/harmonic.hpp"
#include "ultraharmonic/syndetic.hpp"
#include "ultraharmonic/ultra.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace ultraharmonic {

using Json = nlohmann::json;  // std::map objects, so keys come out sorted

inline constexpr const char* kReportSchema = "ultraharmonic/1";

// Exact partial sums longer than this many characters are replaced by their
// bit sizes.
inline constexpr std::size_t kExactStringLimit = 1000;

Json to_json(const Derivation& d);
Derivation derivation_from_json(const Json& j);

Json to_json(const Verdict& v);
Json to_json(const PartialSumDiag& d);
Json to_json(const SyndeticVerdict& v);
Json to_json(const GapProfile& p);
Json to_json(const GapCertificate& c);
Json to_json(const APWitness& w);
Json to_json(const TranslationCheck& t);
Json to_json(const FipVerdict& f);
Json to_json(const FilterBase& f);
Json to_json(const GlazerVerdict& v);
Json to_json(const Extraction& e);
Json to_json(const Containment& c);
Json to_json(const Config& c);

GapCertificate certificate_from_json(const Json& j);

class Report {
public:
    // With timing off every wall time is written as 0 so that identical runs
    // give identical bytes.
    Report(std::vector<std::string> command, const Config& config, bool timing = false);

    void add(Json record, const std::string& step, double wall_ms);
    // Marks the report as containing a hard error.
    void fail() { failed_ = true; }
    bool failed() const { return failed_; }

    Json json() const;
    std::string dump() const;  // indent 2, trailing newline

private:
    std::vector<std::string> command_;
    Json config_;
    bool timing_;
    bool failed_ = false;
    Json results_ = Json::array();
    Json steps_ = Json::array();
};

// Parses and checks the schema tag. SchemaError on malformed input or a
// version mismatch.
Json parse_report(const std::string& text);
Json load_report(const std::filesystem::path& path);

std::string render_json(const Json& report);
// Human-readable form: derivations as indented trees, certificates as
// divisor tables.
std::string render_text(const Json& report);

}  // namespace ultraharmonic
