#include "ultraharmonic/config.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace ultraharmonic {
namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Nat parse_positive(const std::string& text, const std::string& what)
{
    Nat v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v == 0)
        throw ConfigError(what + ": expected a positive integer, got '" + text + "'");
    return v;
}

}  // namespace

std::vector<Nat> parse_checkpoints(const std::string& text)
{
    std::vector<Nat> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        out.push_back(parse_positive(piece, "checkpoints"));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (!std::is_sorted(out.begin(), out.end()) || std::adjacent_find(out.begin(), out.end()) != out.end())
        throw ConfigError("checkpoints must be strictly ascending");
    return out;
}

void Config::apply(const std::string& key, const std::string& value)
{
    if (key == "horizon") {
        limits.horizon_cap = parse_positive(value, "horizon");
    } else if (key == "checkpoints") {
        limits.checkpoints = parse_checkpoints(value);
    } else if (key == "precision") {
        if (value == "fast") precision = Precision::Fast;
        else if (value == "exact") precision = Precision::Exact;
        else throw ConfigError("precision must be 'fast' or 'exact', got '" + value + "'");
    } else if (key == "cache_dir") {
        cache_dir = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

Config Config::load(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file " + file.string());
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": expected key=value");
        cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace ultraharmonic
