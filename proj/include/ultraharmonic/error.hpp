#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ultraharmonic {

// Every failure raised by the library derives from Error; the kind lets the
// CLI map failures onto report records without string matching.
class Error : public std::runtime_error {
public:
    enum class Kind { Input, Syntax, Domain, Config, InsufficientData, Precondition, Schema };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* kind_name(Error::Kind kind) noexcept;

struct InputError : Error {
    explicit InputError(const std::string& what) : Error(Kind::Input, what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(Kind::Domain, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(Kind::Config, what) {}
};

struct InsufficientDataError : Error {
    InsufficientDataError(const std::string& what, std::size_t progress)
        : Error(Kind::InsufficientData, what), progress(progress) {}

    std::size_t progress;  // values produced before the horizon ran out
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(Kind::Precondition, what) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(Kind::Schema, what) {}
};

// Syntax errors carry the 0-based byte offset of the offending token.
struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t position)
        : Error(Kind::Syntax, what + " at position " + std::to_string(position)),
          position(position) {}

    std::size_t position;
};

}  // namespace ultraharmonic
