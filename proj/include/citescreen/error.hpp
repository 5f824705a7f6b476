#ifndef CITESCREEN_ERROR_HPP
#define CITESCREEN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace citescreen {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: malformed record, bad name, unparsable companion file.
/// `line` is 1-based and 0 when the error is not tied to a line.
class InputError : public Error {
public:
    explicit InputError(const std::string& what, std::size_t line = 0, std::string field = {})
        : Error(format(what, line, field)), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& what, std::size_t line, const std::string& field) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!field.empty()) out += "field '" + field + "': ";
        return out + what;
    }

    std::size_t line_;
    std::string field_;
};

/// Inconsistent analysis setup (missing tenure, invalid thresholds).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A named entity (publication, journal) is not present in the corpus.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Contingency table with an all-zero margin.
class DegenerateTableError : public Error {
public:
    using Error::Error;
};

/// The synthetic generator cannot satisfy its configuration.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// A derived structure contradicts how it was built.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace citescreen

#endif // CITESCREEN_ERROR_HPP
