#ifndef LGX_ERROR_HPP
#define LGX_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgx {

/// Position inside an input file. Lines and columns are 1-based; 0 means unknown.
struct SourceLocation {
    std::string file;
    std::size_t line = 0;
    std::size_t column = 0;

    std::string str() const;
    bool operator==(const SourceLocation&) const = default;
};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. what() reads "file:line:col: message".
class ParseError : public Error {
public:
    ParseError(SourceLocation location, const std::string& message);

    const SourceLocation& location() const noexcept { return location_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    SourceLocation location_;
    std::string detail_;
};

/// A file could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace lgx

#endif
