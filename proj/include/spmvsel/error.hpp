#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spmvsel {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (Matrix Market, record, feature or model files).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Out-of-range index, mismatched dimensions or otherwise invalid arguments.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A storage format could not be built from the given matrix.
class ConversionError : public Error {
public:
    using Error::Error;
};

/// Model training or persistence failure.
class ModelError : public Error {
public:
    using Error::Error;
};

} // namespace spmvsel
