#pragma once

#include <stdexcept>
#include <string>

namespace luxfield {

/// Base class for all luxfield errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class MalformedGrid : public Error {
public:
    using Error::Error;
};

/// Negative or non-finite irradiance, or an otherwise invalid measurement.
class InvalidMeasurement : public Error {
public:
    using Error::Error;
};

class MissingFace : public Error {
public:
    explicit MissingFace(const std::string& face)
        : Error("missing face row: " + face), face_(face) {}
    const std::string& face() const { return face_; }

private:
    std::string face_;
};

/// Structurally broken input file; carries a 1-based line and column.
class MalformedFile : public Error {
public:
    MalformedFile(const std::string& what, std::size_t line, std::size_t column = 0)
        : Error(what + " (line " + std::to_string(line) +
                (column ? ", column " + std::to_string(column) : "") + ")"),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class UndefinedChromaticity : public Error {
public:
    using Error::Error;
};

class CctUndefined : public Error {
public:
    using Error::Error;
};

class NormalizationUndefined : public Error {
public:
    using Error::Error;
};

class DirectionUndefined : public Error {
public:
    using Error::Error;
};

class DiffusenessUndefined : public Error {
public:
    using Error::Error;
};

class DuplicateTimestamp : public Error {
public:
    using Error::Error;
};

class WindowOutOfRange : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class CorrelationUndefined : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace luxfield
