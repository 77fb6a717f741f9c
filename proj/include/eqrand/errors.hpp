#pragma once

#include <stdexcept>
#include <string>

namespace eqrand {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid configuration (unknown rule name, inconsistent options).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input file is readable but lacks a required column.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& column, const std::string& what)
        : std::runtime_error(what), column_(column) {}
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

// An exact oracle was asked to run beyond its enumeration guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace eqrand
