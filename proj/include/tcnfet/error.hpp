#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcnfet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A chirality vector that is not a valid (n1, n2) pair, or a metallic tube
/// where a semiconductor is required.
class ChiralityError : public Error {
public:
    using Error::Error;
};

/// Voltage did not fall inside any trit band; the node is floating or degraded.
class IndeterminateLevel : public Error {
public:
    explicit IndeterminateLevel(double volts);
    [[nodiscard]] double volts() const noexcept { return volts_; }

private:
    double volts_;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

/// Netlist text could not be turned into a netlist.
class ParseError : public Error {
public:
    enum class Kind { Syntax, UnknownNode, DuplicateDevice, DuplicateNode, MetallicChirality, InvalidValue };

    ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
};

[[nodiscard]] const char* to_string(ParseError::Kind kind) noexcept;

/// The phase relaxation did not reach a fixed point within its iteration bound.
class OscillationError : public Error {
public:
    using Error::Error;
};

}  // namespace tcnfet
