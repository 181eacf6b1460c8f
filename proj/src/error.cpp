#include "tcnfet/error.hpp"

#include <sstream>

namespace tcnfet {

namespace {

std::string indeterminate_message(double volts)
{
    std::ostringstream os;
    os << "voltage " << volts << " V lies between trit bands";
    return os.str();
}

std::string parse_message(ParseError::Kind kind, std::size_t line, std::size_t column, const std::string& message)
{
    std::ostringstream os;
    os << to_string(kind) << " at " << line << ":" << column << ": " << message;
    return os.str();
}

}  // namespace

IndeterminateLevel::IndeterminateLevel(double volts) : Error(indeterminate_message(volts)), volts_(volts) {}

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
    : Error(parse_message(kind, line, column, message)), kind_(kind), line_(line), column_(column)
{
}

const char* to_string(ParseError::Kind kind) noexcept
{
    switch (kind) {
    case ParseError::Kind::Syntax: return "syntax error";
    case ParseError::Kind::UnknownNode: return "unknown node";
    case ParseError::Kind::DuplicateDevice: return "duplicate device";
    case ParseError::Kind::DuplicateNode: return "duplicate node";
    case ParseError::Kind::MetallicChirality: return "metallic chirality";
    case ParseError::Kind::InvalidValue: return "invalid value";
    }
    return "error";
}

}  // namespace tcnfet
