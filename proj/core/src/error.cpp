#include "gapamp/error.hpp"

namespace gapamp {

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::SyntaxError:        return "SyntaxError";
    case ErrorCode::DuplicateAdjacency: return "DuplicateAdjacency";
    case ErrorCode::IndexOutOfRange:    return "IndexOutOfRange";
    case ErrorCode::EmptyTerminals:     return "EmptyTerminals";
    case ErrorCode::LengthMismatch:     return "LengthMismatch";
    case ErrorCode::BudgetExceeded:     return "BudgetExceeded";
    case ErrorCode::BadIndex:           return "BadIndex";
    case ErrorCode::TooLarge:           return "TooLarge";
    case ErrorCode::ZeroDelta:          return "ZeroDelta";
    case ErrorCode::DomainTooLarge:     return "DomainTooLarge";
    case ErrorCode::CapExceeded:        return "CapExceeded";
    case ErrorCode::NotFound:           return "NotFound";
    case ErrorCode::QTooSmall:          return "QTooSmall";
    case ErrorCode::TupleOutOfRange:    return "TupleOutOfRange";
    case ErrorCode::NotFullySatisfying: return "NotFullySatisfying";
    case ErrorCode::NotFourPairs:       return "NotFourPairs";
    case ErrorCode::NotFullySeparating: return "NotFullySeparating";
    case ErrorCode::NotAcyclic:         return "NotAcyclic";
    case ErrorCode::NotAPath:           return "NotAPath";
    case ErrorCode::NotAClique:         return "NotAClique";
    case ErrorCode::PartMissing:        return "PartMissing";
    case ErrorCode::OracleTooLarge:     return "OracleTooLarge";
    case ErrorCode::NumericOverflow:    return "NumericOverflow";
    }
    return "UnknownError";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message, int line, int column) {
    std::string out = error_name(code);
    if (line > 0) {
        out += " at line " + std::to_string(line);
        if (column > 0)
            out += ", column " + std::to_string(column);
    }
    out += ": " + message;
    return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, int line, int column)
    : std::runtime_error(format_message(code, message, line, column)),
      code_(code), line_(line), column_(column) {}

} // namespace gapamp
