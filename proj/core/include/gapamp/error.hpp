#pragma once

#include <stdexcept>
#include <string>

namespace gapamp {

enum class ErrorCode {
    SyntaxError,
    DuplicateAdjacency,
    IndexOutOfRange,
    EmptyTerminals,
    LengthMismatch,
    BudgetExceeded,
    BadIndex,
    TooLarge,
    ZeroDelta,
    DomainTooLarge,
    CapExceeded,
    NotFound,
    QTooSmall,
    TupleOutOfRange,
    NotFullySatisfying,
    NotFourPairs,
    NotFullySeparating,
    NotAcyclic,
    NotAPath,
    NotAClique,
    PartMissing,
    OracleTooLarge,
    NumericOverflow,
};

const char* error_name(ErrorCode code);

/// Exception carrying a stable error code plus, for parse errors, the
/// 1-based line/column of the offending token (0 when not applicable).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, int line = 0, int column = 0);

    ErrorCode code() const { return code_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    ErrorCode code_;
    int line_;
    int column_;
};

} // namespace gapamp
