#pragma once

#include <stdexcept>
#include <string>

namespace ivsolve {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyIntervalError : Error {
    EmptyIntervalError() : Error("operation requires a non-empty interval") {}
};

struct EmptyBoxError : Error {
    EmptyBoxError() : Error("operation requires a non-empty box") {}
};

struct ZeroInDivisorError : Error {
    ZeroInDivisorError() : Error("divisor interval contains zero; use extended_div") {}
};

struct DegenerateAxisError : Error {
    DegenerateAxisError() : Error("cannot bisect along a point component") {}
};

struct DimensionTooLargeError : Error {
    explicit DimensionTooLargeError(const std::string& what) : Error(what) {}
};

struct SingularEnclosureError : Error {
    SingularEnclosureError() : Error("determinant enclosure contains zero") {}
};

struct SingularMatrixError : Error {
    SingularMatrixError() : Error("real matrix is numerically singular") {}
};

struct MissingParameterError : Error {
    explicit MissingParameterError(const std::string& what) : Error(what) {}
};

// Parser diagnostics carry a 1-based source position (0 when not applicable).
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& what, int line_, int col_)
        : Error(what + " at line " + std::to_string(line_) + ", column " + std::to_string(col_)),
          line(line_), column(col_) {}
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct SyntaxError : ParseError {
    using ParseError::ParseError;
};

struct ArityError : ParseError {
    using ParseError::ParseError;
};

struct UnknownIdentifierError : ParseError {
    using ParseError::ParseError;
};

struct DimensionMismatchError : ParseError {
    using ParseError::ParseError;
};

} // namespace ivsolve
