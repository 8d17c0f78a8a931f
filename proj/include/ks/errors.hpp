#pragma once

#include <stdexcept>
#include <string>

namespace ks {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonMetricError : Error {
    NonMetricError(const std::string& msg, int a, int b, int c)
        : Error(msg), x(a), y(b), z(c) {}
    int x, y, z;  // offending triple (z = -1 for symmetry/positivity violations)
};

struct NegativeMassError : Error { using Error::Error; };
struct EmptySpaceError : Error { using Error::Error; };
struct BadRadiusGridError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct BadExponentError : Error { using Error::Error; };
struct SolverFailureError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct ZeroTotalMassError : Error { using Error::Error; };
struct MissingFullBallError : Error { using Error::Error; };
struct GridTooSmallError : Error { using Error::Error; };
struct NegativeInputError : Error { using Error::Error; };
struct NoValidBallError : Error { using Error::Error; };
struct BadExpressionError : Error { using Error::Error; };
struct SizeCapError : Error { using Error::Error; };
struct IoFailureError : Error { using Error::Error; };

}  // namespace ks
