/*
 * errors.hpp: error types shared by all modules.
 *
 * Every contract violation surfaces as a subclass of Error so callers
 * (and the CLI, which maps them to exit code 2) can catch one base type
 * while tests can assert on the precise failure.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cphi {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// maps
struct DegenerateMap : Error { using Error::Error; };
struct NotSelfMap : Error { using Error::Error; };
struct PoleAtPoint : Error { using Error::Error; };
struct DegenerateComposition : Error { using Error::Error; };
struct IdentityMap : Error { using Error::Error; };
struct NotAutomorphism : Error { using Error::Error; };
struct EllipticAutomorphism : Error { using Error::Error; };
struct EscapedDisk : Error { using Error::Error; };
struct NotParabolic : Error { using Error::Error; };

// inner
struct OutsideDisk : Error { using Error::Error; };
struct TailBoundUnavailable : Error { using Error::Error; };
struct NotBlaschkeSummable : Error { using Error::Error; };
struct PoleInDisk : Error { using Error::Error; };
struct ZeroFunction : Error { using Error::Error; };

// series
struct CompositionDiverges : Error { using Error::Error; };
struct PoleTooClose : Error { using Error::Error; };
struct TruncationUnreliable : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };

// certify
struct NotInvariant : Error { using Error::Error; };
struct ZeroDivision : Error { using Error::Error; };

// generic argument violation (bad tolerance, non-unimodular rotation, ...)
struct InvalidArgument : Error { using Error::Error; };

// cli: carries the 1-based position of the offending token
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_, std::size_t column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_), column(column_) {}
    std::size_t line;
    std::size_t column;
};

}  // namespace cphi
