/*
 * funcspec.hpp: textual specs for inner functions and disk self-maps.
 *
 * Grammar (whitespace free between tokens, spaces allowed around them):
 *   spec    := inner | map
 *   inner   := term { "*" term }
 *   term    := "z" ["^" INT]
 *            | "blaschke(" complex {"," complex} [";" "mult=" INT {"," INT}] ")"
 *            | "atom(" complex "," REAL ")"
 *            | "const(" complex ")"
 *   map     := "mobius(" complex "," complex "," complex "," complex ")"
 *            | "rot(" complex ")"
 *            | "autom(" complex "," complex ")"
 *            | "parabolic(b=" REAL [", zeta=" complex] ")"
 *   complex := REAL | REAL ("+"|"-") REAL "i" | REAL "i"
 *            | "exp(" ["+"|"-"] "i" angle ")"
 *   angle   := REAL | [REAL] "pi" ["/" REAL]
 *
 * Parsing validates through the library constructors, so semantic errors
 * (zeros outside the disk, non-self-maps) surface as their native error
 * types; syntax errors carry a 1-based column. print_spec emits a canonical
 * form: factors ordered const, z power, Blaschke, atoms; numbers in the
 * shortest round-trip decimal; parse(print(parse(s))) == parse(s).
 */
#pragma once

#include <string>
#include <variant>

#include "cphi/complex_util.hpp"
#include "cphi/inner.hpp"
#include "cphi/maps.hpp"

namespace cphi {

struct FunctionSpec {
    std::string raw;
    std::variant<InnerFunction, LinearFractionalMap> parsed;

    bool is_inner() const { return std::holds_alternative<InnerFunction>(parsed); }
    const InnerFunction& inner() const;       // throws InvalidArgument on a map spec
    const LinearFractionalMap& map() const;   // throws InvalidArgument on an inner spec
};

// throws ParseError on syntax errors, library errors on invalid semantics
FunctionSpec parse_spec(const std::string& raw);
InnerFunction parse_inner(const std::string& raw);
LinearFractionalMap parse_map(const std::string& raw);

// a lone complex literal, for CLI arguments like --z
cplx parse_complex_literal(const std::string& raw);

// shortest round-trip decimal in grammar form (re, rei, or re+imi)
std::string format_complex(cplx v);
std::string format_real(double x);

// canonical spec strings; sequence inner parts have no spec form and throw
// InvalidArgument
std::string print_spec(const InnerFunction& theta);
std::string print_spec(const LinearFractionalMap& map);

}  // namespace cphi
