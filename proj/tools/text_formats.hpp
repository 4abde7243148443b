#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "gradlat/gradual.hpp"
#include "gradlat/padic.hpp"

namespace gradlat::cli {

/// Raised for malformed input files; the message names the offending line.
class ParseError : public Error {
public:
    using Error::Error;
};

struct KnapsackFile {
    KnapsackBasis basis;
    std::optional<Rational> B;
};

/// "r N", a line of N moduli (0 = none), r lines of N integers, then an
/// optional "B <rational>". Blank lines and lines starting with '#' are
/// skipped; with N = 0 the moduli and data lines are absent.
KnapsackFile read_knapsack(std::istream& in);
void write_knapsack(std::ostream& out, const KnapsackFile& file);

/// First line the degree, second line the coefficients low to high.
IntPoly read_polynomial(std::istream& in);
void write_polynomial(std::ostream& out, const IntPoly& f);

}  // namespace gradlat::cli
