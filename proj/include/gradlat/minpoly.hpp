#pragma once

#include <string>

#include "gradlat/factor.hpp"
#include "gradlat/gradual.hpp"
#include "gradlat/padic.hpp"

namespace gradlat {

class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

/// Exact value of a decimal ("-1.25", "3e-5") or hex-float ("0x1.8p+1") literal.
Rational parse_real(const std::string& text);

/// x = (re + i im) / 2^exponent, accurate to 2^-precisionBits in each part.
struct ApproxNumber {
    Integer reNum;
    Integer imNum;
    unsigned long exponent = 0;
    unsigned long precisionBits = 0;

    Rational re() const;
    Rational im() const;
    bool is_real() const { return sgn(imNum) == 0; }

    /// Rounds exact values to dyadics with precisionBits + 2 fractional bits.
    static ApproxNumber from_rationals(const Rational& re, const Rational& im, unsigned long precisionBits);
};

struct MinPolyQuery {
    unsigned d = 1;
    Integer H = 1;
};

/// 2 (d^2 + d ceil(log2 H)) + 64
unsigned long required_precision(const MinPolyQuery& q);

struct MinPolyLattice {
    KnapsackBasis basis;
    unsigned long scale = 0;  ///< column entries are round(2^scale x^i)
    Rational BSq;
};

/// d + 1 identity rows with columns round(2^m Re x^i) and, for non-real x,
/// round(2^m Im x^i). m stays below precisionBits by enough guard bits that
/// the approximation error contributes at most 1/2 per column for any h of
/// degree <= d and height <= H. Throws InsufficientPrecision.
MinPolyLattice build_minpoly_lattice(const ApproxNumber& x, const MinPolyQuery& q);

/// |h(x)|^2 < 4^-ceil(precisionBits / 2), evaluated exactly at the dyadic x.
bool accepts(const IntPoly& h, const ApproxNumber& x);

struct MinPolyOptions {
    Rational delta{3, 4};
    Rational eta{1, 2};
    bool certifyIrreducible = true;  ///< applied for d <= 8
    bool recordTrace = false;
};

struct MinPolyStats {
    std::size_t outputRows = 0;
    Trace trace;
};

/// Primitive h of least degree (then least height) with positive leading
/// coefficient among the candidates found in the reduced lattice.
/// Throws NotFound when no candidate passes `accepts`.
IntPoly reconstruct_minpoly(const ApproxNumber& x, const MinPolyQuery& q, const MinPolyOptions& options = {},
                            MinPolyStats* stats = nullptr);

}  // namespace gradlat
