#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "gradlat/core.hpp"

namespace gradlat {

class DivisionImpossible : public Error {
public:
    using Error::Error;
};

class NotSeparable : public Error {
public:
    using Error::Error;
};

class LiftFailure : public Error {
public:
    using Error::Error;
};

/// Polynomial over Z, coefficients low to high degree, no trailing zeros.
struct IntPoly {
    std::vector<Integer> coeffs;

    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> c);
    IntPoly(std::initializer_list<long> c);

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    /// Leading coefficient; 0 for the zero polynomial.
    Integer lead() const;
    /// Coefficient of x^i, 0 beyond the degree.
    Integer coeff(std::size_t i) const;
    void trim();

    bool operator==(const IntPoly& o) const { return coeffs == o.coeffs; }
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const Integer& k, const IntPoly& a);

IntPoly derivative(const IntPoly& f);
/// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
Integer content(const IntPoly& f);
/// f / content(f), with positive leading coefficient.
IntPoly primitive_part(const IntPoly& f);
/// q with f = q g when g divides f in Z[x].
std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g);
/// Primitive gcd with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
Integer max_abs_coeff(const IntPoly& f);
/// Exact value at a rational point.
Rational evaluate(const IntPoly& f, const Rational& x);

/// "x^4 - x^2 - 2"
std::string to_string(const IntPoly& f);
/// Coefficients low to high separated by spaces.
std::string to_coeff_string(const IntPoly& f);

/// Symmetric remainder in (-m/2, m/2].
Integer mods(const Integer& v, const Integer& m);

/// Polynomial over Z/mZ, coefficients kept in the symmetric range.
struct ModPoly {
    std::vector<Integer> coeffs;
    Integer modulus = 1;

    ModPoly() = default;
    ModPoly(const IntPoly& f, const Integer& m);
    ModPoly(std::vector<Integer> c, const Integer& m);

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    Integer lead() const;
    bool is_monic() const;
    /// The same residues read as a polynomial over Z.
    IntPoly lift() const;

    bool operator==(const ModPoly& o) const { return modulus == o.modulus && coeffs == o.coeffs; }
};

ModPoly operator+(const ModPoly& a, const ModPoly& b);
ModPoly operator-(const ModPoly& a, const ModPoly& b);
ModPoly operator*(const ModPoly& a, const ModPoly& b);
ModPoly derivative(const ModPoly& f);
/// Re-reads f modulo a divisor of its modulus.
ModPoly reduce(const ModPoly& f, const Integer& m);
/// Quotient and remainder; the divisor's leading coefficient must be a unit.
std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b);
ModPoly make_monic(const ModPoly& f);
/// Monic gcd over a prime field.
ModPoly gcd(const ModPoly& a, const ModPoly& b);
/// g = gcd(a, b) monic with s a + t b = g, over a prime field.
void xgcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t);
/// base^e mod f.
ModPoly powmod(const ModPoly& base, const Integer& e, const ModPoly& f);

/// Smallest prime p not dividing lead(f) with gcd(f, f') = 1 mod p.
unsigned long choose_prime(const IntPoly& f);

/// Monic irreducible factors of f mod p, sorted by degree then coefficients.
/// The equal-degree splitting draws from a generator seeded with `seed`.
std::vector<ModPoly> factor_mod_p(const IntPoly& f, unsigned long p, std::uint64_t seed = 1);

/// Smallest a with p^(a - b_j) > 2^(N^2 + N ceil(log2 A)) for every j,
/// where A is the largest coefficient magnitude of f.
unsigned long precision_target(const IntPoly& f, unsigned long p, const std::vector<unsigned long>& b);

struct PadicFactorization {
    unsigned long p = 0;
    unsigned long a = 0;
    Integer leadCoeff;
    std::vector<ModPoly> factors;  ///< monic, modulo p^a

    Integer modulus() const;
};

/// Lifts a factorization of f mod p into pairwise coprime monic factors to
/// one modulo p^a with lead(f) * prod f_i = f mod p^a.
PadicFactorization hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors, unsigned long p,
                               unsigned long a);

}  // namespace gradlat
