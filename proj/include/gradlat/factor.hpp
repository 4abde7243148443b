#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gradlat/gradual.hpp"
#include "gradlat/padic.hpp"

namespace gradlat {

class PrecisionTooLow : public Error {
public:
    using Error::Error;
};

class NotDecodable : public Error {
public:
    using Error::Error;
};

class CertificationFailed : public Error {
public:
    using Error::Error;
};

/// Smallest t with |f_N| 2^(tN) > sum_{i<N} |f_i| 2^(ti); every complex root has modulus < 2^t.
unsigned long root_bound_log2(const IntPoly& f);

/// Bound_j = N sum_{i>j} |f_i| R^(i-j-1), a bound on the x^j coefficient of g' f / g
/// for every divisor g of a squarefree f (R = 2^root_bound_log2(f)).
std::vector<Integer> derivative_quotient_bounds(const IntPoly& f);

/// b_j = smallest integer with p^(2 b_j) >= N Bound_j^2, for j = 0..N-1.
std::vector<unsigned long> coeff_bounds(const IntPoly& f, unsigned long p);

/// Smallest e with 4^e >= r^2 N.
unsigned long prescale_exponent(std::size_t r, std::size_t N);

/// Knapsack matrix whose short vectors encode the true recombinations.
/// Column t holds the coefficient of x^(N-1-t).
struct AllCoeffMatrix {
    KnapsackBasis basis;
    std::vector<unsigned long> b;  ///< indexed by coefficient degree
    unsigned long e = 0;
    Rational BSq;  ///< 4^(e+1) (r+1)
};

/// x_{i,t} = round(2^e c_{i,j} / p^b_j) with c_i = f_i' f / f_i mods p^a and
/// P_t = 2^e p^(a-b_j), j = N-1-t. Throws PrecisionTooLow unless
/// P_t > 2 alpha^(4r+2) B^2 for every column.
AllCoeffMatrix build_all_coefficients_matrix(const IntPoly& f, const PadicFactorization& pf,
                                             const std::vector<unsigned long>& b, const Rational& alphaSq);

/// Smallest precision a >= precision_target(f, p, b) for which the matrix
/// condition P_t > 2 alpha^(4r+2) B^2 holds.
unsigned long minimal_precision(const IntPoly& f, unsigned long p, const std::vector<unsigned long>& b, std::size_t r,
                                const Rational& alphaSq);

struct Recombination {
    std::vector<std::vector<std::size_t>> parts;  ///< 0-based factor indices
};

/// Hermite form of the first r columns must be 0-1 rows partitioning {0..r-1}.
Recombination decode_recombination(const WorkingBasis& m, std::size_t r);

/// Primitive parts of l_f prod_{i in S} f_i mods p^a, checked to multiply to f exactly.
/// f must be primitive and squarefree.
std::vector<IntPoly> assemble_and_certify(const IntPoly& f, const Recombination& rec, const PadicFactorization& pf);

struct Factorization {
    Integer content;  ///< carries the sign of the leading coefficient
    std::vector<std::pair<IntPoly, unsigned>> factors;  ///< primitive, positive leads, sorted

    IntPoly expand() const;
};

struct FactorOptions {
    Rational delta{3, 4};
    Rational eta{1, 2};
    std::uint64_t seed = 1;
    unsigned maxAttempts = 6;
    bool recordTrace = false;
};

/// What the last lattice run looked like, for reporting.
struct FactorStats {
    unsigned long p = 0;
    unsigned long a = 0;
    std::size_t r = 0;
    unsigned attempts = 0;  ///< lattice runs over all squarefree parts
    unsigned retries = 0;   ///< precision doublings
    std::vector<Trace> traces;
};

/// Complete factorization over Z: content, irreducible factors and multiplicities.
Factorization factor_z(const IntPoly& f, const FactorOptions& options = {}, FactorStats* stats = nullptr);

}  // namespace gradlat
