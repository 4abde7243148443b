#pragma once

#include <cstddef>
#include <vector>

#include "gradlat/core.hpp"
#include "gradlat/instrument.hpp"
#include "gradlat/lll.hpp"

namespace gradlat {

/// A knapsack-type basis: r identity rows carrying the data columns x[i][j],
/// plus one row (0, ..., P_j, ..., 0) for every column with P_j != 0.
struct KnapsackBasis {
    std::size_t r = 0;
    std::size_t N = 0;
    std::vector<Integer> P;              ///< size N, 0 = no modulus row
    std::vector<std::vector<Integer>> X;  ///< r x N

    Integer max_abs() const;

    /// Explicit rows of the lattice: modulus rows first, then the identity rows.
    std::vector<std::vector<Integer>> lattice_rows() const;

    /// Column j of X.
    std::vector<Integer> column(std::size_t j) const;

    void validate() const;
};

struct GradualConfig {
    ReductionParams params;
    std::size_t c = 0;  ///< a priori cap on the number of rows
    std::size_t k = 0;  ///< number of moduli allowed to be small
};

/// Reduces every x[i][j] with P_j != 0 into [0, |P_j|) and replaces P_j by |P_j|.
KnapsackBasis normalize_input(const KnapsackBasis& a);

/// Smallest k with #{j : |P_j| < 2 alpha^(4r+4k+2) B^2} <= k, and
/// c = min(2r + 2k + 1, r + N).
GradualConfig compute_c(const std::vector<Integer>& P, std::size_t r, std::size_t N, const ReductionParams& params);

/// Adjoins column y = M[0..r) * x scaled by 2^-l with l = floor(log2(max(|P|, |y|_inf, 2))),
/// putting the modulus row (0, ..., 0, P / 2^l) on top when P != 0.
/// M must be integral. Returns l (always >= 1).
unsigned long adjoin_column(WorkingBasis& m, std::size_t r, const std::vector<Integer>& x, const Integer& P);

/// max(0, ceil(log2(|y|_inf / (alpha^(2c) B^2)))); 0 for y = 0.
unsigned long next_scale_exponent(const std::vector<Integer>& y, const GradualConfig& config);

struct GradualResult {
    WorkingBasis basis;  ///< integral, width r + N
    Trace trace;
    GradualConfig config;
    std::size_t iterations = 0;
    std::size_t switches = 0;
    std::size_t removals = 0;
};

struct GradualOptions {
    bool recordTrace = true;
    /// Exact in-line checks of row cap, pre-kernel norms and G-S monotonicity.
    bool assertInvariants = true;
};

/// Column-by-column, bit-by-bit reduction. The result is an (alpha, B)-reduced
/// basis of a sub-lattice containing every lattice vector of norm <= B.
/// Throws InvalidParams when B^2 < 5 or r = 0.
GradualResult gradual_reduce(const KnapsackBasis& a, const ReductionParams& params,
                             const GradualOptions& options = {});

}  // namespace gradlat
