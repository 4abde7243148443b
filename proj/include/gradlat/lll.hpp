#pragma once

#include <cstddef>
#include <functional>

#include "gradlat/core.hpp"

namespace gradlat {

class InvalidParams : public Error {
public:
    using Error::Error;
};

/// Reduction quality and search bound. All comparisons against alpha and B go
/// through their squares so that everything stays rational.
struct ReductionParams {
    Rational delta;
    Rational eta;
    Rational alphaSq;  ///< 1 / (delta - eta^2)
    Rational gamma;    ///< 1 / delta, the guaranteed growth factor per switch
    Rational BSq;

    /// Validates delta in (1/4, 1), eta in [1/2, sqrt(delta)) and BSq > 0.
    static ReductionParams make(const Rational& delta, const Rational& eta, const Rational& BSq);
    static ReductionParams defaults(const Rational& BSq) { return make(Rational(3, 4), Rational(1, 2), BSq); }
};

struct KernelReport {
    std::size_t switches = 0;
    std::size_t removals = 0;
    std::size_t sizeReductions = 0;
};

/// Called right after a trailing row has been dropped. The basis and GSO
/// passed in are the post-removal state.
using RemovalObserver = std::function<void(const WorkingBasis&, const GSOState&,
                                           const Rational& removedNormSq, const KernelReport&)>;

// Row indices below are 0-based: kappa names the row being processed and
// kappa - 1 its predecessor.

/// Makes |mu[kappa][j]| <= eta for all j < kappa. Leaves normSq untouched.
/// Returns the number of nonzero multiples subtracted.
std::size_t size_reduce(WorkingBasis& m, GSOState& g, std::size_t kappa, const Rational& eta);

/// delta * B[kappa-1] <= B[kappa] + mu[kappa][kappa-1]^2 * B[kappa-1]
bool lovasz_holds(const GSOState& g, std::size_t kappa, const Rational& delta);

/// Swaps rows kappa-1 and kappa and updates the GSO in place. Checks the
/// switch guarantees exactly and throws AssertionViolation if one fails.
void switch_rows(WorkingBasis& m, GSOState& g, std::size_t kappa, const Rational& gamma);

/// Exact LLL reduction that drops trailing rows whose G-S length exceeds B.
/// The output rows form an (alpha, B)-reduced sequence.
KernelReport lll_with_removals(WorkingBasis& m, const ReductionParams& params,
                               const RemovalObserver& onRemoval = {});

/// Same, starting from a GSO already known to match m.
KernelReport lll_with_removals(WorkingBasis& m, GSOState& g, const ReductionParams& params,
                               const RemovalObserver& onRemoval = {});

/// Independent check of the (alpha, B)-reduced conditions:
///   B[i] <= alpha^2 B[i+1],  B[i] <= |b_i|^2 <= alpha^(2i) B[i],  B[s-1] <= B^2.
/// Dependent rows give false; the empty basis is reduced.
bool is_alpha_b_reduced(const WorkingBasis& m, const ReductionParams& params);

/// Norm bounds every (alpha, B)-reduced sequence satisfies:
///   B[i] <= alpha^(2(s-1-i)) B^2  and  |b_i|^2 <= alpha^(2(s-1)) B^2.
bool satisfies_reduced_norm_bounds(const WorkingBasis& m, const ReductionParams& params);

}  // namespace gradlat
