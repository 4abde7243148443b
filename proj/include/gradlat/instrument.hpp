#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "gradlat/core.hpp"
#include "gradlat/lll.hpp"

namespace gradlat {

class MalformedTrace : public Error {
public:
    using Error::Error;
};

enum class EventKind { Init, Adjoin, Scale, KernelCall, Removal, Final };

std::string to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& name);

/// Everything the checker needs to know about the run that produced a trace.
struct TraceHeader {
    std::size_t r = 0;
    std::size_t N = 0;
    std::size_t c = 0;
    std::size_t k = 0;
    Rational delta;
    Rational eta;
    Rational alphaSq;
    Rational gamma;
    Rational BSq;
};

/// One snapshot of the working basis, taken right after the named event.
struct TraceEvent {
    EventKind kind = EventKind::Init;
    std::size_t column = 0;  ///< 1-based data column being processed, 0 before the first
    std::size_t s = 0;
    unsigned long ell = 0;
    Rational adSq;
    std::vector<Rational> normSq;
    Rational maxRowNormSq;
    std::string pf;  ///< progress in decimal, for reading only
    std::size_t switchesSoFar = 0;
    std::size_t removalsSoFar = 0;
    std::size_t iterationsSoFar = 0;
    Integer modulus;         ///< adjoin: P_j, 0 when the column has no modulus row
    Rational removedNormSq;  ///< removal: G-S length^2 of the dropped row
};

struct Trace {
    TraceHeader header;
    std::vector<TraceEvent> events;
};

/// Product of the squared G-S lengths; 1 for the empty basis.
Rational active_determinant_sq(const GSOState& g);

/// 4 alpha^(4c) B^4; each removal weighs c * log_gamma of this in the progress.
Rational removal_unit(const TraceHeader& h);

/// sum_i i * log_gamma(normSq[i]) + nRemoved * c * log_gamma(4 alpha^(4c) B^4)
/// (0-based i), evaluated with 192-bit binary floating point and rendered
/// with 40 significant digits. Reporting only.
std::string progress(const std::vector<Rational>& normSq, std::size_t nRemoved, const TraceHeader& h);
double progress_value(const std::vector<Rational>& normSq, std::size_t nRemoved, const TraceHeader& h);

/// gamma^progress in exact form:
///   prod_i normSq[i]^i * (4 alpha^(4c) B^4)^(nRemoved * c).
Rational progress_potential(const std::vector<Rational>& normSq, std::size_t nRemoved, const TraceHeader& h);

/// Snapshot of m with the given GSO.
TraceEvent make_event(EventKind kind, const WorkingBasis& m, const GSOState& g, const TraceHeader& h,
                      std::size_t switches, std::size_t removals, std::size_t iterations);

void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);

enum class CheckStatus { Pass, Fail, Warn };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    bool hard = true;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> results;

    bool hard_ok() const;
    const CheckResult* find(const std::string& name) const;
    std::string summary() const;
};

/// Frozen constants for the soft iteration and switch bounds. Worst ratios
/// seen on the fixture suite were 1.67 and 0.158; these leave 2x headroom.
inline constexpr double kIterationConstant = 3.5;
inline constexpr double kSwitchConstant = 0.35;

double switch_budget(const TraceHeader& h);
double iteration_budget(const TraceHeader& h);

/// Runs every invariant over a complete trace. Hard checks:
///   progress-monotone, ad-reconciliation, column-ad-factor, ad-bound-after-kernel,
///   prekernel-norm, gs-length-cap, ad-growth-per-scale,
///   row-cap, scale-monotone, adjoin-monotone,
///   counters-monotone.
/// Soft checks: iteration-budget, switch-budget.
CheckReport check_trace(const Trace& trace);

}  // namespace gradlat
