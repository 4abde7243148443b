#include "gradlat/gradual.hpp"

#include <algorithm>
#include <string>

namespace gradlat {

Integer KnapsackBasis::max_abs() const {
    Integer m = 0;
    for (const auto& p : P) m = std::max<Integer>(m, abs(p));
    for (const auto& row : X)
        for (const auto& v : row) m = std::max<Integer>(m, abs(v));
    return m;
}

std::vector<std::vector<Integer>> KnapsackBasis::lattice_rows() const {
    std::vector<std::vector<Integer>> rows;
    for (std::size_t j = N; j-- > 0;) {
        if (sgn(P[j]) == 0) continue;
        std::vector<Integer> row(r + N, 0);
        row[r + j] = P[j];
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Integer> row(r + N, 0);
        row[i] = 1;
        for (std::size_t j = 0; j < N; ++j) row[r + j] = X[i][j];
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Integer> KnapsackBasis::column(std::size_t j) const {
    std::vector<Integer> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = X[i][j];
    return col;
}

void KnapsackBasis::validate() const {
    if (P.size() != N) throw InvalidParams("expected " + std::to_string(N) + " moduli");
    if (X.size() != r) throw InvalidParams("expected " + std::to_string(r) + " data rows");
    for (const auto& row : X)
        if (row.size() != N) throw InvalidParams("data row width differs from N");
}

KnapsackBasis normalize_input(const KnapsackBasis& a) {
    a.validate();
    KnapsackBasis out = a;
    for (std::size_t j = 0; j < out.N; ++j) {
        if (sgn(out.P[j]) == 0) continue;
        out.P[j] = abs(out.P[j]);
        for (std::size_t i = 0; i < out.r; ++i) {
            Integer& x = out.X[i][j];
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), out.P[j].get_mpz_t());
        }
    }
    return out;
}

GradualConfig compute_c(const std::vector<Integer>& P, std::size_t r, std::size_t N, const ReductionParams& params) {
    GradualConfig cfg;
    cfg.params = params;
    std::size_t k = 0;
    for (; k < N; ++k) {
        const Rational threshold = 2 * pow(params.alphaSq, 2 * r + 2 * k + 1) * params.BSq;
        std::size_t small = 0;
        for (const auto& p : P)
            if (Rational(abs(p)) < threshold) ++small;
        if (small <= k) break;
    }
    cfg.k = k;
    cfg.c = std::min(2 * r + 2 * k + 1, r + N);
    return cfg;
}

unsigned long adjoin_column(WorkingBasis& m, std::size_t r, const std::vector<Integer>& x, const Integer& P) {
    if (!m.integral()) throw Error("adjoin_column needs an integral basis");
    if (x.size() != r) throw Error("column length differs from r");
    const std::size_t s = m.rows();
    std::vector<Integer> y(s, 0);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t t = 0; t < r; ++t) y[i] += m.raw(i, t) * x[t];

    Integer top = std::max<Integer>(abs(P), max_abs(y));
    if (top < 2) top = 2;
    const unsigned long ell = static_cast<unsigned long>(floor_log2(top));

    WorkingBasis out(m.width() + 1, ell);
    if (sgn(P) != 0) {
        std::vector<Integer> row(m.width() + 1, 0);
        row.back() = P;
        out.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Integer> row = m.raw_row(i);
        row.push_back(y[i]);
        out.push_back(std::move(row));
    }
    m = std::move(out);
    return ell;
}

unsigned long next_scale_exponent(const std::vector<Integer>& y, const GradualConfig& config) {
    const Integer top = max_abs(y);
    if (sgn(top) == 0) return 0;
    const Rational threshold = pow(config.params.alphaSq, config.c) * config.params.BSq;
    const long e = ceil_log2_ratio(top, threshold);
    return e > 0 ? static_cast<unsigned long>(e) : 0;
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw AssertionViolation(what);
}

/// Each G-S length of `after` is at least the matching one of `before`;
/// `shift` accounts for a row inserted on top.
void require_monotone(const GSOState& before, const GSOState& after, std::size_t shift, const char* what) {
    require(after.size() == before.size() + shift, what);
    for (std::size_t i = 0; i < before.size(); ++i) require(after.normSq[i + shift] >= before.normSq[i], what);
}

}  // namespace

GradualResult gradual_reduce(const KnapsackBasis& input, const ReductionParams& params, const GradualOptions& options) {
    if (input.r == 0) throw InvalidParams("the identity block must be nonempty (r >= 1)");
    if (params.BSq < 5) throw InvalidParams("B must be at least sqrt(5), got B^2 = " + to_string(params.BSq));
    if (params.alphaSq < Rational(4, 3)) throw InvalidParams("alpha must be at least sqrt(4/3)");
    const KnapsackBasis a = normalize_input(input);

    GradualResult res;
    res.config = compute_c(a.P, a.r, a.N, params);
    const auto& cfg = res.config;
    TraceHeader& h = res.trace.header;
    h.r = a.r;
    h.N = a.N;
    h.c = cfg.c;
    h.k = cfg.k;
    h.delta = params.delta;
    h.eta = params.eta;
    h.alphaSq = params.alphaSq;
    h.gamma = params.gamma;
    h.BSq = params.BSq;

    const Rational prekernelCap = 2 * pow(params.alphaSq, 2 * cfg.c) * params.BSq * params.BSq;

    WorkingBasis m = WorkingBasis::identity(a.r);
    GSOState g = gso(m);
    std::size_t column = 0;
    auto record = [&](EventKind kind, const WorkingBasis& basis, const GSOState& state) -> TraceEvent* {
        if (!options.recordTrace) return nullptr;
        res.trace.events.push_back(make_event(kind, basis, state, h, res.switches, res.removals, res.iterations));
        res.trace.events.back().column = column;
        return &res.trace.events.back();
    };
    record(EventKind::Init, m, g);

    for (std::size_t j = 0; j < a.N; ++j) {
        column = j + 1;
        GSOState before = g;
        unsigned long ell = adjoin_column(m, a.r, a.column(j), a.P[j]);
        g = gso(m);
        if (options.assertInvariants) {
            require(m.rows() <= cfg.c, "row count exceeded c");
            require_monotone(before, g, sgn(a.P[j]) != 0 ? 1 : 0, "adjoining decreased a G-S length");
        }
        if (auto* e = record(EventKind::Adjoin, m, g)) e->modulus = a.P[j];

        while (ell != 0) {
            before = g;
            ell = next_scale_exponent(m.last_numerators(), cfg);
            m.set_exponent(ell);
            g = gso(m);
            ++res.iterations;
            if (options.assertInvariants) {
                require_monotone(before, g, 0, "scaling decreased a G-S length");
                for (std::size_t i = 0; i < m.rows(); ++i)
                    require(m.norm_sq(i) <= prekernelCap, "row norm above 2 alpha^(4c) B^4 before the kernel call");
            }
            record(EventKind::Scale, m, g);

            const std::size_t baseSwitches = res.switches;
            const std::size_t baseRemovals = res.removals;
            RemovalObserver observer;
            if (options.recordTrace) {
                observer = [&](const WorkingBasis& mm, const GSOState& gg, const Rational& removed,
                               const KernelReport& rep) {
                    res.switches = baseSwitches + rep.switches;
                    res.removals = baseRemovals + rep.removals;
                    if (auto* e = record(EventKind::Removal, mm, gg)) e->removedNormSq = removed;
                };
            }
            KernelReport rep = lll_with_removals(m, g, params, observer);
            res.switches = baseSwitches + rep.switches;
            res.removals = baseRemovals + rep.removals;
            record(EventKind::KernelCall, m, g);
        }
        if (options.assertInvariants) require(m.integral(), "column loop ended with a fractional column");
    }
    record(EventKind::Final, m, g);
    res.basis = std::move(m);
    return res;
}

}  // namespace gradlat
