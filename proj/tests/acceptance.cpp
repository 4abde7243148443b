// One line per acceptance criterion. Exit status 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "approx.hpp"
#include "factor_oracle.hpp"
#include "gradlat/factor.hpp"
#include "gradlat/gradual.hpp"
#include "gradlat/minpoly.hpp"
#include "oracles.hpp"

using namespace gradlat;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Every run made by any criterion is also fed to the trace checker here.
std::size_t g_traces = 0;
std::vector<std::string> g_traceFailures;

void audit(const Trace& trace, const std::string& label) {
    ++g_traces;
    const CheckReport report = check_trace(trace);
    if (report.hard_ok()) return;
    std::string names;
    for (const auto& r : report.results)
        if (r.hard && r.status == CheckStatus::Fail) names += " " + r.name;
    g_traceFailures.push_back(label + " failed" + names);
}

GradualResult reduce(const KnapsackBasis& a, const Rational& BSq, const std::string& label) {
    GradualResult res = gradual_reduce(a, ReductionParams::defaults(BSq));
    audit(res.trace, label);
    return res;
}

KnapsackBasis random_knapsack(std::mt19937_64& rng, std::size_t r, std::size_t N, unsigned bits) {
    KnapsackBasis a;
    a.r = r;
    a.N = N;
    a.X.assign(r, std::vector<Integer>(N));
    for (std::size_t j = 0; j < N; ++j) {
        const bool withModulus = rng() % 2 == 0;
        a.P.push_back(withModulus ? Integer(oracle::random_bits(rng, bits) + 1) : Integer(0));
        for (std::size_t i = 0; i < r; ++i) {
            a.X[i][j] = oracle::random_bits(rng, bits);
            if (rng() & 1) a.X[i][j] = -a.X[i][j];
        }
    }
    return a;
}

/// Makes the last identity row satisfy a small relation with the others, so
/// some short vectors exist.
void plant(std::mt19937_64& rng, KnapsackBasis& a) {
    std::vector<long> coef(a.r - 1);
    for (auto& c : coef) c = static_cast<long>(rng() % 5) - 2;
    for (std::size_t j = 0; j < a.N; ++j) {
        Integer v = 0;
        for (std::size_t i = 0; i + 1 < a.r; ++i) v += coef[i] * a.X[i][j];
        a.X[a.r - 1][j] = -v;
        if (a.P[j] != 0) a.X[a.r - 1][j] += static_cast<long>(rng() % 7) * a.P[j];
    }
}

Outcome criterion1() {
    std::mt19937_64 rng(101);
    const Rational bSq[] = {Rational(5), Rational(100), Rational(1000000)};
    int runs = 0, bad = 0;
    for (int t = 0; t < 120; ++t) {
        const std::size_t r = 1 + t % 4;
        const std::size_t N = 1 + (t / 4) % 6;
        KnapsackBasis a = random_knapsack(rng, r, N, 1 + static_cast<unsigned>(rng() % 128));
        if (r > 1 && t % 2 == 0) plant(rng, a);
        const Rational& B2 = bSq[t % 3];
        const GradualResult res = reduce(a, B2, "criterion 1 instance " + std::to_string(t));
        ++runs;
        if (!is_alpha_b_reduced(res.basis, ReductionParams::defaults(B2))) ++bad;
    }
    return {bad == 0, std::to_string(runs) + " bases, " + std::to_string(bad) + " not (alpha,B)-reduced"};
}

Outcome criterion2() {
    std::mt19937_64 rng(202);
    int runs = 0, missing = 0;
    std::size_t vectors = 0;
    for (int t = 0; t < 36; ++t) {
        const std::size_t r = 1 + t % 4;
        const std::size_t N = 1 + (t / 4) % (5 - r);
        KnapsackBasis a = random_knapsack(rng, r, N, 4 + static_cast<unsigned>(rng() % 37));
        if (r > 1) plant(rng, a);
        const Rational B2 = 5 + static_cast<long>(rng() % 30);
        const GradualResult res = reduce(a, B2, "criterion 2 instance " + std::to_string(t));
        const KnapsackBasis n = normalize_input(a);
        const auto shorts = oracle::enumerate_short(r, n.X, n.P, B2);
        const auto out = res.basis.integer_rows();
        for (const auto& v : shorts)
            if (!oracle::in_integer_span(out, v)) ++missing;
        vectors += shorts.size();
        ++runs;
    }
    return {missing == 0, std::to_string(runs) + " instances, " + std::to_string(vectors) + " short vectors, " +
                              std::to_string(missing) + " missing from the output span"};
}

Outcome criterion3() {
    std::string detail = std::to_string(g_traces) + " traces checked, " + std::to_string(g_traceFailures.size()) +
                         " with a hard failure";
    if (!g_traceFailures.empty()) detail += "; first: " + g_traceFailures.front();
    return {g_traces > 0 && g_traceFailures.empty(), detail};
}

Outcome criterion4() {
    std::mt19937_64 rng(404);
    double worstIt = 0, worstSw = 0;
    int runs = 0, over = 0;
    for (unsigned bits = 128; bits <= 4096; bits *= 2) {
        for (std::size_t N = 1; N <= 4; ++N) {
            for (int planted = 0; planted < 2; ++planted) {
                KnapsackBasis a = random_knapsack(rng, 2, N, bits);
                if (planted) plant(rng, a);
                const GradualResult res = reduce(a, 100, "criterion 4 instance " + std::to_string(runs));
                const TraceHeader& h = res.trace.header;
                const double it = static_cast<double>(res.iterations) / iteration_budget(h);
                const double sw = static_cast<double>(res.switches) / switch_budget(h);
                worstIt = std::max(worstIt, it);
                worstSw = std::max(worstSw, sw);
                if (it > 1 || sw > 1) ++over;
                ++runs;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d runs, log X from 128 to 4096 bits; worst use of budget: iterations %.2f, switches %.2f "
                  "(C = %.2f, C' = %.2f)",
                  runs, worstIt, worstSw, kIterationConstant, kSwitchConstant);
    return {over == 0, buf};
}

IntPoly random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<long> coeff(-1023, 1023);
    std::vector<Integer> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = coeff(rng);
    while (c.back() == 0) c.back() = coeff(rng);
    return IntPoly(std::move(c));
}

std::vector<IntPoly> factors_of(const IntPoly& f, const std::string& label) {
    FactorOptions options;
    options.recordTrace = true;
    FactorStats stats;
    const Factorization fz = factor_z(f, options, &stats);
    for (std::size_t i = 0; i < stats.traces.size(); ++i) audit(stats.traces[i], label);
    std::vector<IntPoly> out;
    if (fz.expand() != f) return {};
    for (const auto& [g, k] : fz.factors)
        for (unsigned i = 0; i < k; ++i) out.push_back(g);
    return out;
}

Outcome criterion5() {
    int bad = 0;
    std::string first;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok && first.empty()) first = what;
        if (!ok) ++bad;
    };
    expect(factors_of(IntPoly{-2, 0, -1, 0, 1}, "x^4 - x^2 - 2") ==
               std::vector<IntPoly>{IntPoly{-2, 0, 1}, IntPoly{1, 0, 1}},
           "x^4 - x^2 - 2");
    expect(factors_of(IntPoly{1, 0, -10, 0, 1}, "x^4 - 10x^2 + 1") == std::vector<IntPoly>{IntPoly{1, 0, -10, 0, 1}},
           "x^4 - 10x^2 + 1");
    std::mt19937_64 rng(505);
    int products = 0;
    while (products < 20) {
        const IntPoly g = random_poly(rng, 5), h = random_poly(rng, 5);
        const IntPoly f = g * h;
        // keep the oracle comparison meaningful: primitive and squarefree
        if (content(f) != 1 || f.lead() < 0 || gcd(f, derivative(f)).degree() != 0) continue;
        const std::string label = "product " + std::to_string(products);
        const auto got = factors_of(f, label);
        bool ok = !got.empty() && got == oracle::zassenhaus(f);
        // both random factors must be unions of the returned factors
        ok = ok && divide_exact(f, primitive_part(g)).has_value();
        for (const auto& part : got) ok = ok && (divide_exact(primitive_part(g), part) || divide_exact(primitive_part(h), part));
        expect(ok, label + ": " + to_string(f));
        ++products;
    }
    std::string detail = "2 named polynomials and " + std::to_string(products) + " products, " + std::to_string(bad) +
                         " mismatches";
    if (!first.empty()) detail += "; first: " + first;
    return {bad == 0, detail};
}

Outcome criterion6() {
    struct Case {
        const char* name;
        Rational value;
        unsigned long bits;
        unsigned d;
        long H;
        IntPoly want;
    };
    const Case cases[] = {
        {"sqrt 2", approx::sqrt_of(2, 200), 200, 2, 2, IntPoly{-2, 0, 1}},
        {"cube root of 2", approx::cbrt_of(2, 300), 300, 3, 2, IntPoly{-2, 0, 0, 1}},
        {"sqrt 2 + sqrt 3", approx::sqrt_of(2, 400) + approx::sqrt_of(3, 400), 400, 4, 16, IntPoly{1, 0, -10, 0, 1}},
        {"golden ratio", approx::golden(200), 200, 2, 2, IntPoly{-1, -1, 1}},
    };
    int bad = 0;
    std::string first;
    for (const auto& c : cases) {
        MinPolyQuery q;
        q.d = c.d;
        q.H = c.H;
        MinPolyOptions options;
        options.recordTrace = true;
        MinPolyStats stats;
        std::string got;
        try {
            const IntPoly h = reconstruct_minpoly(ApproxNumber::from_rationals(c.value, 0, c.bits), q, options, &stats);
            got = to_string(h);
            if (h != c.want) ++bad;
        } catch (const Error& e) {
            got = e.what();
            ++bad;
        }
        audit(stats.trace, c.name);
        if (bad && first.empty()) first = std::string(c.name) + " gave " + got;
    }
    std::string detail = "4 numbers, " + std::to_string(bad) + " wrong";
    if (!first.empty()) detail += "; " + first;
    return {bad == 0, detail};
}

Outcome criterion7() {
    std::mt19937_64 rng(707);
    int bad = 0;
    for (int t = 0; t < 10; ++t) {
        const std::size_t r = 1 + t % 4;
        const std::size_t N = 1 + t % 3;
        const KnapsackBasis a = normalize_input(random_knapsack(rng, r, N, 8 + 4 * static_cast<unsigned>(t % 4)));
        // diameter scale: X sqrt(r + N), X the largest entry
        const Integer X = std::max<Integer>(a.max_abs(), 1);
        const Rational B2(X * X * static_cast<unsigned long>(r + N));
        const GradualResult res = reduce(a, B2, "criterion 7 instance " + std::to_string(t));
        if (oracle::hnf(res.basis.integer_rows()) != oracle::hnf(a.lattice_rows())) ++bad;
    }
    return {bad == 0, "10 bases, " + std::to_string(bad) + " whose output spans a proper sub-lattice"};
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<Outcome()> run;
        double budgetSeconds;  // 0 = no runtime target
    };
    // criterion 3 runs last since it audits the traces of all the others
    const Criterion criteria[] = {
        {1, "(alpha,B)-reduction on random knapsack bases", criterion1, 300},
        {2, "every vector of norm <= B lies in the output span", criterion2, 0},
        {4, "iteration and switch counts within frozen budgets", criterion4, 0},
        {5, "factoring over Z", criterion5, 120},
        {6, "minimal polynomial reconstruction", criterion6, 60},
        {7, "B at diameter scale recovers the whole lattice", criterion7, 0},
        {3, "hard invariants hold on every trace", criterion3, 0},
    };
    std::vector<std::string> lines(8);
    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budgetSeconds > 0 && sec > c.budgetSeconds) {
            o.pass = false;
            o.detail += "; over the runtime target";
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, " [%.2fs]", sec);
        lines[c.number] = "criterion " + std::to_string(c.number) + ": " + (o.pass ? "PASS" : "FAIL") + "  " +
                          c.title + ": " + o.detail + timing;
        all = all && o.pass;
    }
    for (int i = 1; i <= 7; ++i) std::printf("%s\n", lines[i].c_str());
    return all ? 0 : 1;
}
