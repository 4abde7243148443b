#include <random>

#include "doctest.h"
#include "factor_oracle.hpp"
#include "gradlat/factor.hpp"

using namespace gradlat;

namespace {

IntPoly random_poly(std::mt19937_64& rng, long degree, unsigned bits) {
    const long bound = (1L << bits) - 1;
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<Integer> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = d(rng);
    while (c.back() == 0) c.back() = d(rng);
    return IntPoly(std::move(c));
}

std::vector<IntPoly> plain_factors(const Factorization& fz) {
    std::vector<IntPoly> out;
    for (const auto& [g, k] : fz.factors) out.push_back(g);
    return out;
}

}  // namespace

TEST_CASE("root bound") {
    CHECK(root_bound_log2(IntPoly{1, 0, 1}) == 1);
    CHECK(root_bound_log2(IntPoly{-100, 1}) == 7);
    CHECK(root_bound_log2(IntPoly{-1, 0, 0, 8}) == 0);
}

TEST_CASE("coefficient bounds cover every true divisor") {
    // f = (x^2 - 2)(x^2 + 1)(x - 3); divisors are products of subsets
    std::vector<IntPoly> irr = {IntPoly{-2, 0, 1}, IntPoly{1, 0, 1}, IntPoly{-3, 1}};
    IntPoly f = irr[0] * irr[1] * irr[2];
    const std::size_t N = static_cast<std::size_t>(f.degree());
    auto bound = derivative_quotient_bounds(f);
    auto b = coeff_bounds(f, 13);
    REQUIRE(bound.size() == N);
    for (unsigned mask = 1; mask < 8; ++mask) {
        IntPoly g{1};
        for (unsigned i = 0; i < 3; ++i)
            if (mask >> i & 1) g = g * irr[i];
        IntPoly target = derivative(g) * *divide_exact(f, g);
        for (std::size_t j = 0; j < N; ++j) CHECK(abs(target.coeff(j)) <= bound[j]);
    }
    for (std::size_t j = 0; j < N; ++j) {
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 13, 2 * b[j]);
        CHECK(pw >= bound[j] * bound[j] * static_cast<unsigned long>(N));
        if (b[j] > 0) {
            mpz_ui_pow_ui(pw.get_mpz_t(), 13, 2 * b[j] - 2);
            CHECK(pw < bound[j] * bound[j] * static_cast<unsigned long>(N));
        }
    }
    // larger coefficients never shrink the bound
    auto bigger = derivative_quotient_bounds(IntPoly{-7, 0, 1} * irr[1] * irr[2]);
    for (std::size_t j = 0; j < N; ++j) CHECK(bigger[j] >= bound[j]);
}

TEST_CASE("prescale exponent") {
    CHECK(prescale_exponent(1, 1) == 0);
    CHECK(prescale_exponent(2, 4) == 2);
    CHECK(prescale_exponent(3, 4) == 3);
    CHECK(prescale_exponent(4, 10) == 4);
}

TEST_CASE("true recombinations are short in the all-coefficients matrix") {
    IntPoly f{-2, 0, -1, 0, 1};  // (x^2 - 2)(x^2 + 1)
    const unsigned long p = 13;
    auto local = factor_mod_p(f, p);
    const auto alphaSq = Rational(2);
    auto b = coeff_bounds(f, p);
    auto a = minimal_precision(f, p, b, local.size(), alphaSq);
    auto pf = hensel_lift(f, local, p, a);
    auto mat = build_all_coefficients_matrix(f, pf, b, alphaSq);
    auto kb = normalize_input(mat.basis);
    const std::size_t r = kb.r, N = kb.N;
    CHECK(mat.BSq == Rational(Integer(1) << (2 * mat.e + 2)) * static_cast<unsigned long>(r + 1));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < N; ++t) CHECK(kb.X[i][t] < kb.P[t]);

    // which local factors divide x^2 - 2 decides the two target subsets
    for (const IntPoly& g : {IntPoly{-2, 0, 1}, IntPoly{1, 0, 1}}) {
        std::vector<Integer> v(r + N, 0);
        for (std::size_t i = 0; i < r; ++i) {
            ModPoly gi(g, pf.modulus());
            if (divrem(gi, pf.factors[i]).second.is_zero()) {
                v[i] = 1;
                for (std::size_t t = 0; t < N; ++t) v[r + t] += kb.X[i][t];
            }
        }
        Rational n2 = 0;
        for (std::size_t t = 0; t < N; ++t) {
            v[r + t] = mods(v[r + t], kb.P[t]);
        }
        for (const auto& x : v) n2 += Rational(x * x);
        CHECK(n2 <= mat.BSq);
    }
    CHECK_THROWS_AS(build_all_coefficients_matrix(f, hensel_lift(f, local, p, 6), b, alphaSq), PrecisionTooLow);
}

TEST_CASE("decode_recombination") {
    auto rows = [](std::initializer_list<std::initializer_list<long>> rs) {
        std::vector<std::vector<Integer>> out;
        for (auto r : rs) {
            std::vector<Integer> v;
            for (long x : r) v.emplace_back(x);
            out.push_back(v);
        }
        return WorkingBasis::from_integer_rows(out);
    };
    auto rec = decode_recombination(rows({{1, 1, 0, 0, 5}, {0, 0, 1, 1, -3}}), 4);
    CHECK(rec.parts == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});
    // any unimodular mix of the same block decodes the same way
    rec = decode_recombination(rows({{1, 1, 1, 1, 2}, {0, 0, 1, 1, -3}}), 4);
    CHECK(rec.parts == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});
    rec = decode_recombination(rows({{1, 0, 0, 7}, {0, 1, 0, 0}, {0, 0, 1, 1}}), 3);
    CHECK(rec.parts.size() == 3);
    CHECK_THROWS_AS(decode_recombination(rows({{1, -1, 0, 0, 0}}), 4), NotDecodable);
    CHECK_THROWS_AS(decode_recombination(rows({{1, 1, 0, 0, 1}}), 4), NotDecodable);
    CHECK_THROWS_AS(decode_recombination(rows({{2, 0, 1}, {0, 1, 0}}), 2), NotDecodable);
}

TEST_CASE("factor_z examples") {
    SUBCASE("x^4 - x^2 - 2") {
        FactorStats stats;
        auto fz = factor_z(IntPoly{-2, 0, -1, 0, 1}, {}, &stats);
        CHECK(fz.content == 1);
        CHECK(plain_factors(fz) == std::vector<IntPoly>{IntPoly{-2, 0, 1}, IntPoly{1, 0, 1}});
        CHECK(stats.retries <= 2);
    }
    SUBCASE("x^4 - 10x^2 + 1 is irreducible") {
        IntPoly f{1, 0, -10, 0, 1};
        auto fz = factor_z(f);
        CHECK(plain_factors(fz) == std::vector<IntPoly>{f});
        CHECK(oracle::zassenhaus(f) == std::vector<IntPoly>{f});
    }
    SUBCASE("cyclotomic x^4 - x^2 + 1") {
        IntPoly f{1, 0, -1, 0, 1};
        CHECK(plain_factors(factor_z(f)) == std::vector<IntPoly>{f});
    }
    SUBCASE("content") {
        auto fz = factor_z(IntPoly{-6, 0, 6});
        CHECK(fz.content == 6);
        CHECK(plain_factors(fz) == std::vector<IntPoly>{IntPoly{-1, 1}, IntPoly{1, 1}});
        auto neg = factor_z(IntPoly{1, 0, -1});
        CHECK(neg.content == -1);
        CHECK(neg.expand() == IntPoly{1, 0, -1});
    }
    SUBCASE("repeated factor") {
        auto fz = factor_z(IntPoly{1, 2, 1});
        REQUIRE(fz.factors.size() == 1);
        CHECK(fz.factors[0].first == IntPoly{1, 1});
        CHECK(fz.factors[0].second == 2);
        auto mixed = factor_z(IntPoly{-2, 0, 1} * IntPoly{-2, 0, 1} * IntPoly{1, 0, 1} * IntPoly{3, 2});
        CHECK(mixed.expand() == IntPoly{-2, 0, 1} * IntPoly{-2, 0, 1} * IntPoly{1, 0, 1} * IntPoly{3, 2});
        CHECK(mixed.factors.size() == 3);
    }
    SUBCASE("constants and linear input") {
        CHECK(factor_z(IntPoly{-5}).content == -5);
        CHECK(factor_z(IntPoly{-5}).factors.empty());
        auto lin = factor_z(IntPoly{4, 6});
        CHECK(lin.content == 2);
        CHECK(plain_factors(lin) == std::vector<IntPoly>{IntPoly{2, 3}});
        CHECK_THROWS_AS(factor_z(IntPoly{}), Error);
    }
}

TEST_CASE("factor_z agrees with subset enumeration") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 4; ++trial) {
        IntPoly g = random_poly(rng, 3 + trial % 2, 6);
        IntPoly h = random_poly(rng, 2 + trial % 3, 6);
        IntPoly f = g * h;
        FactorOptions opts;
        opts.recordTrace = true;
        FactorStats stats;
        auto fz = factor_z(f, opts, &stats);
        CHECK(fz.expand() == f);
        if (gcd(f, derivative(f)).degree() == 0) CHECK(plain_factors(fz) == oracle::zassenhaus(f));
        CHECK(stats.retries <= 2);
        for (const auto& t : stats.traces) {
            auto report = check_trace(t);
            CHECK_MESSAGE(report.hard_ok(), report.summary());
        }
    }
}
