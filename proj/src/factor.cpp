#include "gradlat/factor.hpp"

#include <algorithm>

namespace gradlat {

namespace {

Integer ipow(unsigned long p, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

Integer pow2(unsigned long e) {
    Integer r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

bool poly_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs.size(); i-- > 0;)
        if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
    return false;
}

Rational matrix_threshold(std::size_t r, const Rational& alphaSq, const Rational& bSq) {
    return 2 * pow(alphaSq, 2 * r + 1) * bSq;
}

Rational search_bound_sq(unsigned long e, std::size_t r) { return Rational(pow2(2 * e + 2) * static_cast<unsigned long>(r + 1)); }

}  // namespace

unsigned long root_bound_log2(const IntPoly& f) {
    if (f.degree() < 1) return 0;
    const std::size_t N = static_cast<std::size_t>(f.degree());
    const Integer lead = abs(f.lead());
    for (unsigned long t = 0;; ++t) {
        Integer rhs = 0;
        for (std::size_t i = 0; i < N; ++i) rhs += abs(f.coeffs[i]) * pow2(t * i);
        if (lead * pow2(t * N) > rhs) return t;
    }
}

std::vector<Integer> derivative_quotient_bounds(const IntPoly& f) {
    const std::size_t N = static_cast<std::size_t>(std::max<long>(f.degree(), 0));
    const unsigned long t = root_bound_log2(f);
    std::vector<Integer> bound(N, 0);
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t i = j + 1; i <= N; ++i) bound[j] += abs(f.coeffs[i]) * pow2(t * (i - j - 1));
        bound[j] *= static_cast<unsigned long>(N);
    }
    return bound;
}

std::vector<unsigned long> coeff_bounds(const IntPoly& f, unsigned long p) {
    const auto bound = derivative_quotient_bounds(f);
    const unsigned long N = static_cast<unsigned long>(bound.size());
    std::vector<unsigned long> b;
    for (const auto& v : bound) {
        const Integer need = v * v * N;
        unsigned long k = 0;
        for (Integer pw = 1; pw < need; pw *= p * p) ++k;
        b.push_back(k);
    }
    return b;
}

unsigned long prescale_exponent(std::size_t r, std::size_t N) {
    const Integer need = Integer(static_cast<unsigned long>(r)) * static_cast<unsigned long>(r) * static_cast<unsigned long>(N);
    unsigned long e = 0;
    while (pow2(2 * e) < need) ++e;
    return e;
}

unsigned long minimal_precision(const IntPoly& f, unsigned long p, const std::vector<unsigned long>& b, std::size_t r,
                                const Rational& alphaSq) {
    unsigned long a = precision_target(f, p, b);
    const std::size_t N = b.size();
    const unsigned long e = prescale_exponent(r, N);
    const Rational threshold = matrix_threshold(r, alphaSq, search_bound_sq(e, r));
    const unsigned long bmax = b.empty() ? 0 : *std::max_element(b.begin(), b.end());
    while (Rational(pow2(e) * ipow(p, a - bmax)) <= threshold) ++a;
    return a;
}

AllCoeffMatrix build_all_coefficients_matrix(const IntPoly& f, const PadicFactorization& pf,
                                             const std::vector<unsigned long>& b, const Rational& alphaSq) {
    const std::size_t N = static_cast<std::size_t>(f.degree());
    const std::size_t r = pf.factors.size();
    if (b.size() != N) throw Error("expected one coefficient bound per coefficient of g' f / g");
    const Integer m = pf.modulus();
    const ModPoly F(f, m);

    AllCoeffMatrix out;
    out.b = b;
    out.e = prescale_exponent(r, N);
    out.BSq = search_bound_sq(out.e, r);
    const Integer scale = pow2(out.e);
    const Rational threshold = matrix_threshold(r, alphaSq, out.BSq);

    KnapsackBasis& kb = out.basis;
    kb.r = r;
    kb.N = N;
    kb.X.assign(r, std::vector<Integer>(N));
    for (std::size_t t = 0; t < N; ++t) {
        const std::size_t j = N - 1 - t;
        if (b[j] > pf.a) throw PrecisionTooLow("p^a is below the coefficient bound");
        kb.P.push_back(scale * ipow(pf.p, pf.a - b[j]));
        if (Rational(kb.P.back()) <= threshold) throw PrecisionTooLow("modulus column below 2 alpha^(4r+2) B^2");
    }
    for (std::size_t i = 0; i < r; ++i) {
        auto [quot, rem] = divrem(F, pf.factors[i]);
        if (!rem.is_zero()) throw Error("lifted factor does not divide f");
        const ModPoly c = derivative(pf.factors[i]) * quot;
        for (std::size_t t = 0; t < N; ++t) {
            const std::size_t j = N - 1 - t;
            const Integer cij = j < c.coeffs.size() ? c.coeffs[j] : Integer(0);
            kb.X[i][t] = round_nearest(Rational(scale * cij, ipow(pf.p, b[j])));
        }
    }
    return out;
}

Recombination decode_recombination(const WorkingBasis& m, std::size_t r) {
    std::vector<std::vector<Integer>> block;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto& row = m.raw_row(i);
        if (row.size() < r) throw NotDecodable("basis narrower than the identity block");
        block.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(r));
    }
    const auto h = hermite_form(std::move(block));
    Recombination rec;
    std::vector<int> covered(r, 0);
    for (const auto& row : h) {
        std::vector<std::size_t> part;
        for (std::size_t k = 0; k < r; ++k) {
            if (sgn(row[k]) == 0) continue;
            if (row[k] != 1) throw NotDecodable("echelon block has an entry other than 0 or 1");
            part.push_back(k);
            ++covered[k];
        }
        rec.parts.push_back(std::move(part));
    }
    for (int c : covered)
        if (c != 1) throw NotDecodable("echelon rows do not partition the local factors");
    return rec;
}

std::vector<IntPoly> assemble_and_certify(const IntPoly& f, const Recombination& rec, const PadicFactorization& pf) {
    const Integer m = pf.modulus();
    std::vector<IntPoly> out;
    IntPoly prod{1};
    for (const auto& part : rec.parts) {
        ModPoly g(IntPoly{std::vector<Integer>{pf.leadCoeff}}, m);
        for (std::size_t i : part) g = g * pf.factors.at(i);
        IntPoly cand = primitive_part(g.lift());
        if (cand.degree() < 1 || !divide_exact(f, cand)) throw CertificationFailed("candidate does not divide f");
        prod = prod * cand;
        out.push_back(std::move(cand));
    }
    if (prod != primitive_part(f)) throw CertificationFailed("candidates do not multiply back to f");
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

IntPoly Factorization::expand() const {
    IntPoly acc{std::vector<Integer>{content}};
    for (const auto& [g, k] : factors)
        for (unsigned i = 0; i < k; ++i) acc = acc * g;
    return acc;
}

namespace {

std::vector<IntPoly> factor_squarefree(const IntPoly& f, const FactorOptions& options, FactorStats& stats) {
    if (f.degree() <= 1) return {f};
    const unsigned long p = choose_prime(f);
    const auto local = factor_mod_p(f, p, options.seed);
    stats.p = p;
    stats.r = local.size();
    if (local.size() == 1) return {f};

    const auto params0 = ReductionParams::make(options.delta, options.eta, 5);
    const auto b = coeff_bounds(f, p);
    unsigned long a = minimal_precision(f, p, b, local.size(), params0.alphaSq);
    for (unsigned attempt = 0; attempt < options.maxAttempts; ++attempt) {
        stats.a = a;
        ++stats.attempts;
        try {
            const auto pf = hensel_lift(f, local, p, a);
            const auto mat = build_all_coefficients_matrix(f, pf, b, params0.alphaSq);
            const auto params = ReductionParams::make(options.delta, options.eta, mat.BSq);
            GradualOptions go;
            go.recordTrace = options.recordTrace;
            auto res = gradual_reduce(mat.basis, params, go);
            if (options.recordTrace) stats.traces.push_back(std::move(res.trace));
            return assemble_and_certify(f, decode_recombination(res.basis, local.size()), pf);
        } catch (const PrecisionTooLow&) {
        } catch (const NotDecodable&) {
        } catch (const CertificationFailed&) {
        }
        ++stats.retries;
        a *= 2;
    }
    throw CertificationFailed("no certified factorization after " + std::to_string(options.maxAttempts) + " attempts");
}

}  // namespace

Factorization factor_z(const IntPoly& f, const FactorOptions& options, FactorStats* statsOut) {
    if (f.is_zero()) throw Error("cannot factor the zero polynomial");
    FactorStats local;
    FactorStats& stats = statsOut ? *statsOut : local;

    Factorization out;
    out.content = content(f);
    if (sgn(f.lead()) < 0) out.content = -out.content;
    if (f.degree() == 0) return out;

    IntPoly g = primitive_part(f);
    IntPoly sqf = *divide_exact(g, gcd(g, derivative(g)));
    sqf = primitive_part(sqf);
    for (auto& h : factor_squarefree(sqf, options, stats)) {
        unsigned k = 0;
        while (auto q = divide_exact(g, h)) {
            g = std::move(*q);
            ++k;
        }
        if (k == 0) throw CertificationFailed("factor does not divide the input");
        out.factors.emplace_back(std::move(h), k);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) { return poly_less(x.first, y.first); });
    if (out.expand() != f) throw CertificationFailed("factorization does not multiply back to the input");
    return out;
}

}  // namespace gradlat
