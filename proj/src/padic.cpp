#include "gradlat/padic.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace gradlat {

namespace {

void trim_vec(std::vector<Integer>& c) {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DivisionImpossible("leading coefficient is not a unit modulo " + m.get_str());
    return inv;
}

ModPoly at_modulus(const ModPoly& f, const Integer& m) { return ModPoly(f.lift(), m); }

void require_same_modulus(const ModPoly& a, const ModPoly& b) {
    if (a.modulus != b.modulus) throw Error("polynomials over different moduli");
}

Integer ipow(unsigned long p, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

ModPoly constant(const Integer& v, const Integer& m) { return ModPoly(std::vector<Integer>{v}, m); }

ModPoly monomial_x(const Integer& m) { return ModPoly(std::vector<Integer>{Integer(0), Integer(1)}, m); }

bool is_one(const ModPoly& f) { return f.degree() == 0 && f.coeffs[0] == 1; }

}  // namespace

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Integer> c) : coeffs(std::move(c)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> c) {
    for (long v : c) coeffs.emplace_back(v);
    trim();
}

Integer IntPoly::lead() const { return coeffs.empty() ? Integer(0) : coeffs.back(); }

Integer IntPoly::coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : Integer(0); }

void IntPoly::trim() { trim_vec(coeffs); }

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> c(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> c(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPoly(std::move(c));
}

IntPoly operator*(const Integer& k, const IntPoly& a) {
    std::vector<Integer> c = a.coeffs;
    for (auto& v : c) v *= k;
    return IntPoly(std::move(c));
}

IntPoly derivative(const IntPoly& f) {
    std::vector<Integer> c;
    for (std::size_t i = 1; i < f.coeffs.size(); ++i) c.push_back(f.coeffs[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(c));
}

Integer content(const IntPoly& f) {
    Integer g = 0;
    for (const auto& v : f.coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    Integer g = content(f);
    if (sgn(f.lead()) < 0) g = -g;
    std::vector<Integer> c = f.coeffs;
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g) {
    if (g.is_zero()) throw DivisionImpossible("division by the zero polynomial");
    if (f.is_zero()) return IntPoly{};
    if (f.degree() < g.degree()) return std::nullopt;
    std::vector<Integer> r = f.coeffs;
    std::vector<Integer> q(static_cast<std::size_t>(f.degree() - g.degree()) + 1, 0);
    const std::size_t dg = static_cast<std::size_t>(g.degree());
    const Integer& lg = g.coeffs.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        const Integer& top = r[k + dg];
        if (sgn(top) == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lg.get_mpz_t())) return std::nullopt;
        Integer t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lg.get_mpz_t());
        q[k] = t;
        for (std::size_t i = 0; i <= dg; ++i) r[k + i] -= t * g.coeffs[i];
    }
    trim_vec(r);
    if (!r.empty()) return std::nullopt;
    return IntPoly(std::move(q));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    IntPoly u = primitive_part(a), v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        // pseudo-remainder of u by v
        std::vector<Integer> r = u.coeffs;
        const std::size_t dv = static_cast<std::size_t>(v.degree());
        const Integer& lv = v.coeffs.back();
        while (r.size() > dv) {
            const Integer top = r.back();
            const std::size_t shift = r.size() - 1 - dv;
            for (auto& x : r) x *= lv;
            for (std::size_t i = 0; i <= dv; ++i) r[shift + i] -= top * v.coeffs[i];
            trim_vec(r);
        }
        u = std::move(v);
        v = primitive_part(IntPoly(std::move(r)));
    }
    return u;
}

Integer max_abs_coeff(const IntPoly& f) { return max_abs(f.coeffs); }

Rational evaluate(const IntPoly& f, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = acc * x + Rational(f.coeffs[i]);
    return acc;
}

std::string to_string(const IntPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) {
        const Integer& c = f.coeffs[i];
        if (sgn(c) == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << '*';
        os << 'x';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

std::string to_coeff_string(const IntPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) os << (i ? " " : "") << f.coeffs[i];
    return os.str();
}

Integer mods(const Integer& v, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

// ---------------------------------------------------------------- ModPoly

ModPoly::ModPoly(const IntPoly& f, const Integer& m) : ModPoly(f.coeffs, m) {}

ModPoly::ModPoly(std::vector<Integer> c, const Integer& m) : coeffs(std::move(c)), modulus(m) {
    if (modulus < 2) throw Error("modulus must be at least 2");
    for (auto& v : coeffs) v = mods(v, modulus);
    trim_vec(coeffs);
}

Integer ModPoly::lead() const { return coeffs.empty() ? Integer(0) : coeffs.back(); }

bool ModPoly::is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }

IntPoly ModPoly::lift() const { return IntPoly(coeffs); }

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    require_same_modulus(a, b);
    return ModPoly(a.lift() + b.lift(), a.modulus);
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    require_same_modulus(a, b);
    return ModPoly(a.lift() - b.lift(), a.modulus);
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    require_same_modulus(a, b);
    return ModPoly(a.lift() * b.lift(), a.modulus);
}

ModPoly derivative(const ModPoly& f) { return ModPoly(derivative(f.lift()), f.modulus); }

ModPoly reduce(const ModPoly& f, const Integer& m) {
    if (!mpz_divisible_p(f.modulus.get_mpz_t(), m.get_mpz_t()))
        throw Error("cannot reduce modulo a non-divisor of the modulus");
    return ModPoly(f.lift(), m);
}

std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b) {
    require_same_modulus(a, b);
    const Integer& m = a.modulus;
    if (b.is_zero()) throw DivisionImpossible("division by the zero polynomial");
    const Integer inv = inverse_mod(b.lead(), m);
    if (a.degree() < b.degree()) return {ModPoly(std::vector<Integer>{}, m), a};
    std::vector<Integer> r = a.coeffs;
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Integer> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer t = r[k + db] * inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        q[k] = t;
        if (sgn(t) == 0) continue;
        for (std::size_t i = 0; i <= db; ++i) {
            r[k + i] -= t * b.coeffs[i];
            mpz_fdiv_r(r[k + i].get_mpz_t(), r[k + i].get_mpz_t(), m.get_mpz_t());
        }
    }
    r.resize(db);
    return {ModPoly(std::move(q), m), ModPoly(std::move(r), m)};
}

ModPoly make_monic(const ModPoly& f) {
    if (f.is_zero()) return f;
    return constant(inverse_mod(f.lead(), f.modulus), f.modulus) * f;
}

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
    require_same_modulus(a, b);
    ModPoly u = a, v = b;
    while (!v.is_zero()) {
        ModPoly r = divrem(u, v).second;
        u = std::move(v);
        v = std::move(r);
    }
    return make_monic(u);
}

void xgcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t) {
    require_same_modulus(a, b);
    const Integer& m = a.modulus;
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = constant(1, m), s1(std::vector<Integer>{}, m);
    ModPoly t0(std::vector<Integer>{}, m), t1 = constant(1, m);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        g = r0;
        s = s0;
        t = t0;
        return;
    }
    ModPoly k = constant(inverse_mod(r0.lead(), m), m);
    g = k * r0;
    s = k * s0;
    t = k * t0;
}

ModPoly powmod(const ModPoly& base, const Integer& e, const ModPoly& f) {
    ModPoly result = divrem(constant(1, f.modulus), f).second;
    ModPoly b = divrem(base, f).second;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = divrem(result * result, f).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = divrem(result * b, f).second;
    }
    return result;
}

// ---------------------------------------------------------------- primes and factoring mod p

unsigned long choose_prime(const IntPoly& f) {
    if (f.degree() < 1) throw Error("choose_prime needs a nonconstant polynomial");
    for (unsigned long p = 2;; ++p) {
        if (!mpz_probab_prime_p(Integer(p).get_mpz_t(), 30)) continue;
        if (mpz_divisible_ui_p(f.lead().get_mpz_t(), p)) continue;
        ModPoly F(f, Integer(p));
        if (gcd(F, derivative(F)).degree() == 0) return p;
    }
}

namespace {

ModPoly random_poly(std::mt19937_64& rng, long degreeBelow, const Integer& p) {
    std::vector<Integer> c(static_cast<std::size_t>(degreeBelow));
    for (auto& v : c) {
        Integer raw = static_cast<unsigned long>(rng());
        raw <<= 64;
        raw += static_cast<unsigned long>(rng());
        mpz_fdiv_r(v.get_mpz_t(), raw.get_mpz_t(), p.get_mpz_t());
    }
    return ModPoly(std::move(c), p);
}

/// Splits a monic product of distinct irreducibles of degree d.
void equal_degree_split(const ModPoly& g, long d, unsigned long p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    const Integer P(p);
    for (;;) {
        ModPoly a = random_poly(rng, g.degree(), P);
        if (a.degree() < 1) continue;
        ModPoly t;
        if (p == 2) {
            t = a;
            ModPoly u = a;
            for (long i = 1; i < d; ++i) {
                u = divrem(u * u, g).second;
                t = t + u;
            }
        } else {
            Integer e = ipow(p, static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            t = powmod(a, e, g) - constant(1, P);
        }
        ModPoly w = gcd(g, t);
        if (w.degree() > 0 && w.degree() < g.degree()) {
            equal_degree_split(w, d, p, rng, out);
            equal_degree_split(divrem(g, w).first, d, p, rng, out);
            return;
        }
    }
}

bool canonical_less(const ModPoly& a, const ModPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
        Integer x = a.coeffs[i], y = b.coeffs[i];
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), a.modulus.get_mpz_t());
        mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), b.modulus.get_mpz_t());
        if (x != y) return x < y;
    }
    return false;
}

}  // namespace

std::vector<ModPoly> factor_mod_p(const IntPoly& f, unsigned long p, std::uint64_t seed) {
    const Integer P(p);
    ModPoly F(f, P);
    if (F.degree() != f.degree()) throw NotSeparable("p divides the leading coefficient");
    if (F.degree() < 1) return {};
    F = make_monic(F);
    if (gcd(F, derivative(F)).degree() != 0) throw NotSeparable("f is not squarefree modulo " + P.get_str());

    std::mt19937_64 rng(seed);
    std::vector<ModPoly> out;
    const ModPoly x = monomial_x(P);
    ModPoly rest = F;
    ModPoly h = x;
    for (long i = 1; rest.degree() >= 2 * i; ++i) {
        h = powmod(h, P, rest);
        ModPoly g = gcd(h - x, rest);
        if (g.degree() > 0) {
            equal_degree_split(g, i, p, rng, out);
            rest = divrem(rest, g).first;
            h = divrem(h, rest).second;
        }
    }
    if (rest.degree() > 0) out.push_back(rest);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

unsigned long precision_target(const IntPoly& f, unsigned long p, const std::vector<unsigned long>& b) {
    const std::size_t N = static_cast<std::size_t>(std::max<long>(f.degree(), 0));
    const Integer A = max_abs_coeff(f);
    unsigned long logA = 0;
    if (A > 1) logA = static_cast<unsigned long>(mpz_sizeinbase(Integer(A - 1).get_mpz_t(), 2));
    Integer target = 1;
    mpz_mul_2exp(target.get_mpz_t(), target.get_mpz_t(), N * N + N * logA);
    unsigned long t = 0;
    for (Integer pw = 1; pw <= target; pw *= p) ++t;
    unsigned long bmax = 0;
    for (auto v : b) bmax = std::max(bmax, v);
    return bmax + t;
}

// ---------------------------------------------------------------- Hensel lifting

Integer PadicFactorization::modulus() const { return ipow(p, a); }

namespace {

/// f = g h mod p with g, h monic and s g + t h = 1 mod p; returns (G, H)
/// with f = G H mod p^a.
std::pair<ModPoly, ModPoly> lift_pair(const ModPoly& f, ModPoly g, ModPoly h, ModPoly s, ModPoly t, unsigned long p,
                                      unsigned long a) {
    unsigned long e = 1;
    while (e < a) {
        e = std::min(2 * e, a);
        const Integer m = ipow(p, e);
        g = at_modulus(g, m);
        h = at_modulus(h, m);
        s = at_modulus(s, m);
        t = at_modulus(t, m);
        const ModPoly F = reduce(f, m);
        const ModPoly one = constant(1, m);

        ModPoly err = F - g * h;
        auto [q, r] = divrem(s * err, h);
        ModPoly g2 = g + t * err + q * g;
        ModPoly h2 = h + r;
        ModPoly b = s * g2 + t * h2 - one;
        auto [c, d] = divrem(s * b, h2);
        s = s - d;
        t = t - t * b - c * g2;
        g = std::move(g2);
        h = std::move(h2);
    }
    return {g, h};
}

void lift_all(const ModPoly& f, const std::vector<ModPoly>& fs, std::size_t lo, std::size_t hi, unsigned long p,
              unsigned long a, std::vector<ModPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(f);
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const Integer P(p);
    ModPoly g = constant(1, P), h = constant(1, P);
    for (std::size_t i = lo; i < mid; ++i) g = g * fs[i];
    for (std::size_t i = mid; i < hi; ++i) h = h * fs[i];
    ModPoly one, s, t;
    xgcd(g, h, one, s, t);
    if (!is_one(one)) throw LiftFailure("factors are not coprime modulo p");
    auto [G, H] = lift_pair(f, g, h, s, t, p, a);
    lift_all(G, fs, lo, mid, p, a, out);
    lift_all(H, fs, mid, hi, p, a, out);
}

}  // namespace

PadicFactorization hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors, unsigned long p,
                               unsigned long a) {
    if (a == 0) throw LiftFailure("precision must be at least 1");
    if (factors.empty()) throw LiftFailure("no factors to lift");
    const Integer P(p);
    if (mpz_divisible_ui_p(f.lead().get_mpz_t(), p)) throw LiftFailure("p divides the leading coefficient");
    ModPoly prod = constant(1, P);
    for (const auto& fi : factors) {
        if (fi.modulus != P || !fi.is_monic()) throw LiftFailure("factors must be monic modulo p");
        prod = prod * fi;
    }
    if (prod != make_monic(ModPoly(f, P))) throw LiftFailure("factors do not multiply to f modulo p");

    PadicFactorization out;
    out.p = p;
    out.a = a;
    out.leadCoeff = f.lead();
    const Integer m = out.modulus();
    const ModPoly F = make_monic(ModPoly(f, m));
    lift_all(F, factors, 0, factors.size(), p, a, out.factors);

    ModPoly check = constant(out.leadCoeff, m);
    for (const auto& fi : out.factors) check = check * fi;
    if (check != ModPoly(f, m)) throw LiftFailure("lifted factors do not multiply back to f");
    return out;
}

}  // namespace gradlat
