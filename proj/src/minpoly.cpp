#include "gradlat/minpoly.hpp"

#include <algorithm>
#include <cctype>

namespace gradlat {

namespace {

Integer pow2(unsigned long e) {
    Integer r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

unsigned long ceil_log2(const Integer& v) {
    if (v <= 1) return 0;
    return static_cast<unsigned long>(mpz_sizeinbase(Integer(v - 1).get_mpz_t(), 2));
}

Integer ceil_abs(const Rational& q) {
    Integer n = abs(q.get_num()), c;
    mpz_cdiv_q(c.get_mpz_t(), n.get_mpz_t(), q.get_den_mpz_t());
    return c;
}

struct Complex {
    Rational re, im;
};

Complex mul(const Complex& a, const Complex& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

Complex evaluate_complex(const IntPoly& h, const Complex& x) {
    Complex acc{0, 0};
    for (std::size_t i = h.coeffs.size(); i-- > 0;) {
        acc = mul(acc, x);
        acc.re += Rational(h.coeffs[i]);
    }
    return acc;
}

bool better(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return max_abs_coeff(a) < max_abs_coeff(b);
}

}  // namespace

Rational parse_real(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw Error("empty number");
    bool negative = false;
    std::size_t pos = 0;
    if (t[0] == '+' || t[0] == '-') {
        negative = t[0] == '-';
        pos = 1;
    }
    const bool hex = t.size() > pos + 1 && t[pos] == '0' && (t[pos + 1] == 'x' || t[pos + 1] == 'X');
    if (hex) pos += 2;
    const int base = hex ? 16 : 10;
    const char expChar = hex ? 'p' : 'e';

    Integer mantissa = 0;
    long fracDigits = 0;
    bool seenDot = false, seenDigit = false;
    for (; pos < t.size(); ++pos) {
        const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(t[pos])));
        if (ch == '.') {
            if (seenDot) throw Error("malformed number: " + text);
            seenDot = true;
            continue;
        }
        if (ch == expChar) break;
        int digit = -1;
        if (std::isdigit(static_cast<unsigned char>(ch))) digit = ch - '0';
        else if (hex && ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
        if (digit < 0) throw Error("malformed number: " + text);
        mantissa = mantissa * base + digit;
        if (seenDot) ++fracDigits;
        seenDigit = true;
    }
    if (!seenDigit) throw Error("malformed number: " + text);
    long exponent = 0;
    if (pos < t.size()) {
        const std::string e = t.substr(pos + 1);
        if (e.empty()) throw Error("malformed exponent: " + text);
        try {
            std::size_t used = 0;
            exponent = std::stol(e, &used);
            if (used != e.size()) throw Error("malformed exponent: " + text);
        } catch (const std::logic_error&) {
            throw Error("malformed exponent: " + text);
        }
    }
    // value = mantissa * base^-fracDigits * (2 or 10)^exponent
    Rational value(mantissa);
    if (hex) {
        long shift = exponent - 4 * fracDigits;
        if (shift >= 0) value *= Rational(pow2(static_cast<unsigned long>(shift)));
        else value /= Rational(pow2(static_cast<unsigned long>(-shift)));
    } else {
        long shift = exponent - fracDigits;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
        if (shift >= 0) value *= Rational(p);
        else value /= Rational(p);
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

Rational ApproxNumber::re() const { return Rational(reNum, pow2(exponent)); }

Rational ApproxNumber::im() const { return Rational(imNum, pow2(exponent)); }

ApproxNumber ApproxNumber::from_rationals(const Rational& re, const Rational& im, unsigned long precisionBits) {
    ApproxNumber x;
    x.precisionBits = precisionBits;
    x.exponent = precisionBits + 2;
    const Rational scale(pow2(x.exponent));
    x.reNum = round_nearest(re * scale);
    x.imNum = round_nearest(im * scale);
    return x;
}

unsigned long required_precision(const MinPolyQuery& q) {
    const unsigned long d = q.d;
    return 2 * (d * d + d * ceil_log2(q.H)) + 64;
}

MinPolyLattice build_minpoly_lattice(const ApproxNumber& x, const MinPolyQuery& q) {
    if (q.d < 1 || q.H < 1) throw InvalidParams("need d >= 1 and H >= 1");
    const unsigned long need = required_precision(q);
    if (x.precisionBits < need)
        throw InsufficientPrecision("need at least " + std::to_string(need) + " bits, got " +
                                    std::to_string(x.precisionBits));
    const unsigned long d = q.d;
    // |h(x~) - h(x)| <= H d(d+1)/2 M^(d-1) 2^-precision with M >= |x| + 1
    const Integer M = ceil_abs(x.re()) + ceil_abs(x.im()) + 1;
    Integer M1;
    mpz_pow_ui(M1.get_mpz_t(), M.get_mpz_t(), d - 1);
    const unsigned long guard = ceil_log2(q.H * (d * (d + 1) / 2) * M1) + 2;
    if (guard >= x.precisionBits) throw InsufficientPrecision("guard bits exceed the available precision");

    MinPolyLattice out;
    out.scale = x.precisionBits - guard;
    const std::size_t cols = x.is_real() ? 1 : 2;
    KnapsackBasis& kb = out.basis;
    kb.r = d + 1;
    kb.N = cols;
    kb.P.assign(cols, Integer(0));
    kb.X.assign(d + 1, std::vector<Integer>(cols));
    const Rational scale(pow2(out.scale));
    Complex power{1, 0};
    const Complex base{x.re(), x.im()};
    for (unsigned long i = 0; i <= d; ++i) {
        kb.X[i][0] = round_nearest(scale * power.re);
        if (cols == 2) kb.X[i][1] = round_nearest(scale * power.im);
        power = mul(power, base);
    }
    const Rational residual = Rational(Integer((d + 1) * q.H), 2) + 1;
    out.BSq = Rational((d + 1) * q.H * q.H) + static_cast<unsigned long>(cols) * residual * residual;
    return out;
}

bool accepts(const IntPoly& h, const ApproxNumber& x) {
    if (h.degree() < 1) return false;
    const Complex v = evaluate_complex(h, {x.re(), x.im()});
    const unsigned long half = (x.precisionBits + 1) / 2;
    return (v.re * v.re + v.im * v.im) * Rational(pow2(2 * half)) < 1;
}

IntPoly reconstruct_minpoly(const ApproxNumber& x, const MinPolyQuery& q, const MinPolyOptions& options,
                            MinPolyStats* stats) {
    const MinPolyLattice lat = build_minpoly_lattice(x, q);
    const auto params = ReductionParams::make(options.delta, options.eta, lat.BSq);
    GradualOptions go;
    go.recordTrace = options.recordTrace;
    GradualResult res = gradual_reduce(lat.basis, params, go);
    if (stats) {
        stats->outputRows = res.basis.rows();
        stats->trace = std::move(res.trace);
    }

    std::vector<IntPoly> found;
    for (std::size_t i = 0; i < res.basis.rows(); ++i) {
        const auto& row = res.basis.raw_row(i);
        IntPoly h = primitive_part(IntPoly(std::vector<Integer>(row.begin(), row.begin() + q.d + 1)));
        if (accepts(h, x)) found.push_back(std::move(h));
    }
    if (found.empty()) throw NotFound("no polynomial of degree <= " + std::to_string(q.d) + " fits the approximation");

    // the lattice may return multiples of the minimal polynomial; their gcd is a candidate too
    IntPoly common = found.front();
    for (const auto& h : found) common = gcd(common, h);
    if (accepts(common, x)) found.push_back(common);

    IntPoly best = *std::min_element(found.begin(), found.end(), better);
    if (options.certifyIrreducible && q.d <= 8) {
        const auto fz = factor_z(best);
        if (fz.factors.size() > 1 || fz.factors.front().second > 1) {
            std::vector<IntPoly> parts;
            for (const auto& [g, k] : fz.factors)
                if (accepts(g, x)) parts.push_back(g);
            if (parts.empty()) throw NotFound("candidate is reducible and no factor fits the approximation");
            best = *std::min_element(parts.begin(), parts.end(), better);
        }
    }
    return best;
}

}  // namespace gradlat
