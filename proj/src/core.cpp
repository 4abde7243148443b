#include "gradlat/core.hpp"

#include <algorithm>
#include <cctype>

namespace gradlat {

namespace {

Integer pow2(unsigned long e) {
    Integer r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

}  // namespace

Rational DyadicVector::tail() const {
    Rational q(tailNumerator, pow2(exponent));
    q.canonicalize();
    return q;
}

std::vector<Rational> DyadicVector::values() const {
    std::vector<Rational> out(head.begin(), head.end());
    out.push_back(tail());
    return out;
}

WorkingBasis::WorkingBasis(std::size_t width, unsigned long exponent)
    : width_(width), exponent_(exponent) {}

WorkingBasis WorkingBasis::identity(std::size_t r) {
    WorkingBasis m(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Integer> row(r, 0);
        row[i] = 1;
        m.push_back(std::move(row));
    }
    return m;
}

WorkingBasis WorkingBasis::from_integer_rows(const std::vector<std::vector<Integer>>& rows) {
    WorkingBasis m(rows.empty() ? 0 : rows.front().size(), 0);
    for (const auto& row : rows) m.push_back(row);
    return m;
}

Rational WorkingBasis::entry(std::size_t i, std::size_t k) const {
    if (k + 1 < width_ || exponent_ == 0) return Rational(rows_[i][k]);
    Rational q(rows_[i][k], pow2(exponent_));
    q.canonicalize();
    return q;
}

DyadicVector WorkingBasis::row(std::size_t i) const {
    DyadicVector v;
    if (width_ == 0) return v;
    v.head.assign(rows_[i].begin(), rows_[i].end() - 1);
    v.tailNumerator = rows_[i].back();
    v.exponent = exponent_;
    return v;
}

std::vector<Integer> WorkingBasis::last_numerators() const {
    std::vector<Integer> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) out.push_back(row.back());
    return out;
}

void WorkingBasis::push_back(std::vector<Integer> row) {
    if (row.size() != width_) throw Error("row width mismatch");
    rows_.push_back(std::move(row));
}

void WorkingBasis::insert_front(std::vector<Integer> row) {
    if (row.size() != width_) throw Error("row width mismatch");
    rows_.insert(rows_.begin(), std::move(row));
}

void WorkingBasis::sub_mul(std::size_t i, std::size_t j, const Integer& q) {
    auto& dst = rows_[i];
    const auto& src = rows_[j];
    for (std::size_t k = 0; k < width_; ++k) dst[k] -= q * src[k];
}

Rational WorkingBasis::dot(std::size_t i, std::size_t j) const {
    if (width_ == 0) return 0;
    const auto& a = rows_[i];
    const auto& b = rows_[j];
    Integer head = 0;
    for (std::size_t k = 0; k + 1 < width_; ++k) head += a[k] * b[k];
    Integer tail = a.back() * b.back();
    if (exponent_ == 0) return Rational(head + tail);
    // head + tail / 4^l, assembled over the common denominator
    Integer den = pow2(2 * exponent_);
    Rational q(head * den + tail, den);
    q.canonicalize();
    return q;
}

std::vector<std::vector<Integer>> WorkingBasis::integer_rows() const {
    if (exponent_ != 0) throw Error("basis is not integral");
    return rows_;
}

void GSOState::pop_back() {
    normSq.pop_back();
    mu.pop_back();
    for (auto& row : mu) row.resize(normSq.size());
}

GSOState gso(const WorkingBasis& basis) {
    const std::size_t s = basis.rows();
    GSOState g;
    g.mu.assign(s, std::vector<Rational>(s, 0));
    g.normSq.assign(s, 0);
    // r[i][j] = <b_i, b_j*> for j <= i
    std::vector<std::vector<Rational>> r(s, std::vector<Rational>(s, 0));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Rational v = basis.dot(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= g.mu[j][k] * r[i][k];
            r[i][j] = v;
            if (j < i) g.mu[i][j] = v / g.normSq[j];
        }
        g.normSq[i] = r[i][i];
        g.mu[i][i] = 1;
        if (sgn(g.normSq[i]) <= 0) throw DependentRows();
    }
    return g;
}

WorkingBasis scale_last_column(const WorkingBasis& m, unsigned long newExponent) {
    WorkingBasis out = m;
    out.set_exponent(newExponent);
    return out;
}

long floor_log2(const Integer& v) {
    if (sgn(v) <= 0) throw NonPositive("floor_log2 of a nonpositive value");
    return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)) - 1;
}

long ceil_log2_ratio(const Integer& numer, const Rational& denom) {
    if (sgn(numer) <= 0) throw NonPositive("ceil_log2_ratio: numerator must be positive");
    if (sgn(denom) <= 0) throw NonPositive("ceil_log2_ratio: denominator must be positive");
    // numer / denom = a / b with a = numer * den(denom), b = num(denom)
    Integer a = numer * denom.get_den();
    const Integer& b = denom.get_num();
    long t = floor_log2(a) - floor_log2(b);
    // a/b lies in (2^(t-1), 2^(t+1)), so the answer is t or t+1
    Integer lhs = a;
    Integer rhs = b;
    if (t >= 0)
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(t));
    else
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(-t));
    return lhs <= rhs ? t : t + 1;
}

Integer max_abs(const std::vector<Integer>& column) {
    Integer m = 0;
    for (const auto& v : column) {
        if (abs(v) > m) m = abs(v);
    }
    return m;
}

Rational pow(const Rational& base, unsigned long e) {
    Rational r(0);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

Rational product(const std::vector<Rational>& values) {
    Rational p = 1;
    for (const auto& v : values) p *= v;
    return p;
}

Integer round_nearest(const Rational& q) {
    // floor(|q| + 1/2) with exact halves pulled back toward zero
    Integer num = abs(q.get_num());
    const Integer& den = q.get_den();
    Integer twice = 2 * num + den;
    Integer two_den = 2 * den;
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), two_den.get_mpz_t());
    if (r * two_den == twice) r -= 1;  // tie
    if (r < 0) r = 0;
    return sgn(q) < 0 ? Integer(-r) : r;
}

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.empty()) throw Error("empty rational");
    auto dot = t.find('.');
    try {
        if (t.front() == '+') t.erase(0, 1);
        if (dot == std::string::npos) {
            Rational q(t, 10);
            if (sgn(q.get_den()) == 0) throw Error("zero denominator: " + text);
            q.canonicalize();
            return q;
        }
        dot = t.find('.');
        if (t.find('/') != std::string::npos) throw Error("malformed rational: " + text);
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        std::size_t frac = t.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") throw Error("malformed rational: " + text);
        Integer num(digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational: " + text);
    }
}

std::vector<std::vector<Integer>> hermite_form(std::vector<std::vector<Integer>> a) {
    if (a.empty()) return a;
    const std::size_t n = a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < a.size(); ++col) {
        for (std::size_t i = row; i < a.size(); ++i) {
            if (sgn(a[i][col]) == 0) continue;
            if (i != row && sgn(a[row][col]) == 0) {
                a[row].swap(a[i]);
                continue;
            }
            if (i == row) continue;
            // unimodular 2x2 step putting gcd(a_row, a_i) into the pivot
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[row][col].get_mpz_t(), a[i][col].get_mpz_t());
            const Integer u = a[row][col] / g, v = a[i][col] / g;
            for (std::size_t k = 0; k < n; ++k) {
                Integer top = s * a[row][k] + t * a[i][k];
                a[i][k] = u * a[i][k] - v * a[row][k];
                a[row][k] = std::move(top);
            }
        }
        if (sgn(a[row][col]) == 0) continue;
        if (sgn(a[row][col]) < 0)
            for (auto& x : a[row]) x = -x;
        for (std::size_t i = 0; i < row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
            if (sgn(q) == 0) continue;
            for (std::size_t k = 0; k < n; ++k) a[i][k] -= q * a[row][k];
        }
        ++row;
    }
    a.resize(row);
    return a;
}

Integer parse_integer(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    if (t.empty() || t == "-") throw Error("malformed integer: " + text);
    for (std::size_t i = (t.front() == '-') ? 1 : 0; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw Error("malformed integer: " + text);
    return Integer(t, 10);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace gradlat
