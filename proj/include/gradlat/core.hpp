#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gradlat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DependentRows : public Error {
public:
    DependentRows() : Error("rows are linearly dependent") {}
};

class NonPositive : public Error {
public:
    using Error::Error;
};

/// A kernel-internal invariant failed; always a bug, never bad input.
class AssertionViolation : public Error {
public:
    using Error::Error;
};

/// A row whose last coordinate is tailNumerator / 2^exponent and whose other
/// coordinates are integers.
struct DyadicVector {
    std::vector<Integer> head;
    Integer tailNumerator;
    unsigned long exponent = 0;

    Rational tail() const;
    std::vector<Rational> values() const;
};

/// The matrix M of the gradual reduction: s rows of equal width whose last
/// column shares one power-of-two denominator 2^exponent.
///
/// Rows are stored full width; the last stored entry of each row is the
/// numerator of the last coordinate. With exponent 0 the matrix is integral.
class WorkingBasis {
public:
    WorkingBasis() = default;
    WorkingBasis(std::size_t width, unsigned long exponent = 0);

    static WorkingBasis identity(std::size_t r);
    static WorkingBasis from_integer_rows(const std::vector<std::vector<Integer>>& rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    unsigned long exponent() const { return exponent_; }
    bool empty() const { return rows_.empty(); }
    bool integral() const { return exponent_ == 0; }

    /// Stored entry; for the last column this is the numerator.
    const Integer& raw(std::size_t i, std::size_t k) const { return rows_[i][k]; }
    Integer& raw(std::size_t i, std::size_t k) { return rows_[i][k]; }
    const std::vector<Integer>& raw_row(std::size_t i) const { return rows_[i]; }
    std::vector<Integer>& raw_row(std::size_t i) { return rows_[i]; }

    Rational entry(std::size_t i, std::size_t k) const;
    DyadicVector row(std::size_t i) const;

    /// Numerators of the last column, i.e. 2^exponent times its values.
    std::vector<Integer> last_numerators() const;

    void push_back(std::vector<Integer> row);
    void insert_front(std::vector<Integer> row);
    void pop_back() { rows_.pop_back(); }
    void swap_rows(std::size_t i, std::size_t j) { rows_[i].swap(rows_[j]); }
    void set_exponent(unsigned long e) { exponent_ = e; }

    /// rows[i] -= q * rows[j]; exact since all rows share the exponent.
    void sub_mul(std::size_t i, std::size_t j, const Integer& q);

    /// Exact inner product of rows i and j.
    Rational dot(std::size_t i, std::size_t j) const;
    Rational norm_sq(std::size_t i) const { return dot(i, i); }

    /// Rows as integer vectors; requires integral().
    std::vector<std::vector<Integer>> integer_rows() const;

    bool operator==(const WorkingBasis&) const = default;

private:
    std::size_t width_ = 0;
    unsigned long exponent_ = 0;
    std::vector<std::vector<Integer>> rows_;
};

/// Exact Gram-Schmidt data. mu is stored as a full square matrix but only
/// the strictly lower triangle is meaningful.
struct GSOState {
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> normSq;

    std::size_t size() const { return normSq.size(); }
    void pop_back();
};

/// Gram-Schmidt orthogonalization over Q. Throws DependentRows when some
/// squared G-S length is zero.
GSOState gso(const WorkingBasis& basis);

/// Returns M with its last column rescaled to y / 2^newExponent where y is the
/// current numerator column. Other entries are untouched.
WorkingBasis scale_last_column(const WorkingBasis& m, unsigned long newExponent);

/// Exact ceil(log2(numer / denom)) for numer > 0 and denom > 0.
long ceil_log2_ratio(const Integer& numer, const Rational& denom);

/// floor(log2(v)) for v > 0.
long floor_log2(const Integer& v);

Integer max_abs(const std::vector<Integer>& column);

/// base^e for a nonnegative integer exponent.
Rational pow(const Rational& base, unsigned long e);

/// Product of normSq, the square of the active determinant.
Rational product(const std::vector<Rational>& values);

/// Nearest integer, ties toward zero.
Integer round_nearest(const Rational& q);

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot), zero rows dropped.
std::vector<std::vector<Integer>> hermite_form(std::vector<std::vector<Integer>> rows);

Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace gradlat
