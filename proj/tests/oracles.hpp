#pragma once

// Test-only reference computations. Nothing here calls into the library's
// reduction or Gram-Schmidt code paths.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using IntMatrix = std::vector<std::vector<Z>>;
using RatMatrix = std::vector<std::vector<Q>>;

inline Q dot(const std::vector<Q>& a, const std::vector<Q>& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::vector<Q> to_q(const std::vector<Z>& v) { return {v.begin(), v.end()}; }

/// Explicit Gram-Schmidt vectors b_i* as rational vectors.
inline RatMatrix gs_vectors(const RatMatrix& rows) {
    RatMatrix star;
    for (const auto& b : rows) {
        std::vector<Q> v = b;
        for (const auto& w : star) {
            Q ww = dot(w, w);
            if (ww == 0) continue;
            Q mu = dot(b, w) / ww;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= mu * w[k];
        }
        star.push_back(std::move(v));
    }
    return star;
}

inline std::vector<Q> gs_norms(const RatMatrix& rows) {
    std::vector<Q> out;
    for (const auto& v : gs_vectors(rows)) out.push_back(dot(v, v));
    return out;
}

/// Determinant by cofactor expansion along the first row.
inline Q det_cofactor(const RatMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Q total = 0;
    for (std::size_t col = 0; col < n; ++col) {
        if (a[0][col] == 0) continue;
        RatMatrix minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Q> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != col) row.push_back(a[i][j]);
            minor.push_back(std::move(row));
        }
        Q term = a[0][col] * det_cofactor(minor);
        total += (col % 2 == 0) ? term : Q(-term);
    }
    return total;
}

inline RatMatrix gram(const RatMatrix& rows) {
    RatMatrix g(rows.size(), std::vector<Q>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) g[i][j] = dot(rows[i], rows[j]);
    return g;
}

inline Z round_half_to_zero(const Q& q) {
    Z fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Q frac = q - Q(fl);
    if (frac > Q(1, 2)) return fl + 1;
    if (frac < Q(1, 2)) return fl;
    return q > 0 ? fl : Z(fl + 1);  // exact half: toward zero
}

/// Textbook LLL with delta, full size reduction at every step and the
/// Gram-Schmidt vectors recomputed from scratch after every change.
inline RatMatrix textbook_lll(RatMatrix b, const Q& delta) {
    const std::size_t n = b.size();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            auto star = gs_vectors(b);
            Q mu = dot(b[k], star[j]) / dot(star[j], star[j]);
            if (abs(mu) <= Q(1, 2)) continue;
            Z q = round_half_to_zero(mu);
            for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= Q(q) * b[j][t];
        }
        auto star = gs_vectors(b);
        Q bk1 = dot(star[k - 1], star[k - 1]);
        Q bk = dot(star[k], star[k]);
        Q mu = dot(b[k], star[k - 1]) / bk1;
        if (bk >= (delta - mu * mu) * bk1) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

/// Solves v = sum c_i rows[i] over Q for linearly independent rows.
/// Returns nullopt when v is outside the rational span.
inline std::optional<std::vector<Q>> solve_combination(const RatMatrix& rows, const std::vector<Q>& v) {
    const std::size_t d = rows.size();
    const std::size_t n = v.size();
    // columns of the system: unknowns c_0..c_{d-1}; equations per coordinate
    RatMatrix aug(n, std::vector<Q>(d + 1));
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t i = 0; i < d; ++i) aug[t][i] = rows[i][t];
        aug[t][d] = v[t];
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivotCol;
    for (std::size_t col = 0; col < d && row < n; ++col) {
        std::size_t p = row;
        while (p < n && aug[p][col] == 0) ++p;
        if (p == n) return std::nullopt;  // dependent rows
        std::swap(aug[p], aug[row]);
        for (std::size_t t = 0; t < n; ++t) {
            if (t == row || aug[t][col] == 0) continue;
            Q f = aug[t][col] / aug[row][col];
            for (std::size_t u = col; u <= d; ++u) aug[t][u] -= f * aug[row][u];
        }
        pivotCol.push_back(col);
        ++row;
    }
    if (row < d) return std::nullopt;
    for (std::size_t t = row; t < n; ++t)
        if (aug[t][d] != 0) return std::nullopt;
    std::vector<Q> c(d);
    for (std::size_t i = 0; i < d; ++i) c[pivotCol[i]] = aug[i][d] / aug[i][pivotCol[i]];
    return c;
}

/// True when v is an integer combination of the independent rows.
inline bool in_integer_span(const IntMatrix& rows, const std::vector<Z>& v) {
    bool zero = std::all_of(v.begin(), v.end(), [](const Z& z) { return z == 0; });
    if (zero) return true;
    if (rows.empty()) return false;
    RatMatrix rq;
    for (const auto& r : rows) rq.push_back(to_q(r));
    auto c = solve_combination(rq, to_q(v));
    if (!c) return false;
    return std::all_of(c->begin(), c->end(), [](const Q& q) { return q.get_den() == 1; });
}

/// Row-style Hermite normal form with positive pivots; zero rows dropped.
inline IntMatrix hnf(IntMatrix a) {
    if (a.empty()) return a;
    const std::size_t n = a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < a.size(); ++col) {
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t i = row; i < a.size(); ++i)
                if (a[i][col] != 0 && (best == a.size() || abs(a[i][col]) < abs(a[best][col]))) best = i;
            if (best == a.size()) break;
            std::swap(a[row], a[best]);
            bool done = true;
            for (std::size_t i = row + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
                for (std::size_t t = 0; t < n; ++t) a[i][t] -= q * a[row][t];
                if (a[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (row < a.size() && a[row][col] != 0) {
            if (a[row][col] < 0)
                for (auto& x : a[row]) x = -x;
            for (std::size_t i = 0; i < row; ++i) {
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
                for (std::size_t t = 0; t < n; ++t) a[i][t] -= q * a[row][t];
            }
            ++row;
        }
    }
    a.resize(row);
    return a;
}

/// Every lattice vector of squared norm <= bSq for a knapsack basis with
/// identity block r, data X (r x N) and moduli P. The identity coordinates
/// equal the identity-row coefficients, so they range over |c_i| <= B; each
/// modulus coefficient is then confined to the few values keeping its
/// coordinate within [-B, B].
inline std::vector<std::vector<Z>> enumerate_short(std::size_t r, const IntMatrix& X, const std::vector<Z>& P,
                                                   const Q& bSq) {
    const std::size_t N = P.size();
    Z bound;  // floor(B)
    {
        Z num = bSq.get_num(), den = bSq.get_den();
        Z t = num / den;
        mpz_sqrt(bound.get_mpz_t(), t.get_mpz_t());
        while ((bound + 1) * (bound + 1) * den <= num) ++bound;
    }
    std::vector<std::vector<Z>> out;
    std::vector<Z> c(r, -bound);
    if (r == 0) return out;
    for (;;) {
        // identity part
        std::vector<Z> v(r + N, 0);
        Q partial = 0;
        for (std::size_t i = 0; i < r; ++i) {
            v[i] = c[i];
            partial += Q(c[i] * c[i]);
        }
        bool ok = partial <= bSq;
        std::vector<std::vector<Z>> options(N);
        for (std::size_t j = 0; ok && j < N; ++j) {
            Z base = 0;
            for (std::size_t i = 0; i < r; ++i) base += c[i] * X[i][j];
            if (P[j] == 0) {
                options[j].push_back(base);
            } else {
                // base + q P in [-B, B]
                Z lo = -bound - base, hi = bound - base, qlo, qhi;
                mpz_cdiv_q(qlo.get_mpz_t(), lo.get_mpz_t(), P[j].get_mpz_t());
                mpz_fdiv_q(qhi.get_mpz_t(), hi.get_mpz_t(), P[j].get_mpz_t());
                for (Z q = qlo; q <= qhi; ++q) options[j].push_back(base + q * P[j]);
            }
            std::erase_if(options[j], [&](const Z& val) { return abs(val) > bound; });
            if (options[j].empty()) ok = false;
        }
        if (ok) {
            std::vector<std::size_t> idx(N, 0);
            for (;;) {
                Q n2 = partial;
                for (std::size_t j = 0; j < N; ++j) {
                    v[r + j] = options[j][idx[j]];
                    n2 += Q(v[r + j] * v[r + j]);
                }
                if (n2 <= bSq) out.push_back(v);
                std::size_t j = 0;
                while (j < N && ++idx[j] == options[j].size()) idx[j++] = 0;
                if (j == N) break;
            }
        }
        std::size_t i = 0;
        while (i < r && ++c[i] > bound) c[i++] = -bound;
        if (i == r) break;
    }
    return out;
}

inline Z random_bits(std::mt19937_64& rng, unsigned bits) {
    Z v = 0;
    for (unsigned done = 0; done < bits; done += 32) {
        v <<= 32;
        v += static_cast<unsigned long>(rng() & 0xffffffffu);
    }
    Z mod = 1;
    mod <<= bits;
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    return v;
}

}  // namespace oracle
