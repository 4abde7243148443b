#include "gradlat/lll.hpp"

#include <algorithm>
#include <utility>

namespace gradlat {

ReductionParams ReductionParams::make(const Rational& delta, const Rational& eta, const Rational& BSq) {
    if (!(delta > Rational(1, 4) && delta < 1))
        throw InvalidParams("delta must lie in (1/4, 1), got " + to_string(delta));
    if (eta < Rational(1, 2) || eta * eta >= delta)
        throw InvalidParams("eta must lie in [1/2, sqrt(delta)), got " + to_string(eta));
    if (sgn(BSq) <= 0) throw InvalidParams("B^2 must be positive");
    ReductionParams p;
    p.delta = delta;
    p.eta = eta;
    p.alphaSq = 1 / (delta - eta * eta);
    p.gamma = 1 / delta;
    p.BSq = BSq;
    return p;
}

std::size_t size_reduce(WorkingBasis& m, GSOState& g, std::size_t kappa, const Rational& eta) {
    std::size_t count = 0;
    auto& muk = g.mu[kappa];
    for (std::size_t jj = kappa; jj-- > 0;) {
        if (abs(muk[jj]) <= eta) continue;
        Integer q = round_nearest(muk[jj]);
        if (sgn(q) == 0) continue;
        m.sub_mul(kappa, jj, q);
        for (std::size_t i = 0; i < jj; ++i) muk[i] -= q * g.mu[jj][i];
        muk[jj] -= q;
        ++count;
    }
    return count;
}

bool lovasz_holds(const GSOState& g, std::size_t kappa, const Rational& delta) {
    const Rational& prev = g.normSq[kappa - 1];
    const Rational& mu = g.mu[kappa][kappa - 1];
    return delta * prev <= g.normSq[kappa] + mu * mu * prev;
}

void switch_rows(WorkingBasis& m, GSOState& g, std::size_t kappa, const Rational& gamma) {
    const std::size_t k = kappa;
    const std::size_t s = g.size();
    const Rational oldPrev = g.normSq[k - 1];
    const Rational oldCur = g.normSq[k];
    const Rational mu = g.mu[k][k - 1];

    m.swap_rows(k - 1, k);

    Rational newPrev = oldCur + mu * mu * oldPrev;
    if (sgn(newPrev) <= 0) throw DependentRows();
    Rational newMu = mu * oldPrev / newPrev;
    Rational newCur = oldPrev * oldCur / newPrev;
    g.normSq[k - 1] = newPrev;
    g.normSq[k] = newCur;
    g.mu[k][k - 1] = newMu;
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(g.mu[k][j], g.mu[k - 1][j]);
    for (std::size_t i = k + 1; i < s; ++i) {
        Rational t = g.mu[i][k];
        g.mu[i][k] = g.mu[i][k - 1] - mu * t;
        g.mu[i][k - 1] = t + newMu * g.mu[i][k];
    }

    if (newCur < gamma * oldCur)
        throw AssertionViolation("switch grew B[kappa] by less than gamma");
    if (std::max(newPrev, newCur) > std::max(oldPrev, oldCur))
        throw AssertionViolation("switch increased the larger G-S length of the pair");
    if (std::min(newPrev, newCur) < std::min(oldPrev, oldCur))
        throw AssertionViolation("switch decreased the smallest G-S length");
    if (newPrev * newCur != oldPrev * oldCur)
        throw AssertionViolation("switch changed the product of G-S lengths");
}

KernelReport lll_with_removals(WorkingBasis& m, const ReductionParams& params,
                               const RemovalObserver& onRemoval) {
    GSOState g = gso(m);
    return lll_with_removals(m, g, params, onRemoval);
}

KernelReport lll_with_removals(WorkingBasis& m, GSOState& g, const ReductionParams& params,
                               const RemovalObserver& onRemoval) {
    KernelReport report;
    std::size_t kappa = 1;
    for (;;) {
        std::size_t s = m.rows();
        // rows before kappa are reduced; once kappa reaches the last row (or
        // passes it) the tail is examined for removal
        if (s > 0 && kappa + 1 >= s && g.normSq[s - 1] > params.BSq) {
            Rational removed = g.normSq[s - 1];
            m.pop_back();
            g.pop_back();
            ++report.removals;
            if (onRemoval) onRemoval(m, g, removed, report);
            kappa = std::min(kappa, s - 1);
            kappa = std::max<std::size_t>(kappa, 1);
            continue;
        }
        if (kappa >= s) break;
        report.sizeReductions += size_reduce(m, g, kappa, params.eta);
        if (lovasz_holds(g, kappa, params.delta)) {
            ++kappa;
        } else {
            switch_rows(m, g, kappa, params.gamma);
            ++report.switches;
            kappa = std::max<std::size_t>(kappa - 1, 1);
        }
    }
    return report;
}

bool is_alpha_b_reduced(const WorkingBasis& m, const ReductionParams& params) {
    const std::size_t s = m.rows();
    if (s == 0) return true;
    GSOState g;
    try {
        g = gso(m);
    } catch (const DependentRows&) {
        return false;
    }
    for (std::size_t i = 0; i + 1 < s; ++i)
        if (g.normSq[i] > params.alphaSq * g.normSq[i + 1]) return false;
    Rational alphaPow = 1;
    for (std::size_t i = 0; i < s; ++i) {
        Rational len = m.norm_sq(i);
        if (g.normSq[i] > len || len > alphaPow * g.normSq[i]) return false;
        alphaPow *= params.alphaSq;
    }
    return g.normSq[s - 1] <= params.BSq;
}

bool satisfies_reduced_norm_bounds(const WorkingBasis& m, const ReductionParams& params) {
    const std::size_t s = m.rows();
    if (s == 0) return true;
    GSOState g;
    try {
        g = gso(m);
    } catch (const DependentRows&) {
        return false;
    }
    const Rational rowCap = pow(params.alphaSq, s - 1) * params.BSq;
    for (std::size_t i = 0; i < s; ++i) {
        if (g.normSq[i] > pow(params.alphaSq, s - 1 - i) * params.BSq) return false;
        if (m.norm_sq(i) > rowCap) return false;
    }
    return true;
}

}  // namespace gradlat
