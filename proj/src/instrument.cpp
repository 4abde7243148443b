#include "gradlat/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <mpfr.h>

#include "json.hpp"

namespace gradlat {

namespace {

using json = nlohmann::json;

constexpr mpfr_prec_t kProgressBits = 192;

/// Minimal RAII holder for an MPFR value.
class Real {
public:
    Real() { mpfr_init2(v_, kProgressBits); mpfr_set_zero(v_, 1); }
    ~Real() { mpfr_clear(v_); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    static void log_rational(Real& out, const Rational& q) {
        Real num, den;
        mpfr_set_z(num.get(), q.get_num_mpz_t(), MPFR_RNDN);
        mpfr_set_z(den.get(), q.get_den_mpz_t(), MPFR_RNDN);
        mpfr_log(num.get(), num.get(), MPFR_RNDN);
        mpfr_log(den.get(), den.get(), MPFR_RNDN);
        mpfr_sub(out.get(), num.get(), den.get(), MPFR_RNDN);
    }

private:
    mpfr_t v_;
};

void progress_real(Real& out, const std::vector<Rational>& normSq, std::size_t nRemoved, const TraceHeader& h) {
    Real term;
    mpfr_set_zero(out.get(), 1);
    for (std::size_t i = 1; i < normSq.size(); ++i) {
        Real::log_rational(term, normSq[i]);
        mpfr_mul_ui(term.get(), term.get(), i, MPFR_RNDN);
        mpfr_add(out.get(), out.get(), term.get(), MPFR_RNDN);
    }
    if (nRemoved > 0) {
        Real::log_rational(term, removal_unit(h));
        mpfr_mul_ui(term.get(), term.get(), nRemoved * h.c, MPFR_RNDN);
        mpfr_add(out.get(), out.get(), term.get(), MPFR_RNDN);
    }
    Real base;
    Real::log_rational(base, h.gamma);
    mpfr_div(out.get(), out.get(), base.get(), MPFR_RNDN);
}

Rational gs_cap(const TraceHeader& h) {
    // 4 alpha^(4c) B^4
    return 4 * pow(h.alphaSq, 2 * h.c) * h.BSq * h.BSq;
}

std::string rat(const Rational& q) { return q.get_str(10); }

Rational rat_from(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw MalformedTrace(std::string("missing rational field ") + key);
    try {
        return parse_rational(j[key].get<std::string>());
    } catch (const Error& e) {
        throw MalformedTrace(e.what());
    }
}

std::size_t size_from(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw MalformedTrace(std::string("missing count field ") + key);
    return j[key].get<std::size_t>();
}

/// Collects failures per named check; the first few details are kept.
class Checker {
public:
    void declare(const std::string& name, bool hard) {
        if (!index_.count(name)) {
            index_[name] = report_.results.size();
            report_.results.push_back({name, CheckStatus::Pass, hard, ""});
        }
    }
    void fail(const std::string& name, const std::string& detail) {
        auto& r = report_.results.at(index_.at(name));
        r.status = r.hard ? CheckStatus::Fail : CheckStatus::Warn;
        if (r.detail.empty()) r.detail = detail;
    }
    void expect(const std::string& name, bool ok, std::size_t eventIndex, const std::string& what) {
        if (!ok) fail(name, "event " + std::to_string(eventIndex) + ": " + what);
    }
    CheckReport take() { return std::move(report_); }

private:
    CheckReport report_;
    std::map<std::string, std::size_t> index_;
};

}  // namespace

std::string to_string(EventKind kind) {
    switch (kind) {
    case EventKind::Init: return "init";
    case EventKind::Adjoin: return "adjoin";
    case EventKind::Scale: return "scale";
    case EventKind::KernelCall: return "kernel-call";
    case EventKind::Removal: return "removal";
    case EventKind::Final: return "final";
    }
    return "?";
}

EventKind event_kind_from_string(const std::string& name) {
    static const std::map<std::string, EventKind> kinds = {
        {"init", EventKind::Init},     {"adjoin", EventKind::Adjoin},
        {"scale", EventKind::Scale},   {"kernel-call", EventKind::KernelCall},
        {"removal", EventKind::Removal}, {"final", EventKind::Final}};
    auto it = kinds.find(name);
    if (it == kinds.end()) throw MalformedTrace("unknown event kind '" + name + "'");
    return it->second;
}

Rational active_determinant_sq(const GSOState& g) { return product(g.normSq); }

Rational removal_unit(const TraceHeader& h) { return gs_cap(h); }

std::string progress(const std::vector<Rational>& normSq, std::size_t nRemoved, const TraceHeader& h) {
    Real v;
    progress_real(v, normSq, nRemoved, h);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.40Rg", v.get());
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

double progress_value(const std::vector<Rational>& normSq, std::size_t nRemoved, const TraceHeader& h) {
    Real v;
    progress_real(v, normSq, nRemoved, h);
    return mpfr_get_d(v.get(), MPFR_RNDN);
}

Rational progress_potential(const std::vector<Rational>& normSq, std::size_t nRemoved, const TraceHeader& h) {
    Rational phi = 1;
    for (std::size_t i = 1; i < normSq.size(); ++i) phi *= pow(normSq[i], i);
    if (nRemoved > 0) phi *= pow(gs_cap(h), nRemoved * h.c);
    return phi;
}

TraceEvent make_event(EventKind kind, const WorkingBasis& m, const GSOState& g, const TraceHeader& h,
                      std::size_t switches, std::size_t removals, std::size_t iterations) {
    TraceEvent e;
    e.kind = kind;
    e.s = m.rows();
    e.ell = m.exponent();
    e.normSq = g.normSq;
    e.adSq = active_determinant_sq(g);
    e.maxRowNormSq = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) e.maxRowNormSq = std::max(e.maxRowNormSq, m.norm_sq(i));
    e.pf = progress(g.normSq, removals, h);
    e.switchesSoFar = switches;
    e.removalsSoFar = removals;
    e.iterationsSoFar = iterations;
    e.modulus = 0;
    e.removedNormSq = 0;
    return e;
}

void write_trace(std::ostream& out, const Trace& trace) {
    const auto& h = trace.header;
    json head = {{"type", "config"}, {"r", h.r},     {"N", h.N},     {"c", h.c},
                 {"k", h.k},         {"delta", rat(h.delta)}, {"eta", rat(h.eta)},
                 {"alphaSq", rat(h.alphaSq)}, {"gamma", rat(h.gamma)}, {"BSq", rat(h.BSq)}};
    out << head.dump() << '\n';
    for (const auto& e : trace.events) {
        json ns = json::array();
        for (const auto& v : e.normSq) ns.push_back(rat(v));
        json j = {{"type", "event"},
                  {"kind", to_string(e.kind)},
                  {"column", e.column},
                  {"s", e.s},
                  {"ell", e.ell},
                  {"adSq", rat(e.adSq)},
                  {"normSq", ns},
                  {"maxRowNormSq", rat(e.maxRowNormSq)},
                  {"pf", e.pf},
                  {"switches", e.switchesSoFar},
                  {"removals", e.removalsSoFar},
                  {"iterations", e.iterationsSoFar}};
        if (e.kind == EventKind::Adjoin) j["modulus"] = e.modulus.get_str(10);
        if (e.kind == EventKind::Removal) j["removedNormSq"] = rat(e.removedNormSq);
        out << j.dump() << '\n';
    }
}

Trace read_trace(std::istream& in) {
    Trace t;
    std::string line;
    std::size_t lineNo = 0;
    bool haveHeader = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw MalformedTrace("line " + std::to_string(lineNo) + ": " + e.what());
        }
        try {
            const std::string type = j.value("type", "");
            if (type == "config") {
                auto& h = t.header;
                h.r = size_from(j, "r");
                h.N = size_from(j, "N");
                h.c = size_from(j, "c");
                h.k = size_from(j, "k");
                h.delta = rat_from(j, "delta");
                h.eta = rat_from(j, "eta");
                h.alphaSq = rat_from(j, "alphaSq");
                h.gamma = rat_from(j, "gamma");
                h.BSq = rat_from(j, "BSq");
                haveHeader = true;
            } else if (type == "event") {
                if (!haveHeader) throw MalformedTrace("event before config record");
                TraceEvent e;
                e.kind = event_kind_from_string(j.value("kind", ""));
                e.column = size_from(j, "column");
                e.s = size_from(j, "s");
                e.ell = size_from(j, "ell");
                e.adSq = rat_from(j, "adSq");
                e.maxRowNormSq = rat_from(j, "maxRowNormSq");
                if (!j.contains("normSq") || !j["normSq"].is_array()) throw MalformedTrace("missing normSq");
                for (const auto& v : j["normSq"]) {
                    if (!v.is_string()) throw MalformedTrace("normSq entries must be strings");
                    e.normSq.push_back(parse_rational(v.get<std::string>()));
                }
                e.pf = j.value("pf", "");
                e.switchesSoFar = size_from(j, "switches");
                e.removalsSoFar = size_from(j, "removals");
                e.iterationsSoFar = size_from(j, "iterations");
                e.modulus = 0;
                e.removedNormSq = 0;
                if (j.contains("modulus")) e.modulus = parse_integer(j["modulus"].get<std::string>());
                if (j.contains("removedNormSq")) e.removedNormSq = rat_from(j, "removedNormSq");
                t.events.push_back(std::move(e));
            } else {
                throw MalformedTrace("unknown record type '" + type + "'");
            }
        } catch (const MalformedTrace& e) {
            throw MalformedTrace("line " + std::to_string(lineNo) + ": " + e.what());
        } catch (const Error& e) {
            throw MalformedTrace("line " + std::to_string(lineNo) + ": " + e.what());
        } catch (const json::exception& e) {
            throw MalformedTrace("line " + std::to_string(lineNo) + ": " + e.what());
        }
    }
    if (!haveHeader) throw MalformedTrace("trace has no config record");
    return t;
}

bool CheckReport::hard_ok() const {
    return std::none_of(results.begin(), results.end(),
                        [](const CheckResult& r) { return r.hard && r.status == CheckStatus::Fail; });
}

const CheckResult* CheckReport::find(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return &r;
    return nullptr;
}

std::string CheckReport::summary() const {
    std::ostringstream os;
    for (const auto& r : results) {
        const char* tag = r.status == CheckStatus::Pass ? "PASS" : (r.status == CheckStatus::Fail ? "FAIL" : "WARN");
        os << tag << "  " << r.name;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << '\n';
    }
    return os.str();
}

double iteration_budget(const TraceHeader& h) { return kIterationConstant * static_cast<double>(h.r + h.N); }

double switch_budget(const TraceHeader& h) {
    double log2B = 0.5 * std::log2(h.BSq.get_d());
    double c = static_cast<double>(h.c);
    return kSwitchConstant * static_cast<double>(h.r + h.N) * c * (c + log2B);
}

CheckReport check_trace(const Trace& trace) {
    const auto& h = trace.header;
    const auto& ev = trace.events;
    Checker ck;
    for (const char* name :
         {"trace-shape", "counters-monotone", "progress-monotone", "ad-reconciliation", "column-ad-factor",
          "ad-bound-after-kernel", "prekernel-norm", "gs-length-cap", "ad-growth-per-scale",
          "row-cap", "scale-monotone", "adjoin-monotone"})
        ck.declare(name, true);
    ck.declare("iteration-budget", false);
    ck.declare("switch-budget", false);

    if (h.c == 0 || sgn(h.BSq) <= 0 || h.gamma <= 1 || sgn(h.alphaSq) <= 0)
        throw MalformedTrace("config record has degenerate parameters");
    if (ev.empty() || ev.front().kind != EventKind::Init) throw MalformedTrace("trace must start with an init event");
    if (ev.back().kind != EventKind::Final) throw MalformedTrace("trace must end with a final event");

    const Rational cap = gs_cap(h);
    const Rational prekernelCap = cap / 2;
    const Rational growth = pow(h.alphaSq, h.c) * h.BSq / 4;

    Rational prevPhi;
    // column bookkeeping for the per-column AD factor
    Rational columnStartAd;
    std::size_t columnStartRemovals = 0;
    Integer columnModulus = 0;
    bool inColumn = false;
    auto closeColumn = [&](std::size_t i, const TraceEvent& last) {
        if (!inColumn || sgn(columnModulus) == 0 || last.removalsSoFar != columnStartRemovals) return;
        ck.expect("column-ad-factor", last.adSq == columnStartAd * columnModulus * columnModulus, i,
                  "AD^2 over a removal-free column did not grow by exactly P_j^2");
    };

    for (std::size_t i = 0; i < ev.size(); ++i) {
        const auto& e = ev[i];
        ck.expect("trace-shape", e.normSq.size() == e.s, i, "normSq length differs from s");
        ck.expect("ad-reconciliation", e.adSq == product(e.normSq), i, "adSq differs from the product of normSq");
        ck.expect("row-cap", e.s <= h.c, i, "s = " + std::to_string(e.s) + " exceeds c");
        for (const auto& v : e.normSq) {
            if (v > cap) {
                ck.fail("gs-length-cap", "event " + std::to_string(i) + ": G-S length above 4 alpha^(4c) B^4");
                break;
            }
        }

        Rational phi = progress_potential(e.normSq, e.removalsSoFar, h);
        if (i == 0) {
            ck.expect("progress-monotone", phi == 1, i, "progress is not 0 at the start");
            prevPhi = phi;
            continue;
        }
        const auto& p = ev[i - 1];
        ck.expect("counters-monotone",
                  e.switchesSoFar >= p.switchesSoFar && e.removalsSoFar >= p.removalsSoFar &&
                      e.iterationsSoFar >= p.iterationsSoFar,
                  i, "a cumulative counter went backwards");
        std::size_t dsw = e.switchesSoFar >= p.switchesSoFar ? e.switchesSoFar - p.switchesSoFar : 0;
        ck.expect("progress-monotone", phi >= pow(h.gamma, dsw) * prevPhi, i,
                  "progress grew by less than one per switch");
        prevPhi = phi;

        switch (e.kind) {
        case EventKind::Init:
            ck.fail("trace-shape", "event " + std::to_string(i) + ": repeated init");
            break;
        case EventKind::Adjoin: {
            closeColumn(i, p);
            inColumn = true;
            columnStartAd = p.adSq;
            columnStartRemovals = p.removalsSoFar;
            columnModulus = e.modulus;
            const bool withRow = sgn(e.modulus) != 0;
            const std::size_t shift = withRow ? 1 : 0;
            if (e.s != p.s + shift) {
                ck.fail("adjoin-monotone", "event " + std::to_string(i) + ": row count inconsistent with adjoin");
                break;
            }
            for (std::size_t t = 0; t < p.s; ++t)
                ck.expect("adjoin-monotone", e.normSq[t + shift] >= p.normSq[t], i,
                          "adjoining decreased a G-S length");
            if (withRow) {
                Rational top(e.modulus * e.modulus);
                Integer den = 1;
                mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * e.ell);
                top /= Rational(den);
                ck.expect("ad-reconciliation", e.adSq == p.adSq * top, i, "adjoin did not scale AD^2 by (P/2^l)^2");
            }
            break;
        }
        case EventKind::Scale:
            if (e.s != p.s) {
                ck.fail("scale-monotone", "event " + std::to_string(i) + ": scaling changed s");
                break;
            }
            for (std::size_t t = 0; t < e.s; ++t)
                ck.expect("scale-monotone", e.normSq[t] >= p.normSq[t], i, "scaling decreased a G-S length");
            ck.expect("prekernel-norm", e.maxRowNormSq <= prekernelCap, i,
                      "row norm above 2 alpha^(4c) B^4 before the kernel call");
            if (e.ell != 0)
                ck.expect("ad-growth-per-scale", e.adSq >= growth * p.adSq, i,
                          "scaling grew AD by less than alpha^c B / 2 without ending the loop");
            break;
        case EventKind::Removal:
            ck.expect("ad-reconciliation", e.s + 1 == p.s && e.adSq * e.removedNormSq == p.adSq, i,
                      "removal does not account for the dropped G-S length");
            ck.expect("counters-monotone", e.removalsSoFar == p.removalsSoFar + 1, i, "removal count not advanced");
            break;
        case EventKind::KernelCall: {
            ck.expect("ad-reconciliation", e.adSq == p.adSq, i, "kernel changed AD outside of removals");
            const Rational bound = pow(h.alphaSq, e.s * (e.s - (e.s > 0 ? 1 : 0)) / 2) * pow(h.BSq, e.s);
            ck.expect("ad-bound-after-kernel", e.adSq <= bound, i, "AD^2 above (alpha^(s-1) B^2)^s after a kernel call");
            break;
        }
        case EventKind::Final:
            closeColumn(i, p);
            inColumn = false;
            ck.expect("ad-reconciliation", e.adSq == p.adSq, i, "final state differs from the last kernel output");
            break;
        }
    }

    const auto& last = ev.back();
    if (static_cast<double>(last.iterationsSoFar) > iteration_budget(h))
        ck.fail("iteration-budget", std::to_string(last.iterationsSoFar) + " iterations exceed the frozen budget " +
                                           std::to_string(iteration_budget(h)));
    if (static_cast<double>(last.switchesSoFar) > switch_budget(h))
        ck.fail("switch-budget", std::to_string(last.switchesSoFar) + " switches exceed the frozen budget " +
                                         std::to_string(switch_budget(h)));
    return ck.take();
}

}  // namespace gradlat
