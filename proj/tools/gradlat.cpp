#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gradlat/factor.hpp"
#include "gradlat/gradual.hpp"
#include "gradlat/instrument.hpp"
#include "gradlat/minpoly.hpp"
#include "text_formats.hpp"

using namespace gradlat;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInvalid = 2;
constexpr int kParse = 3;

struct Common {
    std::string delta = "3/4";
    std::string eta = "1/2";
    std::string tracePath;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cli::ParseError("cannot open " + path);
    return in;
}

void write_trace_file(const std::string& path, const Trace& trace) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw cli::ParseError("cannot write " + path);
    write_trace(out, trace);
}

Rational flag_rational(const std::string& name, const std::string& value) {
    try {
        return parse_rational(value);
    } catch (const Error&) {
        throw cli::ParseError("--" + name + ": not a rational: '" + value + "'");
    }
}

struct ReduceArgs {
    std::string path;
    std::string B;
    std::string BSq;
};

int cmd_reduce(const ReduceArgs& args, const Common& common) {
    std::ifstream in = open_input(args.path);
    cli::KnapsackFile file = cli::read_knapsack(in);
    Rational BSq;
    if (!args.BSq.empty()) BSq = flag_rational("Bsq", args.BSq);
    else if (!args.B.empty()) BSq = flag_rational("B", args.B) * flag_rational("B", args.B);
    else if (file.B) BSq = *file.B * *file.B;
    else throw InvalidParams("a search bound is required: --B, --Bsq or a 'B' line");

    const auto params = ReductionParams::make(flag_rational("delta", common.delta), flag_rational("eta", common.eta), BSq);
    GradualOptions options;
    options.recordTrace = !common.tracePath.empty();
    GradualResult res = gradual_reduce(file.basis, params, options);
    write_trace_file(common.tracePath, res.trace);

    for (const auto& row : res.basis.integer_rows()) {
        for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
        std::cout << '\n';
    }
    std::cerr << "rows " << res.basis.rows() << " switches " << res.switches << " removals " << res.removals
              << " iterations " << res.iterations << '\n';
    if (!is_alpha_b_reduced(res.basis, params)) {
        std::cerr << "error: output is not (alpha, B)-reduced\n";
        return kFailure;
    }
    return kOk;
}

struct FactorArgs {
    std::string path;
    std::uint64_t seed = 1;
};

int cmd_factor(const FactorArgs& args, const Common& common) {
    std::ifstream in = open_input(args.path);
    const IntPoly f = cli::read_polynomial(in);
    FactorOptions options;
    options.delta = flag_rational("delta", common.delta);
    options.eta = flag_rational("eta", common.eta);
    options.seed = args.seed;
    options.recordTrace = !common.tracePath.empty();
    FactorStats stats;
    const Factorization fz = factor_z(f, options, &stats);
    // the last lattice run is the interesting one when there were several
    if (!stats.traces.empty()) write_trace_file(common.tracePath, stats.traces.back());

    if (fz.content != 1) cli::write_polynomial(std::cout, IntPoly(std::vector<Integer>{fz.content}));
    for (const auto& [g, k] : fz.factors)
        for (unsigned i = 0; i < k; ++i) cli::write_polynomial(std::cout, g);
    return kOk;
}

struct MinPolyArgs {
    std::string value;
    std::string imag = "0";
    unsigned long precision = 0;
    unsigned degree = 0;
    std::string height;
};

int cmd_minpoly(const MinPolyArgs& args, const Common& common) {
    Rational re, im;
    try {
        re = parse_real(args.value);
        im = parse_real(args.imag);
    } catch (const Error& e) {
        throw cli::ParseError(e.what());
    }
    MinPolyQuery q;
    q.d = args.degree;
    try {
        q.H = parse_integer(args.height);
    } catch (const Error&) {
        throw cli::ParseError("--height: not an integer: '" + args.height + "'");
    }
    MinPolyOptions options;
    options.delta = flag_rational("delta", common.delta);
    options.eta = flag_rational("eta", common.eta);
    options.recordTrace = !common.tracePath.empty();
    MinPolyStats stats;
    const auto x = ApproxNumber::from_rationals(re, im, args.precision);
    IntPoly h;
    try {
        h = reconstruct_minpoly(x, q, options, &stats);
    } catch (const NotFound&) {
        write_trace_file(common.tracePath, stats.trace);
        throw;
    }
    write_trace_file(common.tracePath, stats.trace);
    std::cout << to_string(h) << '\n';
    return kOk;
}

int cmd_check(const std::string& path) {
    std::ifstream in = open_input(path);
    Trace trace;
    try {
        trace = read_trace(in);
    } catch (const MalformedTrace& e) {
        throw cli::ParseError(e.what());
    }
    const CheckReport report = check_trace(trace);
    std::cout << report.summary();
    return report.hard_ok() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradual sub-lattice reduction for knapsack-type bases"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--delta", common.delta, "Lovasz parameter")->capture_default_str();
        sub->add_option("--eta", common.eta, "size-reduction parameter")->capture_default_str();
        sub->add_option("--trace", common.tracePath, "write the reduction trace here");
    };

    ReduceArgs reduceArgs;
    auto* reduce = app.add_subcommand("reduce", "reduce a knapsack basis file");
    reduce->add_option("file", reduceArgs.path, "knapsack file")->required();
    reduce->add_option("--B", reduceArgs.B, "search bound B (rational)");
    reduce->add_option("--Bsq", reduceArgs.BSq, "search bound given as B^2 (rational)");
    add_common(reduce);

    FactorArgs factorArgs;
    auto* factor = app.add_subcommand("factor", "factor a polynomial over Z");
    factor->add_option("file", factorArgs.path, "polynomial file")->required();
    factor->add_option("--seed", factorArgs.seed, "seed for equal-degree splitting")->capture_default_str();
    add_common(factor);

    MinPolyArgs minArgs;
    auto* minpoly = app.add_subcommand("minpoly", "minimal polynomial from an approximation");
    minpoly->add_option("--value", minArgs.value, "real part, decimal or hex float")->required();
    minpoly->add_option("--imag", minArgs.imag, "imaginary part")->capture_default_str();
    minpoly->add_option("--precision", minArgs.precision, "correct bits")->required();
    minpoly->add_option("--degree", minArgs.degree, "degree bound")->required();
    minpoly->add_option("--height", minArgs.height, "height bound")->required();
    add_common(minpoly);

    std::string tracePath;
    auto* check = app.add_subcommand("check", "run the invariant checker on a trace file");
    check->add_option("file", tracePath, "trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*reduce) return cmd_reduce(reduceArgs, common);
        if (*factor) return cmd_factor(factorArgs, common);
        if (*minpoly) return cmd_minpoly(minArgs, common);
        return cmd_check(tracePath);
    } catch (const cli::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    } catch (const InvalidParams& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kInvalid;
    } catch (const InsufficientPrecision& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kInvalid;
    } catch (const Error& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return kFailure;
    }
}
