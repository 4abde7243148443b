#include "text_formats.hpp"

#include <sstream>
#include <vector>

namespace gradlat::cli {

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::optional<Line> next() {
        std::string text;
        while (std::getline(in_, text)) {
            ++number_;
            std::istringstream ss(text);
            Line line{number_, {}};
            for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
            if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
            return line;
        }
        return std::nullopt;
    }

    Line expect(const char* what) {
        auto line = next();
        if (!line) throw ParseError("line " + std::to_string(number_ + 1) + ": expected " + what + ", got end of file");
        return *line;
    }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

[[noreturn]] void fail(const Line& line, const std::string& what) {
    throw ParseError("line " + std::to_string(line.number) + ": " + what);
}

Integer integer_at(const Line& line, std::size_t i) {
    try {
        return parse_integer(line.tokens[i]);
    } catch (const Error&) {
        fail(line, "not an integer: '" + line.tokens[i] + "'");
    }
}

std::size_t size_at(const Line& line, std::size_t i) {
    Integer v = integer_at(line, i);
    if (v < 0 || !v.fits_ulong_p()) fail(line, "not a valid size: '" + line.tokens[i] + "'");
    return v.get_ui();
}

std::vector<Integer> integers(const Line& line, std::size_t count, const char* what) {
    if (line.tokens.size() != count)
        fail(line, std::string("expected ") + std::to_string(count) + " " + what + ", got " +
                       std::to_string(line.tokens.size()));
    std::vector<Integer> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(integer_at(line, i));
    return out;
}

}  // namespace

KnapsackFile read_knapsack(std::istream& in) {
    LineReader reader(in);
    KnapsackFile file;
    auto& kb = file.basis;
    Line header = reader.expect("header 'r N'");
    if (header.tokens.size() != 2) fail(header, "header must be 'r N'");
    kb.r = size_at(header, 0);
    kb.N = size_at(header, 1);
    if (kb.r == 0) fail(header, "r must be positive");
    kb.P.assign(kb.N, Integer(0));
    kb.X.assign(kb.r, std::vector<Integer>(kb.N));
    if (kb.N > 0) {
        kb.P = integers(reader.expect("moduli"), kb.N, "moduli");
        for (std::size_t i = 0; i < kb.r; ++i) kb.X[i] = integers(reader.expect("data row"), kb.N, "entries");
    }
    if (auto line = reader.next()) {
        if (line->tokens.size() != 2 || line->tokens[0] != "B") fail(*line, "expected 'B <rational>'");
        try {
            file.B = parse_rational(line->tokens[1]);
        } catch (const Error&) {
            fail(*line, "not a rational: '" + line->tokens[1] + "'");
        }
        if (auto extra = reader.next()) fail(*extra, "unexpected trailing content");
    }
    return file;
}

void write_knapsack(std::ostream& out, const KnapsackFile& file) {
    const auto& kb = file.basis;
    out << kb.r << ' ' << kb.N << '\n';
    auto row = [&](const std::vector<Integer>& v) {
        for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << v[j];
        out << '\n';
    };
    if (kb.N > 0) {
        row(kb.P);
        for (const auto& x : kb.X) row(x);
    }
    if (file.B) out << "B " << to_string(*file.B) << '\n';
}

IntPoly read_polynomial(std::istream& in) {
    LineReader reader(in);
    Line header = reader.expect("degree");
    if (header.tokens.size() != 1) fail(header, "expected a single degree");
    const std::size_t d = size_at(header, 0);
    IntPoly f(integers(reader.expect("coefficients"), d + 1, "coefficients"));
    if (f.degree() != static_cast<long>(d)) fail(header, "leading coefficient is zero");
    if (auto extra = reader.next()) fail(*extra, "unexpected trailing content");
    return f;
}

void write_polynomial(std::ostream& out, const IntPoly& f) {
    out << f.degree() << '\n' << to_coeff_string(f) << '\n';
}

}  // namespace gradlat::cli
