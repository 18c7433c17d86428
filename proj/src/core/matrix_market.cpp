#include "spmvsel/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "spmvsel/error.hpp"
#include "text.hpp"

namespace spmvsel {
namespace {

enum class Field { Real, Integer, Pattern };

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct Header {
    Field field;
    bool symmetric;
};

Header parse_header(std::string_view line) {
    auto tok = text::split_ws(line);
    if (tok.empty() || tok[0] != "%%MatrixMarket")
        throw ParseError(1, "missing %%MatrixMarket banner");
    if (tok.size() != 5)
        throw ParseError(1, "malformed header, expected 5 fields");
    if (lower(tok[1]) != "matrix")
        throw ParseError(1, "unsupported object '" + std::string(tok[1]) + "'");
    const auto format = lower(tok[2]);
    if (format == "array")
        throw ParseError(1, "unsupported format 'array' (only coordinate)");
    if (format != "coordinate")
        throw ParseError(1, "malformed header format '" + std::string(tok[2]) + "'");

    Header h{};
    const auto field = lower(tok[3]);
    if (field == "real" || field == "double")
        h.field = Field::Real;
    else if (field == "integer")
        h.field = Field::Integer;
    else if (field == "pattern")
        h.field = Field::Pattern;
    else if (field == "complex")
        throw ParseError(1, "unsupported kind 'complex'");
    else
        throw ParseError(1, "malformed header kind '" + std::string(tok[3]) + "'");

    const auto sym = lower(tok[4]);
    if (sym == "general")
        h.symmetric = false;
    else if (sym == "symmetric")
        h.symmetric = true;
    else if (sym == "skew-symmetric" || sym == "hermitian")
        throw ParseError(1, "unsupported symmetry '" + sym + "'");
    else
        throw ParseError(1, "malformed header symmetry '" + std::string(tok[4]) + "'");
    return h;
}

} // namespace

CooMatrix read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw ParseError(1, "empty input");
    ++line_no;
    const Header header = parse_header(line);

    // Size line: first non-comment, non-blank line.
    std::uint64_t n_rows = 0, n_cols = 0, declared = 0;
    bool have_size = false;
    while (std::getline(in, line)) {
        ++line_no;
        if ((!line.empty() && line[0] == '%') || text::is_blank(line))
            continue;
        auto tok = text::split_ws(line);
        if (tok.size() != 3)
            throw ParseError(line_no, "malformed size line, expected 'rows cols nnz'");
        auto r = text::parse_uint<std::uint64_t>(tok[0]);
        auto c = text::parse_uint<std::uint64_t>(tok[1]);
        auto n = text::parse_uint<std::uint64_t>(tok[2]);
        if (!r || !c || !n)
            throw ParseError(line_no, "malformed size line, expected three integers");
        if (*r > kMaxIndex || *c > kMaxIndex || *n > kMaxIndex)
            throw ParseError(line_no, "dimensions exceed the 32-bit index range");
        n_rows = *r;
        n_cols = *c;
        declared = *n;
        have_size = true;
        break;
    }
    if (!have_size)
        throw ParseError(line_no + 1, "missing size line");

    std::vector<Triplet> entries;
    entries.reserve(header.symmetric ? 2 * declared : declared);
    const std::size_t want_tokens = header.field == Field::Pattern ? 2 : 3;
    std::uint64_t seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if ((!line.empty() && line[0] == '%') || text::is_blank(line))
            continue;
        if (seen == declared)
            throw ParseError(line_no, "entry count mismatch: more than the declared " +
                                          std::to_string(declared) + " entries");
        auto tok = text::split_ws(line);
        if (tok.size() != want_tokens)
            throw ParseError(line_no, "malformed entry, expected " + std::to_string(want_tokens) +
                                          " fields");
        auto i = text::parse_uint<std::uint64_t>(tok[0]);
        auto j = text::parse_uint<std::uint64_t>(tok[1]);
        if (!i || !j)
            throw ParseError(line_no, "malformed entry index");
        if (*i < 1 || *i > n_rows || *j < 1 || *j > n_cols)
            throw ParseError(line_no, "index (" + std::string(tok[0]) + ", " + std::string(tok[1]) +
                                          ") out of declared bounds");
        double value = 1.0;
        if (header.field != Field::Pattern) {
            auto v = text::parse_double(tok[2]);
            if (!v)
                throw ParseError(line_no, "malformed entry value '" + std::string(tok[2]) + "'");
            value = *v;
        }
        const auto r = static_cast<Index>(*i - 1);
        const auto c = static_cast<Index>(*j - 1);
        entries.push_back({r, c, value});
        if (header.symmetric && r != c)
            entries.push_back({c, r, value});
        ++seen;
    }
    if (seen != declared)
        throw ParseError(line_no + 1, "entry count mismatch: declared " + std::to_string(declared) +
                                          ", found " + std::to_string(seen));
    if (entries.size() > kMaxIndex)
        throw ParseError(line_no, "expanded nnz exceeds the 32-bit index range");

    return canonicalize(std::move(entries), static_cast<Index>(n_rows), static_cast<Index>(n_cols));
}

CooMatrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CooMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n_rows() << ' ' << a.n_cols() << ' ' << a.nnz() << '\n';
    const auto row = a.row();
    const auto col = a.col();
    const auto data = a.data();
    char buf[32];
    for (std::size_t k = 0; k < a.nnz(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", data[k]);
        out << row[k] + 1 << ' ' << col[k] + 1 << ' ' << buf << '\n';
    }
}

void write_matrix_market(const std::filesystem::path& path, const CooMatrix& a) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    write_matrix_market(out, a);
}

} // namespace spmvsel
