#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "core/text.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/model.hpp"

// Model file grammar, one item per line:
//
//   spmvsel-decision-tree <version> max_depth <d> min_samples_leaf <m> nodes <n>
//   scale <feature> <min> <max>                  (8 lines, features 0..7)
//   node <id> split <feature> <threshold> <left> <right>
//   leaf <id> <label> <count_csr> <count_csr5> <count_ell> <count_sell> <count_hyb>
//
// Node lines appear in id order 0..n-1 (pre-order, root first). Doubles use
// the shortest round-trip representation.

namespace spmvsel {
namespace {

constexpr std::string_view kMagic = "spmvsel-decision-tree";
constexpr unsigned kVersion = 1;

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ModelError("model line " + std::to_string(line) + ": " + what);
}

template <class T>
T uint_at(const std::vector<std::string_view>& tok, std::size_t i, std::size_t line) {
    auto v = text::parse_uint<T>(tok[i]);
    if (!v)
        fail(line, "expected an unsigned integer, got '" + std::string(tok[i]) + "'");
    return *v;
}

double double_at(const std::vector<std::string_view>& tok, std::size_t i, std::size_t line) {
    auto v = text::parse_double(tok[i]);
    if (!v)
        fail(line, "expected a number, got '" + std::string(tok[i]) + "'");
    return *v;
}

} // namespace

void write_model(std::ostream& out, const DecisionTreeModel& model) {
    out << kMagic << ' ' << kVersion << " max_depth " << model.params.max_depth
        << " min_samples_leaf " << model.params.min_samples_leaf << " nodes " << model.nodes.size()
        << '\n';
    for (std::size_t f = 0; f < kNumFeatures; ++f)
        out << "scale " << f << ' ' << text::format_double(model.scaling.min[f]) << ' '
            << text::format_double(model.scaling.max[f]) << '\n';
    for (std::size_t i = 0; i < model.nodes.size(); ++i) {
        const TreeNode& n = model.nodes[i];
        if (n.leaf) {
            out << "leaf " << i << ' ' << format_name(n.label);
            for (auto c : n.counts)
                out << ' ' << c;
        } else {
            out << "node " << i << " split " << n.feature << ' ' << text::format_double(n.threshold)
                << ' ' << n.left << ' ' << n.right;
        }
        out << '\n';
    }
}

void write_model(const std::filesystem::path& path, const DecisionTreeModel& model) {
    std::ofstream out(path);
    if (!out)
        throw ModelError("cannot write " + path.string());
    write_model(out, model);
}

DecisionTreeModel read_model(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next = [&]() -> std::vector<std::string_view> {
        while (std::getline(in, line)) {
            ++line_no;
            if (!text::is_blank(line))
                return text::split_ws(line);
        }
        fail(line_no + 1, "unexpected end of model file");
    };

    DecisionTreeModel model;
    auto tok = next();
    if (tok.size() != 8 || tok[0] != kMagic || tok[2] != "max_depth" ||
        tok[4] != "min_samples_leaf" || tok[6] != "nodes")
        fail(line_no, "bad header");
    if (uint_at<unsigned>(tok, 1, line_no) != kVersion)
        fail(line_no, "unsupported model version '" + std::string(tok[1]) + "'");
    model.params.max_depth = uint_at<std::size_t>(tok, 3, line_no);
    model.params.min_samples_leaf = uint_at<std::size_t>(tok, 5, line_no);
    const auto count = uint_at<std::size_t>(tok, 7, line_no);
    if (count == 0)
        fail(line_no, "model has no nodes");

    for (std::size_t f = 0; f < kNumFeatures; ++f) {
        tok = next();
        if (tok.size() != 4 || tok[0] != "scale" || uint_at<std::size_t>(tok, 1, line_no) != f)
            fail(line_no, "expected 'scale " + std::to_string(f) + " <min> <max>'");
        model.scaling.min[f] = double_at(tok, 2, line_no);
        model.scaling.max[f] = double_at(tok, 3, line_no);
        if (!(model.scaling.min[f] <= model.scaling.max[f]))
            fail(line_no, "scale min exceeds max");
    }

    std::vector<unsigned> referenced(count, 0);
    model.nodes.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        tok = next();
        if (tok.size() < 2 || uint_at<std::size_t>(tok, 1, line_no) != i)
            fail(line_no, "expected node " + std::to_string(i));
        TreeNode& n = model.nodes[i];
        if (tok[0] == "node") {
            if (tok.size() != 7 || tok[2] != "split")
                fail(line_no, "expected 'node <id> split <feature> <threshold> <left> <right>'");
            n.leaf = false;
            n.feature = uint_at<std::uint32_t>(tok, 3, line_no);
            if (n.feature >= kNumFeatures)
                fail(line_no, "feature index out of range");
            n.threshold = double_at(tok, 4, line_no);
            n.left = uint_at<std::uint32_t>(tok, 5, line_no);
            n.right = uint_at<std::uint32_t>(tok, 6, line_no);
            if (n.left <= i || n.right <= i || n.left >= count || n.right >= count || n.left == n.right)
                fail(line_no, "child index out of order or range");
            ++referenced[n.left];
            ++referenced[n.right];
        } else if (tok[0] == "leaf") {
            if (tok.size() != 3 + kNumFormats)
                fail(line_no, "expected 'leaf <id> <label> <5 counts>'");
            auto label = parse_format(tok[2]);
            if (!label)
                fail(line_no, "unknown label '" + std::string(tok[2]) + "'");
            n.leaf = true;
            n.label = *label;
            for (std::size_t c = 0; c < kNumFormats; ++c)
                n.counts[c] = uint_at<std::uint32_t>(tok, 3 + c, line_no);
        } else {
            fail(line_no, "unknown node kind '" + std::string(tok[0]) + "'");
        }
    }
    for (std::size_t i = 1; i < count; ++i)
        if (referenced[i] != 1)
            fail(line_no, "node " + std::to_string(i) + " is not referenced exactly once");
    while (std::getline(in, line)) {
        ++line_no;
        if (!text::is_blank(line))
            fail(line_no, "trailing content after the last node");
    }
    return model;
}

DecisionTreeModel read_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ModelError("cannot open " + path.string());
    return read_model(in);
}

} // namespace spmvsel
