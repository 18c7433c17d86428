#include <doctest.h>

#include <fstream>
#include <sstream>

#include "spmvsel/bench.hpp"
#include "spmvsel/cli.hpp"
#include "spmvsel/features.hpp"
#include "spmvsel/matrix_market.hpp"
#include "support/clocks.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

using namespace spmvsel;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, RepClock* clock = nullptr) {
    args.insert(args.begin(), "spmvsel");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err, clock);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::size_t record_lines(const std::string& text) {
    std::istringstream in(text);
    return read_records(in).size();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

/// Splits a "# config: spmvsel ..." line back into arguments (no quoting needed here).
std::vector<std::string> config_args(const std::string& out) {
    std::istringstream in(first_line(out).substr(std::string("# config: spmvsel ").size()));
    std::vector<std::string> args;
    for (std::string tok; in >> tok;)
        args.push_back(tok);
    return args;
}

} // namespace

TEST_CASE("convert prints format statistics") {
    testgen::TempDir dir;
    const auto running_example = (dir.path() / "running_example.mtx").string();
    write_matrix_market(running_example, testgen::running_example());

    const Result hyb = run({"convert", running_example, "--format", "hyb"});
    CHECK(hyb.code == cli::kOk);
    CHECK(contains(hyb.out, "K=2"));
    CHECK(contains(hyb.out, "tail_nnz=1"));
    CHECK(contains(first_line(hyb.out), "# config: spmvsel convert --format hyb"));

    const Result csr5 = run({"convert", running_example, "--format", "csr5", "--omega", "2", "--sigma", "2"});
    CHECK(contains(csr5.out, "tiles=2"));

    const auto empty = (dir.path() / "empty.mtx").string();
    write_matrix_market(empty, CooMatrix(3, 3));
    const Result e = run({"convert", empty, "--format", "ell"});
    CHECK(e.code == cli::kOk);
    CHECK(contains(e.out, "nnz=0"));

    const auto bad = (dir.path() / "bad.mtx").string();
    std::ofstream(bad) << "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 7 1\n";
    const Result b = run({"convert", bad});
    CHECK(b.code == cli::kParseFailure);
    CHECK(contains(b.err, "line 3"));

    const Result c = run({"convert", running_example, "--format", "sell", "--sell-c", "2", "--sell-sigma", "3"});
    CHECK(c.code == cli::kConversionFailure);

    CHECK(run({"convert", running_example, "--format", "dia"}).code == cli::kParseFailure);
    CHECK(run({}).code == cli::kParseFailure);
}

TEST_CASE("spmv prints y = A * ones, identically from its config line") {
    testgen::TempDir dir;
    const auto running_example = (dir.path() / "running_example.mtx").string();
    write_matrix_market(running_example, testgen::running_example());
    const Result r = run({"spmv", running_example, "--format", "csr5", "--workers", "3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\n7\n13\n4\n12\n"));
    CHECK(run(config_args(r.out)).out == r.out);
}

TEST_CASE("bench, features, train, cv, predict and report pipeline") {
    testgen::TempDir dir;
    const auto corpus = dir.path() / "corpus";
    std::filesystem::create_directories(corpus);
    write_matrix_market(corpus / "a.mtx", testgen::running_example());
    testgen::Gen g(4);
    write_matrix_market(corpus / "b.mtx", testgen::random_matrix(g));

    testgen::TableClock clock;
    clock.per_format = {{FormatTag::Csr, 2e-3}, {FormatTag::Sell, 1e-3}};

    const Result all = run({"bench", corpus.string()}, &clock);
    CHECK(all.code == cli::kOk);
    CHECK(record_lines(all.out) == 10);
    CHECK(contains(all.out, "# best a sell"));
    CHECK(run(config_args(all.out), &clock).out == all.out);

    const Result two = run({"bench", corpus.string(), "--formats", "csr,sell"}, &clock);
    CHECK(record_lines(two.out) == 4);

    const auto records = (dir.path() / "records.txt").string();
    const Result fixed = run({"bench", corpus.string(), "--fixed-reps", "10", "--out", records}, &clock);
    CHECK(fixed.code == 0);
    const auto stored = read_records(records);
    CHECK(stored.size() == 10);
    for (const auto& r : stored)
        CHECK(r.reps == 10);

    const auto features = (dir.path() / "features.txt").string();
    const Result f = run({"features", corpus.string(), "--out", features, "--jobs", "2"});
    CHECK(f.code == 0);
    CHECK(read_features(features).size() == 2);

    const auto model = (dir.path() / "model.txt").string();
    const Result t = run({"train", features, records, "--out", model, "--folds", "2"});
    CHECK(t.code == 0);
    CHECK(contains(t.err, "single leaf"));
    CHECK(contains(t.out, "cv_accuracy=1"));

    const Result p = run({"predict", (corpus / "b.mtx").string(), model});
    CHECK(p.code == 0);
    CHECK(contains(p.out, "\nsell\n"));

    const Result pr = run({"predict", (corpus / "b.mtx").string(), model, "--run", "--fixed-reps", "3"}, &clock);
    CHECK(pr.code == 0);
    const auto predicted = [&] {
        // Line 1 is the config, line 2 the predicted tag, then the record.
        std::istringstream in(pr.out);
        std::string config, tag;
        std::getline(in, config);
        std::getline(in, tag);
        CHECK(tag == "sell");
        return read_records(in);
    }();
    REQUIRE(predicted.size() == 1);
    CHECK(predicted[0].format == FormatTag::Sell);
    CHECK(predicted[0].reps == 3);

    const Result cv = run({"cv", features, records, "--folds", "2"});
    CHECK(cv.code == 0);
    CHECK(contains(cv.out, "confusion"));

    const Result rep = run({"report", records});
    CHECK(rep.code == 0);
    CHECK(contains(rep.out, "matrices 2"));

    const auto corrupt = (dir.path() / "corrupt.txt").string();
    std::ofstream(corrupt) << "spmvsel-decision-tree 1 max_depth\n";
    CHECK(run({"predict", (corpus / "b.mtx").string(), corrupt}).code == cli::kModelFailure);

    const auto other = (dir.path() / "other.txt").string();
    std::ofstream(other) << "matrix_id:zzz n_rows:1 n_cols:1 nnz_frac:1 nnz_min:1 nnz_max:1 "
                            "nnz_avg:1 nnz_std:0 variation:0\n";
    CHECK(run({"train", other, records, "--out", model}).code == cli::kEmptyResult);
    CHECK(run({"bench", (dir.path() / "missing").string()}, &clock).code == cli::kParseFailure);
}

TEST_CASE("hardwired CSR model predicts csr") {
    testgen::TempDir dir;
    const auto model = (dir.path() / "csr.model").string();
    std::ofstream(model) << "spmvsel-decision-tree 1 max_depth 0 min_samples_leaf 1 nodes 1\n"
                            "scale 0 0 1\nscale 1 0 1\nscale 2 0 1\nscale 3 0 1\nscale 4 0 1\n"
                            "scale 5 0 1\nscale 6 0 1\nscale 7 0 1\nleaf 0 csr 1 0 0 0 0\n";
    const auto running_example = (dir.path() / "running_example.mtx").string();
    write_matrix_market(running_example, testgen::running_example());
    const Result r = run({"predict", running_example, model});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\ncsr\n"));
}

TEST_CASE("report with no successful record is an empty result") {
    testgen::TempDir dir;
    const auto records = (dir.path() / "r.txt").string();
    std::ofstream(records) << "matrix_id:a format:csr reps:0 mean_time_s:0 ci_low_s:0 ci_high_s:0 "
                              "gflops:0 bandwidth_bps:0 converted_ok:false\n";
    CHECK(run({"report", records}).code == cli::kEmptyResult);
    CHECK(run({"report", (dir.path() / "none.txt").string()}).code == cli::kParseFailure);
}
