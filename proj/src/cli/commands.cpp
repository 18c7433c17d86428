#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <omp.h>

#include "core/text.hpp"
#include "spmvsel/cli.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/features.hpp"
#include "spmvsel/kernels.hpp"
#include "spmvsel/matrix_market.hpp"
#include "spmvsel/report.hpp"

namespace spmvsel::cli {
namespace {

std::string quoted(const std::filesystem::path& p) {
    const std::string s = p.string();
    if (s.find_first_of(" \t\"") == std::string::npos && !s.empty())
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            q += '\\';
        q += c;
    }
    return q + '"';
}

std::string format_list(const std::vector<FormatTag>& tags) {
    std::string s;
    for (auto t : tags) {
        if (!s.empty())
            s += ',';
        s += format_name(t);
    }
    return s;
}

std::string params_flags(const FormatParams& p) {
    std::ostringstream s;
    s << " --omega " << p.csr5_omega << " --sigma " << p.csr5_sigma << " --sell-c " << p.sell_c
      << " --sell-sigma " << p.sell_sigma;
    return s.str();
}

std::string bench_flags(const BenchConfig& c) {
    std::ostringstream s;
    s << params_flags(c.params) << " --workers " << c.workers << " --fixed-reps " << c.fixed_reps
      << " --min-reps " << c.min_reps << " --max-reps " << c.max_reps << " --ci-level "
      << text::format_double(c.ci_level) << " --ci-gap " << text::format_double(c.ci_gap)
      << " --warmup " << c.warmup_reps;
    return s.str();
}

std::string tree_flags(const TreeParams& p) {
    return " --depth " + std::to_string(p.max_depth) + " --min-leaf " +
           std::to_string(p.min_samples_leaf);
}

std::optional<CooMatrix> load_matrix(const std::filesystem::path& path, std::ostream& err) {
    try {
        return read_matrix_market(path);
    } catch (const std::exception& e) {
        err << "error: " << path.string() << ": " << e.what() << '\n';
        return std::nullopt;
    }
}

/// Opens `path` for writing, or hands back `fallback` when the path is empty.
class Sink {
public:
    Sink(const std::filesystem::path& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            stream_ = file_.is_open() ? &file_ : nullptr;
        }
    }
    std::ostream* get() { return stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void describe(std::ostream& out, const FormatMatrix& m) {
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, CsrMatrix>) {
                out << "ptr_len=" << f.ptr.size() << '\n';
            } else if constexpr (std::is_same_v<T, Csr5Matrix>) {
                out << "omega=" << f.omega << " sigma=" << f.sigma << " tiles=" << f.num_tiles
                    << " tail_nnz=" << (f.data.size() - std::size_t{f.num_tiles} * f.tile_size())
                    << '\n';
            } else if constexpr (std::is_same_v<T, EllMatrix>) {
                out << "k=" << f.k << " slots=" << f.data.size() << '\n';
            } else if constexpr (std::is_same_v<T, SellMatrix>) {
                out << "C=" << f.c << " sigma=" << f.sigma << " slices=" << f.num_slices()
                    << " slots=" << f.data.size() << '\n';
            } else {
                out << "K=" << f.ell.k << " ell_slots=" << f.ell.data.size()
                    << " tail_nnz=" << f.coo_tail.nnz() << '\n';
            }
        },
        m);
}

struct Joined {
    int status = kOk;
    std::vector<TrainingRow> rows;
};

Joined load_training_rows(const std::filesystem::path& features_path,
                          const std::filesystem::path& records_path, std::ostream& err) {
    Joined j;
    std::vector<NamedFeatures> features;
    std::vector<BenchRecord> records;
    try {
        features = read_features(features_path);
        records = read_records(records_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        j.status = kParseFailure;
        return j;
    }
    JoinResult joined = join_training_data(records, features);
    for (const auto& d : joined.diagnostics)
        err << "warning: " << d << '\n';
    if (joined.rows.empty()) {
        err << "error: no matrix id appears in both the feature and record files\n";
        j.status = kEmptyResult;
        return j;
    }
    j.rows = std::move(joined.rows);
    return j;
}

bool single_class(const std::vector<TrainingRow>& rows) {
    for (const auto& r : rows)
        if (r.label != rows.front().label)
            return false;
    return true;
}

void print_cv(std::ostream& out, const CvReport& cv, bool verbose) {
    out << "cv_accuracy=" << cv.accuracy() << " cv_perf_ratio=" << cv.perf_ratio()
        << " tested=" << cv.tested << '\n';
    if (!verbose)
        return;
    for (std::size_t f = 0; f < cv.fold_sizes.size(); ++f)
        out << "fold " << f << " size=" << cv.fold_sizes[f] << " accuracy=" << cv.fold_accuracy[f]
            << " perf_ratio=" << cv.fold_perf_ratio[f] << '\n';
    for (auto tag : kAllFormats)
        out << "baseline " << format_name(tag) << " perf_ratio=" << cv.baseline_ratio[format_index(tag)]
            << '\n';
    out << "best_baseline=" << format_name(cv.best_baseline()) << '\n';
    out << "confusion (rows: true, columns: predicted)\n      ";
    for (auto tag : kAllFormats)
        out << ' ' << format_name(tag);
    out << '\n';
    for (auto t : kAllFormats) {
        out << format_name(t);
        for (auto p : kAllFormats)
            out << ' ' << cv.confusion[format_index(t)][format_index(p)];
        out << '\n';
    }
}

} // namespace

int cmd_convert(const ConvertOptions& o, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel convert --format " << format_name(o.format) << params_flags(o.params)
        << ' ' << quoted(o.input) << '\n';
    auto a = load_matrix(o.input, err);
    if (!a)
        return kParseFailure;
    FormatMatrix m;
    try {
        m = convert(*a, o.format, o.params);
    } catch (const std::exception& e) {
        err << "error: conversion to " << format_name(o.format) << " failed: " << e.what() << '\n';
        return kConversionFailure;
    }
    if (!(to_coo(m) == *a)) {
        err << "error: " << format_name(o.format) << " round trip does not reproduce the input\n";
        return kConversionFailure;
    }
    out << "rows=" << a->n_rows() << " cols=" << a->n_cols() << " nnz=" << a->nnz()
        << " format=" << format_name(o.format) << " round_trip=ok\n";
    describe(out, m);
    return kOk;
}

int cmd_spmv(const SpmvOptions& o, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel spmv --format " << format_name(o.format) << params_flags(o.params)
        << " --workers " << o.workers << ' ' << quoted(o.input) << '\n';
    auto a = load_matrix(o.input, err);
    if (!a)
        return kParseFailure;
    FormatMatrix m;
    try {
        m = convert(*a, o.format, o.params);
    } catch (const std::exception& e) {
        err << "error: conversion to " << format_name(o.format) << " failed: " << e.what() << '\n';
        return kConversionFailure;
    }
    const DenseVector x(a->n_cols(), 1.0);
    const DenseVector y = spmv(o.format, m, x, ExecPolicy{o.workers});
    for (double v : y)
        out << text::format_double(v) << '\n';
    return kOk;
}

int cmd_bench(const BenchOptions& o, RepClock& clock, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel bench --formats " << format_list(o.cfg.formats) << bench_flags(o.cfg);
    if (!o.out.empty())
        out << " --out " << quoted(o.out);
    out << ' ' << quoted(o.corpus) << '\n';
    try {
        o.cfg.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    }
    if (!std::filesystem::is_directory(o.corpus)) {
        err << "error: corpus directory " << o.corpus.string() << " does not exist\n";
        return kParseFailure;
    }
    Sink sink(o.out, out);
    if (!sink.get()) {
        err << "error: cannot write " << o.out.string() << '\n';
        return kParseFailure;
    }
    const CorpusResult result = bench_corpus(o.corpus, o.cfg, clock, [&](const BenchRecord& r) {
        write_record(*sink.get(), r);
        sink.get()->flush();
    });
    for (const auto& d : result.diagnostics)
        err << "warning: " << d << '\n';
    for (const auto& l : result.labels)
        out << "# best " << l.matrix_id << ' ' << format_name(l.best) << '\n';
    if (result.labels.empty()) {
        err << "error: no matrix was benchmarked successfully\n";
        return kEmptyResult;
    }
    return kOk;
}

int cmd_features(const FeaturesOptions& o, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel features --jobs " << o.jobs;
    if (!o.out.empty())
        out << " --out " << quoted(o.out);
    out << ' ' << quoted(o.input) << '\n';

    std::vector<std::filesystem::path> files;
    std::vector<std::string> ids;
    const bool single = !std::filesystem::is_directory(o.input);
    if (single) {
        files.push_back(o.input);
        ids.push_back(matrix_id_for(o.input.parent_path(), o.input));
    } else {
        files = discover_corpus(o.input);
        for (const auto& f : files)
            ids.push_back(matrix_id_for(o.input, f));
    }

    std::vector<std::optional<NamedFeatures>> rows(files.size());
    std::vector<std::string> problems(files.size());
    const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(o.jobs, 1))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            rows[i] = NamedFeatures{ids[i], extract_features(read_matrix_market(files[i]))};
        } catch (const std::exception& e) {
            problems[i] = files[i].string() + ": " + e.what();
        }
    }

    std::vector<NamedFeatures> ok;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (rows[i])
            ok.push_back(std::move(*rows[i]));
        else
            err << (single ? "error: " : "warning: skipped ") << problems[i] << '\n';
    }
    if (single && ok.empty())
        return kParseFailure;
    if (ok.empty()) {
        err << "error: no features extracted\n";
        return kEmptyResult;
    }
    Sink sink(o.out, out);
    if (!sink.get()) {
        err << "error: cannot write " << o.out.string() << '\n';
        return kParseFailure;
    }
    write_features(*sink.get(), ok);
    return kOk;
}

int cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel train" << tree_flags(o.params) << " --folds " << o.folds
        << " --seed " << o.seed << " --out " << quoted(o.model_out) << ' ' << quoted(o.features)
        << ' ' << quoted(o.records) << '\n';
    Joined j = load_training_rows(o.features, o.records, err);
    if (j.status != kOk)
        return j.status;
    if (single_class(j.rows))
        err << "warning: every matrix has label " << format_name(j.rows.front().label)
            << "; the tree is a single leaf\n";

    const DecisionTreeModel model = train_model(j.rows, o.params);
    try {
        write_model(o.model_out, model);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kModelFailure;
    }
    out << "samples=" << j.rows.size() << " nodes=" << model.nodes.size()
        << " depth=" << model.depth() << '\n';
    if (o.folds >= 2 && o.folds <= j.rows.size())
        print_cv(out, cross_validate(j.rows, o.folds, o.seed, o.params), false);
    else
        err << "warning: " << j.rows.size() << " samples are too few for " << o.folds
            << "-fold cross-validation; skipped\n";
    return kOk;
}

int cmd_cv(const CvOptions& o, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel cv" << tree_flags(o.params) << " --folds " << o.folds << " --seed "
        << o.seed << " --repeats " << o.repeats << ' ' << quoted(o.features) << ' '
        << quoted(o.records) << '\n';
    Joined j = load_training_rows(o.features, o.records, err);
    if (j.status != kOk)
        return j.status;
    if (o.folds < 2 || o.folds > j.rows.size()) {
        err << "error: " << o.folds << "-fold cross-validation needs between 2 and "
            << j.rows.size() << " folds\n";
        return kEmptyResult;
    }
    print_cv(out, cross_validate(j.rows, o.folds, o.seed, o.params, o.repeats), true);
    return kOk;
}

int cmd_predict(const PredictOptions& o, RepClock& clock, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel predict" << (o.run ? " --run" : "");
    if (o.run)
        out << bench_flags(o.cfg);
    else
        out << params_flags(o.cfg.params);
    out << ' ' << quoted(o.matrix) << ' ' << quoted(o.model) << '\n';
    DecisionTreeModel model;
    try {
        model = read_model(o.model);
    } catch (const std::exception& e) {
        err << "error: " << o.model.string() << ": " << e.what() << '\n';
        return kModelFailure;
    }
    auto a = load_matrix(o.matrix, err);
    if (!a)
        return kParseFailure;
    FormatTag tag;
    try {
        tag = predict(model, extract_features(*a));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    }
    out << format_name(tag) << '\n';
    if (!o.run)
        return kOk;
    BenchConfig cfg = o.cfg;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    }
    const BenchRecord r =
        run_bench(*a, matrix_id_for(o.matrix.parent_path(), o.matrix), tag, cfg, clock);
    write_record(out, r);
    if (!r.converted_ok) {
        err << "error: conversion to " << format_name(tag) << " failed\n";
        return kConversionFailure;
    }
    return kOk;
}

int cmd_report(const ReportOptions& o, std::ostream& out, std::ostream& err) {
    out << "# config: spmvsel report " << quoted(o.records) << '\n';
    std::vector<BenchRecord> records;
    try {
        records = read_records(o.records);
    } catch (const std::exception& e) {
        err << "error: " << o.records.string() << ": " << e.what() << '\n';
        return kParseFailure;
    }
    try {
        print_report(out, summarize_records(records));
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kEmptyResult;
    }
    return kOk;
}

} // namespace spmvsel::cli
