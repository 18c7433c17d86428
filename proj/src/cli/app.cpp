#include <CLI11.hpp>

#include <ostream>

#include "spmvsel/cli.hpp"

namespace spmvsel::cli {
namespace {

CLI::Validator format_validator() {
    return CLI::Validator(
        [](std::string& s) -> std::string {
            return parse_format(s) ? std::string() : "unknown format '" + s + "'";
        },
        "FORMAT");
}

void add_params(CLI::App* app, FormatParams& p) {
    app->add_option("--omega", p.csr5_omega, "CSR5 tile width")->capture_default_str();
    app->add_option("--sigma", p.csr5_sigma, "CSR5 tile height")->capture_default_str();
    app->add_option("--sell-c", p.sell_c, "SELL slice height")->capture_default_str();
    app->add_option("--sell-sigma", p.sell_sigma, "SELL sorting window (0 = no sorting)")
        ->capture_default_str();
}

void add_bench(CLI::App* app, BenchConfig& c) {
    add_params(app, c.params);
    app->add_option("--workers", c.workers, "kernel threads (1 = serial reference)")
        ->capture_default_str();
    app->add_option("--fixed-reps", c.fixed_reps, "exact repetition count, 0 = CI rule")
        ->capture_default_str();
    app->add_option("--min-reps", c.min_reps)->capture_default_str();
    app->add_option("--max-reps", c.max_reps)->capture_default_str();
    app->add_option("--ci-level", c.ci_level)->capture_default_str();
    app->add_option("--ci-gap", c.ci_gap, "relative CI width to stop at")->capture_default_str();
    app->add_option("--warmup", c.warmup_reps)->capture_default_str();
}

void add_tree(CLI::App* app, TreeParams& p) {
    app->add_option("--depth", p.max_depth, "maximum tree depth")->capture_default_str();
    app->add_option("--min-leaf", p.min_samples_leaf, "minimum samples per leaf")
        ->capture_default_str();
}

std::vector<FormatTag> parse_format_list(const std::vector<std::string>& names) {
    std::vector<FormatTag> tags;
    for (const auto& n : names) {
        const auto tag = *parse_format(n);
        if (std::find(tags.begin(), tags.end(), tag) == tags.end())
            tags.push_back(tag);
    }
    return tags;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        RepClock* clock) {
    WallClock wall;
    RepClock& rep_clock = clock ? *clock : static_cast<RepClock&>(wall);

    CLI::App app{"Sparse matrix-vector multiplication format selection toolkit", "spmvsel"};
    app.require_subcommand(1);

    std::string format_name_opt = "csr";

    ConvertOptions convert_o;
    auto* convert = app.add_subcommand("convert", "convert a matrix and verify the round trip");
    convert->add_option("input", convert_o.input, "Matrix Market file")->required();
    convert->add_option("--format", format_name_opt)->check(format_validator())->capture_default_str();
    add_params(convert, convert_o.params);

    SpmvOptions spmv_o;
    auto* spmv_cmd = app.add_subcommand("spmv", "print y = A * ones");
    spmv_cmd->add_option("input", spmv_o.input, "Matrix Market file")->required();
    spmv_cmd->add_option("--format", format_name_opt)->check(format_validator())->capture_default_str();
    spmv_cmd->add_option("--workers", spmv_o.workers)->capture_default_str();
    add_params(spmv_cmd, spmv_o.params);

    BenchOptions bench_o;
    std::vector<std::string> bench_formats;
    auto* bench = app.add_subcommand("bench", "benchmark every format over a corpus");
    bench->add_option("corpus", bench_o.corpus, "directory of .mtx files")->required();
    bench->add_option("--formats", bench_formats, "comma-separated format list")
        ->delimiter(',')
        ->check(format_validator());
    bench->add_option("--out", bench_o.out, "record file (default: standard output)");
    add_bench(bench, bench_o.cfg);

    FeaturesOptions features_o;
    auto* features = app.add_subcommand("features", "extract matrix features");
    features->add_option("input", features_o.input, "Matrix Market file or corpus directory")
        ->required();
    features->add_option("--out", features_o.out, "feature file (default: standard output)");
    features->add_option("--jobs", features_o.jobs, "matrices processed in parallel")
        ->capture_default_str();

    TrainOptions train_o;
    auto* train = app.add_subcommand("train", "train a decision tree and report CV quality");
    train->add_option("features", train_o.features, "feature file")->required();
    train->add_option("records", train_o.records, "bench record file (labels)")->required();
    train->add_option("--out", train_o.model_out, "model file")->required();
    train->add_option("--folds", train_o.folds)->capture_default_str();
    train->add_option("--seed", train_o.seed)->capture_default_str();
    add_tree(train, train_o.params);

    CvOptions cv_o;
    auto* cv = app.add_subcommand("cv", "k-fold cross-validation report");
    cv->add_option("features", cv_o.features, "feature file")->required();
    cv->add_option("records", cv_o.records, "bench record file (labels)")->required();
    cv->add_option("--folds", cv_o.folds)->capture_default_str();
    cv->add_option("--seed", cv_o.seed)->capture_default_str();
    cv->add_option("--repeats", cv_o.repeats)->capture_default_str();
    add_tree(cv, cv_o.params);

    PredictOptions predict_o;
    auto* predict_cmd = app.add_subcommand("predict", "predict the best format for a matrix");
    predict_cmd->add_option("matrix", predict_o.matrix, "Matrix Market file")->required();
    predict_cmd->add_option("model", predict_o.model, "model file")->required();
    predict_cmd->add_flag("--run", predict_o.run, "convert and benchmark the predicted format");
    add_bench(predict_cmd, predict_o.cfg);

    ReportOptions report_o;
    auto* report = app.add_subcommand("report", "aggregate a bench record file");
    report->add_option("records", report_o.records, "bench record file")->required();

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseFailure;
    }

    const FormatTag tag = *parse_format(format_name_opt);
    if (*convert) {
        convert_o.format = tag;
        return cmd_convert(convert_o, out, err);
    }
    if (*spmv_cmd) {
        spmv_o.format = tag;
        return cmd_spmv(spmv_o, out, err);
    }
    if (*bench) {
        if (!bench_formats.empty())
            bench_o.cfg.formats = parse_format_list(bench_formats);
        return cmd_bench(bench_o, rep_clock, out, err);
    }
    if (*features)
        return cmd_features(features_o, out, err);
    if (*train)
        return cmd_train(train_o, out, err);
    if (*cv)
        return cmd_cv(cv_o, out, err);
    if (*predict_cmd)
        return cmd_predict(predict_o, rep_clock, out, err);
    return cmd_report(report_o, out, err);
}

} // namespace spmvsel::cli
