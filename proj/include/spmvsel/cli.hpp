#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "spmvsel/bench.hpp"
#include "spmvsel/formats.hpp"
#include "spmvsel/model.hpp"

namespace spmvsel::cli {

enum ExitCode : int {
    kOk = 0,
    kParseFailure = 1,
    kConversionFailure = 2,
    kModelFailure = 3,
    kEmptyResult = 4,
};

struct ConvertOptions {
    std::filesystem::path input;
    FormatTag format = FormatTag::Csr;
    FormatParams params;
};

struct SpmvOptions {
    std::filesystem::path input;
    FormatTag format = FormatTag::Csr;
    FormatParams params;
    int workers = 1;
};

struct BenchOptions {
    std::filesystem::path corpus;
    BenchConfig cfg;
    /// Record file; empty writes the records to standard output.
    std::filesystem::path out;
};

struct FeaturesOptions {
    /// A Matrix Market file or a corpus directory.
    std::filesystem::path input;
    std::filesystem::path out;
    int jobs = 1;
};

struct TrainOptions {
    std::filesystem::path features;
    /// Bench record file; labels are its per-matrix argmin.
    std::filesystem::path records;
    std::filesystem::path model_out;
    TreeParams params;
    std::size_t folds = 5;
    std::uint64_t seed = 1;
};

struct CvOptions {
    std::filesystem::path features;
    std::filesystem::path records;
    TreeParams params;
    std::size_t folds = 5;
    std::uint64_t seed = 1;
    std::size_t repeats = 1;
};

struct PredictOptions {
    std::filesystem::path matrix;
    std::filesystem::path model;
    bool run = false;
    BenchConfig cfg;
};

struct ReportOptions {
    std::filesystem::path records;
};

/// Each command prints a "# config:" line first; rerunning it reproduces the
/// output. Returns an ExitCode; diagnostics go to `err`.
int cmd_convert(const ConvertOptions& o, std::ostream& out, std::ostream& err);
int cmd_spmv(const SpmvOptions& o, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& o, RepClock& clock, std::ostream& out, std::ostream& err);
int cmd_features(const FeaturesOptions& o, std::ostream& out, std::ostream& err);
int cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& err);
int cmd_cv(const CvOptions& o, std::ostream& out, std::ostream& err);
int cmd_predict(const PredictOptions& o, RepClock& clock, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& o, std::ostream& out, std::ostream& err);

/// Full command-line entry point (argv[0] is the program name). Bench and
/// predict --run use `clock`, the wall clock when null.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        RepClock* clock = nullptr);

} // namespace spmvsel::cli
