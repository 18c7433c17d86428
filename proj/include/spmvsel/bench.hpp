#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spmvsel/coo.hpp"
#include "spmvsel/formats.hpp"

namespace spmvsel {

struct BenchConfig {
    std::size_t min_reps = 5;
    std::size_t max_reps = 1000;
    double ci_level = 0.95;
    double ci_gap = 0.05;
    int workers = 1;
    std::size_t warmup_reps = 2;
    /// Non-zero: run exactly this many timed repetitions and ignore the
    /// confidence-interval rule (the plain "repeat FRQ times" protocol).
    std::size_t fixed_reps = 0;
    FormatParams params;
    std::vector<FormatTag> formats{kAllFormats.begin(), kAllFormats.end()};

    /// Throws InvalidArgument when the invariants do not hold.
    void validate() const;
};

struct BenchRecord {
    std::string matrix_id;
    FormatTag format = FormatTag::Csr;
    std::size_t reps = 0;
    double mean_time = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double gflops = 0.0;
    double bandwidth = 0.0;
    bool converted_ok = false;
    /// Not serialized: mean time below 100x the clock resolution.
    bool timer_limited = false;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// What a clock gets to see about the repetition it is timing.
struct TimingContext {
    std::string_view matrix_id;
    FormatTag format;
    const CooMatrix* matrix;
    std::size_t rep;
    bool warmup;
};

/// Times one repetition. The harness never reads a clock directly, which is
/// what lets tests drive it with synthetic timings.
class RepClock {
public:
    virtual ~RepClock() = default;
    /// Runs (or not) `body` and returns the duration of the repetition in seconds.
    virtual double time_rep(const TimingContext& ctx, const std::function<void()>& body) = 0;
    /// Smallest distinguishable duration in seconds.
    virtual double resolution() const = 0;
};

class WallClock final : public RepClock {
public:
    double time_rep(const TimingContext& ctx, const std::function<void()>& body) override;
    double resolution() const override;
};

struct ConfidenceInterval {
    double mean = 0.0;
    double low = 0.0;
    double high = 0.0;

    double gap() const noexcept { return high - low; }
};

/// Two-sided Student-t interval on the mean of `samples` (sample standard
/// deviation). With fewer than two samples the interval collapses to the mean.
ConfidenceInterval t_interval(std::span<const double> samples, double level);
/// Upper (1 + level) / 2 quantile of Student's t with `dof` degrees of freedom.
double t_critical(double level, std::size_t dof);
/// True once the relative interval width drops below cfg.ci_gap.
bool ci_converged(const ConfidenceInterval& ci, double ci_gap);

/// Flop count convention: one multiply and one add per nonzero.
double gflops_for(std::size_t nnz, double seconds);

/// Bytes touched by one product: stored values and indices (padding
/// included), auxiliary arrays, one read of x and one write of y.
std::uint64_t bytes_moved(const FormatMatrix& m);
double bandwidth_estimate(const FormatMatrix& m, double seconds);

/// Converts once, warms up, then times repetitions until the CI rule fires or
/// max_reps is reached (or exactly fixed_reps). x is all ones. A failed
/// conversion produces a record with converted_ok = false instead of throwing.
BenchRecord run_bench(const CooMatrix& a, std::string_view matrix_id, FormatTag tag,
                      const BenchConfig& cfg, RepClock& clock);

struct MatrixLabel {
    std::string matrix_id;
    FormatTag best;
};

/// Fastest successfully converted format; ties go to declaration order.
std::optional<FormatTag> best_format(std::span<const BenchRecord> records);
/// One label per matrix id, in order of first appearance.
std::vector<MatrixLabel> label_records(std::span<const BenchRecord> records);

/// *.mtx files below `dir`, recursively, in lexicographic order.
std::vector<std::filesystem::path> discover_corpus(const std::filesystem::path& dir);
/// Path relative to the corpus root without the extension, whitespace replaced.
std::string matrix_id_for(const std::filesystem::path& root, const std::filesystem::path& file);

struct CorpusResult {
    std::vector<BenchRecord> records;
    std::vector<MatrixLabel> labels;
    std::vector<std::string> diagnostics;
};

/// Benchmarks every matrix of the corpus, one at a time, in every configured
/// format. Unreadable files are skipped with a diagnostic.
CorpusResult bench_corpus(const std::filesystem::path& dir, const BenchConfig& cfg,
                          RepClock& clock,
                          const std::function<void(const BenchRecord&)>& on_record = {});

/// One record per line as space-separated key:value pairs.
void write_record(std::ostream& out, const BenchRecord& r);
void write_records(std::ostream& out, std::span<const BenchRecord> records);
std::vector<BenchRecord> read_records(std::istream& in);
std::vector<BenchRecord> read_records(const std::filesystem::path& path);

} // namespace spmvsel
