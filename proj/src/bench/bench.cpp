#include "spmvsel/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "core/text.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/kernels.hpp"
#include "spmvsel/matrix_market.hpp"

namespace spmvsel {

void BenchConfig::validate() const {
    if (min_reps < 2)
        throw InvalidArgument("bench: min_reps must be at least 2");
    if (max_reps < min_reps)
        throw InvalidArgument("bench: max_reps must be >= min_reps");
    if (!(ci_gap > 0.0))
        throw InvalidArgument("bench: ci_gap must be positive");
    if (!(ci_level > 0.0 && ci_level < 1.0))
        throw InvalidArgument("bench: ci_level must lie in (0, 1)");
    if (formats.empty())
        throw InvalidArgument("bench: no formats selected");
}

double WallClock::time_rep(const TimingContext&, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

double WallClock::resolution() const {
    using period = std::chrono::steady_clock::period;
    return static_cast<double>(period::num) / static_cast<double>(period::den);
}

double t_critical(double level, std::size_t dof) {
    if (dof == 0)
        throw InvalidArgument("t_critical: zero degrees of freedom");
    const boost::math::students_t_distribution<double> dist(static_cast<double>(dof));
    return boost::math::quantile(boost::math::complement(dist, (1.0 - level) / 2.0));
}

ConfidenceInterval t_interval(std::span<const double> samples, double level) {
    ConfidenceInterval ci;
    const std::size_t n = samples.size();
    if (n == 0)
        return ci;
    double sum = 0.0;
    for (double s : samples)
        sum += s;
    ci.mean = sum / static_cast<double>(n);
    ci.low = ci.high = ci.mean;
    if (n < 2)
        return ci;
    double sq = 0.0;
    for (double s : samples)
        sq += (s - ci.mean) * (s - ci.mean);
    const double sd = std::sqrt(sq / static_cast<double>(n - 1));
    if (sd == 0.0)
        return ci;
    const double half = t_critical(level, n - 1) * sd / std::sqrt(static_cast<double>(n));
    ci.low = ci.mean - half;
    ci.high = ci.mean + half;
    return ci;
}

bool ci_converged(const ConfidenceInterval& ci, double ci_gap) {
    return ci.mean > 0.0 && ci.gap() / ci.mean < ci_gap;
}

double gflops_for(std::size_t nnz, double seconds) {
    // Correctly rounded quotient: the exact product gflops * seconds * 1e9 then
    // stays within one ulp of 2 * nnz, which plain double division does not
    // guarantee once 1e9 * seconds has been rounded.
    using Wide = boost::multiprecision::cpp_bin_float_quad;
    const Wide q = Wide(2.0 * static_cast<double>(nnz)) / (Wide(1e9) * Wide(seconds));
    return q.convert_to<double>();
}

std::uint64_t bytes_moved(const FormatMatrix& m) {
    return std::visit(
        [](const auto& f) -> std::uint64_t {
            using T = std::decay_t<decltype(f)>;
            std::uint64_t rows, cols;
            if constexpr (std::is_same_v<T, HybMatrix>) {
                rows = f.n_rows();
                cols = f.n_cols();
            } else {
                rows = f.n_rows;
                cols = f.n_cols;
            }
            const std::uint64_t vectors = 8 * cols + 8 * rows;
            if constexpr (std::is_same_v<T, CsrMatrix>) {
                return 12 * f.nnz() + 4 * (rows + 1) + vectors;
            } else if constexpr (std::is_same_v<T, Csr5Matrix>) {
                const std::uint64_t tiles = f.num_tiles;
                return 12 * f.nnz() + 4 * (rows + 1) + 4 * (tiles + 1) + (f.nnz() + 7) / 8 +
                       8 * tiles * f.omega + vectors;
            } else if constexpr (std::is_same_v<T, EllMatrix>) {
                return 12 * rows * f.k + vectors;
            } else if constexpr (std::is_same_v<T, SellMatrix>) {
                const std::uint64_t cells = f.slice_offset.back();
                return 12 * cells + 8 * std::uint64_t{f.num_slices()} + (f.sigma > 0 ? 4 * rows : 0) +
                       vectors;
            } else {
                return 12 * rows * f.ell.k + 16 * std::uint64_t{f.coo_tail.nnz()} + vectors;
            }
        },
        m);
}

double bandwidth_estimate(const FormatMatrix& m, double seconds) {
    if (!(seconds > 0.0))
        throw InvalidArgument("bandwidth_estimate: time must be positive");
    return static_cast<double>(bytes_moved(m)) / seconds;
}

BenchRecord run_bench(const CooMatrix& a, std::string_view matrix_id, FormatTag tag,
                      const BenchConfig& cfg, RepClock& clock) {
    cfg.validate();
    BenchRecord rec;
    rec.matrix_id = std::string(matrix_id);
    rec.format = tag;

    FormatMatrix m;
    try {
        m = convert(a, tag, cfg.params);
    } catch (const std::exception&) {
        rec.converted_ok = false;
        return rec;
    }
    rec.converted_ok = true;

    const DenseVector x(a.n_cols(), 1.0);
    DenseVector y(a.n_rows());
    const ExecPolicy policy{cfg.workers};
    const std::function<void()> body = [&] { spmv(tag, m, x, y, policy); };

    for (std::size_t w = 0; w < cfg.warmup_reps; ++w)
        clock.time_rep({matrix_id, tag, &a, w, true}, body);

    const std::size_t cap = cfg.fixed_reps > 0 ? cfg.fixed_reps : cfg.max_reps;
    std::vector<double> samples;
    samples.reserve(std::min<std::size_t>(cap, 4096));
    ConfidenceInterval ci;
    while (samples.size() < cap) {
        samples.push_back(clock.time_rep({matrix_id, tag, &a, samples.size(), false}, body));
        if (cfg.fixed_reps == 0 && samples.size() >= cfg.min_reps) {
            ci = t_interval(samples, cfg.ci_level);
            if (ci_converged(ci, cfg.ci_gap))
                break;
        }
    }
    ci = t_interval(samples, cfg.ci_level);

    rec.reps = samples.size();
    rec.mean_time = ci.mean;
    rec.ci_low = ci.low;
    rec.ci_high = ci.high;
    if (ci.mean > 0.0) {
        rec.gflops = gflops_for(a.nnz(), ci.mean);
        rec.bandwidth = bandwidth_estimate(m, ci.mean);
    }
    rec.timer_limited = ci.mean < 100.0 * clock.resolution();
    return rec;
}

std::optional<FormatTag> best_format(std::span<const BenchRecord> records) {
    const BenchRecord* best = nullptr;
    for (const auto& r : records) {
        if (!r.converted_ok)
            continue;
        if (!best || r.mean_time < best->mean_time ||
            (r.mean_time == best->mean_time && format_index(r.format) < format_index(best->format)))
            best = &r;
    }
    if (!best)
        return std::nullopt;
    return best->format;
}

std::vector<MatrixLabel> label_records(std::span<const BenchRecord> records) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<BenchRecord>> by_id;
    for (const auto& r : records) {
        auto [it, inserted] = by_id.try_emplace(r.matrix_id);
        if (inserted)
            order.push_back(r.matrix_id);
        it->second.push_back(r);
    }
    std::vector<MatrixLabel> labels;
    for (const auto& id : order)
        if (auto best = best_format(by_id[id]))
            labels.push_back({id, *best});
    return labels;
}

std::vector<std::filesystem::path> discover_corpus(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw InvalidArgument("corpus directory " + dir.string() + " does not exist");
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mtx")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
    return files;
}

std::string matrix_id_for(const std::filesystem::path& root, const std::filesystem::path& file) {
    auto rel = std::filesystem::relative(file, root);
    if (rel.empty())
        rel = file.filename();
    rel.replace_extension();
    std::string id = rel.generic_string();
    for (char& c : id)
        if (c == ' ' || c == '\t')
            c = '_';
    return id;
}

CorpusResult bench_corpus(const std::filesystem::path& dir, const BenchConfig& cfg, RepClock& clock,
                          const std::function<void(const BenchRecord&)>& on_record) {
    cfg.validate();
    CorpusResult out;
    for (const auto& file : discover_corpus(dir)) {
        const std::string id = matrix_id_for(dir, file);
        CooMatrix a;
        try {
            a = read_matrix_market(file);
        } catch (const std::exception& e) {
            out.diagnostics.push_back(id + ": skipped: " + e.what());
            continue;
        }
        const std::size_t first = out.records.size();
        for (FormatTag tag : cfg.formats) {
            out.records.push_back(run_bench(a, id, tag, cfg, clock));
            const auto& rec = out.records.back();
            if (!rec.converted_ok)
                out.diagnostics.push_back(id + ": " + std::string(format_name(tag)) +
                                          " conversion failed");
            else if (rec.timer_limited)
                out.diagnostics.push_back(id + ": " + std::string(format_name(tag)) +
                                          " mean time below 100x timer resolution");
            if (on_record)
                on_record(rec);
        }
        const std::span<const BenchRecord> mine(out.records.data() + first, out.records.size() - first);
        if (auto best = best_format(mine))
            out.labels.push_back({id, *best});
        else
            out.diagnostics.push_back(id + ": no format converted successfully");
    }
    return out;
}

void write_record(std::ostream& out, const BenchRecord& r) {
    out << "matrix_id:" << r.matrix_id << " format:" << format_name(r.format) << " reps:" << r.reps
        << " mean_time_s:" << text::format_double(r.mean_time)
        << " ci_low_s:" << text::format_double(r.ci_low)
        << " ci_high_s:" << text::format_double(r.ci_high)
        << " gflops:" << text::format_double(r.gflops)
        << " bandwidth_bps:" << text::format_double(r.bandwidth)
        << " converted_ok:" << (r.converted_ok ? "true" : "false") << '\n';
}

void write_records(std::ostream& out, std::span<const BenchRecord> records) {
    for (const auto& r : records)
        write_record(out, r);
}

namespace {

BenchRecord parse_record(std::string_view line, std::size_t line_no) {
    auto kv = text::parse_key_values(line);
    if (!kv)
        throw ParseError(line_no, "expected space-separated key:value pairs");
    BenchRecord r;
    unsigned seen = 0;
    auto num = [&](std::string_view key, std::string_view v) {
        auto d = text::parse_double(v);
        if (!d)
            throw ParseError(line_no, "bad number for " + std::string(key));
        return *d;
    };
    for (auto [key, value] : *kv) {
        unsigned bit = 0;
        if (key == "matrix_id") {
            if (value.empty())
                throw ParseError(line_no, "empty matrix_id");
            r.matrix_id = std::string(value);
            bit = 1;
        } else if (key == "format") {
            auto tag = parse_format(value);
            if (!tag)
                throw ParseError(line_no, "unknown format '" + std::string(value) + "'");
            r.format = *tag;
            bit = 2;
        } else if (key == "reps") {
            auto n = text::parse_uint<std::size_t>(value);
            if (!n)
                throw ParseError(line_no, "bad reps");
            r.reps = *n;
            bit = 4;
        } else if (key == "mean_time_s") {
            r.mean_time = num(key, value);
            bit = 8;
        } else if (key == "ci_low_s") {
            r.ci_low = num(key, value);
            bit = 16;
        } else if (key == "ci_high_s") {
            r.ci_high = num(key, value);
            bit = 32;
        } else if (key == "gflops") {
            r.gflops = num(key, value);
            bit = 64;
        } else if (key == "bandwidth_bps") {
            r.bandwidth = num(key, value);
            bit = 128;
        } else if (key == "converted_ok") {
            if (value == "true" || value == "1")
                r.converted_ok = true;
            else if (value == "false" || value == "0")
                r.converted_ok = false;
            else
                throw ParseError(line_no, "bad converted_ok");
            bit = 256;
        } else {
            continue;
        }
        if (seen & bit)
            throw ParseError(line_no, "duplicate key " + std::string(key));
        seen |= bit;
    }
    if (seen != 511)
        throw ParseError(line_no, "record is missing required fields");
    return r;
}

} // namespace

std::vector<BenchRecord> read_records(std::istream& in) {
    std::vector<BenchRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::is_blank(line) || line[line.find_first_not_of(" \t")] == '#')
            continue;
        out.push_back(parse_record(line, line_no));
    }
    return out;
}

std::vector<BenchRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    return read_records(in);
}

} // namespace spmvsel
