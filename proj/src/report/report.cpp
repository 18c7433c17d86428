#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "spmvsel/error.hpp"
#include "spmvsel/report.hpp"

namespace spmvsel {
namespace {

/// Geometric mean of positive ratios. The direct n-th root of the product is
/// used while the product stays a normal double, so small hand-checkable
/// inputs give exact results; otherwise the log-domain mean.
double geometric_mean(const std::vector<double>& ratios) {
    if (ratios.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double product = 1.0;
    double log_sum = 0.0;
    for (double r : ratios) {
        product *= r;
        log_sum += std::log(r);
    }
    const double n = static_cast<double>(ratios.size());
    if (std::isnormal(product))
        return std::pow(product, 1.0 / n);
    return std::exp(log_sum / n);
}

} // namespace

CorpusReport summarize_records(std::span<const BenchRecord> records) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<BenchRecord>> grouped;
    for (const auto& r : records) {
        auto [it, inserted] = grouped.try_emplace(r.matrix_id);
        if (inserted)
            order.push_back(r.matrix_id);
        it->second.push_back(r);
    }

    CorpusReport report;
    std::array<std::vector<double>, kNumFormats> ratios;
    for (const auto& id : order) {
        const auto& recs = grouped[id];
        const auto best = best_format(recs);
        if (!best)
            continue;
        ++report.matrices;
        ++report.formats[format_index(*best)].wins;
        double best_time = 0.0;
        for (const auto& r : recs)
            if (r.converted_ok && r.format == *best)
                best_time = r.mean_time;
        // A format timed twice for one matrix counts with its first record.
        std::array<bool, kNumFormats> seen{};
        for (const auto& r : recs) {
            const auto c = format_index(r.format);
            if (!r.converted_ok || seen[c])
                continue;
            seen[c] = true;
            ratios[c].push_back(best_time > 0.0 ? r.mean_time / best_time : 1.0);
        }
    }
    if (report.matrices == 0)
        throw InvalidArgument("report: no matrix has a successful record");
    for (auto tag : kAllFormats) {
        auto& f = report.formats[format_index(tag)];
        f.tag = tag;
        f.win_percent = 100.0 * static_cast<double>(f.wins) / static_cast<double>(report.matrices);
        f.matrices_timed = ratios[format_index(tag)].size();
        f.slowdown = geometric_mean(ratios[format_index(tag)]);
    }
    return report;
}

void print_report(std::ostream& out, const CorpusReport& report) {
    char buf[128];
    out << "matrices " << report.matrices << '\n';
    out << "format  wins  win_pct  slowdown  timed\n";
    for (const auto& f : report.formats) {
        if (std::isnan(f.slowdown))
            std::snprintf(buf, sizeof buf, "%-6s %5zu %7.2f%% %9s %6zu", format_name(f.tag).data(),
                          f.wins, f.win_percent, "n/a", f.matrices_timed);
        else
            std::snprintf(buf, sizeof buf, "%-6s %5zu %7.2f%% %8.4fx %6zu", format_name(f.tag).data(),
                          f.wins, f.win_percent, f.slowdown, f.matrices_timed);
        out << buf << '\n';
    }
}

} // namespace spmvsel
