#pragma once

#include <array>
#include <iosfwd>
#include <span>

#include "spmvsel/bench.hpp"

namespace spmvsel {

struct FormatReport {
    FormatTag tag = FormatTag::Csr;
    std::size_t wins = 0;
    double win_percent = 0.0;
    /// Geometric mean of time(tag) / best time over matrices where tag ran.
    double slowdown = 0.0;
    std::size_t matrices_timed = 0;
};

struct CorpusReport {
    std::size_t matrices = 0;
    std::array<FormatReport, kNumFormats> formats{};
};

/// Best-format distribution and per-format slowdown against the per-matrix
/// best. Throws InvalidArgument if no matrix has a successful record.
CorpusReport summarize_records(std::span<const BenchRecord> records);

void print_report(std::ostream& out, const CorpusReport& report);

} // namespace spmvsel
