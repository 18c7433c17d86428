#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "spmvsel/error.hpp"
#include "spmvsel/formats.hpp"
#include "spmvsel/kernels.hpp"

namespace spmvsel::detail {

inline void check_dims(Index n_rows, Index n_cols, std::span<const double> x, std::span<double> y,
                       const char* who) {
    if (x.size() != n_cols || y.size() != n_rows)
        throw InvalidArgument(std::string(who) + ": expected x of length " + std::to_string(n_cols) +
                              " and y of length " + std::to_string(n_rows) + ", got " +
                              std::to_string(x.size()) + " and " + std::to_string(y.size()));
}

/// Rows per row-block task: n_rows / (4 * workers), at least 1.
inline std::size_t row_block(std::size_t n_rows, int workers) {
    const std::size_t w = static_cast<std::size_t>(std::max(workers, 1));
    return std::max<std::size_t>(1, n_rows / (4 * w));
}

/// Up to two partials a tile leaves for the gather pass: the continuation of
/// a row begun in an earlier tile, and a row that runs on past the tile end.
struct TileStage {
    Csr5Partial items[2];
    unsigned count = 0;
};

/// Lane-local scratch reused across tiles by one thread.
struct TileScratch {
    std::vector<Index> seg_rows;
    std::vector<double> head;
    std::vector<double> open_sum;
    std::vector<Index> open_ordinal;
    std::vector<unsigned char> has_open;
};

inline void csr5_tile(const Csr5Matrix& m, Index t, std::span<const double> x, std::span<double> y,
                      TileScratch& s, TileStage& stage) {
    const std::size_t base = m.tile_begin(t);
    const std::size_t end = base + m.tile_length(t);
    const Index used = static_cast<Index>((m.tile_length(t) + m.sigma - 1) / m.sigma);
    const Index* y_off = &m.y_off[std::size_t{t} * m.omega];
    const Index* seg_off = &m.seg_off[std::size_t{t} * m.omega];
    const bool continues_row = m.ptr[m.tile_ptr[t]] != base;

    // Flag ordinal -> output row. Ordinal 0 is the forced leading flag; each
    // later flag is the start of the next nonempty row.
    s.seg_rows.clear();
    s.seg_rows.push_back(m.tile_ptr[t]);
    auto row_of = [&](Index ordinal) {
        while (s.seg_rows.size() <= ordinal) {
            Index r = s.seg_rows.back() + 1;
            while (m.ptr[r + 1] == m.ptr[r])
                ++r;
            s.seg_rows.push_back(r);
        }
        return s.seg_rows[ordinal];
    };
    stage.count = 0;
    auto emit = [&](Index ordinal, double sum) {
        const Index row = row_of(ordinal);
        if ((ordinal == 0 && continues_row) || m.ptr[row + 1] > end)
            stage.items[stage.count++] = {t, row, sum};
        else
            y[row] = sum;
    };

    s.head.assign(used, 0.0);
    s.open_sum.assign(used, 0.0);
    s.open_ordinal.assign(used, 0);
    s.has_open.assign(used, 0);

    // Lane pass: segmented sum down each column.
    for (Index j = 0; j < used; ++j) {
        const std::size_t len = m.column_length(t, j);
        bool in_head = !m.bit_flag[m.stored_position(t, 0, j)];
        Index ordinal = in_head ? y_off[j] - 1 : y_off[j];
        double acc = 0.0;
        for (Index r = 0; r < len; ++r) {
            const std::size_t e = m.stored_position(t, r, j);
            if (m.bit_flag[e] && r > 0) {
                if (in_head) {
                    s.head[j] = acc;
                    in_head = false;
                    ordinal = y_off[j];
                } else {
                    emit(ordinal, acc);
                    ++ordinal;
                }
                acc = 0.0;
            }
            acc += m.data[e] * x[m.indices[e]];
        }
        if (in_head) {
            s.head[j] = acc;
        } else {
            s.open_sum[j] = acc;
            s.open_ordinal[j] = ordinal;
            s.has_open[j] = 1;
        }
    }

    // Spill pass: close each column's last segment with the heads it runs into.
    for (Index j = 0; j < used; ++j) {
        if (!s.has_open[j])
            continue;
        double sum = s.open_sum[j];
        for (Index k = 1; k <= seg_off[j]; ++k)
            sum += s.head[j + k];
        emit(s.open_ordinal[j], sum);
    }
}

/// Gather pass: staged partials added in ascending tile order.
inline void csr5_gather(std::span<const TileStage> stages, std::span<double> y) {
    for (const auto& st : stages)
        for (unsigned i = 0; i < st.count; ++i)
            y[st.items[i].row] += st.items[i].sum;
}

} // namespace spmvsel::detail
