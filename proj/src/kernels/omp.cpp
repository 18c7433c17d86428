#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "detail.hpp"
#include "spmvsel/kernels.hpp"

namespace spmvsel::omp {

void spmv_csr(const CsrMatrix& m, std::span<const double> x, std::span<double> y, int workers) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_csr");
    const auto block = static_cast<std::int64_t>(detail::row_block(m.n_rows, workers));
    const auto n = static_cast<std::int64_t>(m.n_rows);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
    for (std::int64_t b = 0; b < n; b += block) {
        const auto last = std::min(b + block, n);
        for (auto r = b; r < last; ++r) {
            double sum = 0.0;
            for (Index k = m.ptr[r]; k < m.ptr[r + 1]; ++k)
                sum += m.data[k] * x[m.indices[k]];
            y[r] = sum;
        }
    }
}

void spmv_csr5(const Csr5Matrix& m, std::span<const double> x, std::span<double> y, int workers) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_csr5");
    std::vector<detail::TileStage> stages(m.num_tiles);
    const auto n = static_cast<std::int64_t>(m.n_rows);
    const auto tiles = static_cast<std::int64_t>(m.num_tiles);
#pragma omp parallel num_threads(workers)
    {
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < n; ++r)
            y[r] = 0.0;
        detail::TileScratch scratch;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t t = 0; t < tiles; ++t)
            detail::csr5_tile(m, static_cast<Index>(t), x, y, scratch, stages[t]);
    }
    detail::csr5_gather(stages, y);
}

void spmv_ell(const EllMatrix& m, std::span<const double> x, std::span<double> y, int workers) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_ell");
    const auto block = static_cast<std::int64_t>(detail::row_block(m.n_rows, workers));
    const auto n = static_cast<std::int64_t>(m.n_rows);
    const Index k = m.k;
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
    for (std::int64_t b = 0; b < n; b += block) {
        const auto last = std::min(b + block, n);
        for (auto r = b; r < last; ++r) {
            const double* vals = &m.data[static_cast<std::size_t>(r) * k];
            const Index* cols = &m.indices[static_cast<std::size_t>(r) * k];
            double sum = 0.0;
            for (Index j = 0; j < k; ++j)
                sum += vals[j] * x[cols[j]];
            y[r] = sum;
        }
    }
}

void spmv_sell(const SellMatrix& m, std::span<const double> x, std::span<double> y, int workers) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_sell");
    const auto slices = static_cast<std::int64_t>(m.num_slices());
#pragma omp parallel num_threads(workers)
    {
        std::vector<double> lane(m.c);
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t si = 0; si < slices; ++si) {
            const auto s = static_cast<Index>(si);
            const Index rows = m.rows_in_slice(s);
            std::fill(lane.begin(), lane.begin() + rows, 0.0);
            // Column-major slice: the inner loop runs across the slice's rows.
            for (Index j = 0; j < m.slices[s]; ++j) {
                const std::size_t off = m.cell(s, 0, j);
                for (Index i = 0; i < rows; ++i)
                    lane[i] += m.data[off + i] * x[m.indices[off + i]];
            }
            for (Index i = 0; i < rows; ++i)
                y[m.perm[s * m.c + i]] = lane[i];
        }
    }
}

void spmv_hyb(const HybMatrix& m, std::span<const double> x, std::span<double> y, int workers) {
    detail::check_dims(m.n_rows(), m.n_cols(), x, y, "spmv_hyb");
    spmv_ell(m.ell, x, y, workers);

    // Tail: fixed-size entry chunks, each staging one sum per row run, then
    // added to y in ascending chunk order.
    const std::size_t tail = m.coo_tail.nnz();
    const std::size_t chunks = (tail + kTailChunk - 1) / kTailChunk;
    struct RowSum {
        Index row;
        double sum;
    };
    std::vector<std::vector<RowSum>> staged(chunks);
    const auto row = m.coo_tail.row();
    const auto col = m.coo_tail.col();
    const auto data = m.coo_tail.data();
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(chunks); ++ci) {
        const std::size_t begin = static_cast<std::size_t>(ci) * kTailChunk;
        const std::size_t end = std::min(tail, begin + kTailChunk);
        auto& out = staged[ci];
        for (std::size_t k = begin; k < end; ++k) {
            const double v = data[k] * x[col[k]];
            if (out.empty() || out.back().row != row[k])
                out.push_back({row[k], v});
            else
                out.back().sum += v;
        }
    }
    for (const auto& out : staged)
        for (const auto& p : out)
            y[p.row] += p.sum;
}

} // namespace spmvsel::omp
