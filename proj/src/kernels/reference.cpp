#include <algorithm>

#include "detail.hpp"
#include "spmvsel/kernels.hpp"

namespace spmvsel::reference {

void spmv_csr(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_csr");
    for (Index r = 0; r < m.n_rows; ++r) {
        double sum = 0.0;
        for (Index k = m.ptr[r]; k < m.ptr[r + 1]; ++k)
            sum += m.data[k] * x[m.indices[k]];
        y[r] = sum;
    }
}

void spmv_csr5(const Csr5Matrix& m, std::span<const double> x, std::span<double> y) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_csr5");
    std::fill(y.begin(), y.end(), 0.0);
    std::vector<detail::TileStage> stages(m.num_tiles);
    detail::TileScratch scratch;
    for (Index t = 0; t < m.num_tiles; ++t)
        detail::csr5_tile(m, t, x, y, scratch, stages[t]);
    detail::csr5_gather(stages, y);
}

void spmv_ell(const EllMatrix& m, std::span<const double> x, std::span<double> y) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_ell");
    for (Index r = 0; r < m.n_rows; ++r) {
        double sum = 0.0;
        for (Index j = 0; j < m.k; ++j)
            sum += m.data[m.slot(r, j)] * x[m.indices[m.slot(r, j)]];
        y[r] = sum;
    }
}

void spmv_sell(const SellMatrix& m, std::span<const double> x, std::span<double> y) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "spmv_sell");
    for (Index s = 0; s < m.num_slices(); ++s) {
        for (Index i = 0; i < m.rows_in_slice(s); ++i) {
            double sum = 0.0;
            for (Index j = 0; j < m.slices[s]; ++j)
                sum += m.data[m.cell(s, i, j)] * x[m.indices[m.cell(s, i, j)]];
            y[m.perm[s * m.c + i]] = sum;
        }
    }
}

void spmv_hyb(const HybMatrix& m, std::span<const double> x, std::span<double> y) {
    detail::check_dims(m.n_rows(), m.n_cols(), x, y, "spmv_hyb");
    reference::spmv_ell(m.ell, x, y);
    const auto row = m.coo_tail.row();
    const auto col = m.coo_tail.col();
    const auto data = m.coo_tail.data();
    // Within each kTailChunk range a run of equal rows is summed first, then
    // added to y; this fixes the summation order shared with the parallel path.
    const std::size_t tail = m.coo_tail.nnz();
    for (std::size_t begin = 0; begin < tail; begin += kTailChunk) {
        const std::size_t end = std::min(tail, begin + kTailChunk);
        std::size_t k = begin;
        while (k < end) {
            const Index r = row[k];
            double sum = data[k] * x[col[k]];
            for (++k; k < end && row[k] == r; ++k)
                sum += data[k] * x[col[k]];
            y[r] += sum;
        }
    }
}

} // namespace spmvsel::reference
