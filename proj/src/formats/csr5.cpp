#include <algorithm>

#include "spmvsel/error.hpp"
#include "spmvsel/formats.hpp"

namespace spmvsel {

std::size_t Csr5Matrix::tile_length(Index t) const noexcept {
    return std::min(tile_size(), nnz() - tile_begin(t));
}

std::size_t Csr5Matrix::column_length(Index t, Index j) const noexcept {
    const std::size_t len = tile_length(t);
    const std::size_t start = std::size_t{j} * sigma;
    if (start >= len)
        return 0;
    return std::min<std::size_t>(sigma, len - start);
}

std::size_t Csr5Matrix::stored_position(Index t, Index r, Index c) const noexcept {
    if (is_full_tile(t))
        return tile_begin(t) + std::size_t{r} * omega + c;
    return tile_begin(t) + std::size_t{c} * sigma + r;
}

namespace {

// Stored offset (within its tile) of the p-th CSR-order entry of tile t.
std::size_t stored_offset(const Csr5Matrix& m, Index t, std::size_t p) {
    if (m.is_full_tile(t))
        return (p % m.sigma) * m.omega + p / m.sigma;
    return p;
}

} // namespace

Csr5Matrix to_csr5(const CooMatrix& a, Index omega, Index sigma) {
    if (omega == 0 || sigma == 0)
        throw ConversionError("to_csr5: omega and sigma must be positive");
    const CsrMatrix csr = to_csr(a);

    Csr5Matrix m;
    m.n_rows = csr.n_rows;
    m.n_cols = csr.n_cols;
    m.omega = omega;
    m.sigma = sigma;
    m.ptr = csr.ptr;
    const std::size_t nnz = csr.nnz();
    const std::size_t ts = m.tile_size();
    const std::size_t num_tiles = (nnz + ts - 1) / ts;
    if (num_tiles > kMaxIndex)
        throw ConversionError("to_csr5: tile count exceeds the 32-bit index range");
    m.num_tiles = static_cast<Index>(num_tiles);

    std::vector<std::uint8_t> row_start(nnz, 0);
    for (Index r = 0; r < csr.n_rows; ++r)
        if (csr.ptr[r] < csr.ptr[r + 1])
            row_start[csr.ptr[r]] = 1;

    m.tile_ptr.resize(num_tiles + 1);
    for (Index t = 0; t < m.num_tiles; ++t) {
        const auto first = m.tile_begin(t);
        auto it = std::upper_bound(csr.ptr.begin(), csr.ptr.end(), static_cast<Index>(first));
        m.tile_ptr[t] = static_cast<Index>(it - csr.ptr.begin() - 1);
    }
    m.tile_ptr[num_tiles] = csr.n_rows;

    m.indices.resize(nnz);
    m.data.resize(nnz);
    m.bit_flag.resize(nnz);
    m.y_off.assign(num_tiles * omega, 0);
    m.seg_off.assign(num_tiles * omega, 0);

    std::vector<std::uint8_t> col_first_flag(omega), col_any_flag(omega);
    std::vector<Index> col_flags(omega);
    for (Index t = 0; t < m.num_tiles; ++t) {
        const std::size_t base = m.tile_begin(t);
        const std::size_t len = m.tile_length(t);
        std::fill(col_flags.begin(), col_flags.end(), 0);
        std::fill(col_first_flag.begin(), col_first_flag.end(), 0);
        for (std::size_t p = 0; p < len; ++p) {
            const std::size_t s = base + stored_offset(m, t, p);
            const bool flag = row_start[base + p] || p == 0;
            m.indices[s] = csr.indices[base + p];
            m.data[s] = csr.data[base + p];
            m.bit_flag[s] = flag ? 1 : 0;
            const auto j = static_cast<Index>(p / sigma);
            col_flags[j] += flag ? 1 : 0;
            if (p % sigma == 0)
                col_first_flag[j] = flag ? 1 : 0;
        }

        const Index used = static_cast<Index>((len + sigma - 1) / sigma);
        Index* y_off = &m.y_off[std::size_t{t} * omega];
        Index* seg_off = &m.seg_off[std::size_t{t} * omega];
        Index running = 0;
        for (Index j = 0; j < omega; ++j) {
            y_off[j] = running;
            if (j < used)
                running += col_flags[j];
        }
        // Columns the open segment of column j runs into: each one that starts
        // unflagged continues it, and the first of those holding a row start
        // closes it.
        for (Index j = 0; j < used; ++j) {
            Index spill = 0;
            for (Index k = j + 1; k < used && !col_first_flag[k]; ++k) {
                ++spill;
                if (col_flags[k] > 0)
                    break;
            }
            seg_off[j] = spill;
        }
    }
    return m;
}

CooMatrix to_coo(const Csr5Matrix& m) {
    const std::size_t nnz = m.nnz();
    std::vector<Index> col(nnz);
    std::vector<double> data(nnz);
    for (Index t = 0; t < m.num_tiles; ++t) {
        const std::size_t base = m.tile_begin(t);
        const std::size_t len = m.tile_length(t);
        for (std::size_t p = 0; p < len; ++p) {
            const std::size_t s = base + stored_offset(m, t, p);
            col[base + p] = m.indices[s];
            data[base + p] = m.data[s];
        }
    }
    std::vector<Index> row(nnz);
    for (Index r = 0; r < m.n_rows; ++r)
        for (Index k = m.ptr[r]; k < m.ptr[r + 1]; ++k)
            row[k] = r;
    return CooMatrix(m.n_rows, m.n_cols, std::move(row), std::move(col), std::move(data));
}

} // namespace spmvsel
