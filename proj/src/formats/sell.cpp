#include <algorithm>
#include <numeric>

#include "spmvsel/error.hpp"
#include "spmvsel/formats.hpp"

namespace spmvsel {

Index SellMatrix::rows_in_slice(Index s) const noexcept {
    const std::size_t first = std::size_t{s} * c;
    return static_cast<Index>(std::min<std::size_t>(c, n_rows - first));
}

std::size_t SellMatrix::nnz() const noexcept {
    return std::accumulate(row_nnz.begin(), row_nnz.end(), std::size_t{0});
}

SellMatrix to_sell(const CooMatrix& a, Index c, Index sigma) {
    if (c == 0)
        throw ConversionError("to_sell: slice height must be positive");
    if (sigma != 0 && sigma % c != 0)
        throw ConversionError("to_sell: sigma (" + std::to_string(sigma) +
                              ") must be a multiple of C (" + std::to_string(c) + ")");

    SellMatrix m;
    m.n_rows = a.n_rows();
    m.n_cols = a.n_cols();
    m.c = c;
    m.sigma = sigma;

    const std::vector<Index> nnz_by_row = row_nnz_histogram(a);
    std::vector<Index> row_begin(std::size_t{m.n_rows} + 1, 0);
    for (Index r = 0; r < m.n_rows; ++r)
        row_begin[r + 1] = row_begin[r] + nnz_by_row[r];

    m.perm.resize(m.n_rows);
    std::iota(m.perm.begin(), m.perm.end(), Index{0});
    if (sigma > 0) {
        for (std::size_t w = 0; w < m.n_rows; w += sigma) {
            const auto first = m.perm.begin() + static_cast<std::ptrdiff_t>(w);
            const auto last = m.perm.begin() +
                              static_cast<std::ptrdiff_t>(std::min<std::size_t>(w + sigma, m.n_rows));
            std::stable_sort(first, last,
                             [&](Index x, Index y) { return nnz_by_row[x] > nnz_by_row[y]; });
        }
    }
    m.row_nnz.resize(m.n_rows);
    for (Index p = 0; p < m.n_rows; ++p)
        m.row_nnz[p] = nnz_by_row[m.perm[p]];

    const Index num_slices = static_cast<Index>((std::size_t{m.n_rows} + c - 1) / c);
    m.slices.resize(num_slices);
    m.slice_offset.assign(std::size_t{num_slices} + 1, 0);
    for (Index s = 0; s < num_slices; ++s) {
        const auto first = m.row_nnz.begin() + static_cast<std::ptrdiff_t>(std::size_t{s} * c);
        const auto last = first + m.rows_in_slice(s);
        m.slices[s] = *std::max_element(first, last);
        m.slice_offset[s + 1] = m.slice_offset[s] + std::size_t{m.rows_in_slice(s)} * m.slices[s];
    }
    const std::size_t cells = m.slice_offset.back();
    if (cells > kMaxIndex)
        throw ConversionError("to_sell: padded slices of " + std::to_string(cells) +
                              " slots exceed the 32-bit index range");
    m.indices.assign(cells, 0);
    m.data.assign(cells, 0.0);

    const auto col = a.col();
    const auto data = a.data();
    for (Index s = 0; s < num_slices; ++s) {
        for (Index i = 0; i < m.rows_in_slice(s); ++i) {
            const Index p = s * c + i;
            const Index r = m.perm[p];
            Index last = 0;
            for (Index j = 0; j < m.row_nnz[p]; ++j) {
                const auto k = row_begin[r] + j;
                m.indices[m.cell(s, i, j)] = col[k];
                m.data[m.cell(s, i, j)] = data[k];
                last = col[k];
            }
            for (Index j = m.row_nnz[p]; j < m.slices[s]; ++j)
                m.indices[m.cell(s, i, j)] = last;
        }
    }
    return m;
}

CooMatrix to_coo(const SellMatrix& m) {
    std::vector<Triplet> entries;
    entries.reserve(m.nnz());
    for (Index s = 0; s < m.num_slices(); ++s) {
        for (Index i = 0; i < m.rows_in_slice(s); ++i) {
            const Index p = s * m.c + i;
            for (Index j = 0; j < m.row_nnz[p]; ++j)
                entries.push_back({m.perm[p], m.indices[m.cell(s, i, j)], m.data[m.cell(s, i, j)]});
        }
    }
    return canonicalize(std::move(entries), m.n_rows, m.n_cols);
}

} // namespace spmvsel
