#include <algorithm>
#include <numeric>

#include "spmvsel/error.hpp"
#include "spmvsel/formats.hpp"

namespace spmvsel {

std::size_t EllMatrix::nnz() const noexcept {
    return std::accumulate(row_nnz.begin(), row_nnz.end(), std::size_t{0});
}

EllMatrix to_ell(const CooMatrix& a) {
    EllMatrix m;
    m.n_rows = a.n_rows();
    m.n_cols = a.n_cols();
    m.row_nnz = row_nnz_histogram(a);
    m.k = m.row_nnz.empty() ? 0 : *std::max_element(m.row_nnz.begin(), m.row_nnz.end());
    const std::size_t cells = std::size_t{m.n_rows} * m.k;
    if (cells > kMaxIndex)
        throw ConversionError("to_ell: padded grid of " + std::to_string(cells) +
                              " slots exceeds the 32-bit index range");
    m.indices.assign(cells, 0);
    m.data.assign(cells, 0.0);

    const auto col = a.col();
    const auto data = a.data();
    std::size_t k = 0;
    for (Index r = 0; r < m.n_rows; ++r) {
        Index last = 0;
        for (Index j = 0; j < m.row_nnz[r]; ++j, ++k) {
            m.indices[m.slot(r, j)] = col[k];
            m.data[m.slot(r, j)] = data[k];
            last = col[k];
        }
        for (Index j = m.row_nnz[r]; j < m.k; ++j)
            m.indices[m.slot(r, j)] = last;
    }
    return m;
}

CooMatrix to_coo(const EllMatrix& m) {
    const std::size_t nnz = m.nnz();
    std::vector<Index> row, col;
    std::vector<double> data;
    row.reserve(nnz);
    col.reserve(nnz);
    data.reserve(nnz);
    for (Index r = 0; r < m.n_rows; ++r) {
        for (Index j = 0; j < m.row_nnz[r]; ++j) {
            row.push_back(r);
            col.push_back(m.indices[m.slot(r, j)]);
            data.push_back(m.data[m.slot(r, j)]);
        }
    }
    return CooMatrix(m.n_rows, m.n_cols, std::move(row), std::move(col), std::move(data));
}

} // namespace spmvsel
