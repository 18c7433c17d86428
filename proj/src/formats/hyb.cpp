#include <algorithm>

#include "spmvsel/error.hpp"
#include "spmvsel/formats.hpp"

namespace spmvsel {

Index hyb_typical_k(std::span<const Index> row_nnz) {
    const std::size_t n = row_nnz.size();
    if (n == 0)
        return 1;
    const Index longest = *std::max_element(row_nnz.begin(), row_nnz.end());
    // at_least[K] = rows holding >= K entries, via a suffix sum of counts.
    std::vector<std::size_t> at_least(std::size_t{longest} + 2, 0);
    for (Index v : row_nnz)
        ++at_least[v];
    for (std::size_t k = longest; k-- > 0;)
        at_least[k] += at_least[k + 1];
    for (Index k = longest; k >= 1; --k)
        if (3 * at_least[k] > n)
            return k;
    return 1;
}

HybMatrix to_hyb(const CooMatrix& a) {
    const std::vector<Index> nnz_by_row = row_nnz_histogram(a);
    const Index longest =
        nnz_by_row.empty() ? 0 : *std::max_element(nnz_by_row.begin(), nnz_by_row.end());
    const Index k = std::min(hyb_typical_k(nnz_by_row), longest);

    HybMatrix m;
    EllMatrix& ell = m.ell;
    ell.n_rows = a.n_rows();
    ell.n_cols = a.n_cols();
    ell.k = k;
    ell.row_nnz.resize(a.n_rows());
    const std::size_t cells = std::size_t{ell.n_rows} * k;
    if (cells > kMaxIndex)
        throw ConversionError("to_hyb: ELL part exceeds the 32-bit index range");
    ell.indices.assign(cells, 0);
    ell.data.assign(cells, 0.0);

    std::vector<Index> tail_row, tail_col;
    std::vector<double> tail_data;
    const auto col = a.col();
    const auto data = a.data();
    std::size_t pos = 0;
    for (Index r = 0; r < a.n_rows(); ++r) {
        const Index in_ell = std::min(nnz_by_row[r], k);
        ell.row_nnz[r] = in_ell;
        Index last = 0;
        for (Index j = 0; j < nnz_by_row[r]; ++j, ++pos) {
            if (j < in_ell) {
                ell.indices[ell.slot(r, j)] = col[pos];
                ell.data[ell.slot(r, j)] = data[pos];
                last = col[pos];
            } else {
                tail_row.push_back(r);
                tail_col.push_back(col[pos]);
                tail_data.push_back(data[pos]);
            }
        }
        for (Index j = in_ell; j < k; ++j)
            ell.indices[ell.slot(r, j)] = last;
    }
    m.coo_tail = CooMatrix(a.n_rows(), a.n_cols(), std::move(tail_row), std::move(tail_col),
                           std::move(tail_data));
    return m;
}

CooMatrix to_coo(const HybMatrix& m) {
    std::vector<Triplet> entries;
    entries.reserve(m.nnz());
    const EllMatrix& ell = m.ell;
    for (Index r = 0; r < ell.n_rows; ++r)
        for (Index j = 0; j < ell.row_nnz[r]; ++j)
            entries.push_back({r, ell.indices[ell.slot(r, j)], ell.data[ell.slot(r, j)]});
    const auto row = m.coo_tail.row();
    const auto col = m.coo_tail.col();
    const auto data = m.coo_tail.data();
    for (std::size_t i = 0; i < m.coo_tail.nnz(); ++i)
        entries.push_back({row[i], col[i], data[i]});
    return canonicalize(std::move(entries), ell.n_rows, ell.n_cols);
}

} // namespace spmvsel
