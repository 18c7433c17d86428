#include "spmvsel/formats.hpp"

namespace spmvsel {

CsrMatrix to_csr(const CooMatrix& a) {
    CsrMatrix m;
    m.n_rows = a.n_rows();
    m.n_cols = a.n_cols();
    m.ptr.assign(std::size_t{a.n_rows()} + 1, 0);
    for (Index r : a.row())
        ++m.ptr[r + 1];
    for (Index r = 0; r < a.n_rows(); ++r)
        m.ptr[r + 1] += m.ptr[r];
    // Canonical COO is already in CSR order.
    m.indices.assign(a.col().begin(), a.col().end());
    m.data.assign(a.data().begin(), a.data().end());
    return m;
}

CooMatrix to_coo(const CsrMatrix& m) {
    std::vector<Index> row(m.nnz());
    for (Index r = 0; r < m.n_rows; ++r)
        for (Index k = m.ptr[r]; k < m.ptr[r + 1]; ++k)
            row[k] = r;
    return CooMatrix(m.n_rows, m.n_cols, std::move(row), m.indices, m.data);
}

} // namespace spmvsel
