#include "spmvsel/coo.hpp"

#include <algorithm>
#include <string>

#include "spmvsel/error.hpp"

namespace spmvsel {

CooMatrix::CooMatrix(Index n_rows, Index n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}

CooMatrix::CooMatrix(Index n_rows, Index n_cols, std::vector<Index> row, std::vector<Index> col,
                     std::vector<double> data)
    : n_rows_(n_rows), n_cols_(n_cols), row_(std::move(row)), col_(std::move(col)),
      data_(std::move(data)) {
    if (row_.size() != col_.size() || row_.size() != data_.size())
        throw InvalidArgument("CooMatrix: row/col/data lengths differ");
    if (row_.size() > kMaxIndex)
        throw InvalidArgument("CooMatrix: nnz exceeds the 32-bit index range");
    for (std::size_t k = 0; k < row_.size(); ++k) {
        if (row_[k] >= n_rows_ || col_[k] >= n_cols_)
            throw InvalidArgument("CooMatrix: entry " + std::to_string(k) + " out of bounds");
        if (data_[k] == 0.0)
            throw InvalidArgument("CooMatrix: explicit zero at entry " + std::to_string(k));
        if (k > 0 && (row_[k - 1] > row_[k] || (row_[k - 1] == row_[k] && col_[k - 1] >= col_[k])))
            throw InvalidArgument("CooMatrix: entries not strictly sorted at " + std::to_string(k));
    }
}

CooMatrix canonicalize(std::vector<Triplet> entries, Index n_rows, Index n_cols) {
    for (const auto& e : entries) {
        if (e.row >= n_rows || e.col >= n_cols)
            throw InvalidArgument("canonicalize: entry (" + std::to_string(e.row) + ", " +
                                  std::to_string(e.col) + ") outside " + std::to_string(n_rows) +
                                  "x" + std::to_string(n_cols));
    }
    // Stable so duplicates are summed in input order.
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    std::vector<Index> row, col;
    std::vector<double> data;
    row.reserve(entries.size());
    col.reserve(entries.size());
    data.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
        double sum = entries[i].value;
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].row == entries[i].row &&
               entries[j].col == entries[i].col)
            sum += entries[j++].value;
        if (sum != 0.0) {
            row.push_back(entries[i].row);
            col.push_back(entries[i].col);
            data.push_back(sum);
        }
        i = j;
    }
    return CooMatrix(n_rows, n_cols, std::move(row), std::move(col), std::move(data));
}

DenseVector dense_spmv_oracle(const CooMatrix& a, std::span<const double> x) {
    if (x.size() != a.n_cols())
        throw InvalidArgument("dense_spmv_oracle: x has length " + std::to_string(x.size()) +
                              ", expected " + std::to_string(a.n_cols()));
    DenseVector y(a.n_rows(), 0.0);
    const auto row = a.row();
    const auto col = a.col();
    const auto data = a.data();
    for (std::size_t k = 0; k < a.nnz(); ++k)
        y[row[k]] += data[k] * x[col[k]];
    return y;
}

std::vector<Index> row_nnz_histogram(const CooMatrix& a) {
    std::vector<Index> counts(a.n_rows(), 0);
    for (Index r : a.row())
        ++counts[r];
    return counts;
}

} // namespace spmvsel
