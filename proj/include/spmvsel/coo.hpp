#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace spmvsel {

using Index = std::uint32_t;
using DenseVector = std::vector<double>;

inline constexpr std::uint64_t kMaxIndex = std::numeric_limits<Index>::max();

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Canonical coordinate-format sparse matrix.
///
/// Entries are sorted by (row, col), free of duplicates and of explicit
/// zeros. Construction validates this, so every live CooMatrix is canonical
/// and can be shared read-only between threads.
class CooMatrix {
public:
    CooMatrix() = default;
    CooMatrix(Index n_rows, Index n_cols);
    /// Throws InvalidArgument unless the arrays already form a canonical matrix.
    CooMatrix(Index n_rows, Index n_cols, std::vector<Index> row, std::vector<Index> col,
              std::vector<double> data);

    Index n_rows() const noexcept { return n_rows_; }
    Index n_cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return data_.size(); }

    std::span<const Index> row() const noexcept { return row_; }
    std::span<const Index> col() const noexcept { return col_; }
    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const CooMatrix&, const CooMatrix&) = default;

private:
    Index n_rows_ = 0;
    Index n_cols_ = 0;
    std::vector<Index> row_;
    std::vector<Index> col_;
    std::vector<double> data_;
};

/// Sorts, sums duplicates and drops zeros. Throws InvalidArgument on an
/// out-of-bounds index.
CooMatrix canonicalize(std::vector<Triplet> entries, Index n_rows, Index n_cols);

/// Sequential y = A x accumulated in ascending entry order. This is the
/// correctness reference for every kernel.
DenseVector dense_spmv_oracle(const CooMatrix& a, std::span<const double> x);

/// Number of stored entries in each row.
std::vector<Index> row_nnz_histogram(const CooMatrix& a);

} // namespace spmvsel
