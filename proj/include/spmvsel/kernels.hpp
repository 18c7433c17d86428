#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spmvsel/formats.hpp"

namespace spmvsel {

/// workers <= 1 runs the sequential reference kernels; larger values run the
/// OpenMP kernels with that many threads.
struct ExecPolicy {
    int workers = 1;

    static ExecPolicy sequential() { return {1}; }
    static ExecPolicy parallel(int workers) { return {workers}; }
    bool is_parallel() const noexcept { return workers > 1; }
};

enum class TaskKind : std::uint8_t { RowBlock, Slice, Tile, TailRange };

/// One unit of kernel work: a half-open range of rows, slices, tiles or HYB
/// tail entries depending on kind.
struct SpmvTask {
    TaskKind kind;
    std::size_t begin;
    std::size_t end;
};

/// Entries per HYB tail task. Fixed so the staging layout, and therefore the
/// result, does not depend on the worker count.
inline constexpr std::size_t kTailChunk = 4096;

/// The task decomposition the parallel kernels use.
std::vector<SpmvTask> plan_tasks(const FormatMatrix& m, int workers);
/// Stored nonzeros (padding excluded) a task touches.
std::size_t task_nnz(const FormatMatrix& m, const SpmvTask& task);

// y = A x into a caller-provided y of length n_rows. Throws InvalidArgument on
// dimension mismatch.
void spmv_csr(const CsrMatrix& m, std::span<const double> x, std::span<double> y,
              ExecPolicy policy = {});
void spmv_csr5(const Csr5Matrix& m, std::span<const double> x, std::span<double> y,
               ExecPolicy policy = {});
void spmv_ell(const EllMatrix& m, std::span<const double> x, std::span<double> y,
              ExecPolicy policy = {});
void spmv_sell(const SellMatrix& m, std::span<const double> x, std::span<double> y,
               ExecPolicy policy = {});
void spmv_hyb(const HybMatrix& m, std::span<const double> x, std::span<double> y,
              ExecPolicy policy = {});

/// Dispatch on the held format. Throws InvalidArgument if `tag` does not
/// match the alternative held by `m`.
void spmv(FormatTag tag, const FormatMatrix& m, std::span<const double> x, std::span<double> y,
          ExecPolicy policy = {});
DenseVector spmv(FormatTag tag, const FormatMatrix& m, std::span<const double> x,
                 ExecPolicy policy = {});

/// A row contribution a CSR5 tile could not finish on its own because the row
/// crosses a tile boundary.
struct Csr5Partial {
    Index tile;
    Index row;
    double sum;
};

/// Per-tile results of a CSR5 product: rows that live entirely inside a tile
/// are written to y, boundary rows are returned as staged partials in
/// ascending tile order. y is zeroed first.
std::vector<Csr5Partial> csr5_tile_pass(const Csr5Matrix& m, std::span<const double> x,
                                        std::span<double> y, ExecPolicy policy = {});

namespace reference {

// Straightforward single-threaded kernels. Bit-deterministic; the parallel
// kernels are tested against these.
void spmv_csr(const CsrMatrix& m, std::span<const double> x, std::span<double> y);
void spmv_csr5(const Csr5Matrix& m, std::span<const double> x, std::span<double> y);
void spmv_ell(const EllMatrix& m, std::span<const double> x, std::span<double> y);
void spmv_sell(const SellMatrix& m, std::span<const double> x, std::span<double> y);
void spmv_hyb(const HybMatrix& m, std::span<const double> x, std::span<double> y);

} // namespace reference

namespace omp {

void spmv_csr(const CsrMatrix& m, std::span<const double> x, std::span<double> y, int workers);
void spmv_csr5(const Csr5Matrix& m, std::span<const double> x, std::span<double> y, int workers);
void spmv_ell(const EllMatrix& m, std::span<const double> x, std::span<double> y, int workers);
void spmv_sell(const SellMatrix& m, std::span<const double> x, std::span<double> y, int workers);
void spmv_hyb(const HybMatrix& m, std::span<const double> x, std::span<double> y, int workers);

} // namespace omp

} // namespace spmvsel
