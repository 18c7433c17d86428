#include <numeric>

#include "detail.hpp"
#include "spmvsel/kernels.hpp"

namespace spmvsel {

void spmv_csr(const CsrMatrix& m, std::span<const double> x, std::span<double> y,
              ExecPolicy policy) {
    if (policy.is_parallel())
        omp::spmv_csr(m, x, y, policy.workers);
    else
        reference::spmv_csr(m, x, y);
}

void spmv_csr5(const Csr5Matrix& m, std::span<const double> x, std::span<double> y,
               ExecPolicy policy) {
    if (policy.is_parallel())
        omp::spmv_csr5(m, x, y, policy.workers);
    else
        reference::spmv_csr5(m, x, y);
}

void spmv_ell(const EllMatrix& m, std::span<const double> x, std::span<double> y,
              ExecPolicy policy) {
    if (policy.is_parallel())
        omp::spmv_ell(m, x, y, policy.workers);
    else
        reference::spmv_ell(m, x, y);
}

void spmv_sell(const SellMatrix& m, std::span<const double> x, std::span<double> y,
               ExecPolicy policy) {
    if (policy.is_parallel())
        omp::spmv_sell(m, x, y, policy.workers);
    else
        reference::spmv_sell(m, x, y);
}

void spmv_hyb(const HybMatrix& m, std::span<const double> x, std::span<double> y,
              ExecPolicy policy) {
    if (policy.is_parallel())
        omp::spmv_hyb(m, x, y, policy.workers);
    else
        reference::spmv_hyb(m, x, y);
}

void spmv(FormatTag tag, const FormatMatrix& m, std::span<const double> x, std::span<double> y,
          ExecPolicy policy) {
    if (tag != tag_of(m))
        throw InvalidArgument("spmv: tag '" + std::string(format_name(tag)) +
                              "' does not match a matrix held as '" +
                              std::string(format_name(tag_of(m))) + "'");
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, CsrMatrix>)
                spmv_csr(f, x, y, policy);
            else if constexpr (std::is_same_v<T, Csr5Matrix>)
                spmv_csr5(f, x, y, policy);
            else if constexpr (std::is_same_v<T, EllMatrix>)
                spmv_ell(f, x, y, policy);
            else if constexpr (std::is_same_v<T, SellMatrix>)
                spmv_sell(f, x, y, policy);
            else
                spmv_hyb(f, x, y, policy);
        },
        m);
}

DenseVector spmv(FormatTag tag, const FormatMatrix& m, std::span<const double> x,
                 ExecPolicy policy) {
    const Index n_rows = std::visit(
        [](const auto& f) -> Index {
            if constexpr (std::is_same_v<std::decay_t<decltype(f)>, HybMatrix>)
                return f.n_rows();
            else
                return f.n_rows;
        },
        m);
    DenseVector y(n_rows);
    spmv(tag, m, x, y, policy);
    return y;
}

namespace {

void add_row_blocks(std::vector<SpmvTask>& tasks, std::size_t n_rows, int workers) {
    const std::size_t block = detail::row_block(n_rows, workers);
    for (std::size_t b = 0; b < n_rows; b += block)
        tasks.push_back({TaskKind::RowBlock, b, std::min(b + block, n_rows)});
}

std::size_t ell_rows_nnz(const EllMatrix& m, std::size_t begin, std::size_t end) {
    return std::accumulate(m.row_nnz.begin() + static_cast<std::ptrdiff_t>(begin),
                           m.row_nnz.begin() + static_cast<std::ptrdiff_t>(end), std::size_t{0});
}

} // namespace

std::vector<SpmvTask> plan_tasks(const FormatMatrix& m, int workers) {
    std::vector<SpmvTask> tasks;
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, CsrMatrix> || std::is_same_v<T, EllMatrix>) {
                add_row_blocks(tasks, f.n_rows, workers);
            } else if constexpr (std::is_same_v<T, Csr5Matrix>) {
                for (std::size_t t = 0; t < f.num_tiles; ++t)
                    tasks.push_back({TaskKind::Tile, t, t + 1});
            } else if constexpr (std::is_same_v<T, SellMatrix>) {
                for (std::size_t s = 0; s < f.num_slices(); ++s)
                    tasks.push_back({TaskKind::Slice, s, s + 1});
            } else {
                add_row_blocks(tasks, f.n_rows(), workers);
                const std::size_t tail = f.coo_tail.nnz();
                for (std::size_t b = 0; b < tail; b += kTailChunk)
                    tasks.push_back({TaskKind::TailRange, b, std::min(b + kTailChunk, tail)});
            }
        },
        m);
    return tasks;
}

std::size_t task_nnz(const FormatMatrix& m, const SpmvTask& task) {
    return std::visit(
        [&](const auto& f) -> std::size_t {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, CsrMatrix>) {
                return f.ptr[task.end] - f.ptr[task.begin];
            } else if constexpr (std::is_same_v<T, EllMatrix>) {
                return ell_rows_nnz(f, task.begin, task.end);
            } else if constexpr (std::is_same_v<T, Csr5Matrix>) {
                std::size_t n = 0;
                for (auto t = task.begin; t < task.end; ++t)
                    n += f.tile_length(static_cast<Index>(t));
                return n;
            } else if constexpr (std::is_same_v<T, SellMatrix>) {
                std::size_t n = 0;
                for (auto s = task.begin; s < task.end; ++s) {
                    const std::size_t first = s * f.c;
                    n += std::accumulate(
                        f.row_nnz.begin() + static_cast<std::ptrdiff_t>(first),
                        f.row_nnz.begin() +
                            static_cast<std::ptrdiff_t>(first + f.rows_in_slice(static_cast<Index>(s))),
                        std::size_t{0});
                }
                return n;
            } else {
                if (task.kind == TaskKind::TailRange)
                    return task.end - task.begin;
                return ell_rows_nnz(f.ell, task.begin, task.end);
            }
        },
        m);
}

std::vector<Csr5Partial> csr5_tile_pass(const Csr5Matrix& m, std::span<const double> x,
                                        std::span<double> y, ExecPolicy policy) {
    detail::check_dims(m.n_rows, m.n_cols, x, y, "csr5_tile_pass");
    std::fill(y.begin(), y.end(), 0.0);
    std::vector<detail::TileStage> stages(m.num_tiles);
    const auto tiles = static_cast<std::int64_t>(m.num_tiles);
#pragma omp parallel num_threads(std::max(policy.workers, 1))
    {
        detail::TileScratch scratch;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t t = 0; t < tiles; ++t)
            detail::csr5_tile(m, static_cast<Index>(t), x, y, scratch, stages[t]);
    }
    std::vector<Csr5Partial> out;
    for (const auto& st : stages)
        for (unsigned i = 0; i < st.count; ++i)
            out.push_back(st.items[i]);
    return out;
}

} // namespace spmvsel
