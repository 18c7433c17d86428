#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "spmvsel/coo.hpp"

namespace spmvsel {

/// The five benchmarked storage formats, in declaration (tie-break) order.
enum class FormatTag : std::uint8_t { Csr = 0, Csr5 = 1, Ell = 2, Sell = 3, Hyb = 4 };

inline constexpr std::size_t kNumFormats = 5;
inline constexpr std::array<FormatTag, kNumFormats> kAllFormats = {
    FormatTag::Csr, FormatTag::Csr5, FormatTag::Ell, FormatTag::Sell, FormatTag::Hyb};

std::string_view format_name(FormatTag tag) noexcept;
std::optional<FormatTag> parse_format(std::string_view name) noexcept;
constexpr std::size_t format_index(FormatTag tag) noexcept { return static_cast<std::size_t>(tag); }

struct CsrMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    std::vector<Index> ptr;  // n_rows + 1
    std::vector<Index> indices;
    std::vector<double> data;

    std::size_t nnz() const noexcept { return data.size(); }
};

/// CSR5: CSR whose nonzeros are cut into omega x sigma tiles.
///
/// Within a full tile the CSR-order entries fill column 0 top to bottom, then
/// column 1, and so on; `indices`, `data` and `bit_flag` store the tile grid
/// row-major (entry (r, c) at tile_base + r * omega + c). The trailing partial
/// tile keeps plain CSR order and is viewed as columns of sigma consecutive
/// entries.
struct Csr5Matrix {
    Index n_rows = 0;
    Index n_cols = 0;
    Index omega = 0;
    Index sigma = 0;
    Index num_tiles = 0;
    std::vector<Index> ptr;       // as CSR
    std::vector<Index> tile_ptr;  // num_tiles + 1; row of each tile's first entry
    std::vector<std::uint8_t> bit_flag;  // per stored entry
    std::vector<Index> y_off;     // num_tiles * omega
    std::vector<Index> seg_off;   // num_tiles * omega
    std::vector<Index> indices;
    std::vector<double> data;

    std::size_t nnz() const noexcept { return data.size(); }
    std::size_t tile_size() const noexcept { return std::size_t{omega} * sigma; }
    std::size_t tile_begin(Index t) const noexcept { return std::size_t{t} * tile_size(); }
    /// Entries stored in tile t (tile_size() except for the partial tail tile).
    std::size_t tile_length(Index t) const noexcept;
    bool is_full_tile(Index t) const noexcept { return tile_length(t) == tile_size(); }
    /// Entries in column j of tile t.
    std::size_t column_length(Index t, Index j) const noexcept;
    /// Stored position of grid cell (r, c) of tile t.
    std::size_t stored_position(Index t, Index r, Index c) const noexcept;
};

/// ELLPACK: row-major n_rows x k grid, nonzeros left-justified.
/// Padded slots repeat the row's last column index (0 for an empty row) and
/// hold 0.0.
struct EllMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    Index k = 0;
    std::vector<Index> row_nnz;
    std::vector<Index> indices;  // n_rows * k
    std::vector<double> data;    // n_rows * k

    std::size_t nnz() const noexcept;
    std::size_t slot(Index row, Index j) const noexcept { return std::size_t{row} * k + j; }
};

/// Sliced ELLPACK, optionally with sigma-window row sorting (SELL-C-sigma).
///
/// Slice s covers permuted rows [s*c, min((s+1)*c, n_rows)) and stores its
/// grid column-major: cell (i, j) at slice_offset[s] + j * rows_in_slice(s) + i.
/// perm[p] is the original row placed at permuted position p.
struct SellMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    Index c = 0;
    Index sigma = 0;
    std::vector<Index> slices;        // width of each slice
    std::vector<std::size_t> slice_offset;  // num_slices + 1
    std::vector<Index> perm;
    std::vector<Index> row_nnz;       // by permuted position
    std::vector<Index> indices;
    std::vector<double> data;

    Index num_slices() const noexcept { return static_cast<Index>(slices.size()); }
    Index rows_in_slice(Index s) const noexcept;
    std::size_t nnz() const noexcept;
    std::size_t cell(Index s, Index i, Index j) const noexcept {
        return slice_offset[s] + std::size_t{j} * rows_in_slice(s) + i;
    }
};

struct HybMatrix {
    EllMatrix ell;      // width = typical K (clamped to the longest row)
    CooMatrix coo_tail; // overflow entries, canonical

    Index n_rows() const noexcept { return ell.n_rows; }
    Index n_cols() const noexcept { return ell.n_cols; }
    std::size_t nnz() const noexcept { return ell.nnz() + coo_tail.nnz(); }
};

using FormatMatrix = std::variant<CsrMatrix, Csr5Matrix, EllMatrix, SellMatrix, HybMatrix>;

FormatTag tag_of(const FormatMatrix& m) noexcept;

/// Tuning parameters for the formats that have them.
struct FormatParams {
    Index csr5_omega = 4;
    Index csr5_sigma = 16;
    Index sell_c = 8;
    Index sell_sigma = 0;
};

CsrMatrix to_csr(const CooMatrix& a);
/// Throws ConversionError when omega or sigma is zero.
Csr5Matrix to_csr5(const CooMatrix& a, Index omega, Index sigma);
/// Throws ConversionError if the padded grid exceeds the 32-bit index range.
EllMatrix to_ell(const CooMatrix& a);
/// sigma == 0 gives plain SELL; otherwise sigma must be a multiple of c.
SellMatrix to_sell(const CooMatrix& a, Index c, Index sigma);
/// Largest K >= 1 such that more than a third of the rows hold >= K entries;
/// 1 when no K qualifies.
Index hyb_typical_k(std::span<const Index> row_nnz);
HybMatrix to_hyb(const CooMatrix& a);

FormatMatrix convert(const CooMatrix& a, FormatTag tag, const FormatParams& params = {});

CooMatrix to_coo(const CsrMatrix& m);
CooMatrix to_coo(const Csr5Matrix& m);
CooMatrix to_coo(const EllMatrix& m);
CooMatrix to_coo(const SellMatrix& m);
CooMatrix to_coo(const HybMatrix& m);
CooMatrix to_coo(const FormatMatrix& m);

} // namespace spmvsel
