#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spmvsel/coo.hpp"

namespace spmvsel {

inline constexpr std::size_t kNumFeatures = 8;
inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "n_rows", "n_cols", "nnz_frac", "nnz_min", "nnz_max", "nnz_avg", "nnz_std", "variation"};

/// Static structure-only matrix features, in model input order.
struct FeatureVector {
    double n_rows = 0;
    double n_cols = 0;
    double nnz_frac = 0;
    double nnz_min = 0;
    double nnz_max = 0;
    double nnz_avg = 0;
    double nnz_std = 0;
    /// Coefficient of variation of the per-row nonzero count.
    double variation = 0;

    std::array<double, kNumFeatures> values() const noexcept;
    static FeatureVector from_values(const std::array<double, kNumFeatures>& v) noexcept;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

using ScaledFeatures = std::array<double, kNumFeatures>;

struct ScalingParams {
    std::array<double, kNumFeatures> min{};
    std::array<double, kNumFeatures> max{};

    friend bool operator==(const ScalingParams&, const ScalingParams&) = default;
};

/// Throws InvalidArgument for a matrix with a zero dimension.
FeatureVector extract_features(const CooMatrix& a);

/// Per-feature extremes. Throws InvalidArgument on an empty list.
ScalingParams fit_scaling(std::span<const FeatureVector> features);
/// Min-max scaling clamped to [0, 1]; a constant feature maps to 0.
ScaledFeatures apply_scaling(const FeatureVector& f, const ScalingParams& p) noexcept;

struct NamedFeatures {
    std::string matrix_id;
    FeatureVector features;
};

void write_features(std::ostream& out, std::span<const NamedFeatures> rows);
std::vector<NamedFeatures> read_features(std::istream& in);
std::vector<NamedFeatures> read_features(const std::filesystem::path& path);

} // namespace spmvsel
