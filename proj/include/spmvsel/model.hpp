#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spmvsel/bench.hpp"
#include "spmvsel/features.hpp"
#include "spmvsel/formats.hpp"

namespace spmvsel {

struct LabeledSample {
    std::string matrix_id;
    ScaledFeatures features{};
    FormatTag label = FormatTag::Csr;
};

using ClassCounts = std::array<std::uint32_t, kNumFormats>;

/// A tree node: either a split (x[feature] <= threshold goes left) or a leaf.
struct TreeNode {
    bool leaf = true;
    std::uint32_t feature = 0;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    FormatTag label = FormatTag::Csr;
    ClassCounts counts{};

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeParams {
    std::size_t max_depth = 8;
    std::size_t min_samples_leaf = 3;

    friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// Axis-aligned binary classification tree over scaled features, bundled
/// with the scaling it was trained under. Nodes are stored in pre-order with
/// the root at index 0.
struct DecisionTreeModel {
    std::vector<TreeNode> nodes;
    TreeParams params;
    ScalingParams scaling;

    /// Index of the leaf reached by an already-scaled vector.
    std::size_t leaf_for(const ScaledFeatures& x) const;
    FormatTag predict_scaled(const ScaledFeatures& x) const { return nodes[leaf_for(x)].label; }
    std::size_t depth() const;

    friend bool operator==(const DecisionTreeModel&, const DecisionTreeModel&) = default;
};

/// Scaling that leaves [0, 1] features untouched.
ScalingParams identity_scaling();

struct Split {
    std::uint32_t feature = 0;
    double threshold = 0.0;
};

/// Best Gini split of the selected samples, each side keeping at least
/// min_samples_leaf samples. Ties go to the lower feature, then the lower
/// threshold. nullopt when no admissible split exists.
std::optional<Split> find_best_split(std::span<const LabeledSample> samples,
                                     std::span<const std::size_t> subset,
                                     std::size_t min_samples_leaf);

/// Majority class, ties broken by format declaration order.
FormatTag majority_label(const ClassCounts& counts);

/// Greedy CART-style training minimizing weighted Gini impurity. Fully
/// deterministic. Throws ModelError on an empty sample list.
DecisionTreeModel train_tree(std::span<const LabeledSample> samples, TreeParams params,
                             const ScalingParams& scaling = identity_scaling());

/// Scales with the model's stored parameters (clamped) then descends.
FormatTag predict(const DecisionTreeModel& model, const FeatureVector& f);

/// A matrix's raw features joined with its benchmark outcome.
struct TrainingRow {
    std::string matrix_id;
    FeatureVector features;
    FormatTag label = FormatTag::Csr;
    /// Mean time per format; infinity where the format failed or was not run.
    std::array<double, kNumFormats> times{};
};

struct JoinResult {
    std::vector<TrainingRow> rows;
    std::vector<std::string> diagnostics;
};

/// Joins bench records (label source) with feature rows by matrix id, in
/// record order. Ids present on only one side are reported and dropped.
JoinResult join_training_data(std::span<const BenchRecord> records,
                              std::span<const NamedFeatures> features);

struct TrainingSet {
    std::vector<LabeledSample> samples;
    ScalingParams scaling;
};

/// Fits scaling on rows[train_indices] only, then scales every row.
TrainingSet assemble_training_set(std::span<const TrainingRow> rows,
                                  std::span<const std::size_t> train_indices);
TrainingSet assemble_training_set(std::span<const TrainingRow> rows);

/// Scaling fitted on all rows, then train_tree on all of them.
DecisionTreeModel train_model(std::span<const TrainingRow> rows, TreeParams params);

struct CvReport {
    std::vector<std::size_t> fold_sizes;
    std::vector<double> fold_accuracy;
    std::vector<double> fold_perf_ratio;
    /// confusion[true][predicted], pooled over every fold and repeat.
    std::array<std::array<std::size_t, kNumFormats>, kNumFormats> confusion{};
    /// Mean best/achieved time ratio had one fixed format been used everywhere.
    std::array<double, kNumFormats> baseline_ratio{};
    std::size_t tested = 0;
    double correct = 0;
    double ratio_sum = 0;

    double accuracy() const noexcept { return tested ? correct / double(tested) : 0.0; }
    double perf_ratio() const noexcept { return tested ? ratio_sum / double(tested) : 0.0; }
    FormatTag best_baseline() const noexcept;
};

/// best_time / time(predicted); 0 when the predicted format has no timing.
double performance_ratio(const TrainingRow& row, FormatTag predicted);

/// Seeded shuffle of 0..n-1 cut into k near-equal contiguous folds.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k, std::uint64_t seed);

/// k-fold cross-validation; scaling is refit on each training portion.
/// `repeats` > 1 reruns with seeds seed, seed+1, ... and pools the results.
/// Throws InvalidArgument when k < 2 or k exceeds the row count.
CvReport cross_validate(std::span<const TrainingRow> rows, std::size_t k, std::uint64_t seed,
                        TreeParams params, std::size_t repeats = 1);

struct Selection {
    FormatTag tag;
    FormatMatrix matrix;
};

/// Runtime deployment: features, scaling, prediction and conversion.
Selection select_format(const CooMatrix& a, const DecisionTreeModel& model,
                        const FormatParams& params = {});

/// Versioned text format; doubles round-trip bit-exactly.
void write_model(std::ostream& out, const DecisionTreeModel& model);
void write_model(const std::filesystem::path& path, const DecisionTreeModel& model);
/// Throws ModelError (with a line number) on any malformed input.
DecisionTreeModel read_model(std::istream& in);
DecisionTreeModel read_model(const std::filesystem::path& path);

} // namespace spmvsel
