#include <algorithm>
#include <functional>

#include "spmvsel/error.hpp"
#include "spmvsel/model.hpp"

namespace spmvsel {
namespace {

using Wide = unsigned __int128;

// Weighted Gini impurity is minimized where SL/nL + SR/nR is maximized, SX
// being the sum of squared class counts of a side. Kept as an exact fraction.
struct Score {
    std::uint64_t num = 0;  // SL*nR + SR*nL
    std::uint64_t den = 1;  // nL*nR

    bool better_than(const Score& o) const {
        return Wide{num} * o.den > Wide{o.num} * den;
    }
};

std::uint64_t sum_squares(const ClassCounts& c) {
    std::uint64_t s = 0;
    for (auto v : c)
        s += std::uint64_t{v} * v;
    return s;
}

ClassCounts count_labels(std::span<const LabeledSample> samples, std::span<const std::size_t> subset) {
    ClassCounts c{};
    for (auto i : subset)
        ++c[format_index(samples[i].label)];
    return c;
}

} // namespace

ScalingParams identity_scaling() {
    ScalingParams p;
    p.min.fill(0.0);
    p.max.fill(1.0);
    return p;
}

FormatTag majority_label(const ClassCounts& counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumFormats; ++c)
        if (counts[c] > counts[best])
            best = c;
    return static_cast<FormatTag>(best);
}

std::optional<Split> find_best_split(std::span<const LabeledSample> samples,
                                     std::span<const std::size_t> subset,
                                     std::size_t min_samples_leaf) {
    const std::size_t n = subset.size();
    const std::size_t min_leaf = std::max<std::size_t>(min_samples_leaf, 1);
    if (n < 2 * min_leaf)
        return std::nullopt;
    const ClassCounts total = count_labels(samples, subset);

    std::optional<Split> best;
    Score best_score;
    std::vector<std::pair<double, std::size_t>> column(n);
    for (std::uint32_t f = 0; f < kNumFeatures; ++f) {
        for (std::size_t i = 0; i < n; ++i)
            column[i] = {samples[subset[i]].features[f], format_index(samples[subset[i]].label)};
        std::sort(column.begin(), column.end());

        ClassCounts left{};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            ++left[column[i].second];
            const double lo = column[i].first;
            const double hi = column[i + 1].first;
            if (lo == hi)
                continue;
            const std::size_t n_left = i + 1;
            const std::size_t n_right = n - n_left;
            if (n_left < min_leaf || n_right < min_leaf)
                continue;
            ClassCounts right{};
            for (std::size_t c = 0; c < kNumFormats; ++c)
                right[c] = total[c] - left[c];
            const Score score{sum_squares(left) * n_right + sum_squares(right) * n_left,
                              std::uint64_t{n_left} * n_right};
            if (!best || score.better_than(best_score)) {
                double threshold = lo + (hi - lo) / 2.0;
                if (!(threshold < hi))
                    threshold = lo;
                best = Split{f, threshold};
                best_score = score;
            }
        }
    }
    return best;
}

std::size_t DecisionTreeModel::leaf_for(const ScaledFeatures& x) const {
    std::size_t i = 0;
    while (!nodes[i].leaf)
        i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
    return i;
}

std::size_t DecisionTreeModel::depth() const {
    if (nodes.empty())
        return 0;
    std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
        if (nodes[i].leaf)
            return 0;
        return 1 + std::max(walk(nodes[i].left), walk(nodes[i].right));
    };
    return walk(0);
}

DecisionTreeModel train_tree(std::span<const LabeledSample> samples, TreeParams params,
                             const ScalingParams& scaling) {
    if (samples.empty())
        throw ModelError("train_tree: no training samples");
    DecisionTreeModel model;
    model.params = params;
    model.scaling = scaling;

    std::function<std::uint32_t(std::vector<std::size_t>, std::size_t)> grow =
        [&](std::vector<std::size_t> subset, std::size_t depth) -> std::uint32_t {
        const auto id = static_cast<std::uint32_t>(model.nodes.size());
        TreeNode leaf;
        leaf.counts = count_labels(samples, subset);
        leaf.label = majority_label(leaf.counts);
        model.nodes.push_back(leaf);

        const auto classes = std::count_if(leaf.counts.begin(), leaf.counts.end(),
                                           [](std::uint32_t c) { return c > 0; });
        if (classes <= 1 || depth >= params.max_depth)
            return id;
        const auto split = find_best_split(samples, subset, params.min_samples_leaf);
        if (!split)
            return id;

        std::vector<std::size_t> left, right;
        for (auto i : subset)
            (samples[i].features[split->feature] <= split->threshold ? left : right).push_back(i);
        subset.clear();
        subset.shrink_to_fit();

        const std::uint32_t l = grow(std::move(left), depth + 1);
        const std::uint32_t r = grow(std::move(right), depth + 1);
        TreeNode& node = model.nodes[id];
        node = TreeNode{};
        node.leaf = false;
        node.feature = split->feature;
        node.threshold = split->threshold;
        node.left = l;
        node.right = r;
        return id;
    };

    std::vector<std::size_t> all(samples.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    grow(std::move(all), 0);
    return model;
}

FormatTag predict(const DecisionTreeModel& model, const FeatureVector& f) {
    return model.predict_scaled(apply_scaling(f, model.scaling));
}

} // namespace spmvsel
