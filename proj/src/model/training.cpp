#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "spmvsel/error.hpp"
#include "spmvsel/model.hpp"

namespace spmvsel {

JoinResult join_training_data(std::span<const BenchRecord> records,
                              std::span<const NamedFeatures> features) {
    JoinResult out;
    std::map<std::string, const FeatureVector*> by_id;
    for (const auto& f : features) {
        if (!by_id.try_emplace(f.matrix_id, &f.features).second)
            out.diagnostics.push_back(f.matrix_id + ": duplicate feature row ignored");
    }

    std::vector<std::string> order;
    std::map<std::string, std::vector<BenchRecord>> grouped;
    for (const auto& r : records) {
        auto [it, inserted] = grouped.try_emplace(r.matrix_id);
        if (inserted)
            order.push_back(r.matrix_id);
        it->second.push_back(r);
    }

    for (const auto& id : order) {
        const auto& recs = grouped[id];
        const auto label = best_format(recs);
        if (!label) {
            out.diagnostics.push_back(id + ": no successful bench record, excluded");
            continue;
        }
        const auto f = by_id.find(id);
        if (f == by_id.end()) {
            out.diagnostics.push_back(id + ": bench records but no features, excluded");
            continue;
        }
        TrainingRow row;
        row.matrix_id = id;
        row.features = *f->second;
        row.label = *label;
        row.times.fill(std::numeric_limits<double>::infinity());
        for (const auto& r : recs)
            if (r.converted_ok)
                row.times[format_index(r.format)] = r.mean_time;
        out.rows.push_back(std::move(row));
    }
    for (const auto& [id, _] : by_id)
        if (!grouped.count(id))
            out.diagnostics.push_back(id + ": features but no bench records, excluded");
    return out;
}

TrainingSet assemble_training_set(std::span<const TrainingRow> rows,
                                  std::span<const std::size_t> train_indices) {
    std::vector<FeatureVector> train;
    train.reserve(train_indices.size());
    for (auto i : train_indices)
        train.push_back(rows[i].features);
    TrainingSet set;
    set.scaling = fit_scaling(train);
    set.samples.reserve(rows.size());
    for (const auto& r : rows)
        set.samples.push_back({r.matrix_id, apply_scaling(r.features, set.scaling), r.label});
    return set;
}

TrainingSet assemble_training_set(std::span<const TrainingRow> rows) {
    std::vector<std::size_t> all(rows.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    return assemble_training_set(rows, all);
}

DecisionTreeModel train_model(std::span<const TrainingRow> rows, TreeParams params) {
    if (rows.empty())
        throw ModelError("train_model: no training rows");
    const TrainingSet set = assemble_training_set(rows);
    return train_tree(set.samples, params, set.scaling);
}

double performance_ratio(const TrainingRow& row, FormatTag predicted) {
    const double best = *std::min_element(row.times.begin(), row.times.end());
    const double got = row.times[format_index(predicted)];
    if (!std::isfinite(got) || !(got > 0.0))
        return 0.0;
    return best / got;
}

FormatTag CvReport::best_baseline() const noexcept {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumFormats; ++c)
        if (baseline_ratio[c] > baseline_ratio[best])
            best = c;
    return static_cast<FormatTag>(best);
}

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2 || k > n)
        throw InvalidArgument("make_folds: need 2 <= k <= " + std::to_string(n) + ", got " +
                              std::to_string(k));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    // Fisher-Yates on raw engine output; std::shuffle and the standard
    // distributions are not reproducible across library implementations.
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(perm[i - 1], perm[j]);
    }
    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t f = 0; f < k; ++f)
        folds[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(f * n / k),
                        perm.begin() + static_cast<std::ptrdiff_t>((f + 1) * n / k));
    return folds;
}

CvReport cross_validate(std::span<const TrainingRow> rows, std::size_t k, std::uint64_t seed,
                        TreeParams params, std::size_t repeats) {
    if (k < 2 || k > rows.size())
        throw InvalidArgument("cross_validate: need 2 <= k <= " + std::to_string(rows.size()) +
                              ", got k=" + std::to_string(k));
    CvReport report;
    std::array<double, kNumFormats> baseline_sum{};
    for (std::size_t rep = 0; rep < std::max<std::size_t>(repeats, 1); ++rep) {
        const auto folds = make_folds(rows.size(), k, seed + rep);
        for (std::size_t f = 0; f < k; ++f) {
            std::vector<std::size_t> train;
            for (std::size_t g = 0; g < k; ++g)
                if (g != f)
                    train.insert(train.end(), folds[g].begin(), folds[g].end());
            std::sort(train.begin(), train.end());

            const TrainingSet set = assemble_training_set(rows, train);
            std::vector<LabeledSample> train_samples;
            train_samples.reserve(train.size());
            for (auto i : train)
                train_samples.push_back(set.samples[i]);
            const DecisionTreeModel model = train_tree(train_samples, params, set.scaling);

            std::size_t correct = 0;
            double ratio = 0.0;
            for (auto i : folds[f]) {
                const FormatTag predicted = model.predict_scaled(set.samples[i].features);
                const FormatTag truth = rows[i].label;
                ++report.confusion[format_index(truth)][format_index(predicted)];
                correct += predicted == truth ? 1 : 0;
                ratio += performance_ratio(rows[i], predicted);
                for (auto tag : kAllFormats)
                    baseline_sum[format_index(tag)] += performance_ratio(rows[i], tag);
            }
            const double size = static_cast<double>(folds[f].size());
            report.fold_sizes.push_back(folds[f].size());
            report.fold_accuracy.push_back(folds[f].empty() ? 0.0 : correct / size);
            report.fold_perf_ratio.push_back(folds[f].empty() ? 0.0 : ratio / size);
            report.tested += folds[f].size();
            report.correct += static_cast<double>(correct);
            report.ratio_sum += ratio;
        }
    }
    for (std::size_t c = 0; c < kNumFormats; ++c)
        report.baseline_ratio[c] = report.tested ? baseline_sum[c] / double(report.tested) : 0.0;
    return report;
}

Selection select_format(const CooMatrix& a, const DecisionTreeModel& model,
                        const FormatParams& params) {
    const FormatTag tag = predict(model, extract_features(a));
    return {tag, convert(a, tag, params)};
}

} // namespace spmvsel
