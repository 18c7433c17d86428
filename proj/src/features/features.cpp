#include "spmvsel/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "core/text.hpp"
#include "spmvsel/error.hpp"

namespace spmvsel {

std::array<double, kNumFeatures> FeatureVector::values() const noexcept {
    return {n_rows, n_cols, nnz_frac, nnz_min, nnz_max, nnz_avg, nnz_std, variation};
}

FeatureVector FeatureVector::from_values(const std::array<double, kNumFeatures>& v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

FeatureVector extract_features(const CooMatrix& a) {
    if (a.n_rows() == 0 || a.n_cols() == 0)
        throw InvalidArgument("extract_features: matrix has a zero dimension");
    const auto counts = row_nnz_histogram(a);
    const double n = static_cast<double>(a.n_rows());

    FeatureVector f;
    f.n_rows = static_cast<double>(a.n_rows());
    f.n_cols = static_cast<double>(a.n_cols());
    f.nnz_frac = static_cast<double>(a.nnz()) / (f.n_rows * f.n_cols);
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    f.nnz_min = *lo;
    f.nnz_max = *hi;
    f.nnz_avg = static_cast<double>(a.nnz()) / n;
    double sq = 0.0;
    for (Index c : counts)
        sq += (c - f.nnz_avg) * (c - f.nnz_avg);
    f.nnz_std = std::sqrt(sq / n);
    f.variation = f.nnz_avg > 0.0 ? f.nnz_std / f.nnz_avg : 0.0;
    return f;
}

ScalingParams fit_scaling(std::span<const FeatureVector> features) {
    if (features.empty())
        throw InvalidArgument("fit_scaling: no feature vectors");
    ScalingParams p;
    p.min = p.max = features.front().values();
    for (const auto& f : features) {
        const auto v = f.values();
        for (std::size_t i = 0; i < kNumFeatures; ++i) {
            p.min[i] = std::min(p.min[i], v[i]);
            p.max[i] = std::max(p.max[i], v[i]);
        }
    }
    return p;
}

ScaledFeatures apply_scaling(const FeatureVector& f, const ScalingParams& p) noexcept {
    const auto v = f.values();
    ScaledFeatures out{};
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
        const double range = p.max[i] - p.min[i];
        if (!(range > 0.0))
            continue;
        out[i] = std::clamp((v[i] - p.min[i]) / range, 0.0, 1.0);
    }
    return out;
}

void write_features(std::ostream& out, std::span<const NamedFeatures> rows) {
    for (const auto& row : rows) {
        out << "matrix_id:" << row.matrix_id;
        const auto v = row.features.values();
        for (std::size_t i = 0; i < kNumFeatures; ++i)
            out << ' ' << kFeatureNames[i] << ':' << text::format_double(v[i]);
        out << '\n';
    }
}

std::vector<NamedFeatures> read_features(std::istream& in) {
    std::vector<NamedFeatures> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::is_blank(line) || line[line.find_first_not_of(" \t")] == '#')
            continue;
        auto kv = text::parse_key_values(line);
        if (!kv || kv->size() != kNumFeatures + 1 || (*kv)[0].first != "matrix_id" ||
            (*kv)[0].second.empty())
            throw ParseError(line_no, "expected matrix_id followed by the 8 named features");
        NamedFeatures row;
        row.matrix_id = std::string((*kv)[0].second);
        std::array<double, kNumFeatures> v{};
        for (std::size_t i = 0; i < kNumFeatures; ++i) {
            const auto& [key, value] = (*kv)[i + 1];
            if (key != kFeatureNames[i])
                throw ParseError(line_no, "expected feature '" + std::string(kFeatureNames[i]) +
                                              "', found '" + std::string(key) + "'");
            auto d = text::parse_double(value);
            if (!d || !std::isfinite(*d))
                throw ParseError(line_no, "bad value for " + std::string(key));
            v[i] = *d;
        }
        row.features = FeatureVector::from_values(v);
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<NamedFeatures> read_features(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    return read_features(in);
}

} // namespace spmvsel
