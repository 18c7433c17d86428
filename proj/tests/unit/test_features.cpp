#include <doctest.h>

#include <cmath>
#include <sstream>

#include "spmvsel/error.hpp"
#include "spmvsel/features.hpp"
#include "support/generators.hpp"

using namespace spmvsel;

TEST_CASE("features of the running example") {
    const FeatureVector f = extract_features(testgen::running_example());
    CHECK(f.n_rows == 4);
    CHECK(f.n_cols == 4);
    CHECK(f.nnz_frac == 0.5);
    CHECK(f.nnz_min == 1);
    CHECK(f.nnz_max == 3);
    CHECK(f.nnz_avg == 2.0);
    CHECK(f.nnz_std == std::sqrt(0.5));
    CHECK(f.variation == std::sqrt(0.5) / 2);
}

TEST_CASE("features of edge shapes") {
    const FeatureVector e = extract_features(CooMatrix(3, 7));
    CHECK(e.nnz_frac == 0);
    CHECK(e.nnz_max == 0);
    CHECK(e.variation == 0);
    const FeatureVector u = extract_features(canonicalize({{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}, 3, 3));
    CHECK(u.nnz_std == 0);
    CHECK(u.variation == 0);
    CHECK_THROWS_AS(extract_features(CooMatrix(0, 3)), InvalidArgument);
}

TEST_CASE("features match a direct recomputation on random matrices") {
    testgen::Gen g(12);
    for (int i = 0; i < 50; ++i) {
        const CooMatrix a = testgen::random_matrix(g);
        std::vector<double> len(a.n_rows(), 0.0);
        for (auto r : a.row())
            len[r] += 1;
        double sum = 0, mn = 1e300, mx = 0;
        for (double l : len) {
            sum += l;
            mn = std::min(mn, l);
            mx = std::max(mx, l);
        }
        const double avg = sum / len.size();
        double ss = 0;
        for (double l : len)
            ss += (l - avg) * (l - avg);
        const FeatureVector f = extract_features(a);
        CHECK(f.nnz_min == mn);
        CHECK(f.nnz_max == mx);
        CHECK(f.nnz_avg == doctest::Approx(avg).epsilon(1e-14));
        CHECK(f.nnz_std == doctest::Approx(std::sqrt(ss / len.size())).epsilon(1e-12));
        CHECK(f.nnz_frac == doctest::Approx(sum / (double(a.n_rows()) * a.n_cols())).epsilon(1e-14));
    }
}

TEST_CASE("scaling maps the fitting corpus into [0, 1] and clamps outsiders") {
    testgen::Gen g(13);
    std::vector<FeatureVector> fs;
    for (int i = 0; i < 40; ++i)
        fs.push_back(extract_features(testgen::random_matrix(g)));
    const ScalingParams p = fit_scaling(fs);
    for (const auto& f : fs)
        for (double v : apply_scaling(f, p)) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    FeatureVector huge = fs[0];
    huge.n_rows = 1e9;
    CHECK(apply_scaling(huge, p)[0] == 1.0);

    std::vector<FeatureVector> same(3, fs[0]);
    for (double v : apply_scaling(fs[0], fit_scaling(same)))
        CHECK(v == 0.0);
    CHECK_THROWS_AS(fit_scaling(std::vector<FeatureVector>{}), InvalidArgument);
}

TEST_CASE("feature file round trip and errors") {
    testgen::Gen g(14);
    std::vector<NamedFeatures> rows;
    for (int i = 0; i < 10; ++i)
        rows.push_back({"m" + std::to_string(i), extract_features(testgen::random_matrix(g))});
    std::stringstream s;
    write_features(s, rows);
    const auto back = read_features(s);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].matrix_id == rows[i].matrix_id);
        CHECK(back[i].features == rows[i].features);
    }
    std::istringstream bad("matrix_id:a n_rows:1 n_cols:1\n");
    CHECK_THROWS_AS(read_features(bad), ParseError);
}
