#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "spmvsel/bench.hpp"

namespace spmvsel::testgen {

/// Every repetition takes the same time.
class ConstantClock final : public RepClock {
public:
    explicit ConstantClock(double seconds) : seconds_(seconds) {}
    double time_rep(const TimingContext&, const std::function<void()>&) override {
        ++calls;
        return seconds_;
    }
    double resolution() const override { return 1e-12; }
    std::size_t calls = 0;

private:
    double seconds_;
};

/// Timed repetitions alternate a, b, a, b, ...; warmups return a.
class AlternatingClock final : public RepClock {
public:
    AlternatingClock(double a, double b) : a_(a), b_(b) {}
    double time_rep(const TimingContext& ctx, const std::function<void()>&) override {
        if (ctx.warmup)
            return a_;
        return ctx.rep % 2 == 0 ? a_ : b_;
    }
    double resolution() const override { return 1e-12; }

private:
    double a_, b_;
};

/// Fixed seconds per format, scaled per matrix id; runs the kernel body so
/// the SpMV path is exercised.
class TableClock final : public RepClock {
public:
    std::map<FormatTag, double> per_format;
    std::map<std::string, double> per_matrix_scale;
    bool run_body = true;

    double time_rep(const TimingContext& ctx, const std::function<void()>& body) override {
        if (run_body)
            body();
        double t = per_format.count(ctx.format) ? per_format.at(ctx.format) : 1.0;
        auto it = per_matrix_scale.find(std::string(ctx.matrix_id));
        return it == per_matrix_scale.end() ? t : t * it->second;
    }
    double resolution() const override { return 1e-12; }
};

/// Independent Student-t quantile: Simpson integration of the density and
/// bisection on the CDF. Only used to check the library's t_critical.
inline double t_quantile_oracle(double p, double dof) {
    const double c = std::exp(std::lgamma((dof + 1) / 2) - std::lgamma(dof / 2)) / std::sqrt(dof * M_PI);
    auto pdf = [&](double t) { return c * std::pow(1 + t * t / dof, -(dof + 1) / 2); };
    auto cdf = [&](double x) {
        const int n = 20000;
        const double h = x / n;
        double s = pdf(0) + pdf(x);
        for (int i = 1; i < n; ++i)
            s += (i % 2 ? 4 : 2) * pdf(i * h);
        return 0.5 + s * h / 3;
    };
    double lo = 0, hi = 1;
    while (cdf(hi) < p)
        hi *= 2;
    for (int i = 0; i < 80; ++i) {
        const double mid = (lo + hi) / 2;
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

/// Offline replay of the stopping rule for a fixed timing sequence.
inline std::size_t simulate_stopping(const std::function<double(std::size_t)>& timing,
                                     std::size_t min_reps, std::size_t max_reps, double level,
                                     double gap) {
    std::vector<double> xs;
    while (xs.size() < max_reps) {
        xs.push_back(timing(xs.size()));
        const std::size_t n = xs.size();
        if (n < min_reps)
            continue;
        double mean = 0;
        for (double x : xs)
            mean += x;
        mean /= n;
        double ss = 0;
        for (double x : xs)
            ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / (n - 1));
        const double width = 2 * t_quantile_oracle((1 + level) / 2, n - 1) * sd / std::sqrt(double(n));
        if (width / mean < gap)
            break;
    }
    return xs.size();
}

} // namespace spmvsel::testgen
