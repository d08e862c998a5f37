#include "ecsa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ecsa::stats {

Summary summarize(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("summarize: need at least two values");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return Summary{mean, std::sqrt(ss / (n - 1.0))};
}

namespace {

struct Ranking {
    std::vector<std::int64_t> doubled; // 2 x midrank of every pooled value, `a` first
    std::int64_t tie_term = 0;         // sum over tie groups of t^3 - t
};

Ranking rank_pooled(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank_sum: both samples must be non-empty");
    const std::size_t total = a.size() + b.size();
    std::vector<double> pooled;
    pooled.reserve(total);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    for (double v : pooled) {
        if (std::isnan(v)) throw std::invalid_argument("rank_sum: NaN in sample");
    }

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

    Ranking r;
    r.doubled.assign(total, 0);
    for (std::size_t start = 0; start < total;) {
        std::size_t end = start + 1;
        while (end < total && pooled[order[end]] == pooled[order[start]]) ++end;
        // positions start+1 .. end share midrank (start + 1 + end) / 2
        const auto doubled = static_cast<std::int64_t>(start + 1 + end);
        for (std::size_t k = start; k < end; ++k) r.doubled[order[k]] = doubled;
        const auto t = static_cast<std::int64_t>(end - start);
        r.tie_term += t * t * t - t;
        start = end;
    }
    return r;
}

} // namespace

double rank_sum_p_exact(std::span<const double> a, std::span<const double> b) {
    const Ranking r = rank_pooled(a, b);
    const std::size_t n = a.size();
    const std::size_t total = r.doubled.size();

    std::int64_t observed = 0;
    for (std::size_t i = 0; i < n; ++i) observed += r.doubled[i];
    const auto centre = static_cast<std::int64_t>(n * (total + 1)); // doubled expected rank sum
    const std::int64_t distance = std::abs(observed - centre);

    // ways[k][s]: subsets of size k among the items seen so far with doubled rank sum s.
    const auto max_sum = static_cast<std::size_t>(std::accumulate(r.doubled.begin(), r.doubled.end(), std::int64_t{0}));
    std::vector<std::vector<double>> ways(n + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t item = 0; item < total; ++item) {
        const auto w = static_cast<std::size_t>(r.doubled[item]);
        for (std::size_t k = std::min(n, item + 1); k >= 1; --k) {
            auto& dst = ways[k];
            const auto& src = ways[k - 1];
            for (std::size_t s = max_sum; s >= w; --s) dst[s] += src[s - w];
        }
    }

    double extreme = 0.0, all = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
        const double c = ways[n][s];
        if (c == 0.0) continue;
        all += c;
        if (std::abs(static_cast<std::int64_t>(s) - centre) >= distance) extreme += c;
    }
    return extreme / all;
}

double rank_sum_p_normal(std::span<const double> a, std::span<const double> b) {
    const Ranking r = rank_pooled(a, b);
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    const double total = n + m;

    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) w += static_cast<double>(r.doubled[i]);
    w /= 2.0;

    const double mean = n * (total + 1.0) / 2.0;
    const double variance =
        n * m / 12.0 * ((total + 1.0) - static_cast<double>(r.tie_term) / (total * (total - 1.0)));
    if (!(variance > 0.0)) return 1.0;
    const double z = std::max(0.0, std::abs(w - mean) - 0.5) / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double rank_sum_p(std::span<const double> a, std::span<const double> b) {
    if (a.size() <= kExactLimit && b.size() <= kExactLimit) {
        // Enumerate over the smaller side so the result does not depend on argument order.
        return a.size() <= b.size() ? rank_sum_p_exact(a, b) : rank_sum_p_exact(b, a);
    }
    return rank_sum_p_normal(a, b);
}

Verdict decide(double p, double level) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("decide: level must lie in (0, 1)");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("decide: p must lie in [0, 1]");
    return p < level ? Verdict::significantly_different : Verdict::comparable;
}

std::string_view to_string(Verdict v) noexcept {
    return v == Verdict::comparable ? "comparable" : "significantly_different";
}

} // namespace ecsa::stats
