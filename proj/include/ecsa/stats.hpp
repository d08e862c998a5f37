#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace ecsa::stats {

struct Summary {
    double mean;
    double std; // sample standard deviation (n - 1 denominator)
};

/// Throws std::invalid_argument for fewer than two values.
Summary summarize(std::span<const double> values);

/// Largest per-side sample size for which rank_sum_p enumerates exactly.
inline constexpr std::size_t kExactLimit = 10;

/// Two-sided Wilcoxon-Mann-Whitney rank-sum p-value with midranks for ties.
/// Exact when both samples have at most kExactLimit values, otherwise the
/// tie- and continuity-corrected normal approximation. Symmetric in (a, b).
double rank_sum_p(std::span<const double> a, std::span<const double> b);

/// Exact permutation p-value: the share of all C(n+m, n) splits of the pooled
/// midranks whose rank sum lies at least as far from its mean as the observed
/// one. Cost grows with n * m * (n + m)^2; intended for small samples.
double rank_sum_p_exact(std::span<const double> a, std::span<const double> b);

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction; returns 1 when every value is tied.
double rank_sum_p_normal(std::span<const double> a, std::span<const double> b);

enum class Verdict { comparable, significantly_different };

/// significantly_different iff p < level.
Verdict decide(double p, double level = 0.05);

std::string_view to_string(Verdict v) noexcept;

} // namespace ecsa::stats
