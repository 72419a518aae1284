#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gq {

double mean(std::span<const double> xs);
/// Sample variance (n - 1 denominator).
double sample_variance(std::span<const double> xs);
double median(std::span<const double> xs);

/// Quantile by linear interpolation between closest ranks: position
/// h = (n - 1) p on the sorted sample (Hyndman-Fan type 7). Throws
/// EmptyDataset.
double quantile(std::span<const double> xs, double p);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with df degrees of freedom (df may be
/// fractional).
double t_cdf(double t, double df);

enum class TTest { Welch, Student };

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    /// Two-sided.
    double p = 1.0;
};

/// Independent two-sample t test. Throws InsufficientData when either
/// sample has fewer than 2 values.
TTestResult t_test(std::span<const double> a, std::span<const double> b,
                   TTest kind = TTest::Welch);

struct TimeStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double lower_fence = 0.0;
    double upper_fence = 0.0;
    /// Values outside [lower_fence, upper_fence], in input order.
    std::vector<double> outliers;
};

/// Throws EmptyDataset on empty input and InvalidArgument on a
/// non-positive time.
TimeStats time_stats(std::span<const double> seconds);

/// Seconds rounded to the nearest whole second as m:ss, e.g. 193 -> "3:13".
std::string format_mss(double seconds);
/// "m:ss" -> seconds. Throws InvalidArgument.
double parse_mss(std::string_view text);

}  // namespace gq
