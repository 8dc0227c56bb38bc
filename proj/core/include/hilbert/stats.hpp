#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hilbert {

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

/// Sample mean and standard error sd / sqrt(m); the error is 0 for m < 2.
MeanEstimate mean_estimate(std::span<const double> samples);

double mc_stderr(std::span<const double> samples);

/// Histogram on logarithmic bins [10^lo, 10^hi) with a fixed number of bins per
/// decade. Values outside the range land in underflow / overflow, so
/// total() always equals the total weight added.
class LogHistogram {
public:
    LogHistogram(int lo_decade, int hi_decade, int bins_per_decade);

    void add(double value, double weight = 1.0);
    void merge(const LogHistogram& other);

    std::size_t bins() const noexcept { return counts_.size(); }
    int lo_decade() const noexcept { return lo_; }
    int hi_decade() const noexcept { return hi_; }
    int bins_per_decade() const noexcept { return per_decade_; }
    double lower_edge(std::size_t i) const;
    double upper_edge(std::size_t i) const;
    /// Geometric bin centre.
    double center(std::size_t i) const;
    double count(std::size_t i) const { return counts_[i]; }
    /// Probability density estimate count / (total * width).
    double density(std::size_t i) const;
    double underflow() const noexcept { return underflow_; }
    double overflow() const noexcept { return overflow_; }
    double total() const noexcept;
    /// Empirical CDF evaluated at a bin's lower edge (exact at edges).
    double cdf_at_lower_edge(std::size_t i) const;

    void set_count(std::size_t i, double c) { counts_.at(i) = c; }

private:
    int lo_;
    int hi_;
    int per_decade_;
    std::vector<double> counts_;
    double underflow_ = 0.0;
    double overflow_ = 0.0;
};

LogHistogram log_binned_histogram(std::span<const double> values, int lo_decade, int hi_decade,
                                  int bins_per_decade);

struct LinearFit {
    double slope;
    double intercept;
    double slope_stderr;
};

/// Ordinary least squares y = a x + b; slope standard error from residuals.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct SlopeFit {
    double slope;
    double std_error;
    std::size_t bins_used;
    double mass_in_window;
};

/// Least-squares slope of log10(density) against log10(bin centre) over the
/// non-empty bins lying inside [window_lo, window_hi]. Throws InvalidArgument
/// when fewer than three bins qualify.
SlopeFit fit_loglog_slope(const LogHistogram& histogram, double window_lo, double window_hi);

/// sup_x |F_emp(x) - F(x)| for samples sorted ascending.
double ks_distance(std::span<const double> sorted_samples, const std::function<double(double)>& cdf);

}  // namespace hilbert
