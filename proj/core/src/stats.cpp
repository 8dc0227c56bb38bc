#include "hilbert/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hilbert/errors.hpp"

namespace hilbert {

MeanEstimate mean_estimate(std::span<const double> samples) {
    MeanEstimate e;
    e.count = samples.size();
    if (samples.empty()) return e;
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double v : samples) {
        ++k;
        const double delta = v - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (v - mean);
    }
    e.mean = mean;
    if (k >= 2) e.std_error = std::sqrt(std::max(m2, 0.0) / static_cast<double>(k - 1) / static_cast<double>(k));
    return e;
}

double mc_stderr(std::span<const double> samples) { return mean_estimate(samples).std_error; }

LogHistogram::LogHistogram(int lo_decade, int hi_decade, int bins_per_decade)
    : lo_(lo_decade), hi_(hi_decade), per_decade_(bins_per_decade) {
    if (hi_decade <= lo_decade) throw InvalidArgument("histogram needs hi_decade > lo_decade");
    if (bins_per_decade < 1) throw InvalidArgument("histogram needs at least one bin per decade");
    counts_.assign(static_cast<std::size_t>((hi_ - lo_) * per_decade_), 0.0);
}

void LogHistogram::add(double value, double weight) {
    if (!(value > 0.0)) {
        underflow_ += weight;
        return;
    }
    const double pos = (std::log10(value) - lo_) * per_decade_;
    if (pos < 0.0) {
        underflow_ += weight;
    } else if (pos >= static_cast<double>(counts_.size())) {
        overflow_ += weight;
    } else {
        counts_[static_cast<std::size_t>(pos)] += weight;
    }
}

void LogHistogram::merge(const LogHistogram& other) {
    if (other.lo_ != lo_ || other.hi_ != hi_ || other.per_decade_ != per_decade_) {
        throw InvalidArgument("cannot merge histograms with different binning");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
}

double LogHistogram::lower_edge(std::size_t i) const {
    return std::pow(10.0, lo_ + static_cast<double>(i) / per_decade_);
}

double LogHistogram::upper_edge(std::size_t i) const {
    return std::pow(10.0, lo_ + static_cast<double>(i + 1) / per_decade_);
}

double LogHistogram::center(std::size_t i) const {
    return std::pow(10.0, lo_ + (static_cast<double>(i) + 0.5) / per_decade_);
}

double LogHistogram::total() const noexcept {
    double t = underflow_ + overflow_;
    for (double c : counts_) t += c;
    return t;
}

double LogHistogram::density(std::size_t i) const {
    const double t = total();
    if (t == 0.0) return 0.0;
    return counts_[i] / (t * (upper_edge(i) - lower_edge(i)));
}

double LogHistogram::cdf_at_lower_edge(std::size_t i) const {
    const double t = total();
    if (t == 0.0) return 0.0;
    double below = underflow_;
    for (std::size_t j = 0; j < i; ++j) below += counts_[j];
    return below / t;
}

LogHistogram log_binned_histogram(std::span<const double> values, int lo_decade, int hi_decade, int bins_per_decade) {
    LogHistogram h(lo_decade, hi_decade, bins_per_decade);
    for (double v : values) h.add(v);
    return h;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("least squares needs >= 2 paired points");
    const double m = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidArgument("least squares needs distinct x values");
    LinearFit fit{sxy / sxx, 0.0, 0.0};
    fit.intercept = my - fit.slope * mx;
    if (x.size() > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            rss += r * r;
        }
        fit.slope_stderr = std::sqrt(rss / (m - 2.0) / sxx);
    }
    return fit;
}

SlopeFit fit_loglog_slope(const LogHistogram& histogram, double window_lo, double window_hi) {
    std::vector<double> lx;
    std::vector<double> ly;
    double mass = 0.0;
    constexpr double slack = 1e-9;
    for (std::size_t i = 0; i < histogram.bins(); ++i) {
        if (histogram.lower_edge(i) < window_lo * (1.0 - slack) || histogram.upper_edge(i) > window_hi * (1.0 + slack)) {
            continue;
        }
        mass += histogram.count(i);
        if (histogram.count(i) <= 0.0) continue;
        lx.push_back(std::log10(histogram.center(i)));
        ly.push_back(std::log10(histogram.density(i)));
    }
    if (lx.size() < 3) {
        throw InvalidArgument("log-log slope fit needs at least 3 non-empty bins in the window, found " +
                              std::to_string(lx.size()));
    }
    const auto fit = least_squares(lx, ly);
    return {fit.slope, fit.slope_stderr, lx.size(), mass};
}

double ks_distance(std::span<const double> sorted_samples, const std::function<double(double)>& cdf) {
    const double m = static_cast<double>(sorted_samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double f = cdf(sorted_samples[i]);
        worst = std::max({worst, std::abs(static_cast<double>(i + 1) / m - f), std::abs(f - static_cast<double>(i) / m)});
    }
    return worst;
}

}  // namespace hilbert
