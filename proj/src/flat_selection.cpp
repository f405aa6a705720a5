#include "pacer/flat_selection.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace pacer {

QualityHistogram::QualityHistogram(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 2) throw std::invalid_argument("QualityHistogram: need >= 2 edges");
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (!(edges_[i] > edges_[i - 1]))
            throw std::invalid_argument("QualityHistogram: edges must be strictly increasing");
    if (edges_.front() != 0.0 || edges_.back() != 1.0)
        throw std::invalid_argument("QualityHistogram: edges must cover [0,1]");
    counts_.assign(edges_.size() - 1, 0);
}

QualityHistogram QualityHistogram::log_linear(int bins, double log_floor, double split) {
    if (bins < 3) throw std::invalid_argument("QualityHistogram: too few bins");
    if (!(0.0 < log_floor && log_floor < split && split < 1.0))
        throw std::invalid_argument("QualityHistogram: need 0 < log_floor < split < 1");
    // One catch-all bin [0, log_floor), then half the remaining bins
    // log-spaced up to the split and the rest linear up to 1.
    const int n_log = (bins - 1) / 2;
    const int n_lin = bins - 1 - n_log;
    std::vector<double> edges;
    edges.reserve(bins + 1);
    edges.push_back(0.0);
    const double ratio = split / log_floor;
    for (int i = 0; i <= n_log; ++i)
        edges.push_back(log_floor * std::pow(ratio, static_cast<double>(i) / n_log));
    for (int i = 1; i <= n_lin; ++i)
        edges.push_back(split + (1.0 - split) * static_cast<double>(i) / n_lin);
    edges.back() = 1.0;
    return QualityHistogram(std::move(edges));
}

void QualityHistogram::add(double predicted_rate) {
    double x = predicted_rate;
    if (x < 0.0) x = 0.0;
    if (x > 1.0) x = 1.0;
    // Bin i spans [edges[i], edges[i+1]); the last bin also includes 1.0.
    auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    auto idx = static_cast<std::size_t>(it - edges_.begin());
    if (idx > counts_.size()) idx = counts_.size();  // x == 1.0
    ++counts_[idx - 1];
    ++total_;
}

void QualityHistogram::add_counts(const QualityHistogram& other) {
    if (other.edges_ != edges_)
        throw std::invalid_argument("QualityHistogram: mismatched bin edges");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
}

void QualityHistogram::clear() {
    std::fill(counts_.begin(), counts_.end(), 0);
    total_ = 0;
}

void QualityHistogram::dump_csv(std::ostream& out) const {
    out << "bin_low,bin_high,count\n";
    for (std::size_t i = 0; i < counts_.size(); ++i)
        out << edges_[i] << ',' << edges_[i + 1] << ',' << counts_[i] << '\n';
}

double solve_threshold(const QualityHistogram& hist, std::int64_t required_requests) {
    if (hist.total_count() == 0) throw std::invalid_argument("solve_threshold: empty histogram");
    if (required_requests < 0) throw std::invalid_argument("solve_threshold: negative demand");
    if (required_requests == 0) return 1.0;
    if (required_requests >= hist.total_count()) return hist.edges().front();

    const auto& counts = hist.counts();
    const auto& edges = hist.edges();
    // Walk edges from the top; tail(i) = requests at or above edges[i].
    // Ties already resolve toward the larger edge because we only replace
    // the incumbent on a strictly smaller gap.
    std::int64_t tail = 0;
    std::int64_t best_gap = std::llabs(tail - required_requests);
    double best_edge = edges.back();
    for (auto i = static_cast<std::int64_t>(counts.size()) - 1; i >= 0; --i) {
        tail += counts[i];
        const std::int64_t gap = std::llabs(tail - required_requests);
        if (gap < best_gap) {
            best_gap = gap;
            best_edge = edges[i];
        }
    }
    return best_edge;
}

void ThresholdStats::update(double tau) {
    ++count;
    if (count == 1) {
        mean = tau;
        variance = 0.0;
        return;
    }
    const double prev_mean = mean;
    const auto n = static_cast<double>(count);
    mean = prev_mean + (tau - prev_mean) / n;
    variance = ((n - 1.0) / n) * variance + (tau - prev_mean) * (tau - mean) / n;
}

ConfidenceBounds confidence_bounds(const ThresholdStats& stats) {
    if (stats.count < 1) throw std::logic_error("confidence_bounds: no observations");
    if (stats.lookback_days < 1) throw std::invalid_argument("confidence_bounds: d must be >= 1");
    const double sigma = std::sqrt(std::max(stats.variance, 0.0));
    const double half =
        stats.critical_value * sigma / std::sqrt(static_cast<double>(stats.lookback_days));
    ConfidenceBounds b;
    b.lower = std::max(0.0, stats.mean - half);
    b.upper = std::min(1.0, stats.mean + half);
    return b;
}

DemandPlan required_requests(Money target_spend, Money fixed_bid, double win_rate,
                             PacingRate pacing) {
    if (fixed_bid <= 0) throw std::invalid_argument("required_requests: fixed bid must be > 0");
    if (target_spend < 0) throw std::invalid_argument("required_requests: negative target spend");
    if (!(win_rate > 0.0) || !(pacing.value > 0.0))
        throw std::invalid_argument("cannot size demand");
    DemandPlan plan;
    if (target_spend == 0) return plan;
    plan.impressions = ceil_div(target_spend, fixed_bid);
    plan.bids = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(plan.impressions) / win_rate));
    plan.requests = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(plan.bids) / pacing.value));
    return plan;
}

FlatDecision decide_flat(double predicted_rate, const ConfidenceBounds& bounds, PacingRate pacing,
                         Money fixed_bid) {
    FlatDecision d;
    if (predicted_rate > bounds.upper) {
        d.kind = FlatDecision::Kind::Bid;
        d.price = fixed_bid;
    } else if (predicted_rate < bounds.lower) {
        d.kind = FlatDecision::Kind::Drop;
    } else {
        d.kind = FlatDecision::Kind::Probabilistic;
        d.probability = pacing.value;
    }
    return d;
}

}  // namespace pacer
