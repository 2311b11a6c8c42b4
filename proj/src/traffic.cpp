#include "leoiot/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace leoiot::traffic {

InterArrivalSet inter_arrivals(const shewhart::TransmissionLog& log) {
    if (log.events.size() < 2)
        throw std::invalid_argument("traffic: need at least two events for inter-arrival times");
    InterArrivalSet out;
    out.mode = log.mode;
    out.device_count = 1;
    out.gaps_s.reserve(log.events.size() - 1);
    for (std::size_t i = 1; i < log.events.size(); ++i)
        out.gaps_s.push_back(static_cast<double>(log.events[i].slot - log.events[i - 1].slot) *
                             log.cadence_s);
    return out;
}

InterArrivalSet pool_inter_arrivals(const std::vector<shewhart::TransmissionLog>& logs) {
    InterArrivalSet out;
    for (const auto& log : logs) {
        if (log.events.size() < 2) continue;
        const InterArrivalSet one = inter_arrivals(log);
        out.gaps_s.insert(out.gaps_s.end(), one.gaps_s.begin(), one.gaps_s.end());
        out.mode = log.mode;
        ++out.device_count;
    }
    return out;
}

ExpFit fit_exponential(const std::vector<double>& gaps) {
    if (gaps.empty()) throw std::invalid_argument("traffic: no gaps to fit");
    for (double g : gaps)
        if (!(g > 0.0)) throw std::invalid_argument("traffic: gaps must be positive");
    ExpFit fit;
    fit.n = gaps.size();
    const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    fit.lambda = 1.0 / mean;

    std::vector<double> sorted(gaps);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = 1.0 - std::exp(-fit.lambda * sorted[i]);
        d = std::max(d, cdf - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - cdf);
    }
    fit.ks_statistic = d;
    fit.reject_at_5pct = d > 1.36 / std::sqrt(n);
    return fit;
}

std::vector<HistRow> pdf_export(const std::vector<double>& gaps, double bin_width) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("traffic: bin width must be > 0");
    const ExpFit fit = fit_exponential(gaps);
    const double max_gap = *std::max_element(gaps.begin(), gaps.end());
    const std::size_t bins = static_cast<std::size_t>(max_gap / bin_width) + 1;
    std::vector<std::size_t> counts(bins, 0);
    for (double g : gaps) {
        std::size_t b = static_cast<std::size_t>(g / bin_width);
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }
    std::vector<HistRow> rows(bins);
    const double norm = 1.0 / (static_cast<double>(gaps.size()) * bin_width);
    for (std::size_t b = 0; b < bins; ++b) {
        rows[b].bin_center = (static_cast<double>(b) + 0.5) * bin_width;
        rows[b].density = static_cast<double>(counts[b]) * norm;
        rows[b].exp_density = fit.lambda * std::exp(-fit.lambda * rows[b].bin_center);
    }
    return rows;
}

}  // namespace leoiot::traffic
