#ifndef LEOIOT_TRAFFIC_HPP
#define LEOIOT_TRAFFIC_HPP

#include <vector>

#include "leoiot/shewhart.hpp"

namespace leoiot::traffic {

struct InterArrivalSet {
    std::vector<double> gaps_s;  // all strictly positive
    shewhart::Mode mode = shewhart::Mode::M0;
    int device_count = 0;
};

/// Exponential fit plus a Kolmogorov-Smirnov comparison against it. The rate
/// is the maximum-likelihood 1/mean; reject_at_5pct uses the asymptotic
/// critical value 1.36/sqrt(n).
struct ExpFit {
    double lambda = 0;
    double ks_statistic = 0;
    std::size_t n = 0;
    bool reject_at_5pct = false;
};

/// Seconds between consecutive transmissions of one device. Needs >= 2
/// events.
InterArrivalSet inter_arrivals(const shewhart::TransmissionLog& log);

/// Per-device gaps pooled across a fleet (devices with < 2 events contribute
/// nothing).
InterArrivalSet pool_inter_arrivals(const std::vector<shewhart::TransmissionLog>& logs);

ExpFit fit_exponential(const std::vector<double>& gaps);

struct HistRow {
    double bin_center;
    double density;      // normalized so the histogram area is 1
    double exp_density;  // fitted lambda * exp(-lambda * t) at the bin center
};

/// Histogram of the gaps with the fitted exponential density alongside.
std::vector<HistRow> pdf_export(const std::vector<double>& gaps, double bin_width);

}  // namespace leoiot::traffic

#endif
