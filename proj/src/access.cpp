#include "leoiot/access.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "leoiot/rng.hpp"

namespace leoiot::access {

double RachConfig::backoff_window() const { return 256.0 * std::pow(2.0, backoff_exponent); }

double RachConfig::backoff_window_ms() const {
    return backoff_unit == BackoffUnit::Ms ? backoff_window() : backoff_window() * 1000.0;
}

void RachConfig::validate() const {
    if (subcarriers < 1) throw std::invalid_argument("access: subcarriers must be >= 1");
    if (!(rao_period_ms > 0.0)) throw std::invalid_argument("access: RAO period must be > 0");
    if (!(p_bo >= 0.0 && p_bo <= 1.0)) throw std::invalid_argument("access: p_bo must be in [0, 1]");
    if (backoff_exponent < 0) throw std::invalid_argument("access: backoff exponent must be >= 0");
}

double p_select_k(int n, int k, int m) {
    if (n < 0 || k < 0 || k > n || m < 1)
        throw std::invalid_argument("access: need 0 <= k <= n and m >= 1");
    if (n == 0) return 1.0;  // k == 0 by the check above
    // C(n,k) p^k q^(n-k) as a running product to avoid overflow.
    const double p = 1.0 / m;
    const double q = 1.0 - p;
    double result = std::pow(q, n - k);
    for (int i = 1; i <= k; ++i) result *= p * static_cast<double>(n - k + i) / static_cast<double>(i);
    return result;
}

double expected_reattempts(int n, int m, bool exact) {
    if (n < 0 || m < 1) throw std::invalid_argument("access: need n >= 0 and m >= 1");
    if (n == 0) return 0.0;
    if (exact) return n - n * std::pow((m - 1.0) / m, n - 1);
    return n * (1.0 - std::exp(-static_cast<double>(n) / m));
}

double p_collision(int n, const RachConfig& config, bool exact) {
    config.validate();
    if (n < 0) throw std::invalid_argument("access: n must be >= 0");
    const double n_coll = expected_reattempts(n, config.subcarriers, exact);
    return 1.0 - std::exp(-n_coll * config.p_bo / config.subcarriers);
}

int capacity_at_target(double p_target, const RachConfig& config, bool exact) {
    if (!(p_target > 0.0 && p_target < 1.0))
        throw std::invalid_argument("access: p_target must be in (0, 1)");
    config.validate();
    if (p_collision(1, config, exact) > p_target) return 0;
    // p_collision is non-decreasing in n; find a bracket then bisect.
    int lo = 1, hi = 2;
    while (p_collision(hi, config, exact) <= p_target) {
        lo = hi;
        if (hi > (1 << 28)) return hi;  // target effectively unreachable from above
        hi *= 2;
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (p_collision(mid, config, exact) <= p_target ? lo : hi) = mid;
    }
    return lo;
}

CollisionStats analytic_stats(int n, const RachConfig& config, bool exact) {
    CollisionStats s;
    s.n_offered = n;
    s.expected_reattempts = expected_reattempts(n, config.subcarriers, exact);
    s.p_coll = p_collision(n, config, exact);
    s.p_success = 1.0 - s.p_coll;
    s.first_attempt_rate = n > 0 ? 1.0 - std::pow((config.subcarriers - 1.0) / config.subcarriers, n - 1) : 0.0;
    s.source = CollisionStats::Source::Analytic;
    return s;
}

namespace {

struct TrialSums {
    long long first_collided = 0;   // sum of collided-node counts, round 1
    long long first_collided2 = 0;  // sum of squares (for the CI)
    long long tagged_collisions = 0;
    long long tagged_attempts = 0;
};

void run_trials(long begin, long end, int n, const RachConfig& config, std::uint64_t seed,
                TrialSums& sums) {
    const int m = config.subcarriers;
    std::vector<int> count(static_cast<std::size_t>(m));
    std::vector<int> choice(static_cast<std::size_t>(n));
    for (long t = begin; t < end; ++t) {
        rng::Stream stream(rng::derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::fill(count.begin(), count.end(), 0);
        for (int i = 0; i < n; ++i) {
            choice[static_cast<std::size_t>(i)] = static_cast<int>(stream.uniform_int(static_cast<std::uint64_t>(m)));
            ++count[static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])];
        }
        int collided = 0;
        for (int i = 0; i < n; ++i)
            if (count[static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])] >= 2) ++collided;
        sums.first_collided += collided;
        sums.first_collided2 += static_cast<long long>(collided) * collided;

        // Thin the collided nodes by the reattempt probability, then contend
        // in an arbitrary RAO fed by the superposed backoff traffic.
        int retries = 0;
        if (config.p_bo >= 1.0) {
            retries = collided;
        } else if (config.p_bo > 0.0) {
            for (int i = 0; i < collided; ++i)
                if (stream.uniform() < config.p_bo) ++retries;
        }
        if (retries == 0) continue;
        const long contenders = stream.poisson(static_cast<double>(retries));
        const std::uint64_t tagged = stream.uniform_int(static_cast<std::uint64_t>(m));
        bool hit = false;
        for (long i = 0; i < contenders; ++i)
            if (stream.uniform_int(static_cast<std::uint64_t>(m)) == tagged) hit = true;
        ++sums.tagged_attempts;
        if (hit) ++sums.tagged_collisions;
    }
}

}  // namespace

CollisionStats simulate_rach(int n, const RachConfig& config, long n_trials, std::uint64_t seed,
                             int threads) {
    config.validate();
    if (n < 0) throw std::invalid_argument("access: n must be >= 0");
    if (n_trials < 1) throw std::invalid_argument("access: n_trials must be >= 1");
    if (threads < 1) threads = 1;

    std::vector<TrialSums> partial(static_cast<std::size_t>(threads));
    if (threads == 1 || n_trials < 2 * threads) {
        run_trials(0, n_trials, n, config, seed, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (n_trials + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const long begin = w * chunk;
            const long end = std::min(n_trials, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_trials, begin, end, n, std::cref(config), seed,
                              std::ref(partial[static_cast<std::size_t>(w)]));
        }
        for (auto& th : pool) th.join();
    }

    TrialSums total;
    for (const TrialSums& p : partial) {
        total.first_collided += p.first_collided;
        total.first_collided2 += p.first_collided2;
        total.tagged_collisions += p.tagged_collisions;
        total.tagged_attempts += p.tagged_attempts;
    }

    CollisionStats s;
    s.n_offered = n;
    s.source = CollisionStats::Source::Simulated;
    s.trials = n_trials;
    s.seed = seed;
    const double trials = static_cast<double>(n_trials);
    s.expected_reattempts = static_cast<double>(total.first_collided) / trials;
    if (n > 0) {
        const double mean_frac = s.expected_reattempts / n;
        s.first_attempt_rate = mean_frac;
        // variance of the per-trial collided fraction
        const double mean_cnt = s.expected_reattempts;
        const double var_cnt =
            (static_cast<double>(total.first_collided2) / trials - mean_cnt * mean_cnt) /
            (static_cast<double>(n) * n);
        s.first_ci_half_width = 1.96 * std::sqrt(std::max(var_cnt, 0.0) / trials);
    }
    if (total.tagged_attempts > 0) {
        const double p = static_cast<double>(total.tagged_collisions) /
                         static_cast<double>(total.tagged_attempts);
        s.p_coll = p;
        s.ci_half_width =
            1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(total.tagged_attempts));
    }
    s.p_success = 1.0 - s.p_coll;
    return s;
}

double effective_data_bytes(double visibility_s, double aggregate_rate_bps,
                            double reduction_fraction) {
    if (!(visibility_s >= 0.0) || !(aggregate_rate_bps >= 0.0))
        throw std::invalid_argument("access: visibility and rate must be >= 0");
    if (!(reduction_fraction >= 0.0 && reduction_fraction < 1.0))
        throw std::invalid_argument("access: reduction fraction must be in [0, 1)");
    const double raw_bytes = aggregate_rate_bps * visibility_s / 8.0;
    return raw_bytes / (1.0 - reduction_fraction);
}

}  // namespace leoiot::access
