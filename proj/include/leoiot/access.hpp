#ifndef LEOIOT_ACCESS_HPP
#define LEOIOT_ACCESS_HPP

#include <cstdint>
#include <string>

namespace leoiot::access {

struct RachConfig {
    int subcarriers = 48;          // preamble choices per RAO
    double rao_period_ms = 160.0;
    double p_bo = 1.0;             // probability a collided node reattempts
    int backoff_exponent = 10;     // window upper edge 256 * 2^i
    enum class BackoffUnit { Ms, Sec } backoff_unit = BackoffUnit::Ms;

    double backoff_window() const;  // in backoff_unit units
    double backoff_window_ms() const;
    void validate() const;
};

/// Collision outcome for one offered load, analytic or simulated.
struct CollisionStats {
    int n_offered = 0;
    double expected_reattempts = 0;  // nodes per RAO epoch
    double p_coll = 0;               // per-node collision probability in an arbitrary RAO
    double p_success = 0;            // 1 - p_coll
    double first_attempt_rate = 0;   // collision rate of the initial attempt
    enum class Source { Analytic, Simulated } source = Source::Analytic;
    // simulated only:
    double ci_half_width = 0;        // 95% half-width on p_coll
    double first_ci_half_width = 0;  // 95% half-width on first_attempt_rate
    long trials = 0;
    std::uint64_t seed = 0;
};

/// P[k of n nodes pick one given subcarrier] = C(n,k) (1/m)^k ((m-1)/m)^(n-k).
double p_select_k(int n, int k, int m);

/// Expected nodes that must reattempt after one RAO. Exact form
/// n - n ((m-1)/m)^(n-1); the approximate form n (1 - e^(-n/m)) matches the
/// printed equation and is the default elsewhere.
double expected_reattempts(int n, int m, bool exact);

/// 1 - exp(-N_coll * P_BO / m).
double p_collision(int n, const RachConfig& config, bool exact = false);

/// Largest n with p_collision(n) <= p_target. Returns 0 when even one node
/// exceeds the target (possible in approximate mode).
int capacity_at_target(double p_target, const RachConfig& config, bool exact = false);

CollisionStats analytic_stats(int n, const RachConfig& config, bool exact = false);

/// Monte-Carlo contention for a steady offered load of n nodes per RAO
/// epoch. Each trial draws one epoch's first attempt (uniform subcarrier
/// choice, success iff unshared), thins the collided nodes by p_bo, and then
/// evaluates a tagged reattempt in an arbitrary later RAO. Because backoff
/// scatters retries uniformly over a window spanning many RAO periods, the
/// reattempt traffic seen by that RAO is the superposition of many epochs,
/// modelled as Poisson with the epoch's realized retry count as intensity.
/// Trials use per-index derived seeds, so results are identical for any
/// thread count.
CollisionStats simulate_rach(int n, const RachConfig& config, long n_trials, std::uint64_t seed,
                             int threads = 1);

/// Bytes the server effectively holds after a visibility window: transmitted
/// bytes plus the values implied by suppressed transmissions.
double effective_data_bytes(double visibility_s, double aggregate_rate_bps,
                            double reduction_fraction);

inline constexpr double kDefaultAggregateRateBps = 48 * 1600.0;  // 48 single-tone carriers

}  // namespace leoiot::access

#endif
