#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rapt/clocks/models.hpp"

namespace rapt::pricer {

enum class TruncationPolicy { quantile, candidate_search };

struct TruncationOptions {
    TruncationPolicy policy = TruncationPolicy::quantile;
    std::uint64_t seed = 1;
    std::size_t n_paths = 100000;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Base truncation of the scaled clock sigma^2 Z_T: the 0.1% quantile at
/// T_min and the 99.9% quantile at T_max. CGMY, which has no quantile
/// machinery here, uses the quantiles of a gamma law matched to the
/// first two clock moments (obtained from the Laplace transform).
Interval quantile_truncation(const clocks::ClockModel& model, double t_min, double t_max,
                             const TruncationOptions& options = {});

/// The ten candidate (a, b) pairs of the candidate-search policy,
/// generated by scaling the base pair. The a-ladder reaches far above 1
/// because trading a thin below-a slice of clock mass for an easier fit
/// and faster tail decay is usually a large net win.
std::vector<Interval> truncation_candidates(const clocks::ClockModel& model, double t_min,
                                            double t_max, const TruncationOptions& options = {});

/// Candidate set plus the cdf of sigma^2 Z_T used to weigh the error a
/// candidate leaves outside its [a, b] (VG: closed form; Heston:
/// empirical from the seeded simulation; CGMY: moment-matched gamma).
struct TruncationContext {
    std::vector<Interval> candidates;
    std::function<double(double)> cdf;
};

TruncationContext truncation_context(const clocks::ClockModel& model, double t,
                                     const TruncationOptions& options = {});

/// Policy dispatch: the quantile route returns the base pair; the
/// candidate-search route returns the first candidate (slice builders
/// iterate over truncation_candidates to pick the best per x).
Interval select_truncation(const clocks::ClockModel& model, double t_min, double t_max,
                           const TruncationOptions& options = {});

} // namespace rapt::pricer
