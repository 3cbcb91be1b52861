#pragma once

#include "qnv/claims.hpp"
#include "qnv/closed_forms.hpp"
#include "qnv/estimate.hpp"
#include "qnv/random.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qnv {

/// Brownian path on a uniform grid with per-step bridge extrema.
///
/// step_max[i] / step_min[i] are draws of the maximum / minimum of the Brownian
/// bridge between w[i] and w[i+1]; the two are sampled independently.
struct PathGrid {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> w;
    std::vector<double> step_max;
    std::vector<double> step_min;
    double run_min = 0.0;
    double run_max = 0.0;

    std::size_t n_steps() const noexcept { return step_max.size(); }
};

/// Fills `path` with a fresh path of `n_steps` steps over [0, T].
void simulate_into(PathGrid& path, Xoshiro256pp& rng, double T, std::size_t n_steps);

/// Path `index` of the run keyed by `seed`.
PathGrid simulate_path(std::uint64_t seed, std::uint64_t index, double T, std::size_t n_steps);

/// Paths 0..n_paths-1; ResourceError beyond `step_budget` path steps.
std::vector<PathGrid> simulate_paths(std::uint64_t seed, std::size_t n_paths, double T,
                                     std::size_t n_steps, double step_budget = 5e10);

/// First step whose bridge range reaches `level` (from the side of W_0 = 0).
std::optional<std::size_t> first_crossing(const PathGrid& path, double level);

/// First step whose bridge range leaves (a, b).
std::optional<std::size_t> first_exit(const PathGrid& path, double a, double b);

/// How a path ends under a map: survives to T, is stopped at S (f(W) = 0),
/// or leaves the explosion domain at tau.
struct PathOutcome {
    enum class End { Survived, StoppedAtZero, Exploded };
    End end = End::Survived;
    std::size_t step = 0;      ///< step of the event (n_steps when survived)
    double time = 0.0;         ///< event time, taken at the middle of the step
    double w_end = 0.0;        ///< W at min(T, event)
    double run_min = 0.0;      ///< extrema of W up to min(T, event)
    double run_max = 0.0;
};

/// Outcome of `path` under `map`; with `stopped`, zeros of f stop the path.
PathOutcome path_outcome(const ClosedFormMap& map, const PathGrid& path, bool stopped);

/// Density weight exp(C (T ^ S) / 2) g(W_T^S) 1{tau > T ^ S} of an outcome.
double outcome_weight(const ClosedFormMap& map, const PathOutcome& outcome, double T);

/// Writes f(W) at the grid times up to the outcome; zeros after a stop at S,
/// +infinity after tau. Returns the process extrema implied by the bridge extrema.
std::pair<double, double> fill_process_path(const ClosedFormMap& map, const PathGrid& path,
                                            const PathOutcome& outcome, std::vector<double>& values);

/// E[h(Y)] via the transformed Brownian motion.
PriceEstimate price_unstopped(const PolynomialSpec& spec, const ClaimSpec& claim, const McParams& mc);

/// E[h(X)], X = Y stopped at its first zero.
PriceEstimate price_stopped(const PolynomialSpec& spec, const ClaimSpec& claim, const McParams& mc);

/// Plain mean of the density weight; should be 1 within Monte Carlo error.
PriceEstimate weight_normalization(const PolynomialSpec& spec, double T, const McParams& mc, bool stopped);

/// {tau > T} from the running extrema of W by the closed-form case table.
bool event_E1(const PolynomialSpec& spec, double run_min, double run_max);
bool event_E1(const ClosedFormMap& map, double run_min, double run_max);

/// {tau > T ^ S}: the same table on the extrema of the stopped path.
bool event_E2(const PolynomialSpec& spec, double stopped_min, double stopped_max);
bool event_E2(const ClosedFormMap& map, double stopped_min, double stopped_max);

} // namespace qnv
