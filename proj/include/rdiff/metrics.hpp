#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rdiff/trace.hpp"

namespace rdiff {

inline constexpr double kDefaultEpsilon = 0.02;

struct MsdSeries {
    std::vector<double> per_iteration;
    std::size_t window = 0;
    double steady_state = 0.0; // mean of the last `window` entries
};

double to_db(double msd);

// Window covering the final `fraction` of `iterations`, at least 1.
std::size_t steady_window(std::int64_t iterations, double fraction = 0.1);

MsdSeries make_msd_series(std::vector<double> per_iteration, std::size_t window);

// Per-iteration mean over `subset` of |w_k^0(i) - w_{k,i}|^2.
MsdSeries msd_empirical(const SimulationTrace& trace, std::span<const AgentId> subset,
                        std::size_t window);

// Entry-wise mean of several runs' series.
MsdSeries msd_average(std::span<const MsdSeries> runs);

double msd_ncop(double mu, std::size_t M, std::span<const double> sigma_v_sq);
double msd_diff(double mu, std::size_t M, std::span<const double> sigma_v_sq);

// One agent (index n) isolated from the remaining N - 1.
struct ResilientSplit {
    double sub1 = 0.0;
    double sub2 = 0.0;
    double network = 0.0;
    double original = 0.0; // mu M / 2 * sum(sigma^2) / N^2
    double excess() const { return network - original; }
};

ResilientSplit msd_resilient_split(double mu, std::size_t M, std::span<const double> sigma_v_sq,
                                   std::size_t n);

struct AttackVerdict {
    AgentId victim = 0;
    bool success = false;
    std::optional<std::int64_t> i_c;
    double epsilon = kDefaultEpsilon;
};

// errors[i] is the distance at iteration i. i_c is the first iteration from
// which every later error stays below epsilon; success needs at least `tail`
// iterations from i_c to the end.
AttackVerdict attack_success(std::span<const double> errors, AgentId victim, double epsilon,
                             std::int64_t tail);

AttackVerdict attack_success(const SimulationTrace& trace, AgentId victim,
                             const AttackGoal& goal, double epsilon, std::int64_t tail);

using Reference = std::function<StateVector(std::int64_t)>;

std::vector<double> error_series(const SimulationTrace& trace, AgentId k, const Reference& ref);

// Root mean square distance to the reference over the last `window` iterations.
double steady_rms_error(const SimulationTrace& trace, AgentId k, const Reference& ref,
                        std::size_t window);

// Distance between the mean of (w_{k,i} - ref(i)) over the last `window`
// iterations and zero: the steady-state bias of agent k.
double steady_mean_error(const SimulationTrace& trace, AgentId k, const Reference& ref,
                         std::size_t window);

Reference true_target_reference(const SimulationTrace& trace, AgentId k);

} // namespace rdiff
