#pragma once

#include <cstdint>
#include <variant>

#include "rdiff/rng.hpp"
#include "rdiff/state.hpp"

namespace rdiff {

struct Observation {
    double d = 0.0;
    StateVector u;
    std::uint64_t iteration = 0;
};

struct NoiseModel {
    double sigma_v_sq = 1.0;
    double sigma_u_sq = 1.0;

    void validate() const;
};

struct StationaryTarget {
    StateVector base;
};

// center + amplitude * [cos(2*pi*omega*i + phase), sin(2*pi*omega*i + phase)]
struct CircularTarget {
    StateVector center;
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
};

using TargetModel = std::variant<StationaryTarget, CircularTarget>;

void validate_target(const TargetModel& model, std::size_t M);

StateVector eval_target(const TargetModel& model, std::int64_t i);

std::size_t target_dim(const TargetModel& model);

Observation generate_observation(std::span<const double> target, const NoiseModel& noise,
                                 RngStream& rng, std::uint64_t iteration = 0);

} // namespace rdiff
