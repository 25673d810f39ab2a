#include "rdiff/model.hpp"

#include <cmath>
#include <numbers>

namespace rdiff {

void NoiseModel::validate() const {
    if (!(sigma_v_sq > 0.0) || !std::isfinite(sigma_v_sq))
        throw std::invalid_argument("sigma_v_sq must be positive");
    if (!(sigma_u_sq > 0.0) || !std::isfinite(sigma_u_sq))
        throw std::invalid_argument("sigma_u_sq must be positive");
}

std::size_t target_dim(const TargetModel& model) {
    if (const auto* s = std::get_if<StationaryTarget>(&model)) return s->base.size();
    return std::get<CircularTarget>(model).center.size();
}

void validate_target(const TargetModel& model, std::size_t M) {
    if (const auto* s = std::get_if<StationaryTarget>(&model)) {
        require_same_dim(s->base.size(), M, "stationary target");
        if (!all_finite(s->base)) throw std::invalid_argument("target has non-finite entries");
        return;
    }
    const auto& c = std::get<CircularTarget>(model);
    if (M != 2 || c.center.size() != 2)
        throw DimensionMismatch("circular target requires M = 2");
    if (!all_finite(c.center)) throw std::invalid_argument("target has non-finite entries");
    if (!(c.amplitude >= 0.0) || !std::isfinite(c.amplitude))
        throw std::invalid_argument("circular amplitude must be >= 0");
    if (!std::isfinite(c.omega) || !std::isfinite(c.phase))
        throw std::invalid_argument("circular omega and phase must be finite");
}

StateVector eval_target(const TargetModel& model, std::int64_t i) {
    if (const auto* s = std::get_if<StationaryTarget>(&model)) return s->base;
    const auto& c = std::get<CircularTarget>(model);
    const double a = 2.0 * std::numbers::pi * c.omega * static_cast<double>(i) + c.phase;
    return {c.center[0] + c.amplitude * std::cos(a), c.center[1] + c.amplitude * std::sin(a)};
}

Observation generate_observation(std::span<const double> target, const NoiseModel& noise,
                                 RngStream& rng, std::uint64_t iteration) {
    Observation obs;
    obs.iteration = iteration;
    obs.u.resize(target.size());
    const double su = std::sqrt(noise.sigma_u_sq);
    for (double& x : obs.u) x = rng.normal(0.0, su);
    const double v = rng.normal(0.0, std::sqrt(noise.sigma_v_sq));
    obs.d = dot(obs.u, target) + v;
    return obs;
}

} // namespace rdiff
