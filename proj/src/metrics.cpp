#include "rdiff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rdiff/errors.hpp"

namespace rdiff {

double to_db(double msd) {
    if (!(msd > 0.0)) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(msd);
}

std::size_t steady_window(std::int64_t iterations, double fraction) {
    const auto w = static_cast<std::int64_t>(std::floor(static_cast<double>(iterations) * fraction));
    return static_cast<std::size_t>(std::max<std::int64_t>(1, w));
}

MsdSeries make_msd_series(std::vector<double> per_iteration, std::size_t window) {
    MsdSeries s;
    s.per_iteration = std::move(per_iteration);
    s.window = std::min(window, s.per_iteration.size());
    if (s.window > 0) {
        const auto first = s.per_iteration.end() - static_cast<std::ptrdiff_t>(s.window);
        s.steady_state = std::accumulate(first, s.per_iteration.end(), 0.0) /
                         static_cast<double>(s.window);
    }
    return s;
}

MsdSeries msd_empirical(const SimulationTrace& trace, std::span<const AgentId> subset,
                        std::size_t window) {
    std::vector<double> per(static_cast<std::size_t>(trace.iterations), 0.0);
    if (!subset.empty()) {
        for (std::int64_t i = 0; i < trace.iterations; ++i) {
            double acc = 0.0;
            for (AgentId k : subset) {
                const StateVector w0 = eval_target(trace.targets[k], i);
                acc += squared_distance(w0, trace.estimate(i, k));
            }
            per[i] = acc / static_cast<double>(subset.size());
        }
    }
    return make_msd_series(std::move(per), window);
}

MsdSeries msd_average(std::span<const MsdSeries> runs) {
    if (runs.empty()) return {};
    std::vector<double> per(runs[0].per_iteration.size(), 0.0);
    for (const auto& r : runs) {
        if (r.per_iteration.size() != per.size())
            throw std::invalid_argument("msd_average: series lengths differ");
        for (std::size_t i = 0; i < per.size(); ++i) per[i] += r.per_iteration[i];
    }
    for (double& x : per) x /= static_cast<double>(runs.size());
    return make_msd_series(std::move(per), runs[0].window);
}

namespace {

void check_sigmas(std::span<const double> s) {
    if (s.empty()) throw std::invalid_argument("msd theory: no agents");
    for (double x : s)
        if (!(x > 0.0)) throw std::invalid_argument("msd theory: sigma_v^2 must be positive");
}

} // namespace

double msd_ncop(double mu, std::size_t M, std::span<const double> sigma_v_sq) {
    check_sigmas(sigma_v_sq);
    const double mean = std::accumulate(sigma_v_sq.begin(), sigma_v_sq.end(), 0.0) /
                        static_cast<double>(sigma_v_sq.size());
    return mu * static_cast<double>(M) / 2.0 * mean;
}

double msd_diff(double mu, std::size_t M, std::span<const double> sigma_v_sq) {
    if (sigma_v_sq.size() < 2) throw DivisionByZero("msd_diff needs N >= 2");
    return msd_ncop(mu, M, sigma_v_sq) / static_cast<double>(sigma_v_sq.size());
}

ResilientSplit msd_resilient_split(double mu, std::size_t M, std::span<const double> sigma_v_sq,
                                   std::size_t n) {
    check_sigmas(sigma_v_sq);
    const std::size_t N = sigma_v_sq.size();
    if (N < 2) throw DivisionByZero("msd_resilient_split needs N >= 2");
    if (n >= N) throw std::out_of_range("msd_resilient_split: excluded index out of range");
    const double c = mu * static_cast<double>(M) / 2.0;
    const double total = std::accumulate(sigma_v_sq.begin(), sigma_v_sq.end(), 0.0);
    const double rest = total - sigma_v_sq[n];
    const double Nd = static_cast<double>(N);
    ResilientSplit out;
    out.sub1 = c * rest / ((Nd - 1.0) * (Nd - 1.0));
    out.sub2 = c * sigma_v_sq[n];
    out.network = c * (rest / ((Nd - 1.0) * Nd) + sigma_v_sq[n] / Nd);
    out.original = c * total / (Nd * Nd);
    return out;
}

AttackVerdict attack_success(std::span<const double> errors, AgentId victim, double epsilon,
                             std::int64_t tail) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("attack_success: epsilon must be > 0");
    AttackVerdict v;
    v.victim = victim;
    v.epsilon = epsilon;
    const auto T = static_cast<std::int64_t>(errors.size());
    std::int64_t first_good = 0;
    for (std::int64_t i = T - 1; i >= 0; --i)
        if (!(errors[i] < epsilon)) {
            first_good = i + 1;
            break;
        }
    if (first_good < T && T - first_good >= tail) {
        v.success = true;
        v.i_c = first_good;
    }
    return v;
}

std::vector<double> error_series(const SimulationTrace& trace, AgentId k, const Reference& ref) {
    std::vector<double> out(static_cast<std::size_t>(trace.iterations));
    for (std::int64_t i = 0; i < trace.iterations; ++i)
        out[i] = distance(ref(i), trace.estimate(i, k));
    return out;
}

AttackVerdict attack_success(const SimulationTrace& trace, AgentId victim,
                             const AttackGoal& goal, double epsilon, std::int64_t tail) {
    const auto errs = error_series(trace, victim, [&](std::int64_t i) { return goal.desired(i); });
    return attack_success(errs, victim, epsilon, tail);
}

double steady_rms_error(const SimulationTrace& trace, AgentId k, const Reference& ref,
                        std::size_t window) {
    const std::int64_t T = trace.iterations;
    const std::int64_t w = std::min<std::int64_t>(static_cast<std::int64_t>(window), T);
    if (w <= 0) return 0.0;
    double acc = 0.0;
    for (std::int64_t i = T - w; i < T; ++i) acc += squared_distance(ref(i), trace.estimate(i, k));
    return std::sqrt(acc / static_cast<double>(w));
}

double steady_mean_error(const SimulationTrace& trace, AgentId k, const Reference& ref,
                         std::size_t window) {
    const std::int64_t T = trace.iterations;
    const std::int64_t w = std::min<std::int64_t>(static_cast<std::int64_t>(window), T);
    if (w <= 0) return 0.0;
    std::vector<double> acc(trace.dim, 0.0);
    for (std::int64_t i = T - w; i < T; ++i) {
        const StateVector r = ref(i);
        const auto est = trace.estimate(i, k);
        for (std::size_t m = 0; m < trace.dim; ++m) acc[m] += est[m] - r[m];
    }
    for (double& a : acc) a /= static_cast<double>(w);
    return std::sqrt(squared_norm(acc));
}

Reference true_target_reference(const SimulationTrace& trace, AgentId k) {
    const TargetModel model = trace.targets.at(k);
    return [model](std::int64_t i) { return eval_target(model, i); };
}

} // namespace rdiff
