#include "rdiff/resilience.hpp"

#include <algorithm>
#include <stdexcept>

#include "rdiff/diffusion.hpp"
#include "rdiff/errors.hpp"
#include "rdiff/kernels.hpp"

namespace rdiff {

void ResilienceConfig::validate() const {
    if (F < 0) throw std::invalid_argument("F must be >= 0");
    for (const auto& [k, f] : per_agent_F)
        if (f < 0) throw std::invalid_argument("F for agent " + std::to_string(k) + " is < 0");
    if (window_n < 1) throw std::invalid_argument("window_n must be >= 1");
}

double estimate_cost(std::span<const double> psi_l, const DataWindow& window) {
    if (window.empty()) throw EmptyWindow("estimate_cost: window holds no observation");
    require_same_dim(psi_l.size(), window.dim(), "estimate_cost");
    return kernels::residual_sq_mean(window.d(), window.u_column(0), window.capacity(),
                                     window.size(), psi_l.data(), psi_l.size());
}

double cost_contribution(double j_cost, double gamma_sq) {
    const double g = std::max(gamma_sq, kGammaFloor);
    return j_cost / (g * g);
}

CostReport resilient_filter(const FlatMap<double>& contributions, int F, AgentId self_id) {
    CostReport report;
    report.contribution = contributions;
    report.contribution.erase(self_id);
    const std::size_t hood = report.contribution.size() + 1;
    if (F < 0) throw std::invalid_argument("resilient_filter: F < 0");
    if (static_cast<std::size_t>(F) >= hood) {
        report.degenerate = true;
        return report;
    }
    std::vector<std::pair<AgentId, double>> order(report.contribution.begin(),
                                                  report.contribution.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    const std::size_t take = std::min<std::size_t>(F, order.size());
    for (std::size_t t = 0; t < take; ++t) report.removed.push_back(order[t].first);
    return report;
}

} // namespace rdiff
