#include "rdiff/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rdiff/errors.hpp"

namespace rdiff {

NetworkTopology::NetworkTopology(int n_agents) : n_(n_agents) {
    if (n_agents < 0) throw std::invalid_argument("n_agents must be >= 0");
    nbrs_.resize(n_);
    adj_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

NetworkTopology::NetworkTopology(int n_agents, std::span<const Link> edges)
    : NetworkTopology(n_agents) {
    for (const Link& e : edges) add_link(e.a, e.b);
}

void NetworkTopology::check(AgentId k) const {
    if (k < 0 || k >= n_) throw std::out_of_range("agent id " + std::to_string(k));
}

bool NetworkTopology::has_link(AgentId k, AgentId l) const {
    check(k);
    check(l);
    return adj_[static_cast<std::size_t>(k) * n_ + l] != 0;
}

bool NetworkTopology::add_link(AgentId k, AgentId l) {
    check(k);
    check(l);
    if (k == l) throw std::invalid_argument("self-links are implicit");
    if (has_link(k, l)) return false;
    adj_[static_cast<std::size_t>(k) * n_ + l] = 1;
    adj_[static_cast<std::size_t>(l) * n_ + k] = 1;
    nbrs_[k].insert(std::lower_bound(nbrs_[k].begin(), nbrs_[k].end(), l), l);
    nbrs_[l].insert(std::lower_bound(nbrs_[l].begin(), nbrs_[l].end(), k), k);
    ++links_;
    return true;
}

bool NetworkTopology::remove_link(AgentId k, AgentId l) {
    if (k == l || !has_link(k, l)) return false;
    adj_[static_cast<std::size_t>(k) * n_ + l] = 0;
    adj_[static_cast<std::size_t>(l) * n_ + k] = 0;
    nbrs_[k].erase(std::lower_bound(nbrs_[k].begin(), nbrs_[k].end(), l));
    nbrs_[l].erase(std::lower_bound(nbrs_[l].begin(), nbrs_[l].end(), k));
    --links_;
    return true;
}

std::vector<AgentId> NetworkTopology::neighborhood(AgentId k) const {
    std::vector<AgentId> out = neighbors(k);
    out.insert(std::lower_bound(out.begin(), out.end(), k), k);
    return out;
}

std::vector<Link> NetworkTopology::links() const {
    std::vector<Link> out;
    out.reserve(links_);
    for (AgentId a = 0; a < n_; ++a)
        for (AgentId b : nbrs_[a])
            if (a < b) out.push_back({a, b});
    return out;
}

bool NetworkTopology::connected() const {
    if (n_ == 0) return true;
    std::vector<std::uint8_t> seen(n_, 0);
    std::vector<AgentId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        AgentId x = stack.back();
        stack.pop_back();
        for (AgentId y : nbrs_[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
    }
    return count == n_;
}

bool dominating_check(const NetworkTopology& topo, std::span<const AgentId> set) {
    std::vector<std::uint8_t> covered(topo.n_agents(), 0);
    for (AgentId s : set) {
        if (s < 0 || s >= topo.n_agents()) throw std::out_of_range("agent id not in topology");
        covered[s] = 1;
        for (AgentId l : topo.neighbors(s)) covered[l] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](std::uint8_t c) { return c != 0; });
}

GeometricGraph random_geometric(int n, double radius, double band_gap, RngStream& rng,
                                int max_attempts, int min_degree) {
    if (n < 1) throw ConfigError("topology.n_agents", "must be >= 1");
    if (!(radius > 0.0)) throw ConfigError("topology.radius", "must be > 0");
    if (!(band_gap >= 0.0) || band_gap >= 1.0)
        throw ConfigError("topology.band_gap", "must be in [0, 1)");
    const double r2 = radius * radius;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        GeometricGraph g;
        g.positions.reserve(n);
        while (static_cast<int>(g.positions.size()) < n) {
            Point p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
            if (std::abs(p.x + p.y - 1.0) < band_gap) continue;
            g.positions.push_back(p);
        }
        g.topology = NetworkTopology(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const double dx = g.positions[a].x - g.positions[b].x;
                const double dy = g.positions[a].y - g.positions[b].y;
                if (dx * dx + dy * dy < r2) g.topology.add_link(a, b);
            }
        bool sparse = false;
        for (int a = 0; a < n && !sparse; ++a)
            sparse = static_cast<int>(g.topology.degree(a)) < std::min(min_degree, n - 1);
        if (sparse) continue;
        if (g.topology.connected()) return g;
    }
    throw ConfigError("topology.radius", "no connected graph with the requested minimum degree after " +
                                             std::to_string(max_attempts) + " attempts");
}

NetworkTopology erdos_renyi(int n, double p, RngStream& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("topology.p", "must be in [0, 1]");
    NetworkTopology t(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.uniform(0.0, 1.0) < p) t.add_link(a, b);
    return t;
}

NetworkTopology complete_graph(int n) {
    NetworkTopology t(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) t.add_link(a, b);
    return t;
}

NetworkTopology star_graph(int leaves) {
    NetworkTopology t(leaves + 1);
    for (int l = 1; l <= leaves; ++l) t.add_link(0, l);
    return t;
}

NetworkTopology path_graph(int n) {
    NetworkTopology t(n);
    for (int a = 0; a + 1 < n; ++a) t.add_link(a, a + 1);
    return t;
}

} // namespace rdiff
