#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rdiff/rng.hpp"

namespace rdiff {

using AgentId = int;

struct Link {
    AgentId a = 0;
    AgentId b = 0; // a < b
    friend bool operator==(const Link&, const Link&) = default;
};

// Undirected graph. Self-loops are not stored; neighborhood(k) adds k.
// Links can only be removed.
class NetworkTopology {
public:
    NetworkTopology() = default;
    explicit NetworkTopology(int n_agents);
    NetworkTopology(int n_agents, std::span<const Link> edges);

    int n_agents() const noexcept { return n_; }
    bool has_link(AgentId k, AgentId l) const;
    // Adds during construction only; returns false if already present.
    bool add_link(AgentId k, AgentId l);
    // Returns false if the link did not exist.
    bool remove_link(AgentId k, AgentId l);

    // Sorted neighbor ids, self excluded.
    const std::vector<AgentId>& neighbors(AgentId k) const { return nbrs_.at(k); }
    // Sorted, self included.
    std::vector<AgentId> neighborhood(AgentId k) const;
    std::size_t degree(AgentId k) const { return nbrs_.at(k).size(); }
    std::size_t link_count() const noexcept { return links_; }
    std::vector<Link> links() const;
    bool connected() const;

private:
    void check(AgentId k) const;

    int n_ = 0;
    std::size_t links_ = 0;
    std::vector<std::vector<AgentId>> nbrs_;
    std::vector<std::uint8_t> adj_;
};

bool dominating_check(const NetworkTopology& topo, std::span<const AgentId> set);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct GeometricGraph {
    NetworkTopology topology;
    std::vector<Point> positions;
};

// Uniform points on the unit square, linked when closer than `radius`.
// Points with |x + y - 1| < band_gap are rejected, which leaves an empty
// strip along the anti-diagonal. Resamples until the graph is connected and
// every node has at least `min_degree` links, up to `max_attempts` graphs,
// then throws ConfigError.
GeometricGraph random_geometric(int n, double radius, double band_gap, RngStream& rng,
                                int max_attempts = 100, int min_degree = 0);

NetworkTopology erdos_renyi(int n, double p, RngStream& rng);
NetworkTopology complete_graph(int n);
NetworkTopology star_graph(int leaves);
NetworkTopology path_graph(int n);

} // namespace rdiff
