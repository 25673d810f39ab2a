#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rdiff/attack.hpp"
#include "rdiff/diffusion.hpp"
#include "rdiff/engine.hpp"
#include "rdiff/errors.hpp"
#include "rdiff/rng.hpp"

using namespace rdiff;

namespace {

AttackGoal fixed_goal(AgentId) { return AttackGoal{{0.5, 0.5}, std::nullopt}; }

// Brute-force cover test, written independently of dominating_check.
bool covers(const NetworkTopology& g, const std::vector<AgentId>& set) {
    for (AgentId k = 0; k < g.n_agents(); ++k) {
        bool hit = false;
        for (AgentId s : set) hit |= (s == k) || g.has_link(s, k);
        if (!hit) return false;
    }
    return true;
}

} // namespace

TEST_CASE("reconstruction inverts adaptation") {
    const Observation o{0.5, {1.0, 0.0}, 0};
    const auto w = reconstruct_victim_state(StateVector{0.005, 0.0}, o, 0.01);
    CHECK(std::abs(w[0]) < 1e-15);
    CHECK(std::abs(w[1]) < 1e-15);

    const StateVector psi{0.3, 0.9};
    CHECK(reconstruct_victim_state(psi, Observation{2.0, {1.0, 3.0}, 0}, 0.0) == psi);
}

TEST_CASE("reconstruction round trips on random data") {
    RngStream rng(101);
    for (int t = 0; t < 10000; ++t) {
        const StateVector w{rng.normal(0, 1), rng.normal(0, 1)};
        const Observation o{rng.normal(0, 1), {rng.normal(0, 1), rng.normal(0, 1)}, 0};
        const double mu = rng.uniform(0.001, 0.1);
        if (std::abs(1.0 - mu * squared_norm(o.u)) <= 1e-6) continue;
        const auto back = reconstruct_victim_state(lms_adapt(w, o, mu), o, mu);
        CHECK(distance(back, w) < 1e-9);
    }
}

TEST_CASE("reconstruction refuses a singular update") {
    // mu |u|^2 = 1
    CHECK_THROWS_AS(reconstruct_victim_state(StateVector{0, 0}, Observation{1.0, {1.0, 0.0}, 0}, 1.0),
                    SingularUpdate);
}

TEST_CASE("attack_reference stationary is the goal") {
    const AttackGoal g{{0.5, 0.5}, std::nullopt};
    for (std::int64_t i : {0, 1, 5000}) CHECK(attack_reference(g, 0.002, i) == StateVector{0.5, 0.5});
}

TEST_CASE("attack_reference with a zero trajectory is the goal") {
    AttackGoal g{{0.5, 0.5}, CircularTrajectory{0.0, 0.01, 0.0, DeltaMode::Exact, true}};
    const auto x = attack_reference(g, 0.002, 10);
    CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("attack_reference circular at i=1 uses theta(0) and delta_theta(0)") {
    const double wa = 1.0 / 2000.0;
    AttackGoal g{{0.5, 0.5}, CircularTrajectory{0.1, wa, 0.0, DeltaMode::Analytic, true}};
    const auto x = attack_reference(g, 0.002, 1);
    const double pi = std::numbers::pi;
    CHECK(x[0] == doctest::Approx(0.5 + 0.1 + (-0.2 * pi * wa * 0.0) / 0.002).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(0.5 + 0.0 + (0.2 * pi * wa * 1.0) / 0.002).epsilon(1e-14));
}

TEST_CASE("attack_reference without the correction term") {
    AttackGoal g{{0.5, 0.5}, CircularTrajectory{0.1, 0.01, 0.0, DeltaMode::Exact, false}};
    const auto x = attack_reference(g, 0.002, 1);
    CHECK(x[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("attack_reference divides by r only when it must") {
    AttackGoal moving{{0.5, 0.5}, CircularTrajectory{0.1, 0.01, 0.0, DeltaMode::Exact, true}};
    CHECK_THROWS_AS(attack_reference(moving, 0.0, 3), ZeroStepSize);
    CHECK_NOTHROW(attack_reference(AttackGoal{{0.5, 0.5}, std::nullopt}, 0.0, 3));
}

TEST_CASE("exact delta_theta is the forward difference") {
    const CircularTrajectory t{0.1, 1.0 / 2000.0, 0.2, DeltaMode::Exact, true};
    for (std::int64_t i : {0, 1, 499, 1999, 7777}) {
        const auto a = t.theta(i), b = t.theta(i + 1), d = t.delta_theta(i);
        CHECK(std::abs(d[0] - (b[0] - a[0])) < 1e-9);
        CHECK(std::abs(d[1] - (b[1] - a[1])) < 1e-9);
    }
}

TEST_CASE("analytic delta_theta agrees with the forward difference to first order") {
    const double w = 1.0 / 2000.0;
    const CircularTrajectory exact{0.1, w, 0.0, DeltaMode::Exact, true};
    const CircularTrajectory analytic{0.1, w, 0.0, DeltaMode::Analytic, true};
    // second-order term: amplitude * (2 pi w)^2 / 2
    const double bound = 0.1 * std::pow(2 * std::numbers::pi * w, 2);
    for (std::int64_t i = 0; i < 4000; i += 37)
        CHECK(distance(exact.delta_theta(i), analytic.delta_theta(i)) < bound);
}

TEST_CASE("craft_message examples") {
    const StateVector w{0.2, -0.1};
    CHECK(craft_message(w, StateVector{0.5, 0.5}, 0.0) == w);
    CHECK(craft_message(w, w, 0.002) == w);
    const auto m = craft_message(StateVector{0.0, 0.0}, StateVector{0.5, 0.5}, 0.002);
    CHECK(m[0] == doctest::Approx(0.002 * 0.5).epsilon(1e-15));
    CHECK(m[1] == doctest::Approx(0.002 * 0.5).epsilon(1e-15));
}

TEST_CASE("crafted message lies on the segment toward x") {
    RngStream rng(55);
    for (int t = 0; t < 1000; ++t) {
        const StateVector w{rng.normal(0, 1), rng.normal(0, 1)};
        const StateVector x{rng.normal(0, 1), rng.normal(0, 1)};
        const double r = rng.uniform(0.0, 0.99);
        const auto m = craft_message(w, x, r);
        for (int k = 0; k < 2; ++k) CHECK(m[k] - w[k] == doctest::Approx(r * (x[k] - w[k])).epsilon(1e-12));
    }
}

TEST_CASE("guard_step_size examples") {
    const StateVector w{0.0, 0.0};
    const std::vector<StateVector> nb{{0.1, 0.0}, {0.0, 0.3}}; // min deviation 0.1
    // |r (x - w)| = 0.001
    CHECK(guard_step_size(0.002, StateVector{0.5, 0.0}, w, nb, 0.1) == 0.002);
    // |r (x - w)| = 0.05 > 0.1 * 0.1
    CHECK(guard_step_size(0.1, StateVector{0.5, 0.0}, w, nb, 0.1) == 0.0);
    CHECK(guard_step_size(0.5, w, w, nb, 0.1) == 0.5);
}

TEST_CASE("greedy dominating set examples") {
    CHECK(greedy_dominating_set(star_graph(9)) == std::vector<AgentId>{0});
    CHECK(greedy_dominating_set(path_graph(5)) == std::vector<AgentId>{1, 3});
    CHECK(minimum_dominating_set(path_graph(5)).size() == 2);
    CHECK(greedy_dominating_set(complete_graph(5)) == std::vector<AgentId>{0});
}

TEST_CASE("greedy output dominates on G(10, 0.4) seed 7") {
    RngStream rng(7);
    const auto g = erdos_renyi(10, 0.4, rng);
    const auto set = greedy_dominating_set(g);
    CHECK(covers(g, set));
    CHECK(dominating_check(g, set));
}

TEST_CASE("greedy dominating set is valid and within twice optimal on small graphs") {
    RngStream rng(2718);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng.index(8));
        const auto g = erdos_renyi(n, rng.uniform(0.1, 0.9), rng);
        const auto greedy = greedy_dominating_set(g);
        const auto best = minimum_dominating_set(g);
        CHECK(covers(g, greedy));
        CHECK(dominating_check(g, greedy) == covers(g, greedy));
        CHECK(covers(g, best));
        CHECK(greedy.size() <= 2 * best.size());
    }
}

TEST_CASE("network attack on a star compromises the center") {
    const auto plan = plan_network_attack(star_graph(9), fixed_goal);
    CHECK(plan.compromised == std::vector<AgentId>{0});
    CHECK(plan.victims.size() == 9);
    for (const auto& v : plan.victims) CHECK(v.attacker == 0);
}

TEST_CASE("two disconnected stars need two attackers") {
    NetworkTopology g(8);
    for (int l = 1; l < 4; ++l) g.add_link(0, l);
    for (int l = 5; l < 8; ++l) g.add_link(4, l);
    const auto plan = plan_network_attack(g, fixed_goal);
    CHECK(plan.compromised == std::vector<AgentId>{0, 4});
    CHECK(plan.victims.size() == 6);
}

TEST_CASE("victims get the smallest compromised neighbor as attacker") {
    NetworkTopology g(4);
    g.add_link(0, 3);
    g.add_link(0, 2);
    g.add_link(1, 0);
    const auto plan = plan_attack(g, {3, 2}, fixed_goal);
    REQUIRE(plan.victims.size() == 1);
    CHECK(plan.victims[0].victim == 0);
    CHECK(plan.victims[0].attacker == 2);
    CHECK_NOTHROW(plan.validate(g));
}

TEST_CASE("plan validation rejects bad step sizes and far victims") {
    NetworkTopology g = path_graph(4);
    AttackPlan plan = plan_attack(g, {0}, fixed_goal);
    plan.r = 1.0;
    CHECK_THROWS(plan.validate(g));
    plan.r = 0.002;
    plan.victims[0].victim = 3;
    CHECK_THROWS(plan.validate(g));
}

TEST_CASE("attacker captures the victim's weight without saturating it") {
    // victim 0 with two honest neighbors and one attacker
    NetworkTopology g(4);
    g.add_link(0, 1);
    g.add_link(0, 2);
    g.add_link(0, 3);
    const std::vector<TargetModel> t(4, StationaryTarget{{0.1, 0.1}});
    const std::vector<NoiseModel> nm(4, NoiseModel{0.15, 1.0});
    EngineParams p;
    p.attack = plan_attack(g, {3}, fixed_goal);
    p.attack->r = 0.002;
    DiffusionEngine eng(g, t, nm, std::vector<StateVector>(4, StateVector{0.0, 0.0}), p, 21);
    int approach = 0, dominated = 0;
    for (int i = 0; i < 3000; ++i) {
        const auto& r = eng.round();
        if (i < 500) continue;
        const double a = r.weights[0].get(3);
        if (a > r.weights[0].get(0) && a > r.weights[0].get(1) && a > r.weights[0].get(2)) ++dominated;
        if (distance(eng.agents()[0].w, StateVector{0.5, 0.5}) > 0.02) {
            ++approach;
            CHECK(a <= 1.0 - 1e-6);
        }
    }
    CHECK(dominated == 2500);
    CHECK(approach > 0);
    CHECK(distance(eng.agents()[0].w, StateVector{0.5, 0.5}) < 0.02);
}
