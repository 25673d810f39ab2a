#include <doctest.h>

#include <cmath>

#include "rdiff/errors.hpp"
#include "rdiff/metrics.hpp"
#include "rdiff/rng.hpp"
#include "rdiff/trace.hpp"

using namespace rdiff;

namespace {

SimulationTrace make_trace(int n, std::int64_t T, const StateVector& target) {
    SimulationTrace tr;
    tr.n_agents = n;
    tr.dim = target.size();
    tr.iterations = T;
    tr.targets.assign(n, StationaryTarget{target});
    tr.initial.assign(n * tr.dim, 0.0);
    tr.estimates.resize(static_cast<std::size_t>(T) * n * tr.dim);
    for (std::int64_t i = 0; i < T; ++i)
        for (int k = 0; k < n; ++k)
            for (std::size_t m = 0; m < tr.dim; ++m)
                tr.estimates[(i * n + k) * tr.dim + m] = target[m];
    return tr;
}

void set_estimate(SimulationTrace& tr, std::int64_t i, AgentId k, const StateVector& w) {
    for (std::size_t m = 0; m < tr.dim; ++m) tr.estimates[(i * tr.n_agents + k) * tr.dim + m] = w[m];
}

} // namespace

TEST_CASE("msd is zero when every estimate sits on its target") {
    const auto tr = make_trace(4, 50, {0.1, 0.1});
    const std::vector<AgentId> all{0, 1, 2, 3};
    const auto s = msd_empirical(tr, all, 5);
    for (double v : s.per_iteration) CHECK(v == 0.0);
    CHECK(s.steady_state == 0.0);
}

TEST_CASE("constant error vector gives constant msd") {
    auto tr = make_trace(1, 30, {0.1, 0.1});
    for (std::int64_t i = 0; i < 30; ++i) set_estimate(tr, i, 0, {0.2, 0.1});
    const std::vector<AgentId> one{0};
    const auto s = msd_empirical(tr, one, 10);
    // |[0.1, 0]|^2
    for (double v : s.per_iteration) CHECK(v == doctest::Approx(0.1 * 0.1).epsilon(1e-12));
    CHECK(s.steady_state == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(to_db(s.steady_state) == doctest::Approx(-20.0).epsilon(1e-12));
}

TEST_CASE("msd is permutation invariant and non-negative") {
    auto tr = make_trace(6, 40, {0.0, 0.0});
    RngStream rng(4);
    for (std::int64_t i = 0; i < 40; ++i)
        for (int k = 0; k < 6; ++k) set_estimate(tr, i, k, {rng.normal(0, 1), rng.normal(0, 1)});
    const std::vector<AgentId> a{0, 2, 3, 5}, b{5, 3, 0, 2};
    const auto x = msd_empirical(tr, a, 4), y = msd_empirical(tr, b, 4);
    for (std::size_t i = 0; i < x.per_iteration.size(); ++i) {
        CHECK(x.per_iteration[i] == doctest::Approx(y.per_iteration[i]).epsilon(1e-15));
        CHECK(x.per_iteration[i] >= 0.0);
    }
}

TEST_CASE("steady window covers the final tenth") {
    CHECK(steady_window(10000) == 1000);
    CHECK(steady_window(5) == 1);
    CHECK(steady_window(10000, 0.5) == 5000);
}

TEST_CASE("msd_average is the entry-wise mean") {
    const std::vector<MsdSeries> runs{make_msd_series({1.0, 2.0, 3.0}, 2), make_msd_series({3.0, 4.0, 5.0}, 2)};
    const auto avg = msd_average(runs);
    CHECK(avg.per_iteration == std::vector<double>{2.0, 3.0, 4.0});
    CHECK(avg.steady_state == doctest::Approx(3.5));
}

TEST_CASE("theoretical msd at the reference operating point") {
    const std::vector<double> s(100, 0.15);
    // mu M / 2 * sigma^2 = 0.01 * 2 / 2 * 0.15
    CHECK(msd_ncop(0.01, 2, s) == doctest::Approx(0.0015).epsilon(1e-14));
    CHECK(msd_diff(0.01, 2, s) == doctest::Approx(1.5e-5).epsilon(1e-14));
    const std::vector<double> one{0.15};
    CHECK_THROWS_AS(msd_diff(0.01, 2, one), DivisionByZero);
}

TEST_CASE("diffusion msd is ncop over N exactly") {
    RngStream rng(10);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> s(2 + rng.index(200));
        for (auto& x : s) x = rng.uniform(0.01, 1.0);
        const double ncop = msd_ncop(0.01, 2, s);
        CHECK(msd_diff(0.01, 2, s) == ncop / static_cast<double>(s.size()));
    }
}

TEST_CASE("isolating one agent always costs msd") {
    const std::vector<double> equal(10, 0.15);
    CHECK(msd_resilient_split(0.01, 2, equal, 3).excess() > 0.0);
    RngStream rng(11);
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> s(3 + rng.index(100));
        for (auto& x : s) x = rng.uniform(1e-3, 2.0);
        const auto r = msd_resilient_split(0.01, 2, s, rng.index(s.size()));
        double total = 0;
        for (double x : s) total += x;
        const double N = static_cast<double>(s.size());
        CHECK(r.original == doctest::Approx(0.01 * 2 / 2.0 * total / (N * N)).epsilon(1e-13));
        CHECK(r.network > r.original);
    }
}

TEST_CASE("attack_success on synthetic error series") {
    const std::vector<double> at_goal(100, 0.0);
    auto v = attack_success(at_goal, 3, 0.02, 10);
    CHECK(v.success);
    CHECK(v.i_c == 0);

    std::vector<double> decay(1000);
    for (std::size_t i = 0; i < decay.size(); ++i) decay[i] = 1.0 / (i + 1.0);
    v = attack_success(decay, 3, 0.02, 100);
    CHECK(v.success);
    // first i with 1 / (i + 1) < 0.02
    CHECK(v.i_c == 50);
    for (std::int64_t i = *v.i_c; i < 1000; ++i) CHECK(decay[i] < 0.02);

    const std::vector<double> elsewhere(100, 0.5);
    CHECK_FALSE(attack_success(elsewhere, 3, 0.02, 10).success);
}

TEST_CASE("attack_success reads the goal from a trace") {
    auto tr = make_trace(2, 200, {0.1, 0.1});
    for (std::int64_t i = 100; i < 200; ++i) set_estimate(tr, i, 1, {0.5, 0.5});
    const AttackGoal goal{{0.5, 0.5}, std::nullopt};
    auto v = attack_success(tr, 1, goal, 0.02, 50);
    CHECK(v.success);
    CHECK(v.i_c == 100);
    CHECK_FALSE(attack_success(tr, 0, goal, 0.02, 50).success);
}

TEST_CASE("steady errors distinguish bias from spread") {
    auto tr = make_trace(1, 100, {0.0, 0.0});
    for (std::int64_t i = 0; i < 100; ++i) set_estimate(tr, i, 0, {i % 2 ? 0.1 : -0.1, 0.0});
    const auto ref = true_target_reference(tr, 0);
    CHECK(steady_mean_error(tr, 0, ref, 50) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(steady_rms_error(tr, 0, ref, 50) == doctest::Approx(0.1).epsilon(1e-12));
}
