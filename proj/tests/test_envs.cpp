#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gvi/engine.hpp"
#include "gvi/envs.hpp"
#include "gvi/operators.hpp"
#include "gvi/rng.hpp"

using namespace gvi;

TEST_CASE("keys round trip") {
    for (const char* key : {"chainwalk", "longchain", "toy"}) {
        auto env = env_from_key(key);
        REQUIRE(env.has_value());
        CHECK(env_key(*env) == key);
    }
    CHECK_FALSE(env_from_key("gridworld").has_value());
    CHECK_FALSE(env_from_key("").has_value());
}

TEST_CASE("chain walk shapes and boundary moves") {
    EnvSpec env = chain_walk();
    CHECK(env.n_states == 11);
    CHECK(env.n_actions == 2);
    CHECK(env.episode_steps == 100);

    // aiming off the chain stays put deterministically, no randomness spent
    SplitMix64 a(1), b(99);
    for (int i = 0; i < 20; ++i) {
        Transition t = step(env, 0, 0, a);
        CHECK(t.next_state == 0);
        CHECK(t.reward == 3.0);
        Transition u = step(env, 10, 1, b);
        CHECK(u.next_state == 10);
        CHECK(u.reward == 1.0);
    }

    SplitMix64 rng(7);
    CHECK_THROWS_AS(step(env, 11, 0, rng), invalid_input);
    CHECK_THROWS_AS(step(env, 0, 2, rng), invalid_input);
}

TEST_CASE("chain walk arrival rewards") {
    EnvSpec env = chain_walk();
    CHECK(arrival_reward(env, 0) == 3.0);
    for (int s = 1; s <= 4; ++s) CHECK(arrival_reward(env, s) == -1.0);
    CHECK(arrival_reward(env, 5) == 0.0);
    for (int s = 6; s <= 10; ++s) CHECK(arrival_reward(env, s) == 1.0);

    // rewards ride on the landing state
    SplitMix64 rng(8);
    for (int i = 0; i < 200; ++i) {
        Transition t = step(env, rng.next_int(0, 10), rng.next_int(0, 1), rng);
        CHECK(t.reward == arrival_reward(env, t.next_state));
    }
}

TEST_CASE("chain walk sampling matches its dense model") {
    EnvSpec env = chain_walk();
    Mdp m = exact_model(env, 0.99);
    CHECK(m.gamma == 0.99);
    CHECK(m.p(0, 0, 0) == 1.0);
    CHECK(m.r(0, 0) == 3.0);
    CHECK(m.p(5, 0, 4) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(m.p(5, 0, 6) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(m.r(5, 0) == doctest::Approx(-0.4).epsilon(1e-12));
    // reversal at the edge folds back onto the current state
    CHECK(m.p(1, 1, 2) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(m.p(1, 1, 0) == doctest::Approx(0.3).epsilon(1e-15));

    const int n = 100000;
    SplitMix64 rng(9);
    std::vector<int> hits(11, 0);
    for (int i = 0; i < n; ++i) hits[static_cast<size_t>(step(env, 5, 0, rng).next_state)]++;
    double sigma = std::sqrt(0.7 * 0.3 / n);
    CHECK(std::fabs(hits[4] / static_cast<double>(n) - 0.7) <= 3.0 * sigma);
    CHECK(std::fabs(hits[6] / static_cast<double>(n) - 0.3) <= 3.0 * sigma);
    CHECK(hits[4] + hits[6] == n);
}

TEST_CASE("heading left is optimal everywhere on the chain walk") {
    Mdp m = exact_model(chain_walk(), 0.99);
    QTable q_star = fixed_point_q(m, SoftmaxTemp::max());
    for (int s = 0; s < 11; ++s) CHECK(argmax_action(q_star, s) == 0);
}

TEST_CASE("long chain walk rewards peak mid-chain") {
    EnvSpec env = long_chain_walk();
    CHECK(env.n_states == 51);
    CHECK(env.n_actions == 11);
    CHECK(arrival_reward(env, 25) == 1.0);
    CHECK(arrival_reward(env, 30) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(arrival_reward(env, 20) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(arrival_reward(env, 0) < 1e-10);
}

TEST_CASE("long chain walk kernel rows") {
    EnvSpec env = long_chain_walk();
    Mdp m = exact_model(env, 0.99);

    // the extreme left jump from the left edge always clips to 0
    CHECK(m.p(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    // jump -1 from 0: landings -4..2 fold into {0,0,0,0,0,1,2}
    CHECK(m.p(0, 4, 0) == doctest::Approx(5.0 / 7.0).epsilon(1e-12));
    CHECK(m.p(0, 4, 1) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
    CHECK(m.p(0, 4, 2) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
    // an interior no-op jump spreads uniformly over seven neighbours
    for (int s2 = 22; s2 <= 28; ++s2)
        CHECK(m.p(25, 5, s2) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));

    const int n = 70000;
    SplitMix64 rng(10);
    std::vector<int> hits(51, 0);
    for (int i = 0; i < n; ++i) {
        Transition t = step(env, 0, 4, rng);
        CHECK(t.reward == arrival_reward(env, t.next_state));
        hits[static_cast<size_t>(t.next_state)]++;
    }
    for (int s2 = 0; s2 <= 2; ++s2) {
        double p = m.p(0, 4, s2);
        double sigma = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::fabs(hits[static_cast<size_t>(s2)] / static_cast<double>(n) - p) <=
              3.0 * sigma);
    }
}

TEST_CASE("toy chain topology") {
    EnvSpec env = toy_chain();
    CHECK(env.n_states == 4);
    CHECK(env.n_actions == 100);
    CHECK(env.episode_steps == 5);

    SplitMix64 rng(11);
    CHECK(step(env, 2, 0, rng).next_state == 1);
    CHECK(step(env, 2, 49, rng).next_state == 1);
    CHECK(step(env, 2, 50, rng).next_state == 3);
    CHECK(step(env, 2, 99, rng).next_state == 3);
    CHECK(step(env, 0, 17, rng).next_state == 2);
    CHECK(step(env, 3, 62, rng).next_state == 2);
    CHECK(step(env, 2, 0, rng).reward == 0.0);
    CHECK(step(env, 0, 0, rng).reward == 0.0);

    Mdp m = exact_model(env, 0.99);
    for (int a = 0; a < 100; ++a) {
        CHECK(m.p(2, a, a < 50 ? 1 : 3) == 1.0);
        CHECK(m.p(0, a, 2) == 1.0);
        CHECK(m.p(3, a, 2) == 1.0);
        CHECK(m.p(1, a, 0) == 1.0);
        CHECK(m.r(1, a) == doctest::Approx(-0.1).epsilon(1e-15));
        CHECK(m.r(2, a) == 0.0);
    }
}

TEST_CASE("toy chain reward noise has the declared moments") {
    EnvSpec env = toy_chain();
    SplitMix64 rng(12);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = step(env, 1, i % 100, rng).reward;
        sum += r;
        sumsq += r * r;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean - (-0.1)) <= 0.02);
    CHECK(std::fabs(var - 1.0) <= 0.05);
}

TEST_CASE("avoiding the noisy arm is optimal in the toy chain") {
    Mdp m = exact_model(toy_chain(), 0.99);
    QTable q_star = fixed_point_q(m, SoftmaxTemp::max());
    CHECK(argmax_action(q_star, 2) >= 50);
    CHECK(q_star(2, 49) < q_star(2, 50));
}

TEST_CASE("start-state rules") {
    SplitMix64 rng(13);
    CHECK(train_start(chain_walk(), rng) == 5);
    CHECK(train_start(toy_chain(), rng) == 2);
    CHECK(eval_start(toy_chain(), rng) == 2);

    EnvSpec lc = long_chain_walk();
    EnvSpec cw = chain_walk();
    int lo = 100, hi = -1;
    double mean = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        int s = train_start(lc, rng);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        mean += s;
    }
    CHECK(lo == 0);
    CHECK(hi == 50);
    CHECK(std::fabs(mean / n - 25.0) <= 0.5);

    lo = 100;
    hi = -1;
    for (int i = 0; i < n; ++i) {
        int s = eval_start(cw, rng);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK(lo == 0);
    CHECK(hi == 10);
}

TEST_CASE("identical seeds replay identical trajectories") {
    for (const char* key : {"chainwalk", "longchain", "toy"}) {
        EnvSpec env = *env_from_key(key);
        SplitMix64 r1(77), r2(77);
        int s1 = train_start(env, r1), s2 = train_start(env, r2);
        CHECK(s1 == s2);
        for (int t = 0; t < 50; ++t) {
            int a = t % env.n_actions;
            Transition t1 = step(env, s1, a, r1);
            Transition t2 = step(env, s2, a, r2);
            CHECK(t1.next_state == t2.next_state);
            CHECK(t1.reward == t2.reward);
            s1 = t1.next_state;
            s2 = t2.next_state;
        }
    }
}

TEST_CASE("all dense models pass validation with a free discount") {
    for (const char* key : {"chainwalk", "longchain", "toy"}) {
        EnvSpec env = *env_from_key(key);
        Mdp m = exact_model(env, 0.5);
        CHECK(m.gamma == 0.5);
        m.validate();
        CHECK(m.n_states == env.n_states);
        CHECK(m.n_actions == env.n_actions);
    }
}
