#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "betarep/switched.hpp"

using namespace betarep;

TEST_CASE("matrix system basics") {
    const MatrixSystem quarter = MatrixSystem::make(std::numbers::pi / 2, 0.5, 4.0);
    const MatrixTrajectory t = simulate_matrix(quarter, {1.0, 0.0}, SwitchSignal{{1, 1, 1, 1}});
    CHECK(t.states.back()[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(t.states.back()[1]) < 1e-15);
    CHECK(t.states[1][1] == doctest::Approx(-1.0));  // clockwise
    const MatrixTrajectory s = simulate_matrix(quarter, {1.0, 0.0}, SwitchSignal{{2}});
    CHECK(s.states.back() == Vec2{0.5, 0.0});
    CHECK(s.norms.back() / s.norms.front() == 0.5);
    CHECK(determinant(quarter.a2()) == 1.0);
    CHECK_THROWS_AS(MatrixSystem::make(0.1, 1.0, 4.0), DomainError);
    CHECK_THROWS_AS(MatrixSystem::make(0.1, 0.5, 1.5), DomainError);
    // beta c >= 1 alone allows det A_2 = beta c^2 < 1.
    const MatrixSystem weak = MatrixSystem::make(0.1, 0.5, 2.0);
    CHECK(determinant(weak.a2()) == 0.5);
}

TEST_CASE("alternating signal on M(pi/4, 1/2, 4)") {
    const MatrixSystem m = MatrixSystem::make(std::numbers::pi / 4, 0.5, 4.0);
    SwitchSignal sig;
    for (int i = 0; i < 100; ++i) sig.symbols.push_back(static_cast<std::uint8_t>(1 + i % 2));
    const MatrixTrajectory t = simulate_matrix(m, {1.0, 0.0}, sig);
    const double rate = std::pow(t.norms.back() / t.norms.front(), 1.0 / 100.0);
    CHECK(rate >= 0.55);
    CHECK(rate <= 1.05);
}

TEST_CASE("determinant and norm invariants") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> theta(0.01, 0.8), c(0.1, 0.95), angle(0.0, 6.3);
    std::uniform_int_distribution<int> sym(1, 2);
    for (int trial = 0; trial < 200; ++trial) {
        const double cc = c(rng);
        // det A_2 = beta c^2, at least 1 once beta >= c^-2.
        const MatrixSystem m = MatrixSystem::make(theta(rng), cc, 1.0 / (cc * cc) + 0.5 * cc);
        SwitchSignal sig;
        for (int i = 0; i < 40; ++i) sig.symbols.push_back(static_cast<std::uint8_t>(sym(rng)));
        const double a = angle(rng);
        const MatrixTrajectory t = simulate_matrix(m, {std::cos(a), std::sin(a)}, sig);
        CHECK(t.product_determinant >= 1.0 - 1e-12);
        CHECK(t.product_determinant == doctest::Approx(t.expected_determinant).epsilon(1e-12));
        for (std::size_t i = 0; i < sig.symbols.size(); ++i)
            if (sig.symbols[i] == 1) CHECK(std::abs(t.norms[i + 1] - t.norms[i]) <= 1e-13 * t.norms[i]);
    }
}

TEST_CASE("product matrix on short runs") {
    const MatrixSystem m = MatrixSystem::make(std::numbers::pi / 4, 0.5, 4.0);
    const MatrixTrajectory t = simulate_matrix(m, {0.6, 0.8}, SwitchSignal{{1, 2, 2, 1, 2, 1}});
    CHECK(determinant(t.product) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.product_determinant == doctest::Approx(1.0).epsilon(1e-14));
    const Vec2 direct = mat_vec(t.product, {0.6, 0.8});
    CHECK(direct[0] == doctest::Approx(t.states.back()[0]).epsilon(1e-14));
    CHECK(direct[1] == doctest::Approx(t.states.back()[1]).epsilon(1e-14));
}

TEST_CASE("linearized rate") {
    CHECK(linearized_rate(0.5, DigitWord(0, {1, 1}), 2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(linearized_rate(0.5, DigitWord(0, {0, 0, 0}), 3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(linearized_rate(0.25, DigitWord(0, {2, 1, 1, 0}), 4) == doctest::Approx(0.5).epsilon(1e-15));
    // Only the first k digits count.
    CHECK(linearized_rate(0.25, DigitWord(0, {2, 1, 1, 0, 9}), 4) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bookkeeping identity and rate from the block count") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> len(1, 30), digit(0, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Digit> ds(static_cast<std::size_t>(len(rng)));
        for (Digit& d : ds) d = digit(rng);
        const DigitWord w(0, ds);
        const SignalAccounting acc = account(digits_to_switching(w));
        CHECK(acc.identity_holds);
        CHECK(acc.length == acc.twos * (1 + acc.mean_digit.num() / acc.mean_digit.den()) +
                                (acc.twos * (acc.mean_digit.num() % acc.mean_digit.den())) / acc.mean_digit.den());
        CHECK(acc.length == acc.twos + acc.ones);
        // c^(T2/T) is c^(1/(1+dbar)).
        const double c = 0.3;
        CHECK(linearized_rate(c, w, w.size()) ==
              doctest::Approx(std::pow(c, static_cast<double>(acc.twos) / static_cast<double>(acc.length))).epsilon(1e-14));
    }
}

TEST_CASE("digit-driven signal follows the linearized rate") {
    // Start at angle theta * u, u the word's value; each 1 moves u by -1 and
    // each 2 scales it by beta, so the state hugs the x1 axis and every A_2
    // shrinks the norm by c (1 + O(theta^2)).
    const double beta = 2.5, c = 0.5;
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> digit(0, 2);
    for (double theta : {1e-2, 1e-3}) {
        const MatrixSystem m = MatrixSystem::make(theta, c, beta);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Digit> ds(8);
            for (Digit& d : ds) d = digit(rng);
            const DigitWord w(0, ds);
            double u = 0.0;
            for (int j = 7; j >= 0; --j) u = u / beta + static_cast<double>(ds[static_cast<std::size_t>(j)]);
            const SwitchSignal sig = digits_to_switching(w);
            const MatrixTrajectory t = simulate_matrix(m, {std::cos(theta * u), std::sin(theta * u)}, sig);
            const double rate = std::pow(t.norms.back(), 1.0 / static_cast<double>(sig.symbols.size()));
            worst = std::max(worst, std::abs(rate - linearized_rate(c, w, 8)));
        }
        CAPTURE(theta);
        CHECK(worst < 50.0 * theta * theta);
    }
}

TEST_CASE("strategies") {
    const MatrixSystem m = MatrixSystem::make(0.1, 0.5, 4.0);
    const Strategy g = greedy_angle_strategy();
    CHECK(g(ProbeState{{1.0, 0.05}, 0}, m) == 2);
    CHECK(g(ProbeState{{1.0, 0.5}, 0}, m) == 1);
    CHECK(g(ProbeState{{-1.0, 0.05}, 0}, m) == 2);
    const Strategy s = signal_strategy(SwitchSignal{{1, 2, 2}});
    CHECK(s(ProbeState{{1.0, 0.0}, 0}, m) == 1);
    CHECK(s(ProbeState{{1.0, 0.0}, 4}, m) == 2);
    CHECK(s(ProbeState{{1.0, 0.0}, 3}, m) == 1);
    // Always contracting: A2 forever from the x1 axis.
    CHECK(empirical_rate(m, {1.0, 0.0}, signal_strategy(SwitchSignal{{2}}), 5000) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("probe sanity") {
    ProbeOptions o;
    o.T = 10000;
    o.initial_vectors = 64;
    const double theta = std::numbers::pi / 64;
    const auto rows = conjecture1_probe(0.5, 4.0, {theta}, greedy_angle_strategy(), 1.0, o);
    CHECK(rows.size() == 64);
    const auto sup = probe_supremum(rows);
    REQUIRE(sup.size() == 1);
    CHECK(sup[0].empirical_rate > 0.5);
    CHECK(sup[0].empirical_rate < 1.0);
    CHECK(sup[0].reference_rate == doctest::Approx(std::sqrt(0.5)));
    ProbeOptions par = o;
    par.workers = 4;
    const auto rows4 = conjecture1_probe(0.5, 4.0, {theta}, greedy_angle_strategy(), 1.0, par);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].empirical_rate == rows4[i].empirical_rate);
    CHECK_THROWS_AS(conjecture1_probe(0.5, 4.0, {1.0}, greedy_angle_strategy(), 1.0, o), DomainError);
    CHECK_THROWS_AS(conjecture1_probe(0.5, 4.0, {0.1, 0.2}, greedy_angle_strategy(), 1.0, o), DomainError);
    std::ostringstream csv;
    write_probe_csv(csv, sup);
    CHECK(csv.str().rfind("theta,x0_angle,empirical_rate,reference_rate,T\n", 0) == 0);
}
