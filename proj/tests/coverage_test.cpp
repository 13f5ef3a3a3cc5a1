#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "betarep/coverage.hpp"

using namespace betarep;

namespace {

// Every word of length k with digit sum <= S, by odometer.
std::vector<std::vector<int>> words_up_to(int k, int S) {
    std::vector<std::vector<int>> out;
    std::vector<int> w(static_cast<std::size_t>(k), 0);
    for (;;) {
        int sum = 0;
        for (int d : w) sum += d;
        if (sum <= S) out.push_back(w);
        int i = k - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == S) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

// Largest gap among word values in [0, 1) and the endpoint 1.
long double brute_gap(long double beta, int k, int S) {
    std::vector<long double> v;
    for (const auto& w : words_up_to(k, S)) {
        long double x = 0.0L, p = 1.0L;
        for (int d : w) {
            p /= beta;
            x += d * p;
        }
        if (x < 1.0L) v.push_back(x);
    }
    v.push_back(1.0L);
    std::sort(v.begin(), v.end());
    long double gap = v.front();
    for (std::size_t i = 1; i < v.size(); ++i) gap = std::max(gap, v[i] - v[i - 1]);
    return gap;
}

int brute_first_cover(long double beta, int k, int S_max) {
    const long double w = std::pow(beta, -static_cast<long double>(k));
    for (int S = 0; S <= S_max; ++S)
        if (brute_gap(beta, k, S) <= w + 1e-14L) return S;
    return -1;
}

}  // namespace

TEST_CASE("composition counts") {
    for (int k = 1; k <= 8; ++k) {
        std::uint64_t cumulative = 0;
        for (int S = 0; S <= 16; ++S) {
            CompositionStream s(k, S);
            std::vector<Digit> prev;
            while (s.next()) {
                ++cumulative;
                Digit sum = 0;
                for (Digit d : s.current()) sum += d;
                CHECK(sum == S);
                if (!prev.empty()) CHECK(std::lexicographical_compare(prev.begin(), prev.end(), s.current().begin(), s.current().end()));
                prev = s.current();
            }
            CHECK(cumulative == binomial(S + k, k));
        }
    }
    CHECK(binomial(48, 12) == 69668534468ULL);
}

TEST_CASE("composition examples") {
    const auto a = enumerate_by_digit_sum(2, 1);
    REQUIRE(a.size() == 2);
    CHECK(a[0].digits == std::vector<Digit>{0, 1});
    CHECK(a[1].digits == std::vector<Digit>{1, 0});
    CHECK(a[0].j_min == 1);
    const auto b = enumerate_by_digit_sum(3, 2);
    CHECK(b.size() == 6);
    std::set<std::vector<Digit>> unique;
    for (const auto& w : b) unique.insert(w.digits);
    CHECK(unique.size() == 6);
    CHECK(enumerate_by_digit_sum(4, 0).size() == 1);
}

TEST_CASE("coverage against exhaustive gaps") {
    struct Case {
        const char* beta;
        int k;
    };
    for (const Case c : {Case{"2", 6}, Case{"3", 5}, Case{"phi", 2}, Case{"phi", 5}, Case{"2.5", 4}, Case{"e", 4},
                         Case{"gamma5", 6}, Case{"mu3", 5}, Case{"1.3", 6}}) {
        const std::string name = c.beta;
        const Beta b = std::isdigit(static_cast<unsigned char>(name[0])) ? Beta::from_decimal(name) : Beta::named(name);
        const int S_max = default_sum_limit(b, c.k);
        const CoverageReport r = coverage_upper_bound(b, c.k, S_max);
        const int expected = brute_first_cover(static_cast<long double>(b.approx()), c.k, S_max);
        CAPTURE(name);
        CAPTURE(c.k);
        REQUIRE(expected >= 0);
        CHECK(r.covered);
        CHECK(r.S == expected);
        CHECK(r.bound == Rational(expected, c.k));
        CHECK(r.worst_gap <= std::pow(b.approx(), -c.k) + kCoverageTolerance);
        CHECK(r.worst_gap == doctest::Approx(static_cast<double>(brute_gap(b.approx(), c.k, expected))).epsilon(1e-9));
        const SpotCheck sc = spot_check_coverage(b, c.k, r.S, 10000, 42);
        CHECK(sc.failures == 0);
    }
}

TEST_CASE("desk-scale bounds") {
    const CoverageReport two = coverage_upper_bound(Beta::from_double(2.0), 6, 12);
    CHECK(two.S == 6);
    CHECK(two.bound == Rational(1));
    CHECK(two.sequences_examined <= binomial(12, 6));  // pruned words are not counted
    const CoverageReport three = coverage_upper_bound(Beta::from_double(3.0), 5, 20);
    CHECK(three.S == 10);
    CHECK(three.bound == Rational(2));
    // One digit sum short leaves a hole a sampler finds.
    CHECK(spot_check_coverage(Beta::from_double(2.0), 6, 5, 10000, 1).failures > 0);
    CHECK(spot_check_coverage(Beta::from_double(3.0), 5, 9, 10000, 1).failures > 0);
}

TEST_CASE("uncovered and budget") {
    const CoverageReport r = coverage_upper_bound(Beta::from_double(2.0), 6, 4);
    CHECK_FALSE(r.covered);
    CHECK(r.status == CoverageStatus::uncovered);
    CHECK_FALSE(r.bound);
    CHECK(r.S == 4);
    CoverageOptions o;
    o.sequence_budget = 30;
    const CoverageReport b = coverage_upper_bound(Beta::from_double(2.0), 6, 12, o);
    CHECK(b.status == CoverageStatus::budget_exceeded);
    CHECK_FALSE(b.covered);
    CHECK(b.sequences_examined >= 30);
    CHECK(b.S < 6);
}

TEST_CASE("more words never uncover") {
    const Beta b = Beta::named("e");
    const CoverageReport r = coverage_upper_bound(b, 5, 20);
    REQUIRE(r.covered);
    for (int S = r.S; S <= r.S + 3; ++S)
        CHECK(brute_gap(b.approx(), 5, S) <= std::pow(b.approx(), -5) + 1e-14);
}

TEST_CASE("workers do not change the result") {
    for (const char* text : {"2.05", "2.6", "3.65"}) {
        const Beta b = Beta::from_decimal(text);
        CoverageOptions one, eight;
        eight.workers = 8;
        const CoverageReport a = coverage_upper_bound(b, 7, 20, one);
        const CoverageReport c = coverage_upper_bound(b, 7, 20, eight);
        CHECK(a.S == c.S);
        CHECK(a.covered == c.covered);
        CHECK(a.worst_gap == c.worst_gap);
        CHECK(a.sequences_examined == c.sequences_examined);
    }
}

TEST_CASE("checkpoint resume") {
    const auto path = (std::filesystem::temp_directory_path() / "betarep_coverage_test.ck").string();
    std::filesystem::remove(path);
    const Beta b = Beta::named("e");
    CoverageOptions o;
    o.checkpoint_path = path;
    const CoverageReport partial = coverage_upper_bound(b, 6, 4, o);
    CHECK_FALSE(partial.covered);
    CHECK(std::filesystem::exists(path));
    o.resume = true;
    const CoverageReport resumed = coverage_upper_bound(b, 6, 20, o);
    const CoverageReport fresh = coverage_upper_bound(b, 6, 20);
    CHECK(resumed.covered);
    CHECK(resumed.S == fresh.S);
    CHECK(resumed.worst_gap == fresh.worst_gap);
    CHECK(resumed.sequences_examined == fresh.sequences_examined);
    // A checkpoint from another base is refused.
    CHECK_THROWS_AS(coverage_upper_bound(Beta::named("phi"), 6, 20, o), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("sweep") {
    SweepOptions o;
    o.k_max = 6;
    const auto two = sweep({Beta::from_double(2.0)}, o);
    REQUIRE(two.size() == 1);
    CHECK(two[0].best_bound == Rational(1));
    const auto phi = sweep({Beta::named("phi")}, o);
    CHECK(*phi[0].best_bound >= Rational(1, 2));
    CHECK(phi[0].reports.size() == 5);

    // Just above 2 the numeric bound drops below 1.
    o.k_max = 10;
    o.workers = 4;
    std::vector<Beta> grid;
    for (const char* t : {"2.05", "2.1", "2.15", "2.2", "2.25"}) grid.push_back(Beta::from_decimal(t));
    const auto near = sweep(grid, o);
    for (const auto& pt : near) {
        CAPTURE(pt.beta.label());
        REQUIRE(pt.best_bound);
        CHECK(*pt.best_bound < Rational(1));
        CHECK(pt.errors.empty());
    }
    o.workers = 1;
    const auto serial = sweep(grid, o);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(serial[i].best_bound == near[i].best_bound);
    CHECK_THROWS_AS(sweep({}, o), DomainError);

    std::ostringstream csv;
    write_coverage_csv_header(csv);
    CHECK(csv.str() == "beta,k,S,bound,covered,worst_gap,sequences_examined,wall_time\n");
}
