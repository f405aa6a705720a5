#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "oracles.hpp"
#include "pacer/flat_selection.hpp"
#include "pacer/rng.hpp"

using namespace pacer;

namespace {

// Random small histogram over random edges; edge grid always spans [0,1].
QualityHistogram random_histogram(SplitMix64& rng, int max_bins = 40) {
    const int bins = 2 + static_cast<int>(rng() % max_bins);
    std::vector<double> edges{0.0, 1.0};
    for (int i = 1; i < bins; ++i) edges.push_back(0.001 + 0.998 * uniform01(rng));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    QualityHistogram h(std::move(edges));
    const int points = static_cast<int>(rng() % 500);
    for (int i = 0; i < points; ++i) h.add(uniform01(rng));
    return h;
}

}  // namespace

TEST_CASE("histogram layout and filling") {
    auto h = QualityHistogram::log_linear();
    CHECK(h.bins() == 1000);
    CHECK(h.edges().front() == 0.0);
    CHECK(h.edges().back() == 1.0);

    h.add(0.0);
    h.add(0.001);
    h.add(0.5);
    h.add(1.0);
    CHECK(h.total_count() == 4);

    std::int64_t sum = 0;
    for (auto c : h.counts()) sum += c;
    CHECK(sum == 4);

    std::ostringstream out;
    h.dump_csv(out);
    CHECK(out.str().substr(0, 23) == "bin_low,bin_high,count\n");
}

TEST_CASE("solve_threshold on the documented example") {
    // Bins anchored at 0.001, 0.002 and 0.005 holding 8000/1500/500 requests.
    QualityHistogram h(std::vector<double>{0.0, 0.001, 0.002, 0.005, 1.0});
    for (int i = 0; i < 8000; ++i) h.add(0.001);
    for (int i = 0; i < 1500; ++i) h.add(0.002);
    for (int i = 0; i < 500; ++i) h.add(0.005);

    const double expected = oracle::exhaustive_threshold(h.edges(), h.counts(), 2000);
    CHECK(expected == 0.002);
    CHECK(solve_threshold(h, 2000) == 0.002);

    SUBCASE("demand above supply accepts everything") {
        CHECK(solve_threshold(h, 10'000) == h.edges().front());
        CHECK(solve_threshold(h, 50'000) == h.edges().front());
    }
    SUBCASE("zero demand accepts nothing") { CHECK(solve_threshold(h, 0) == 1.0); }
    SUBCASE("empty histogram is an error") {
        QualityHistogram empty(std::vector<double>{0.0, 0.5, 1.0});
        CHECK_THROWS_AS(solve_threshold(empty, 10), std::invalid_argument);
    }
}

TEST_CASE("solve_threshold agrees with the exhaustive scan") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        auto h = random_histogram(rng);
        if (h.total_count() == 0) continue;
        const std::int64_t required = static_cast<std::int64_t>(rng() % (h.total_count() + 10));
        const double got = solve_threshold(h, required);
        const double want = oracle::exhaustive_threshold(h.edges(), h.counts(), required);
        CHECK(got == want);
    }
}

TEST_CASE("tail above the threshold is within one bin of the demand") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        auto h = random_histogram(rng);
        if (h.total_count() == 0) continue;
        const std::int64_t required = 1 + static_cast<std::int64_t>(rng() % h.total_count());
        const double tau = solve_threshold(h, required);
        // Tail count above tau.
        std::int64_t tail = 0;
        std::int64_t largest_bin = 0;
        for (int i = 0; i < h.bins(); ++i) {
            if (h.edges()[i] >= tau) tail += h.counts()[i];
            largest_bin = std::max(largest_bin, h.counts()[i]);
        }
        CHECK(std::llabs(tail - required) <= largest_bin);
    }
}

TEST_CASE("threshold stats match the paper recurrences") {
    ThresholdStats s;
    s.update(0.002);
    CHECK(s.mean == doctest::Approx(0.002));
    CHECK(s.variance == 0.0);

    ThresholdStats seq;
    for (double tau : {1.0, 2.0, 3.0}) seq.update(tau);
    const auto ref = oracle::batch_mean_variance(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(ref.mean == doctest::Approx(2.0));
    CHECK(ref.variance == doctest::Approx(2.0 / 3.0));
    CHECK(seq.mean == doctest::Approx(ref.mean));
    CHECK(seq.variance == doctest::Approx(ref.variance));

    ThresholdStats constant;
    for (int i = 0; i < 10; ++i) {
        constant.update(0.25);
        CHECK(constant.variance == doctest::Approx(0.0));
    }
}

TEST_CASE("online stats reproduce batch mean and variance to 1e-9") {
    SplitMix64 rng(4242);
    for (int len : {10, 1'000, 100'000}) {
        std::vector<double> xs;
        xs.reserve(len);
        ThresholdStats s;
        for (int i = 0; i < len; ++i) {
            const double x = uniform01(rng);
            xs.push_back(x);
            s.update(x);
        }
        const auto ref = oracle::batch_mean_variance(xs);
        CHECK(s.mean == doctest::Approx(ref.mean).epsilon(1e-9));
        CHECK(s.variance == doctest::Approx(ref.variance).epsilon(1e-9));
    }
}

TEST_CASE("confidence bounds") {
    ThresholdStats s;
    s.mean = 0.002;
    s.variance = 0.0005 * 0.0005;
    s.count = 10;
    s.lookback_days = 4;
    auto b = confidence_bounds(s);
    CHECK(b.lower == doctest::Approx(0.00151));
    CHECK(b.upper == doctest::Approx(0.00249));

    SUBCASE("zero variance collapses the band") {
        s.variance = 0.0;
        auto c = confidence_bounds(s);
        CHECK(c.lower == doctest::Approx(s.mean));
        CHECK(c.upper == doctest::Approx(s.mean));
    }
    SUBCASE("band contains the mean and narrows with more days") {
        SplitMix64 rng(77);
        for (int i = 0; i < 200; ++i) {
            ThresholdStats t;
            t.mean = uniform01(rng);
            t.variance = uniform01(rng) * 0.1;
            t.count = 1 + static_cast<std::int64_t>(rng() % 50);
            t.lookback_days = 1 + static_cast<int>(rng() % 10);
            auto b1 = confidence_bounds(t);
            CHECK(b1.lower <= t.mean);
            CHECK(b1.upper >= t.mean);
            ThresholdStats t2 = t;
            t2.lookback_days = t.lookback_days + 3;
            auto b2 = confidence_bounds(t2);
            CHECK(b2.upper - b2.lower <= b1.upper - b1.lower + 1e-15);
        }
    }
    SUBCASE("no observations is an error") {
        ThresholdStats empty;
        CHECK_THROWS_AS(confidence_bounds(empty), std::logic_error);
    }
}

TEST_CASE("demand sizing chain") {
    // $10 slot budget, half-cent impressions, 50% win rate, 25% pacing.
    auto plan = required_requests(10'000'000, 5'000, 0.5, PacingRate{0.25});
    CHECK(plan.impressions == 2'000);
    CHECK(plan.bids == 4'000);
    CHECK(plan.requests == 16'000);

    SUBCASE("perfect win rate and pacing need exactly the impressions") {
        auto p = required_requests(10'000'000, 5'000, 1.0, PacingRate{1.0});
        CHECK(p.requests == p.impressions);
    }
    SUBCASE("zero budget needs nothing") {
        auto p = required_requests(0, 5'000, 0.5, PacingRate{0.5});
        CHECK(p.requests == 0);
    }
    SUBCASE("degenerate rates cannot be sized") {
        CHECK_THROWS_WITH_AS(required_requests(1, 5'000, 0.0, PacingRate{0.5}),
                             "cannot size demand", std::invalid_argument);
        CHECK_THROWS_WITH_AS(required_requests(1, 5'000, 0.5, PacingRate{0.0}),
                             "cannot size demand", std::invalid_argument);
    }
}

TEST_CASE("flat decision rule") {
    const ConfidenceBounds bounds{0.00151, 0.00249};
    const Money c_star = 5'000;

    auto above = decide_flat(0.003, bounds, PacingRate{0.3}, c_star);
    CHECK(above.kind == FlatDecision::Kind::Bid);
    CHECK(above.price == c_star);

    auto below = decide_flat(0.001, bounds, PacingRate{0.3}, c_star);
    CHECK(below.kind == FlatDecision::Kind::Drop);

    auto inside = decide_flat(0.002, bounds, PacingRate{0.3}, c_star);
    CHECK(inside.kind == FlatDecision::Kind::Probabilistic);
    CHECK(inside.probability == doctest::Approx(0.3));
}

TEST_CASE("flat decision is monotone in the predicted rate") {
    SplitMix64 rng(9);
    auto rank = [](const FlatDecision& d) {
        switch (d.kind) {
            case FlatDecision::Kind::Drop: return 0;
            case FlatDecision::Kind::Probabilistic: return 1;
            case FlatDecision::Kind::Bid: return 2;
        }
        return 0;
    };
    for (int i = 0; i < 500; ++i) {
        const double a = uniform01(rng);
        const double b = uniform01(rng);
        ConfidenceBounds bounds{std::min(a, b), std::max(a, b)};
        const double lo = uniform01(rng);
        const double hi = lo + (1.0 - lo) * uniform01(rng);
        const auto d_lo = decide_flat(lo, bounds, PacingRate{0.5}, 100);
        const auto d_hi = decide_flat(hi, bounds, PacingRate{0.5}, 100);
        CHECK(rank(d_hi) >= rank(d_lo));
    }
}
