#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "snnsim/encoding.hpp"

using namespace snnsim;

TEST_CASE("all-zero image never spikes")
{
    const std::vector<std::uint8_t> image(64, 0);
    const SpikeTrain train = encode_poisson(image, 50, 0.5, 1);
    CHECK(train.total_spikes() == 0);
}

TEST_CASE("saturated pixel at rate 1 fires every timestep")
{
    std::vector<std::uint8_t> image(16, 0);
    image[5] = 255;
    const SpikeTrain train = encode_poisson(image, 10, 1.0, 7);
    CHECK(train.count_for_input(5) == 10);
    CHECK(train.total_spikes() == 10);
}

TEST_CASE("argument validation")
{
    const std::vector<std::uint8_t> image(4, 100);
    CHECK_THROWS_AS(encode_poisson({}, 10, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(encode_poisson(image, 0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(encode_poisson(image, 10, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(encode_poisson(image, 10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("deterministic given the seed")
{
    std::vector<std::uint8_t> image(32);
    for (std::size_t i = 0; i < image.size(); ++i) {
        image[i] = static_cast<std::uint8_t>(i * 8);
    }
    const SpikeTrain a = encode_poisson(image, 40, 0.3, 99);
    const SpikeTrain b = encode_poisson(image, 40, 0.3, 99);
    const SpikeTrain c = encode_poisson(image, 40, 0.3, 100);
    std::uint64_t diff_c = 0;
    for (int t = 0; t < 40; ++t) {
        REQUIRE(std::vector<std::uint16_t>(a.active_at(t).begin(), a.active_at(t).end()) ==
                std::vector<std::uint16_t>(b.active_at(t).begin(), b.active_at(t).end()));
        diff_c += a.active_at(t).size() != c.active_at(t).size() ? 1 : 0;
    }
    CHECK(diff_c > 0);
}

TEST_CASE("empirical rate of a half-intensity pixel within 3 sigma")
{
    // p = (128/255) * 0.25, n = 10000 timesteps.
    std::vector<std::uint8_t> image(8, 0);
    image[3] = 128;
    const int n = 10000;
    const double p = 128.0 / 255.0 * 0.25;
    const SpikeTrain train = encode_poisson(image, n, 0.25, 4242);
    const double mean = static_cast<double>(train.count_for_input(3)) / n;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(mean - p) <= 3.0 * sigma);
}

// Chi-square goodness of fit of per-presentation spike counts against
// Binomial(duration, rate), alpha = 0.01. The expected frequencies come
// from the binomial pmf computed with lgamma, independent of the encoder.
TEST_CASE("spike counts per line follow the binomial law")
{
    const int duration = 50;
    const double max_rate = 0.25;
    const std::uint8_t pixel = 204;             // p = 0.8 * 0.25 = 0.2
    const double p = pixel / 255.0 * max_rate;
    const int trials = 10000;

    std::vector<std::uint8_t> image(4, 0);
    image[1] = pixel;
    std::vector<int> observed(duration + 1, 0);
    for (int k = 0; k < trials; ++k) {
        const SpikeTrain train =
                encode_poisson(image, duration, max_rate, 31337 + k);
        observed[train.count_for_input(1)] += 1;
    }

    auto binom_pmf = [&](int k) {
        const double log_comb = std::lgamma(duration + 1.0) - std::lgamma(k + 1.0) -
                std::lgamma(duration - k + 1.0);
        return std::exp(log_comb + k * std::log(p) + (duration - k) * std::log(1.0 - p));
    };

    // Pool counts <=4 and >=16 so every expected frequency stays above ~5.
    const int lo = 4;
    const int hi = 16;
    std::vector<double> expected(hi - lo + 1, 0.0);
    std::vector<double> got(hi - lo + 1, 0.0);
    for (int k = 0; k <= duration; ++k) {
        const int bin = k <= lo ? 0 : (k >= hi ? hi - lo : k - lo);
        expected[bin] += trials * binom_pmf(k);
        got[bin] += observed[k];
    }

    double chi2 = 0.0;
    for (std::size_t b = 0; b < expected.size(); ++b) {
        REQUIRE(expected[b] > 4.0);
        chi2 += (got[b] - expected[b]) * (got[b] - expected[b]) / expected[b];
    }
    // 13 bins -> df = 12; chi2_{0.99,12} = 26.217.
    CHECK(chi2 < 26.217);
}
