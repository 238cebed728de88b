#include <doctest.h>

#include <vector>
#include <stdexcept>

#include "snnsim/classify.hpp"

using namespace snnsim;

TEST_CASE("unique maximum wins")
{
    NeuronLabelAssignment a;
    a.num_classes = 10;
    a.label_of_neuron = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<std::uint32_t> counts(10, 0);
    counts[6] = 5;
    CHECK(classify(counts, a) == 6);
}

TEST_CASE("all-zero counts yield no prediction")
{
    NeuronLabelAssignment a;
    a.num_classes = 3;
    a.label_of_neuron = {0, 1, 2};
    const std::vector<std::uint32_t> counts(3, 0);
    CHECK(classify(counts, a) == kNoPrediction);
}

TEST_CASE("exact ties break toward the lower class")
{
    NeuronLabelAssignment a;
    a.num_classes = 4;
    a.label_of_neuron = {0, 1, 2, 3};
    std::vector<std::uint32_t> counts = {0, 7, 0, 7};
    CHECK(classify(counts, a) == 1);
}

TEST_CASE("comparison is on the mean over assigned neurons")
{
    NeuronLabelAssignment a;
    a.num_classes = 2;
    a.label_of_neuron = {0, 0, 1};
    // class 0: mean (3+0)/2 = 1.5; class 1: mean 1 -> class 0 wins
    CHECK(classify(std::vector<std::uint32_t>{3, 0, 1}, a) == 0);
    // class 0: mean (2+0)/2 = 1; class 1: mean 1 -> exact tie -> class 0
    CHECK(classify(std::vector<std::uint32_t>{2, 0, 1}, a) == 0);
    // class 0: mean (1+0)/2 = 0.5; class 1: mean 1 -> class 1 wins
    CHECK(classify(std::vector<std::uint32_t>{1, 0, 1}, a) == 1);
}

TEST_CASE("classes with no assigned neurons are skipped")
{
    NeuronLabelAssignment a;
    a.num_classes = 5;  // classes 3 and 4 own no neurons
    a.label_of_neuron = {0, 1, 2};
    CHECK(classify(std::vector<std::uint32_t>{0, 2, 1}, a) == 1);
}

TEST_CASE("length mismatch is rejected")
{
    NeuronLabelAssignment a;
    a.num_classes = 2;
    a.label_of_neuron = {0, 1};
    const std::vector<std::uint32_t> counts(3, 1);
    CHECK_THROWS_AS(classify(counts, a), std::invalid_argument);
}
