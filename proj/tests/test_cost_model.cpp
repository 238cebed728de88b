#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "snnsim/cost_model.hpp"

using namespace snnsim;

namespace {

MitigationPolicy policy_of(PolicyKind kind)
{
    MitigationPolicy p;
    p.kind = kind;
    if (p.bounds_weights()) {
        p.wgh_th = 200;
        p.wgh_def = 100;
    }
    return p;
}

} // namespace

TEST_CASE("re-execution costs exactly 3x in latency, energy, and cycles")
{
    const CostParams params;
    const auto base = estimate_cost(policy_of(PolicyKind::NoMitigation), 784, 100, 100, params);
    const auto tmr = estimate_cost(policy_of(PolicyKind::ReExecutionTMR), 784, 100, 100, params);
    CHECK(std::abs(tmr.latency / base.latency - 3.0) <= 1e-12);
    CHECK(std::abs(tmr.energy / base.energy - 3.0) <= 1e-12);
    CHECK(tmr.cycles == 3 * base.cycles);
    CHECK(tmr.area == params.area_base);
}

TEST_CASE("BnP ratios equal the configured factors")
{
    const CostParams params;
    const auto base = estimate_cost(policy_of(PolicyKind::NoMitigation), 784, 100, 100, params);
    for (const PolicyKind kind : {PolicyKind::BnP1, PolicyKind::BnP2, PolicyKind::BnP3}) {
        const auto bnp = estimate_cost(policy_of(kind), 784, 100, 100, params);
        CHECK(std::abs(bnp.latency / base.latency - params.bnp_latency_factor) <= 1e-12);
        CHECK(std::abs(bnp.energy / base.energy - params.bnp_energy_factor) <= 1e-12);
        CHECK(bnp.energy / base.energy <= 1.6);
        CHECK(bnp.cycles == base.cycles);
    }
    CHECK(estimate_cost(policy_of(PolicyKind::BnP1), 784, 100, 100, params).area == 1.14);
    CHECK(estimate_cost(policy_of(PolicyKind::BnP2), 784, 100, 100, params).area == 1.18);
    CHECK(estimate_cost(policy_of(PolicyKind::BnP3), 784, 100, 100, params).area == 1.18);
}

TEST_CASE("tiling follows the ceiling arithmetic")
{
    const CostParams params;
    const auto nomit = policy_of(PolicyKind::NoMitigation);
    CHECK(estimate_cost(nomit, 784, 400, 100, params).tiles == 8);   // 4 * 2
    CHECK(estimate_cost(nomit, 256, 256, 100, params).tiles == 1);
    CHECK(estimate_cost(nomit, 257, 1, 100, params).tiles == 2);
    CHECK(estimate_cost(nomit, 784, 900, 100, params).tiles == 16);  // 4 * 4
}

TEST_CASE("latency and energy scale linearly in duration and tiles")
{
    const CostParams params;
    const auto nomit = policy_of(PolicyKind::NoMitigation);
    const auto d1 = estimate_cost(nomit, 784, 100, 100, params);
    const auto d2 = estimate_cost(nomit, 784, 100, 200, params);
    CHECK(d2.latency == doctest::Approx(2.0 * d1.latency).epsilon(1e-12));
    CHECK(d2.energy == doctest::Approx(2.0 * d1.energy).epsilon(1e-12));

    const auto t1 = estimate_cost(nomit, 256, 100, 100, params);
    const auto t2 = estimate_cost(nomit, 512, 100, 100, params);
    CHECK(t2.tiles == 2 * t1.tiles);
    CHECK(t2.latency == doctest::Approx(2.0 * t1.latency).epsilon(1e-12));
    CHECK(t2.energy == doctest::Approx(2.0 * t1.energy).epsilon(1e-12));
}

TEST_CASE("invalid inputs are rejected")
{
    const CostParams params;
    const auto nomit = policy_of(PolicyKind::NoMitigation);
    CHECK_THROWS_AS(estimate_cost(nomit, 0, 100, 100, params), std::invalid_argument);
    CHECK_THROWS_AS(estimate_cost(nomit, 784, 0, 100, params), std::invalid_argument);
    CHECK_THROWS_AS(estimate_cost(nomit, 784, 100, 0, params), std::invalid_argument);

    CostParams bad = params;
    bad.bnp_latency_factor = 0.5;
    CHECK_THROWS_AS(estimate_cost(nomit, 784, 100, 100, bad), std::invalid_argument);
    bad = params;
    bad.tmr_factor = 2.0;
    CHECK_THROWS_AS(estimate_cost(nomit, 784, 100, 100, bad), std::invalid_argument);

    EngineConfig engine;
    engine.reset_fault_detect_cycles = 1;
    CHECK_THROWS_AS(estimate_cost(nomit, 784, 100, 100, params, engine),
            std::invalid_argument);
}
