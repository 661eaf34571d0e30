#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "test_util.hpp"
#include "wsim/gates.hpp"

using namespace wsim;
using wsim::test::make_state;
using wsim::test::random_state;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);

// Two-mode state for a pair of port occupancies.
StateVector port_state(Occupancy control, Occupancy target) {
    Configuration config(2);
    config.set(1, control);
    config.set(2, target);
    return StateVector::basis_state(config);
}

constexpr Occupancy all_occupancies[] = {Occupancy::Vacuum, Occupancy::PhotonH,
                                         Occupancy::PhotonV};

}  // namespace

TEST_CASE("hadamard") {
    StateVector h = apply_hadamard(make_state({{"H", 1.0}}), 1);
    CHECK(h.amplitude(parse_configuration("H")).real() == doctest::Approx(s2).epsilon(1e-12));
    CHECK(h.amplitude(parse_configuration("V")).real() == doctest::Approx(s2).epsilon(1e-12));

    StateVector v = apply_hadamard(make_state({{"V", 1.0}}), 1);
    CHECK(v.amplitude(parse_configuration("H")).real() == doctest::Approx(s2).epsilon(1e-12));
    CHECK(v.amplitude(parse_configuration("V")).real() == doctest::Approx(-s2).epsilon(1e-12));

    SUBCASE("vacuum passes through") {
        StateVector out = apply_hadamard(make_state({{"0V", 1.0}}), 1);
        CHECK(out.amplitude(parse_configuration("0V")) == Amplitude{1.0, 0.0});
    }

    SUBCASE("self inverse") {
        std::mt19937 rng(23);
        for (int i = 0; i < 100; ++i) {
            StateVector psi = random_state(rng, 3, {1, 2, 3});
            StateVector twice = apply_hadamard(apply_hadamard(psi, 2), 2);
            CHECK(max_amplitude_difference(twice, psi) < 1e-12);
        }
    }
}

TEST_CASE("pbs routing") {
    const PbsGate split{1, 2, 3, 4};

    CHECK(apply_pbs(make_state({{"H000", 1.0}}), split)
              .amplitude(parse_configuration("00H0")) == Amplitude{1.0, 0.0});
    CHECK(apply_pbs(make_state({{"V000", 1.0}}), split)
              .amplitude(parse_configuration("000V")) == Amplitude{1.0, 0.0});
    CHECK(apply_pbs(make_state({{"0H00", 1.0}}), split)
              .amplitude(parse_configuration("000H")) == Amplitude{1.0, 0.0});
    CHECK(apply_pbs(make_state({{"0V00", 1.0}}), split)
              .amplitude(parse_configuration("00V0")) == Amplitude{1.0, 0.0});
    CHECK(apply_pbs(make_state({{"0000", 1.0}}), split)
              .amplitude(parse_configuration("0000")) == Amplitude{1.0, 0.0});

    SUBCASE("transmitted and reflected photons can share an output") {
        // H from in1 and V from in2 both land in out1.
        CHECK_THROWS_WITH_AS(apply_pbs(make_state({{"HV00", 1.0}}), split),
                             doctest::Contains("bunched"), PhysicsError);
        // Complementary pair routes cleanly.
        StateVector ok = apply_pbs(make_state({{"HH00", 1.0}}), split);
        CHECK(ok.amplitude(parse_configuration("00HH")) == Amplitude{1.0, 0.0});
    }

    SUBCASE("occupied output mode rejected") {
        CHECK_THROWS_AS(apply_pbs(make_state({{"H0V0", 1.0}}), split), PhysicsError);
    }

    SUBCASE("mirrored pbs undoes the split") {
        const PbsGate merge{3, 4, 1, 2};
        std::mt19937 rng(31);
        for (int i = 0; i < 100; ++i) {
            // At most one photon across the input pair keeps the split safe.
            StateVector psi = random_state(rng, 4, {1});
            StateVector back = apply_pbs(apply_pbs(psi, split), merge);
            CHECK(max_amplitude_difference(back, psi) < 1e-12);
        }
    }
}

TEST_CASE("pc merge") {
    const PcGate pc{1, 2, 3};
    CHECK(apply_pc(make_state({{"V00", 1.0}}), pc).amplitude(parse_configuration("00V")) ==
          Amplitude{1.0, 0.0});
    CHECK(apply_pc(make_state({{"0H0", 1.0}}), pc).amplitude(parse_configuration("00H")) ==
          Amplitude{1.0, 0.0});
    CHECK(apply_pc(make_state({{"000", 1.0}}), pc).amplitude(parse_configuration("000")) ==
          Amplitude{1.0, 0.0});
    CHECK_THROWS_WITH_AS(apply_pc(make_state({{"HV0", 1.0}}), pc),
                         doctest::Contains("collision"), PhysicsError);
    CHECK_THROWS_AS(apply_pc(make_state({{"H0V", 1.0}}), pc), PhysicsError);
}

TEST_CASE("cnot") {
    const CnotGate cnot{1, 2};
    CHECK(apply_cnot(make_state({{"H0", 1.0}}), cnot).amplitude(parse_configuration("H0")) ==
          vacuum_eta);
    CHECK(apply_cnot(make_state({{"0V", 1.0}}), cnot).amplitude(parse_configuration("0V")) ==
          vacuum_eta);
    CHECK(apply_cnot(make_state({{"VV", 1.0}}), cnot).amplitude(parse_configuration("VH")) ==
          Amplitude{1.0, 0.0});
    CHECK(apply_cnot(make_state({{"VH", 1.0}}), cnot).amplitude(parse_configuration("VV")) ==
          Amplitude{1.0, 0.0});
    CHECK(apply_cnot(make_state({{"HV", 1.0}}), cnot).amplitude(parse_configuration("HV")) ==
          Amplitude{1.0, 0.0});

    SUBCASE("self inverse") {
        std::mt19937 rng(37);
        for (int i = 0; i < 100; ++i) {
            StateVector psi = random_state(rng, 2, {1, 2});
            StateVector twice = apply_cnot(apply_cnot(psi, cnot), cnot);
            CHECK(max_amplitude_difference(twice, psi) < 1e-12);
        }
    }
}

TEST_CASE("vgate truth table") {
    using enum Occupancy;
    for (Occupancy c : all_occupancies)
        for (Occupancy t : all_occupancies) {
            auto [out_c, out_t] = vgate_truth_table({c, t});
            if (c == PhotonV && t == PhotonV) {
                CHECK(out_c == PhotonV);
                CHECK(out_t == PhotonH);
            } else {
                CHECK(out_c == c);
                CHECK(out_t == t);
            }
        }
}

TEST_CASE("composite vgate equals the direct truth table") {
    const VGate gate{1, 2, 3, 4};
    for (Occupancy c : all_occupancies)
        for (Occupancy t : all_occupancies) {
            StateVector in = port_state(c, t);
            StateVector composite = apply_vgate_composite(in, gate);
            auto [out_c, out_t] = vgate_truth_table({c, t});
            StateVector expected = port_state(out_c, out_t);
            CAPTURE(format_configuration(in.terms().begin()->first));
            CHECK(max_amplitude_difference(composite, expected) < 1e-12);
            CHECK(composite.mode_count() == 2);  // aux rails removed again
        }

    SUBCASE("superpositions extend linearly") {
        StateVector in = make_state({{"HV", s2}, {"VV", {0.0, s2}}});
        StateVector out = apply_vgate_composite(in, gate);
        CHECK(std::abs(out.amplitude(parse_configuration("HV")) - Amplitude{s2, 0.0}) < 1e-12);
        CHECK(std::abs(out.amplitude(parse_configuration("VH")) - Amplitude{0.0, s2}) < 1e-12);
    }
}

TEST_CASE("vgate is idempotent on the computational inputs") {
    const VGate gate{1, 2, 3, 4};
    for (const char* text : {"HH", "HV", "VH", "VV"}) {
        StateVector once = apply_vgate_composite(make_state({{text, 1.0}}), gate);
        StateVector twice = apply_vgate_composite(once, gate);
        CHECK(max_amplitude_difference(once, twice) < 1e-12);
    }
}

TEST_CASE("vgate norm growth is reported, not hidden") {
    // (|VH> + |VV>)/sqrt2 merges onto |VH> with amplitude 2/sqrt2.
    const VGate gate{1, 2, 3, 4};
    StateVector in = make_state({{"VH", s2}, {"VV", s2}});
    StateVector out = apply_vgate_composite(in, gate);
    CHECK(out.term_count() == 1);
    CHECK(std::abs(out.amplitude(parse_configuration("VH")) - Amplitude{2.0 * s2, 0.0}) <
          1e-12);
    CHECK(norm(out) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("vgate leaves spectator modes alone") {
    const VGate gate{1, 2, 5, 6};
    StateVector out = apply_vgate_composite(make_state({{"VVHV", 1.0}}), gate);
    CHECK(out.amplitude(parse_configuration("VHHV")) == Amplitude{1.0, 0.0});
}

TEST_CASE("vgate demands vacuum aux rails") {
    const VGate gate{1, 2, 3, 4};
    CHECK_THROWS_WITH_AS(apply_vgate_composite(make_state({{"VVH0", 1.0}}), gate),
                         doctest::Contains("aux"), PhysicsError);
}

TEST_CASE("vgate rejects aliased modes") {
    CHECK_THROWS_AS(apply_vgate_composite(make_state({{"VV", 1.0}}), VGate{1, 2, 3, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_vgate_composite(make_state({{"VV", 1.0}}), VGate{1, 1, 3, 4}),
                    std::invalid_argument);
}

TEST_CASE("gates conserve photon number per term") {
    // Push all 3^4 = 81 occupancy patterns of four modes through each gate;
    // every output term must keep the input's photon count exactly. Patterns
    // a gate rejects (bunching, collision) have no output to check.
    auto expect_conserved = [](const Configuration& in, auto&& apply) {
        try {
            StateVector out = apply(StateVector::basis_state(in));
            for (const auto& [config, amp] : out.terms())
                CHECK(config.photon_count() == in.photon_count());
        } catch (const PhysicsError&) {
        }
    };
    for (int code = 0; code < 81; ++code) {
        Configuration config(4);
        int rest = code;
        for (ModeId m = 1; m <= 4; ++m, rest /= 3)
            config.set(m, static_cast<Occupancy>(rest % 3));
        expect_conserved(config, [](const StateVector& s) { return apply_hadamard(s, 1); });
        expect_conserved(config,
                         [](const StateVector& s) { return apply_cnot(s, CnotGate{1, 2}); });
        expect_conserved(config,
                         [](const StateVector& s) { return apply_pbs(s, PbsGate{1, 2, 3, 4}); });
        expect_conserved(config,
                         [](const StateVector& s) { return apply_pc(s, PcGate{1, 2, 3}); });
        expect_conserved(config, [](const StateVector& s) {
            return apply_vgate_composite(s, VGate{1, 2, 5, 6});
        });
    }
}

TEST_CASE("unitary elements preserve norm") {
    std::mt19937 rng(43);
    for (int i = 0; i < 200; ++i) {
        StateVector psi = random_state(rng, 4, {1, 2, 3, 4});
        CHECK(norm(apply_hadamard(psi, 3)) == doctest::Approx(norm(psi)).epsilon(1e-12));
        CHECK(norm(apply_cnot(psi, CnotGate{2, 4})) ==
              doctest::Approx(norm(psi)).epsilon(1e-12));
        StateVector pbs_safe = random_state(rng, 4, {1});
        CHECK(norm(apply_pbs(pbs_safe, PbsGate{1, 2, 3, 4})) ==
              doctest::Approx(norm(pbs_safe)).epsilon(1e-12));
    }
}

TEST_CASE("gate text and cnot counting") {
    CHECK(gate_text(HadamardGate{1}) == "had 1");
    CHECK(gate_text(PbsGate{1, 2, 3, 4}) == "pbs 1 2 -> 3 4");
    CHECK(gate_text(PcGate{1, 2, 3}) == "pc 1 2 -> 3");
    CHECK(gate_text(CnotGate{3, 4}) == "cnot 3 4");
    CHECK(gate_text(VGate{4, 2, 5, 6}) == "vgate 4 2");
    CHECK(cnot_count(Gate{HadamardGate{1}}) == 0);
    CHECK(cnot_count(Gate{CnotGate{1, 2}}) == 1);
    CHECK(cnot_count(Gate{VGate{1, 2, 5, 6}}) == 1);
}
