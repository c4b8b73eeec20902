#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qotph/experiment.hpp"
#include "qotph/io.hpp"
#include "qotph/keys.hpp"

using namespace qotph;

TEST_CASE("generate_keys determinism and shape") {
    const KeyMap a = generate_keys(2, KeySource::Pseudo, 1234);
    const KeyMap b = generate_keys(2, KeySource::Pseudo, 1234);
    CHECK(a == b);
    CHECK(a.size() == 2);
    CHECK(generate_keys(1, KeySource::Pseudo, 0).size() == 1);
    CHECK_THROWS(generate_keys(0, KeySource::Pseudo, 0));

    const KeyMap q1 = generate_keys(3, KeySource::SimulatedQrng, 9);
    const KeyMap q2 = generate_keys(3, KeySource::SimulatedQrng, 9);
    CHECK(q1 == q2);
}

TEST_CASE("simulated qrng is a fair coin") {
    const KeyMap keys = generate_keys(5000, KeySource::SimulatedQrng, 77);  // 10^4 bits
    int ones = 0;
    for (const KeyPair& k : keys) ones += k.a + k.b;
    const double frac = ones / 10000.0;
    CHECK(frac > 0.47);
    CHECK(frac < 0.53);
}

TEST_CASE("encryption and decryption layers") {
    CHECK(encryption_layer({{0, 0}, {0, 0}}).empty());

    const auto enc = encryption_layer({{1, 1}});
    REQUIRE(enc.size() == 2);
    CHECK(enc[0] == make_gate(GateKind::Z, {0}));
    CHECK(enc[1] == make_gate(GateKind::X, {0}));

    const auto two = encryption_layer({{1, 0}, {0, 1}});
    REQUIRE(two.size() == 2);
    CHECK(two[0] == make_gate(GateKind::X, {0}));
    CHECK(two[1] == make_gate(GateKind::Z, {1}));

    const auto dec = decryption_layer({{1, 0}});
    REQUIRE(dec.size() == 1);
    CHECK(dec[0] == make_gate(GateKind::X, {0}));
    CHECK(decryption_layer({{0, 0}}).empty());
}

TEST_CASE("encrypt-then-decrypt is the identity up to global phase") {
    std::mt19937_64 rng(21);
    for (int iter = 0; iter < 25; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const Circuit prep = random_circuit(n, 12, rng);
        const Statevector original = run_circuit(prep, random_bits(n, rng));
        const KeyMap keys = generate_keys(n, KeySource::Pseudo, rng());
        Statevector sv = original;
        apply_gates(sv, encryption_layer(keys));
        apply_gates(sv, decryption_layer(keys));
        CHECK(phase_aligned_distance(sv, original) < 1e-12);
    }
}

TEST_CASE("classical_pre_encode") {
    CHECK(classical_pre_encode({1, 0, 1}, {{1, 0}, {0, 0}, {1, 0}}) == std::vector<int>{0, 0, 0});
    CHECK(classical_pre_encode({1, 0}, {{0, 1}, {0, 0}}) == std::vector<int>{1, 0});
    CHECK_THROWS(classical_pre_encode({1}, {{0, 0}, {0, 0}}));

    // pre-encoded bits + residual Z layer == full in-circuit encryption
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 20; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const std::vector<int> bits = random_bits(n, rng);
        const KeyMap keys = generate_keys(n, KeySource::Pseudo, rng());
        Statevector a = init_state(classical_pre_encode(bits, keys));
        apply_gates(a, residual_z_layer(keys));
        Statevector b = init_state(bits);
        apply_gates(b, encryption_layer(keys));
        CHECK(phase_aligned_distance(a, b) < 1e-12);
    }
}

TEST_CASE("maximal mixing") {
    CHECK(mixing_check(1) < 1e-12);
    CHECK(mixing_check(2) < 1e-12);
    CHECK_THROWS(mixing_check(3));
}

TEST_CASE("ciphertext outcome uniformity for unevaluated states") {
    // averaged over all 4^n keys, the measured distribution of the encrypted
    // basis state is uniform
    for (int n = 1; n <= 3; ++n) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(n));
        const std::vector<int> bits = random_bits(n, rng);
        Distribution avg;
        const std::uint64_t key_count = std::uint64_t{1} << (2 * n);
        for (std::uint64_t kb = 0; kb < key_count; ++kb) {
            KeyMap keys(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                keys[static_cast<std::size_t>(i)].a = (kb >> (2 * i)) & 1u;
                keys[static_cast<std::size_t>(i)].b = (kb >> (2 * i + 1)) & 1u;
            }
            Statevector sv = init_state(bits);
            apply_gates(sv, encryption_layer(keys));
            for (const auto& [k, p] : distribution(sv)) avg[k] += p / static_cast<double>(key_count);
        }
        REQUIRE(avg.size() == (std::size_t{1} << n));
        for (const auto& [k, p] : avg)
            CHECK(p == Catch::Approx(1.0 / static_cast<double>(std::uint64_t{1} << n)).margin(1e-12));
    }
}

TEST_CASE("keymap json round-trip") {
    const KeyMap keys{{1, 0}, {0, 1}, {1, 1}};
    const json j = keymap_to_json(keys);
    CHECK(j["0"] == json({1, 0}));
    CHECK(keymap_from_json(j) == keys);
}
