#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qotph/circuit.hpp"
#include "qotph/statevector.hpp"

namespace qotph {

// Per-qubit QOTP key bits: a masks with X, b masks with Z.
struct KeyPair {
    std::uint8_t a = 0;
    std::uint8_t b = 0;

    friend bool operator==(const KeyPair& x, const KeyPair& y) {
        return x.a == y.a && x.b == y.b;
    }
};

// Keys for qubits 0..n-1, indexed by position.
using KeyMap = std::vector<KeyPair>;

enum class KeySource { Pseudo, SimulatedQrng };

inline KeyMap generate_keys(int n, KeySource source, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_keys: n must be >= 1");
    KeyMap keys(static_cast<std::size_t>(n));
    std::mt19937_64 rng(seed);
    if (source == KeySource::Pseudo) {
        for (KeyPair& k : keys) {
            k.a = static_cast<std::uint8_t>(rng() & 1u);
            k.b = static_cast<std::uint8_t>(rng() & 1u);
        }
        return keys;
    }
    // Simulated QRNG: measure H|0> once per key bit.
    Circuit coin;
    coin.n_qubits = 1;
    coin.gates.push_back(make_gate(GateKind::H, {0}));
    const Statevector sv = run_circuit(coin, {0});
    auto draw = [&]() -> std::uint8_t {
        const Counts c = sample_counts(sv, 1, rng);
        return c.count("1") ? 1 : 0;
    };
    for (KeyPair& k : keys) {
        k.a = draw();
        k.b = draw();
    }
    return keys;
}

// Gates realizing the operator X^a Z^b on each qubit (Z first in time).
inline std::vector<GateOp> encryption_layer(const KeyMap& keys) {
    std::vector<GateOp> out;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
        if (keys[static_cast<std::size_t>(i)].b) out.push_back(make_gate(GateKind::Z, {i}));
        if (keys[static_cast<std::size_t>(i)].a) out.push_back(make_gate(GateKind::X, {i}));
    }
    return out;
}

// Inverse mask Z^b X^a (X first in time).
inline std::vector<GateOp> decryption_layer(const KeyMap& keys) {
    std::vector<GateOp> out;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
        if (keys[static_cast<std::size_t>(i)].a) out.push_back(make_gate(GateKind::X, {i}));
        if (keys[static_cast<std::size_t>(i)].b) out.push_back(make_gate(GateKind::Z, {i}));
    }
    return out;
}

// X-part of the encryption applied classically to the input bits; the Z-part
// stays in-circuit (phase-only on basis states).
inline std::vector<int> classical_pre_encode(const std::vector<int>& bits, const KeyMap& keys) {
    if (bits.size() != keys.size())
        throw std::invalid_argument("classical_pre_encode: length mismatch");
    std::vector<int> out(bits);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= keys[i].a;
    return out;
}

// Residual in-circuit layer that goes with classical_pre_encode.
inline std::vector<GateOp> residual_z_layer(const KeyMap& keys) {
    std::vector<GateOp> out;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i)
        if (keys[static_cast<std::size_t>(i)].b) out.push_back(make_gate(GateKind::Z, {i}));
    return out;
}

namespace detail {

inline Matrix outer_product(const Statevector& sv) {
    Matrix rho(sv.amps.size());
    for (std::size_t r = 0; r < sv.amps.size(); ++r)
        for (std::size_t c = 0; c < sv.amps.size(); ++c)
            rho.at(r, c) = sv.amps[r] * std::conj(sv.amps[c]);
    return rho;
}

}  // namespace detail

// Key-averaged ciphertext density matrix of one probe state vs I/2^n.
inline double mixing_distance_for_probe(const Statevector& probe) {
    const int n = probe.n_qubits;
    const std::size_t dim = probe.amps.size();
    const std::uint64_t key_count = std::uint64_t{1} << (2 * n);
    Matrix avg(dim);
    for (std::uint64_t bits = 0; bits < key_count; ++bits) {
        KeyMap keys(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            keys[static_cast<std::size_t>(i)].a = (bits >> (2 * i)) & 1u;
            keys[static_cast<std::size_t>(i)].b = (bits >> (2 * i + 1)) & 1u;
        }
        Statevector enc = probe;
        apply_gates(enc, encryption_layer(keys));
        const Matrix rho = detail::outer_product(enc);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) avg.at(r, c) += rho.at(r, c);
    }
    const double w = 1.0 / static_cast<double>(key_count);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) avg.at(r, c) *= w;
    Matrix mixed(dim);
    for (std::size_t i = 0; i < dim; ++i) mixed.at(i, i) = 1.0 / static_cast<double>(dim);
    return trace_distance(avg, mixed);
}

// Max trace distance to I/2^n over a fixed probe set (basis states plus
// H- and T-prepared superpositions; a Bell state for n = 2).
inline double mixing_check(int n) {
    if (n < 1 || n > 2) throw std::invalid_argument("mixing_check: n must be 1 or 2");
    std::vector<Statevector> probes;
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        std::vector<int> bits(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (idx >> i) & 1u;
        probes.push_back(init_state(bits));
    }
    {
        Statevector sv = init_state(std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n; ++i) apply_gate(sv, make_gate(GateKind::H, {i}));
        probes.push_back(sv);
        for (int i = 0; i < n; ++i) apply_gate(sv, make_gate(GateKind::T, {i}));
        probes.push_back(sv);
    }
    if (n == 2) {
        Statevector bell = init_state({0, 0});
        apply_gate(bell, make_gate(GateKind::H, {0}));
        apply_gate(bell, make_gate(GateKind::Cx, {0, 1}));
        probes.push_back(bell);
    }
    double worst = 0.0;
    for (const Statevector& p : probes)
        worst = std::max(worst, mixing_distance_for_probe(p));
    return worst;
}

}  // namespace qotph
