#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qotph/circuit.hpp"
#include "qotph/keys.hpp"
#include "qotph/rewrite.hpp"
#include "qotph/statevector.hpp"

namespace qotph {

// Swap gates appended before measurement and the qubit-label permutation they
// induce. perm[pos] = logical qubit whose value is measured at position pos.
struct SwapRecord {
    std::vector<std::pair<int, int>> pairs;  // temporal order
    std::vector<int> perm;

    static SwapRecord identity(int n) {
        SwapRecord r;
        r.perm.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) r.perm[static_cast<std::size_t>(i)] = i;
        return r;
    }
};

struct EncryptedRunResult {
    Counts encrypted_counts;
    Distribution encrypted_distribution;  // exact, pre-sampling
    KeyMap keys;                          // final, post-evaluation
    SwapRecord swaps;
    Circuit circuit_sent;                 // what an untrusted backend would see
};

inline std::pair<Circuit, SwapRecord> apply_swap_obfuscation(const Circuit& c, int count,
                                                             std::mt19937_64& rng) {
    if (count < 0) throw std::invalid_argument("apply_swap_obfuscation: negative count");
    if (count > 0 && c.n_qubits < 2)
        throw std::invalid_argument("apply_swap_obfuscation: need at least 2 qubits");
    Circuit out = c;
    SwapRecord rec = SwapRecord::identity(c.n_qubits);
    for (int s = 0; s < count; ++s) {
        const int p = static_cast<int>(rng() % static_cast<std::uint64_t>(c.n_qubits));
        int q = static_cast<int>(rng() % static_cast<std::uint64_t>(c.n_qubits - 1));
        if (q >= p) ++q;
        out.gates.push_back(make_gate(GateKind::Swap, {p, q}));
        rec.pairs.emplace_back(p, q);
        std::swap(rec.perm[static_cast<std::size_t>(p)], rec.perm[static_cast<std::size_t>(q)]);
    }
    return {std::move(out), std::move(rec)};
}

inline double hellinger_distance(const Distribution& p, const Distribution& q) {
    if (p.empty() || q.empty())
        throw std::invalid_argument("hellinger_distance: empty distribution");
    double ps = 0.0, qs = 0.0;
    for (const auto& [k, v] : p) {
        if (v < 0) throw std::invalid_argument("hellinger_distance: negative mass");
        ps += v;
    }
    for (const auto& [k, v] : q) {
        if (v < 0) throw std::invalid_argument("hellinger_distance: negative mass");
        qs += v;
    }
    if (ps <= 0 || qs <= 0) throw std::invalid_argument("hellinger_distance: zero total mass");
    double bc = 0.0;  // Bhattacharyya coefficient over the support intersection
    for (const auto& [k, v] : p) {
        const auto it = q.find(k);
        if (it != q.end()) bc += std::sqrt((v / ps) * (it->second / qs));
    }
    return std::sqrt(std::max(0.0, 1.0 - bc));
}

inline double fidelity(const Distribution& p, const Distribution& q) {
    const double h = hellinger_distance(p, q);
    const double f = (1.0 - h * h) * (1.0 - h * h);
    return f;
}

inline Distribution to_distribution(const Counts& counts) {
    Distribution d;
    double total = 0.0;
    for (const auto& [k, v] : counts) total += static_cast<double>(v);
    if (total <= 0) throw std::invalid_argument("to_distribution: empty counts");
    for (const auto& [k, v] : counts) d[k] = static_cast<double>(v) / total;
    return d;
}

inline double hellinger_distance(const Counts& p, const Counts& q) {
    return hellinger_distance(to_distribution(p), to_distribution(q));
}

inline double fidelity(const Counts& p, const Counts& q) {
    return fidelity(to_distribution(p), to_distribution(q));
}

namespace detail {

inline Statevector algorithm1_state(const std::vector<int>& bits, const Circuit& c,
                                    const KeyMap& keys) {
    Statevector sv = init_state(bits);
    apply_gates(sv, encryption_layer(keys));
    const auto [adjusted, final_keys] = evaluate_homomorphic(c, keys);
    apply_gates(sv, adjusted);
    apply_gates(sv, decryption_layer(final_keys));
    return sv;
}

}  // namespace detail

// Algorithm 1: encrypt, evaluate homomorphically, decrypt in-circuit, measure.
inline Counts run_algorithm1(const std::vector<int>& bits, const Circuit& c, const KeyMap& keys,
                             std::uint64_t shots, std::uint64_t seed) {
    return sample_counts(detail::algorithm1_state(bits, c, keys), shots, seed);
}

// Exact pre-measurement distribution of Algorithm 1.
inline Distribution run_algorithm1_distribution(const std::vector<int>& bits, const Circuit& c,
                                                const KeyMap& keys) {
    return distribution(detail::algorithm1_state(bits, c, keys));
}

struct Algorithm2Options {
    bool use_swaps = false;
    int swap_count = -1;  // -1: uniform draw in [1, n/2]
    bool use_pre_encode = false;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
};

// Algorithm 2: encrypt, evaluate, measure the still-encrypted state; the key
// holder decrypts the statistics locally.
inline EncryptedRunResult run_algorithm2(const std::vector<int>& bits, const Circuit& c,
                                         const KeyMap& keys, const Algorithm2Options& opt) {
    if (static_cast<int>(bits.size()) != c.n_qubits)
        throw std::invalid_argument("run_algorithm2: bit-width mismatch");
    std::mt19937_64 rng(detail::mix_seed(opt.seed, 0x5ec0de));

    const auto [adjusted, final_keys] = evaluate_homomorphic(c, keys);
    Circuit sent;
    sent.n_qubits = c.n_qubits;
    std::vector<int> init_bits = bits;
    if (opt.use_pre_encode) {
        init_bits = classical_pre_encode(bits, keys);
        sent.gates = residual_z_layer(keys);
    } else {
        sent.gates = encryption_layer(keys);
    }
    sent.gates.insert(sent.gates.end(), adjusted.begin(), adjusted.end());

    SwapRecord rec = SwapRecord::identity(c.n_qubits);
    if (opt.use_swaps) {
        int count = opt.swap_count;
        if (count < 0) {
            const int hi = std::max(1, c.n_qubits / 2);
            count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(hi));
        }
        auto [swapped, r] = apply_swap_obfuscation(sent, count, rng);
        sent = std::move(swapped);
        rec = std::move(r);
    }

    Statevector sv = init_state(init_bits);
    apply_gates(sv, sent.gates);

    EncryptedRunResult result;
    result.encrypted_distribution = distribution(sv);
    result.encrypted_counts = sample_counts(sv, opt.shots, detail::mix_seed(opt.seed, 0x5a3b1e));
    result.keys = final_keys;
    result.swaps = std::move(rec);
    result.circuit_sent = std::move(sent);
    return result;
}

enum class DecryptMode { CircuitBased, Classical };

namespace detail {

inline std::string decrypt_bitstring_classical(const std::string& x, const KeyMap& keys,
                                               const SwapRecord& swaps) {
    std::string y(x.size(), '0');
    for (std::size_t pos = 0; pos < x.size(); ++pos)
        y[static_cast<std::size_t>(swaps.perm[pos])] = x[pos];  // undo the label permutation
    for (std::size_t i = 0; i < y.size(); ++i)
        if (keys[i].a) y[i] = y[i] == '0' ? '1' : '0';
    return y;
}

inline std::string decrypt_bitstring_circuit(const std::string& x, const KeyMap& keys,
                                             const SwapRecord& swaps) {
    std::vector<int> bits(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) bits[i] = x[i] == '1' ? 1 : 0;
    Statevector sv = init_state(bits);
    for (auto it = swaps.pairs.rbegin(); it != swaps.pairs.rend(); ++it)
        apply_gate(sv, make_gate(GateKind::Swap, {it->first, it->second}));
    apply_gates(sv, decryption_layer(keys));
    // Pauli/swap circuits keep basis states in the basis: one outcome.
    for (std::uint64_t i = 0; i < sv.amps.size(); ++i)
        if (std::norm(sv.amps[i]) > 0.5) return index_to_bitstring(i, sv.n_qubits);
    throw std::logic_error("decrypt_bitstring_circuit: state left the computational basis");
}

}  // namespace detail

inline Counts local_decrypt(const EncryptedRunResult& r, DecryptMode mode) {
    if (r.keys.size() != static_cast<std::size_t>(r.circuit_sent.n_qubits))
        throw std::invalid_argument("local_decrypt: key/width mismatch");
    Counts out;
    for (const auto& [x, count] : r.encrypted_counts) {
        const std::string y = mode == DecryptMode::Classical
                                  ? detail::decrypt_bitstring_classical(x, r.keys, r.swaps)
                                  : detail::decrypt_bitstring_circuit(x, r.keys, r.swaps);
        out[y] += count;
    }
    return out;
}

// Exact-distribution counterpart of local_decrypt.
inline Distribution local_decrypt_distribution(const EncryptedRunResult& r, DecryptMode mode) {
    Distribution out;
    for (const auto& [x, p] : r.encrypted_distribution) {
        const std::string y = mode == DecryptMode::Classical
                                  ? detail::decrypt_bitstring_classical(x, r.keys, r.swaps)
                                  : detail::decrypt_bitstring_circuit(x, r.keys, r.swaps);
        out[y] += p;
    }
    return out;
}

}  // namespace qotph
