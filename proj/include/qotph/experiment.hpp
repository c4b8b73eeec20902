#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qotph/circuit.hpp"
#include "qotph/io.hpp"
#include "qotph/protocol.hpp"

namespace qotph {

enum class ProtocolAlgorithm { InCircuitDecryption, LocalDecryption };

struct ExperimentConfig {
    int n_qubits = 5;
    int gate_count = 15;
    std::uint64_t shots = 20000;  // 0: exact statevector distributions
    int trials = 20;
    std::uint64_t seed = 0;
    ProtocolAlgorithm algorithm = ProtocolAlgorithm::InCircuitDecryption;
    bool swap_obfuscation = false;
    KeySource key_source = KeySource::Pseudo;
    bool sampled_reference = false;  // default: exact plaintext reference
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<double> fidelities;
    std::vector<double> hellinger_distances;
    std::vector<double> trial_seconds;
    double mean_fidelity = 0.0;
    double mean_hellinger = 0.0;
};

inline std::vector<GateKind> eligible_gate_kinds(int n_qubits) {
    std::vector<GateKind> pool;
    for (int i = 0; i < kGateKindCount; ++i) {
        const auto k = static_cast<GateKind>(i);
        if (gate_arity(k) <= n_qubits) pool.push_back(k);
    }
    return pool;
}

inline Circuit random_circuit(int n_qubits, int gate_count, std::mt19937_64& rng) {
    if (n_qubits < 1) throw std::invalid_argument("random_circuit: n_qubits must be >= 1");
    const std::vector<GateKind> pool = eligible_gate_kinds(n_qubits);
    Circuit c;
    c.n_qubits = n_qubits;
    for (int i = 0; i < gate_count; ++i) {
        const GateKind kind = pool[rng() % pool.size()];
        const int arity = gate_arity(kind);
        // qubits without replacement
        std::vector<int> qubits;
        while (static_cast<int>(qubits.size()) < arity) {
            const int q = static_cast<int>(rng() % static_cast<std::uint64_t>(n_qubits));
            bool dup = false;
            for (int seen : qubits) dup |= seen == q;
            if (!dup) qubits.push_back(q);
        }
        double theta = 0.0;
        if (gate_has_theta(kind)) theta = detail::uniform01(rng) * 2.0 * std::numbers::pi;
        c.gates.push_back(make_gate(kind, std::move(qubits), theta));
    }
    return c;
}

inline std::vector<int> random_bits(int n, std::mt19937_64& rng) {
    std::vector<int> bits(static_cast<std::size_t>(n));
    for (int& b : bits) b = static_cast<int>(rng() & 1u);
    return bits;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_qubits < 1 || cfg.gate_count < 0 || cfg.trials < 1)
        throw std::invalid_argument("run_experiment: invalid config");
    ExperimentResult result;
    result.config = cfg;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t trial_seed = detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(trial));
        std::mt19937_64 rng(trial_seed);
        const Circuit c = random_circuit(cfg.n_qubits, cfg.gate_count, rng);
        const std::vector<int> bits = random_bits(cfg.n_qubits, rng);
        const KeyMap keys = generate_keys(cfg.n_qubits, cfg.key_source, rng());

        const Statevector plain = run_circuit(c, bits);
        const Distribution reference =
            cfg.sampled_reference && cfg.shots > 0
                ? to_distribution(sample_counts(plain, cfg.shots, detail::mix_seed(trial_seed, 0x4ef)))
                : distribution(plain);

        Distribution observed;
        if (cfg.algorithm == ProtocolAlgorithm::InCircuitDecryption) {
            observed = cfg.shots == 0
                           ? run_algorithm1_distribution(bits, c, keys)
                           : to_distribution(run_algorithm1(bits, c, keys, cfg.shots, trial_seed));
        } else {
            Algorithm2Options opt;
            opt.use_swaps = cfg.swap_obfuscation;
            opt.shots = cfg.shots == 0 ? 1 : cfg.shots;
            opt.seed = trial_seed;
            const EncryptedRunResult r = run_algorithm2(bits, c, keys, opt);
            observed = cfg.shots == 0
                           ? local_decrypt_distribution(r, DecryptMode::Classical)
                           : to_distribution(local_decrypt(r, DecryptMode::Classical));
        }
        const double h = hellinger_distance(reference, observed);
        result.hellinger_distances.push_back(h);
        result.fidelities.push_back((1.0 - h * h) * (1.0 - h * h));
        result.trial_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    double fs = 0.0, hs = 0.0;
    for (double f : result.fidelities) fs += f;
    for (double h : result.hellinger_distances) hs += h;
    result.mean_fidelity = fs / result.fidelities.size();
    result.mean_hellinger = hs / result.hellinger_distances.size();
    return result;
}

inline json experiment_result_to_json(const ExperimentResult& r) {
    return json{
        {"config",
         {{"qubits", r.config.n_qubits},
          {"gates", r.config.gate_count},
          {"shots", r.config.shots},
          {"trials", r.config.trials},
          {"seed", r.config.seed},
          {"algorithm", r.config.algorithm == ProtocolAlgorithm::InCircuitDecryption ? 1 : 2},
          {"swap_obfuscation", r.config.swap_obfuscation},
          {"key_source",
           r.config.key_source == KeySource::Pseudo ? "pseudo" : "qrng"}}},
        // trial wall-clock times are kept on the struct but stay out of the
        // report so identical seeds give byte-identical files
        {"fidelities", r.fidelities},
        {"hellinger_distances", r.hellinger_distances},
        {"mean_fidelity", r.mean_fidelity},
        {"mean_hellinger", r.mean_hellinger}};
}

inline std::string experiment_results_to_csv(const std::vector<ExperimentResult>& results) {
    std::string out = "Qubits,Gates,Shots,MeanFidelity,MeanHellinger,Trials\n";
    std::vector<const ExperimentResult*> sorted;
    for (const ExperimentResult& r : results) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        if (a->config.n_qubits != b->config.n_qubits) return a->config.n_qubits < b->config.n_qubits;
        return a->config.gate_count < b->config.gate_count;
    });
    char buf[128];
    for (const ExperimentResult* r : sorted) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%llu,%.9f,%.9f,%d\n", r->config.n_qubits,
                      r->config.gate_count, static_cast<unsigned long long>(r->config.shots),
                      r->mean_fidelity, r->mean_hellinger, r->config.trials);
        out += buf;
    }
    return out;
}

inline std::string experiment_results_to_json_string(const std::vector<ExperimentResult>& results) {
    json arr = json::array();
    std::vector<const ExperimentResult*> sorted;
    for (const ExperimentResult& r : results) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        if (a->config.n_qubits != b->config.n_qubits) return a->config.n_qubits < b->config.n_qubits;
        return a->config.gate_count < b->config.gate_count;
    });
    for (const ExperimentResult* r : sorted) arr.push_back(experiment_result_to_json(*r));
    return arr.dump(2);
}

}  // namespace qotph
