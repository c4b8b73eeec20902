// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qotph/qotph.hpp"

using namespace qotph;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_distribution_diff(const Distribution& a, const Distribution& b) {
    double worst = 0.0;
    Distribution keys = a;
    for (const auto& [k, v] : b) keys.emplace(k, 0.0);
    for (const auto& [k, v] : keys) {
        const auto ia = a.find(k);
        const auto ib = b.find(k);
        const double va = ia == a.end() ? 0.0 : ia->second;
        const double vb = ib == b.end() ? 0.0 : ib->second;
        worst = std::max(worst, std::abs(va - vb));
    }
    return worst;
}

KeyMap exhaustive_keys(int n, std::uint64_t bits) {
    KeyMap keys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        keys[static_cast<std::size_t>(i)].a = (bits >> (2 * i)) & 1u;
        keys[static_cast<std::size_t>(i)].b = (bits >> (2 * i + 1)) & 1u;
    }
    return keys;
}

void criterion1_rule_soundness() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int rejected = 0;
    for (const RuleValidationReport& rep : validate_all_rules()) {
        worst = std::max(worst, rep.max_deviation);
        if (!rep.accepted) ++rejected;
    }
    const double secs = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "rule soundness: %d/29 rules certified, max deviation %.3g, %.1f s", 29 - rejected,
                  worst, secs);
    report(1, rejected == 0 && worst <= 1e-9 && secs < 60.0, buf);
}

void criterion2_end_to_end() {
    std::mt19937_64 rng(0xacce55);
    int fail = 0;
    double worst = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 7);  // 2..8
        const Circuit c = random_circuit(n, 1 + static_cast<int>(rng() % 40), rng);
        const std::vector<int> bits = random_bits(n, rng);
        const KeyMap keys = generate_keys(n, KeySource::Pseudo, rng());
        Statevector sv = init_state(bits);
        apply_gates(sv, encryption_layer(keys));
        const auto [adjusted, final_keys] = evaluate_homomorphic(c, keys);
        apply_gates(sv, adjusted);
        apply_gates(sv, decryption_layer(final_keys));
        const double d = phase_aligned_distance(sv, run_circuit(c, bits));
        worst = std::max(worst, d);
        if (d > 1e-8) ++fail;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "end-to-end equivalence: %d/200 failures, worst distance %.3g",
                  fail, worst);
    report(2, fail == 0, buf);
}

void criterion3_table2() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig small;
    small.n_qubits = 5;
    small.gate_count = 15;
    small.shots = 20000;
    small.trials = 20;
    small.seed = 1;
    const double f5 = run_experiment(small).mean_fidelity;

    ExperimentConfig large = small;
    large.n_qubits = 10;
    large.shots = 30000;
    const double f10 = run_experiment(large).mean_fidelity;
    const double secs = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "alg 1 mean fidelity: 5q/15g/20k -> %.5f, 10q/15g/30k -> %.5f, %.1f s", f5, f10,
                  secs);
    report(3, f5 >= 0.999 && f10 >= 0.999 && secs < 300.0, buf);
}

void criterion4_table3() {
    ExperimentConfig small;
    small.n_qubits = 5;
    small.gate_count = 15;
    small.shots = 20000;
    small.trials = 20;
    small.seed = 2;
    small.algorithm = ProtocolAlgorithm::LocalDecryption;
    const double f5 = run_experiment(small).mean_fidelity;

    ExperimentConfig large = small;
    large.n_qubits = 10;
    large.shots = 30000;
    const double f10 = run_experiment(large).mean_fidelity;

    // both local-decryption modes reproduce alg 1's exact distributions
    std::mt19937_64 rng(0xa19);
    double worst = 0.0;
    bool modes_agree = true;
    for (int iter = 0; iter < 25; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Circuit c = random_circuit(n, 15, rng);
        const std::vector<int> bits = random_bits(n, rng);
        const KeyMap keys = generate_keys(n, KeySource::Pseudo, rng());
        Algorithm2Options opt;
        opt.shots = 1;
        opt.seed = rng();
        opt.use_swaps = (iter % 2) == 1;
        const EncryptedRunResult r = run_algorithm2(bits, c, keys, opt);
        const Distribution circuit_mode = local_decrypt_distribution(r, DecryptMode::CircuitBased);
        const Distribution classical_mode = local_decrypt_distribution(r, DecryptMode::Classical);
        modes_agree = modes_agree && circuit_mode == classical_mode;
        worst = std::max(worst,
                         max_distribution_diff(circuit_mode, run_algorithm1_distribution(bits, c, keys)));
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "alg 2 mean fidelity: 5q -> %.5f, 10q -> %.5f; modes agree: %s; max exact-dist "
                  "gap vs alg 1: %.3g",
                  f5, f10, modes_agree ? "yes" : "no", worst);
    report(4, f5 >= 0.999 && f10 >= 0.999 && modes_agree && worst <= 1e-12, buf);
}

void criterion5_key_update_examples() {
    auto keys_of = [](std::initializer_list<std::pair<int, int>> ab) {
        KeyMap k;
        for (const auto& [a, b] : ab)
            k.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
        return k;
    };
    const std::vector<GateOp> ex1{make_gate(GateKind::T, {2}), make_gate(GateKind::Cx, {0, 2}),
                                  make_gate(GateKind::Cy, {4, 3}), make_gate(GateKind::Ccz, {1, 0, 4}),
                                  make_gate(GateKind::Swap, {3, 2})};
    const bool ok1 = update_keys_only(ex1, keys_of({{1, 1}, {1, 1}, {0, 0}, {0, 0}, {1, 1}})) ==
                     keys_of({{1, 1}, {1, 1}, {1, 1}, {1, 0}, {1, 1}});

    const std::vector<GateOp> ex2{make_gate(GateKind::S, {4}), make_gate(GateKind::Ccx, {4, 2, 1}),
                                  make_gate(GateKind::Cy, {0, 3}),
                                  make_gate(GateKind::Crz, {4, 2}, 0.25),
                                  make_gate(GateKind::Swap, {1, 3})};
    const bool ok2 = update_keys_only(ex2, keys_of({{0, 1}, {0, 0}, {1, 0}, {0, 1}, {1, 1}})) ==
                     keys_of({{0, 0}, {0, 1}, {1, 0}, {0, 0}, {1, 0}});

    const std::vector<GateOp> ex3{make_gate(GateKind::Rzz, {0, 2}, 3.70),
                                  make_gate(GateKind::Rz, {3}, 0.72),
                                  make_gate(GateKind::Cxx, {1, 3, 4}), make_gate(GateKind::SqrtX, {1}),
                                  make_gate(GateKind::Tdg, {0})};
    const bool ok3 = update_keys_only(ex3, keys_of({{0, 1}, {1, 0}, {0, 0}, {0, 0}, {1, 0}})) ==
                     keys_of({{0, 1}, {1, 0}, {0, 0}, {1, 0}, {0, 0}});

    char buf[120];
    std::snprintf(buf, sizeof(buf), "key-update examples: 1 %s, 2 %s, 3 %s", ok1 ? "ok" : "FAIL",
                  ok2 ? "ok" : "FAIL", ok3 ? "ok" : "FAIL");
    report(5, ok1 && ok2 && ok3, buf);
}

void criterion6_maximal_mixing() {
    const double d1 = mixing_check(1);
    const double d2 = mixing_check(2);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "maximal mixing: trace distance n=1 %.3g, n=2 %.3g", d1, d2);
    report(6, d1 <= 1e-12 && d2 <= 1e-12, buf);
}

void criterion7_distribution_secrecy() {
    std::mt19937_64 rng(0x5ec);
    double worst = 0.0;
    for (int iter = 0; iter < 50; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 3);  // 1..3
        const Circuit c = random_circuit(n, 1 + static_cast<int>(rng() % 12), rng);
        const std::vector<int> bits = random_bits(n, rng);
        Distribution avg;
        const std::uint64_t key_count = std::uint64_t{1} << (2 * n);
        for (std::uint64_t kb = 0; kb < key_count; ++kb) {
            Algorithm2Options opt;
            opt.shots = 1;
            const EncryptedRunResult r = run_algorithm2(bits, c, exhaustive_keys(n, kb), opt);
            for (const auto& [k, p] : r.encrypted_distribution)
                avg[k] += p / static_cast<double>(key_count);
        }
        const double uniform = 1.0 / static_cast<double>(std::uint64_t{1} << n);
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
            const std::string bitstring = index_to_bitstring(idx, n);
            const auto it = avg.find(bitstring);
            const double p = it == avg.end() ? 0.0 : it->second;
            worst = std::max(worst, std::abs(p - uniform));
        }
    }
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "distribution secrecy: worst deviation from uniform %.3g over 50 circuits", worst);
    report(7, worst <= 1e-12, buf);
}

void criterion8_swap_neutrality() {
    std::mt19937_64 rng(0x5a);
    double worst = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Circuit c = random_circuit(n, 1 + static_cast<int>(rng() % 15), rng);
        const std::vector<int> bits = random_bits(n, rng);
        const KeyMap keys = generate_keys(n, KeySource::Pseudo, rng());
        Algorithm2Options plain_opt;
        plain_opt.shots = 1;
        plain_opt.seed = rng();
        Algorithm2Options swap_opt = plain_opt;
        swap_opt.use_swaps = true;
        const Distribution without = local_decrypt_distribution(
            run_algorithm2(bits, c, keys, plain_opt), DecryptMode::Classical);
        const Distribution with = local_decrypt_distribution(
            run_algorithm2(bits, c, keys, swap_opt), DecryptMode::Classical);
        worst = std::max(worst, max_distribution_diff(without, with));
    }
    char buf[140];
    std::snprintf(buf, sizeof(buf), "swap obfuscation neutrality: max decrypted gap %.3g over 100 cases",
                  worst);
    report(8, worst <= 1e-12, buf);
}

void criterion9_performance() {
    std::mt19937_64 rng(0x20);
    const Circuit c = random_circuit(20, 15, rng);
    const std::vector<int> bits = random_bits(20, rng);
    const KeyMap keys = generate_keys(20, KeySource::Pseudo, 4);
    const auto t0 = std::chrono::steady_clock::now();
    Algorithm2Options opt;
    opt.shots = 50000;
    opt.seed = 9;
    const EncryptedRunResult r = run_algorithm2(bits, c, keys, opt);
    const double secs = seconds_since(t0);
    std::uint64_t total = 0;
    for (const auto& [k, v] : r.encrypted_counts) total += v;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "20-qubit alg 2 + 50000 shots: %.2f s (%llu shots collected)",
                  secs, static_cast<unsigned long long>(total));
    report(9, secs <= 10.0 && total == 50000, buf);
}

void criterion10_determinism() {
    auto campaign = [] {
        std::vector<ExperimentResult> results;
        for (int nq : {3, 4}) {
            ExperimentConfig cfg;
            cfg.n_qubits = nq;
            cfg.gate_count = 8;
            cfg.shots = 2000;
            cfg.trials = 4;
            cfg.seed = 99;
            cfg.algorithm = ProtocolAlgorithm::LocalDecryption;
            cfg.swap_obfuscation = true;
            results.push_back(run_experiment(cfg));
        }
        return results;
    };
    const auto a = campaign();
    const auto b = campaign();
    const bool csv_ok = experiment_results_to_csv(a) == experiment_results_to_csv(b);
    const bool json_ok =
        experiment_results_to_json_string(a) == experiment_results_to_json_string(b);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "determinism: csv byte-identical %s, json byte-identical %s",
                  csv_ok ? "yes" : "no", json_ok ? "yes" : "no");
    report(10, csv_ok && json_ok, buf);
}

}  // namespace

int main() {
    criterion1_rule_soundness();
    criterion2_end_to_end();
    criterion3_table2();
    criterion4_table3();
    criterion5_key_update_examples();
    criterion6_maximal_mixing();
    criterion7_distribution_secrecy();
    criterion8_swap_neutrality();
    criterion9_performance();
    criterion10_determinism();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
