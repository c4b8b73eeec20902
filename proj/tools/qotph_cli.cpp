#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qotph/qotph.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::vector<int> parse_bits(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n)
        throw std::runtime_error("--bits length must match circuit width " + std::to_string(n));
    std::vector<int> bits;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::runtime_error("--bits must be a 0/1 string");
        bits.push_back(c - '0');
    }
    return bits;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QOTP homomorphic evaluation protocol toolkit"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Execute a circuit under the protocol");
    std::string run_circuit_path, run_bits, run_out;
    int run_alg = 1, run_swaps = -1;
    std::uint64_t run_shots = 1024, run_seed = 0;
    bool run_pre_encode = false, run_use_swaps = false;
    run_cmd->add_option("--circuit", run_circuit_path, "circuit file")->required();
    run_cmd->add_option("--bits", run_bits, "input bits, e.g. 0101")->required();
    run_cmd->add_option("--alg", run_alg, "protocol algorithm (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    run_cmd->add_option("--shots", run_shots, "measurement shots");
    run_cmd->add_option("--seed", run_seed, "rng seed");
    run_cmd->add_option("--swaps", run_swaps, "swap-obfuscation count (alg 2)")
        ->expected(0, 1)
        ->each([&](const std::string&) { run_use_swaps = true; });
    run_cmd->add_flag("--pre-encode", run_pre_encode, "classically pre-encode the X-keys (alg 2)");
    run_cmd->add_option("--out", run_out, "output file (default stdout)");

    // decrypt
    auto* dec_cmd = app.add_subcommand("decrypt", "Locally decrypt an encrypted run result");
    std::string dec_result_path, dec_mode = "classical", dec_out;
    dec_cmd->add_option("--result", dec_result_path, "result JSON from 'run --alg 2'")->required();
    dec_cmd->add_option("--mode", dec_mode, "circuit | classical")
        ->check(CLI::IsMember({"circuit", "classical"}));
    dec_cmd->add_option("--out", dec_out, "output file (default stdout)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Random-circuit fidelity campaign");
    std::vector<int> exp_qubits{5}, exp_gates{15};
    std::uint64_t exp_shots = 20000, exp_seed = 0;
    int exp_trials = 20, exp_alg = 1;
    bool exp_swaps = false;
    std::string exp_out, exp_format = "csv", exp_source = "pseudo";
    exp_cmd->add_option("--qubits", exp_qubits, "qubit counts")->delimiter(',');
    exp_cmd->add_option("--gates", exp_gates, "gate counts")->delimiter(',');
    exp_cmd->add_option("--shots", exp_shots, "shots per trial (0 = exact distributions)");
    exp_cmd->add_option("--trials", exp_trials, "trials per row");
    exp_cmd->add_option("--seed", exp_seed, "campaign seed");
    exp_cmd->add_option("--alg", exp_alg, "protocol algorithm (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    exp_cmd->add_flag("--swap-obfuscation", exp_swaps, "enable swap obfuscation (alg 2)");
    exp_cmd->add_option("--key-source", exp_source, "pseudo | qrng")
        ->check(CLI::IsMember({"pseudo", "qrng"}));
    exp_cmd->add_option("--out", exp_out, "output file (default stdout)");
    exp_cmd->add_option("--format", exp_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // verify-rules
    auto* ver_cmd = app.add_subcommand("verify-rules", "Certify every rewrite rule");
    std::string ver_out;
    ver_cmd->add_option("--out", ver_out, "report file (default stdout)");

    // keys
    auto* key_cmd = app.add_subcommand("keys", "Generate a QOTP key map");
    int key_n = 1;
    std::string key_source = "pseudo", key_out;
    std::uint64_t key_seed = 0;
    key_cmd->add_option("--n", key_n, "number of qubits")->required();
    key_cmd->add_option("--source", key_source, "pseudo | qrng")
        ->check(CLI::IsMember({"pseudo", "qrng"}));
    key_cmd->add_option("--seed", key_seed, "rng seed");
    key_cmd->add_option("--out", key_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const qotph::Circuit c = qotph::parse_circuit(read_file(run_circuit_path));
            const auto violations = qotph::validate(c);
            if (!violations.empty()) {
                for (const auto& v : violations)
                    std::cerr << "invalid circuit: gate " << v.gate_index << ": " << v.message << "\n";
                return 1;
            }
            const std::vector<int> bits = parse_bits(run_bits, c.n_qubits);
            const qotph::KeyMap keys =
                qotph::generate_keys(c.n_qubits, qotph::KeySource::Pseudo, run_seed);
            qotph::json out;
            out["circuit"] = qotph::circuit_to_json(c);  // machine-readable mirror
            if (run_alg == 1) {
                out["counts"] = qotph::counts_to_json(
                    qotph::run_algorithm1(bits, c, keys, run_shots, run_seed));
                out["keys"] = qotph::keymap_to_json(keys);
            } else {
                qotph::Algorithm2Options opt;
                opt.shots = run_shots;
                opt.seed = run_seed;
                opt.use_swaps = run_use_swaps;
                opt.swap_count = run_swaps;
                opt.use_pre_encode = run_pre_encode;
                out["result"] = qotph::result_to_json(qotph::run_algorithm2(bits, c, keys, opt));
            }
            write_output(run_out, out.dump(2));
        } else if (dec_cmd->parsed()) {
            const qotph::json j = qotph::json::parse(read_file(dec_result_path));
            const qotph::EncryptedRunResult r =
                qotph::result_from_json(j.contains("result") ? j.at("result") : j);
            const auto mode = dec_mode == "circuit" ? qotph::DecryptMode::CircuitBased
                                                    : qotph::DecryptMode::Classical;
            write_output(dec_out, qotph::counts_to_json(qotph::local_decrypt(r, mode)).dump(2));
        } else if (exp_cmd->parsed()) {
            std::vector<qotph::ExperimentResult> results;
            for (int nq : exp_qubits) {
                for (int ng : exp_gates) {
                    qotph::ExperimentConfig cfg;
                    cfg.n_qubits = nq;
                    cfg.gate_count = ng;
                    cfg.shots = exp_shots;
                    cfg.trials = exp_trials;
                    cfg.seed = exp_seed;
                    cfg.algorithm = exp_alg == 1 ? qotph::ProtocolAlgorithm::InCircuitDecryption
                                                 : qotph::ProtocolAlgorithm::LocalDecryption;
                    cfg.swap_obfuscation = exp_swaps;
                    cfg.key_source = exp_source == "qrng" ? qotph::KeySource::SimulatedQrng
                                                          : qotph::KeySource::Pseudo;
                    results.push_back(qotph::run_experiment(cfg));
                }
            }
            write_output(exp_out, exp_format == "csv"
                                      ? qotph::experiment_results_to_csv(results)
                                      : qotph::experiment_results_to_json_string(results));
        } else if (ver_cmd->parsed()) {
            const auto reports = qotph::validate_all_rules();
            qotph::json arr = qotph::json::array();
            bool all_ok = true;
            for (const auto& rep : reports) {
                arr.push_back(qotph::rule_report_to_json(rep));
                all_ok &= rep.accepted;
                std::cerr << (rep.accepted ? "ok   " : "FAIL ") << qotph::gate_name(rep.kind)
                          << "  max deviation " << rep.max_deviation << "\n";
            }
            write_output(ver_out, arr.dump(2));
            if (!all_ok) {
                std::cerr << "rule certification failed\n";
                return 2;
            }
        } else if (key_cmd->parsed()) {
            const auto source = key_source == "qrng" ? qotph::KeySource::SimulatedQrng
                                                     : qotph::KeySource::Pseudo;
            write_output(key_out,
                         qotph::keymap_to_json(qotph::generate_keys(key_n, source, key_seed)).dump(2));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
