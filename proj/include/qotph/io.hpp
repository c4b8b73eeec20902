#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qotph/circuit.hpp"
#include "qotph/keys.hpp"
#include "qotph/protocol.hpp"

namespace qotph {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

inline std::vector<Token> tokenize_line(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

}  // namespace detail

// Text format: line 1 is "qubits <n>"; each following non-empty,
// non-#-comment line is "<gatename> <q0> [<q1> [<q2>]] [<theta>]".
inline Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Circuit c;
    bool saw_header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto tokens = detail::tokenize_line(line);
        if (tokens.empty() || tokens[0].text[0] == '#') continue;
        if (!saw_header) {
            if (tokens[0].text != "qubits")
                throw ParseError(line_no, tokens[0].column, "expected 'qubits <n>' header");
            if (tokens.size() != 2)
                throw ParseError(line_no, tokens[0].column, "expected 'qubits <n>' header");
            int n = 0;
            const auto [p, ec] = std::from_chars(tokens[1].text.data(),
                                                 tokens[1].text.data() + tokens[1].text.size(), n);
            if (ec != std::errc{} || p != tokens[1].text.data() + tokens[1].text.size() || n <= 0)
                throw ParseError(line_no, tokens[1].column, "invalid qubit count");
            c.n_qubits = n;
            saw_header = true;
            continue;
        }
        const auto kind = gate_kind_from_name(tokens[0].text);
        if (!kind)
            throw ParseError(line_no, tokens[0].column, "unknown gate '" + tokens[0].text + "'");
        const GateInfo& info = gate_info(*kind);
        const std::size_t expected = 1 + static_cast<std::size_t>(info.arity) + (info.has_theta ? 1 : 0);
        if (tokens.size() != expected)
            throw ParseError(line_no, tokens[0].column,
                             std::string(info.name) + ": expected " + std::to_string(info.arity) +
                                 " qubit(s)" + (info.has_theta ? " and an angle" : ""));
        GateOp g;
        g.kind = *kind;
        for (int i = 0; i < info.arity; ++i) {
            const auto& tok = tokens[static_cast<std::size_t>(1 + i)];
            int q = 0;
            const auto [p, ec] =
                std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), q);
            if (ec != std::errc{} || p != tok.text.data() + tok.text.size())
                throw ParseError(line_no, tok.column, "invalid qubit index '" + tok.text + "'");
            if (q < 0 || q >= c.n_qubits)
                throw ParseError(line_no, tok.column,
                                 "qubit index " + tok.text + " out of range [0, " +
                                     std::to_string(c.n_qubits) + ")");
            g.qubits.push_back(q);
        }
        if (info.has_theta) {
            const auto& tok = tokens.back();
            try {
                std::size_t used = 0;
                g.theta = std::stod(tok.text, &used);
                if (used != tok.text.size()) throw std::invalid_argument("trailing chars");
            } catch (const std::exception&) {
                throw ParseError(line_no, tok.column, "invalid angle '" + tok.text + "'");
            }
            if (!std::isfinite(g.theta))
                throw ParseError(line_no, tok.column, "non-finite angle");
        }
        for (std::size_t a = 0; a < g.qubits.size(); ++a)
            for (std::size_t b = a + 1; b < g.qubits.size(); ++b)
                if (g.qubits[a] == g.qubits[b])
                    throw ParseError(line_no, tokens[1 + a].column,
                                     "duplicate qubit " + std::to_string(g.qubits[a]));
        c.gates.push_back(std::move(g));
    }
    if (!saw_header) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'qubits <n>' header");
    return c;
}

inline std::string format_angle(double theta) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

inline std::string serialize_circuit(const Circuit& c) {
    std::string out = "qubits " + std::to_string(c.n_qubits);
    for (const GateOp& g : c.gates) {
        out += '\n';
        out += gate_name(g.kind);
        for (int q : g.qubits) {
            out += ' ';
            out += std::to_string(q);
        }
        if (gate_has_theta(g.kind)) {
            out += ' ';
            out += format_angle(g.theta);
        }
    }
    return out;
}

inline json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    for (const GateOp& g : c.gates) {
        json jg = {{"kind", std::string(gate_name(g.kind))}, {"qubits", g.qubits}};
        if (gate_has_theta(g.kind)) jg["theta"] = g.theta;
        gates.push_back(std::move(jg));
    }
    return json{{"n_qubits", c.n_qubits}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const json& j) {
    Circuit c;
    c.n_qubits = j.at("n_qubits").get<int>();
    for (const json& jg : j.at("gates")) {
        const auto kind = gate_kind_from_name(jg.at("kind").get<std::string>());
        if (!kind) throw std::invalid_argument("circuit_from_json: unknown gate kind");
        GateOp g;
        g.kind = *kind;
        g.qubits = jg.at("qubits").get<std::vector<int>>();
        if (jg.contains("theta")) g.theta = jg.at("theta").get<double>();
        c.gates.push_back(std::move(g));
    }
    return c;
}

// {qubit_index: [a, b]}
inline json keymap_to_json(const KeyMap& keys) {
    json j = json::object();
    for (std::size_t i = 0; i < keys.size(); ++i)
        j[std::to_string(i)] = {keys[i].a, keys[i].b};
    return j;
}

inline KeyMap keymap_from_json(const json& j) {
    KeyMap keys(j.size());
    for (const auto& [k, v] : j.items()) {
        const std::size_t i = std::stoul(k);
        if (i >= keys.size()) throw std::invalid_argument("keymap_from_json: bad qubit index");
        keys[i].a = v.at(0).get<int>() ? 1 : 0;
        keys[i].b = v.at(1).get<int>() ? 1 : 0;
    }
    return keys;
}

inline json counts_to_json(const Counts& counts) {
    json j = json::object();
    for (const auto& [k, v] : counts) j[k] = v;
    return j;
}

inline Counts counts_from_json(const json& j) {
    Counts c;
    for (const auto& [k, v] : j.items()) c[k] = v.get<std::uint64_t>();
    return c;
}

inline json swaps_to_json(const SwapRecord& r) {
    json pairs = json::array();
    for (const auto& [p, q] : r.pairs) pairs.push_back({p, q});
    return json{{"pairs", std::move(pairs)}, {"perm", r.perm}};
}

inline SwapRecord swaps_from_json(const json& j) {
    SwapRecord r;
    for (const json& jp : j.at("pairs")) r.pairs.emplace_back(jp.at(0).get<int>(), jp.at(1).get<int>());
    r.perm = j.at("perm").get<std::vector<int>>();
    return r;
}

inline json result_to_json(const EncryptedRunResult& r) {
    return json{{"encrypted_counts", counts_to_json(r.encrypted_counts)},
                {"keys", keymap_to_json(r.keys)},
                {"swaps", swaps_to_json(r.swaps)},
                {"circuit_sent", serialize_circuit(r.circuit_sent)}};
}

inline EncryptedRunResult result_from_json(const json& j) {
    EncryptedRunResult r;
    r.encrypted_counts = counts_from_json(j.at("encrypted_counts"));
    r.keys = keymap_from_json(j.at("keys"));
    r.swaps = swaps_from_json(j.at("swaps"));
    r.circuit_sent = parse_circuit(j.at("circuit_sent").get<std::string>());
    return r;
}

inline json rule_report_to_json(const RuleValidationReport& rep) {
    return json{{"kind", std::string(gate_name(rep.kind))},
                {"key_tuples_tested", rep.key_tuples_tested},
                {"theta_samples", rep.theta_samples},
                {"max_deviation", rep.max_deviation},
                {"ordering_used", rep.ordering_used},
                {"notes", rep.notes},
                {"accepted", rep.accepted}};
}

}  // namespace qotph
