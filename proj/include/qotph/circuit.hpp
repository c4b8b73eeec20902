#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qotph/gates.hpp"

namespace qotph {

// One gate application. Qubit convention: controls first, then targets
// (cx = [control, target]; ccx = [c1, c2, target]; cxx = [control, t1, t2];
// cswap = [control, t1, t2]).
struct GateOp {
    GateKind kind;
    std::vector<int> qubits;
    double theta = 0.0;  // radians; meaningful iff gate_has_theta(kind)

    friend bool operator==(const GateOp& a, const GateOp& b) {
        if (a.kind != b.kind || a.qubits != b.qubits) return false;
        if (!gate_has_theta(a.kind)) return true;
        return a.theta == b.theta;
    }
};

inline GateOp make_gate(GateKind k, std::vector<int> qubits, double theta = 0.0) {
    return GateOp{k, std::move(qubits), theta};
}

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> gates;  // temporal order: index 0 executes first

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.n_qubits == b.n_qubits && a.gates == b.gates;
    }
};

struct Violation {
    int gate_index;  // -1 for circuit-level problems
    std::string message;
};

inline std::vector<Violation> validate(const Circuit& c) {
    std::vector<Violation> out;
    if (c.n_qubits <= 0) {
        out.push_back({-1, "n_qubits must be positive"});
        return out;
    }
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const GateOp& g = c.gates[i];
        const GateInfo& info = gate_info(g.kind);
        const int idx = static_cast<int>(i);
        if (static_cast<int>(g.qubits.size()) != info.arity) {
            out.push_back({idx, std::string(info.name) + ": arity mismatch, expected " +
                                    std::to_string(info.arity) + " qubits, got " +
                                    std::to_string(g.qubits.size())});
            continue;
        }
        bool bad_index = false;
        for (int q : g.qubits) {
            if (q < 0 || q >= c.n_qubits) {
                out.push_back({idx, std::string(info.name) + ": qubit index " +
                                        std::to_string(q) + " out of range [0, " +
                                        std::to_string(c.n_qubits) + ")"});
                bad_index = true;
            }
        }
        if (bad_index) continue;
        for (std::size_t a = 0; a < g.qubits.size(); ++a) {
            for (std::size_t b = a + 1; b < g.qubits.size(); ++b) {
                if (g.qubits[a] == g.qubits[b]) {
                    out.push_back({idx, std::string(info.name) + ": duplicate qubit " +
                                            std::to_string(g.qubits[a])});
                }
            }
        }
        if (info.has_theta && !std::isfinite(g.theta)) {
            out.push_back({idx, std::string(info.name) + ": non-finite angle"});
        }
    }
    return out;
}

inline bool is_valid(const Circuit& c) { return validate(c).empty(); }

}  // namespace qotph
