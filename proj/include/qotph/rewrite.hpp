#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qotph/circuit.hpp"
#include "qotph/keys.hpp"
#include "qotph/statevector.hpp"

namespace qotph {

enum class RuleStrategy {
    Direct,
    DirectWithKeyUpdate,
    SignFlippedRotation,
    ConditionalControlledRotation,
    RecursiveDecomposition,
};

inline RuleStrategy rule_strategy(GateKind k) {
    switch (k) {
        case GateKind::X: case GateKind::Y: case GateKind::Z: case GateKind::Cs:
        case GateKind::Rx: case GateKind::Ry: case GateKind::Rz:
        case GateKind::Rxx: case GateKind::Ryy: case GateKind::Rzz:
            return RuleStrategy::Direct;
        case GateKind::H: case GateKind::S: case GateKind::SqrtX:
        case GateKind::Cx: case GateKind::Cz: case GateKind::Swap:
            return RuleStrategy::DirectWithKeyUpdate;
        case GateKind::Sdg: case GateKind::T: case GateKind::Tdg:
            return RuleStrategy::SignFlippedRotation;
        case GateKind::Crx: case GateKind::Cry: case GateKind::Crz:
            return RuleStrategy::ConditionalControlledRotation;
        case GateKind::Cy: case GateKind::Ch: case GateKind::Ct:
        case GateKind::Cxx: case GateKind::Ccx: case GateKind::Ccz: case GateKind::Cswap:
            return RuleStrategy::RecursiveDecomposition;
    }
    throw std::logic_error("rule_strategy: unreachable");
}

// Fixed, key-independent sub-gate sequences for the composite kinds.
// Composition equals the logical gate up to global phase; certified by
// validate_rule.
inline std::vector<GateOp> expand_decomposition(const GateOp& g) {
    constexpr double pi = std::numbers::pi;
    const std::vector<int>& q = g.qubits;
    switch (g.kind) {
        case GateKind::Cy: {
            const int c = q[0], t = q[1];
            return {make_gate(GateKind::Sdg, {t}), make_gate(GateKind::Cx, {c, t}),
                    make_gate(GateKind::S, {t})};
        }
        case GateKind::Ch: {
            const int c = q[0], t = q[1];
            return {make_gate(GateKind::Ry, {t}, pi / 4), make_gate(GateKind::Cx, {c, t}),
                    make_gate(GateKind::Ry, {t}, -pi / 4)};
        }
        case GateKind::Ct: {
            // Rz(pi/8).CX.Rz(-pi/8).CX realizes CRz(pi/4); the trailing
            // Rz(pi/8) on the control lifts it to CT (see RULE_DEVIATIONS.md).
            const int c = q[0], t = q[1];
            return {make_gate(GateKind::Rz, {t}, pi / 8), make_gate(GateKind::Cx, {c, t}),
                    make_gate(GateKind::Rz, {t}, -pi / 8), make_gate(GateKind::Cx, {c, t}),
                    make_gate(GateKind::Rz, {c}, pi / 8)};
        }
        case GateKind::Cxx: {
            const int c = q[0], t1 = q[1], t2 = q[2];
            return {make_gate(GateKind::Cx, {c, t1}), make_gate(GateKind::Cx, {c, t2})};
        }
        case GateKind::Ccx: {
            const int c1 = q[0], c2 = q[1], t = q[2];
            return {make_gate(GateKind::H, {t}),
                    make_gate(GateKind::Cx, {c2, t}),  make_gate(GateKind::Tdg, {t}),
                    make_gate(GateKind::Cx, {c1, t}),  make_gate(GateKind::T, {t}),
                    make_gate(GateKind::Cx, {c2, t}),  make_gate(GateKind::Tdg, {t}),
                    make_gate(GateKind::Cx, {c1, t}),  make_gate(GateKind::T, {q[1]}),
                    make_gate(GateKind::T, {t}),       make_gate(GateKind::H, {t}),
                    make_gate(GateKind::Cx, {c1, c2}), make_gate(GateKind::T, {c1}),
                    make_gate(GateKind::Tdg, {c2}),    make_gate(GateKind::Cx, {c1, c2})};
        }
        case GateKind::Ccz: {
            const int c1 = q[0], c2 = q[1], t = q[2];
            return {make_gate(GateKind::H, {t}), make_gate(GateKind::Ccx, {c1, c2, t}),
                    make_gate(GateKind::H, {t})};
        }
        case GateKind::Cswap: {
            const int c = q[0], t1 = q[1], t2 = q[2];
            return {make_gate(GateKind::Cx, {t2, t1}), make_gate(GateKind::Ccx, {c, t1, t2}),
                    make_gate(GateKind::Cx, {t2, t1})};
        }
        default:
            throw std::invalid_argument("expand_decomposition: not a decomposable kind");
    }
}

namespace detail {

inline void require_keys(const KeyMap& keys, const GateOp& g) {
    for (int q : g.qubits)
        if (q < 0 || q >= static_cast<int>(keys.size()))
            throw std::out_of_range("adjust_gate: missing key for qubit " + std::to_string(q));
}

inline double sgn(std::uint8_t bit) { return bit ? -1.0 : 1.0; }

}  // namespace detail

// One Table-row application: appends the adjusted gate sequence for the
// encrypted state to `out` and advances `keys` by the row's key update.
inline void adjust_gate_into(const GateOp& g, KeyMap& keys, std::vector<GateOp>& out) {
    detail::require_keys(keys, g);
    constexpr double pi = std::numbers::pi;
    const std::vector<int>& q = g.qubits;
    switch (g.kind) {
        case GateKind::X: case GateKind::Y: case GateKind::Z:
            out.push_back(g);
            return;
        case GateKind::H: {
            out.push_back(g);
            std::swap(keys[q[0]].a, keys[q[0]].b);
            return;
        }
        case GateKind::S: {
            out.push_back(g);
            keys[q[0]].b ^= keys[q[0]].a;
            return;
        }
        case GateKind::SqrtX: {
            out.push_back(g);
            keys[q[0]].a ^= keys[q[0]].b;
            return;
        }
        case GateKind::Sdg:
            out.push_back(make_gate(GateKind::Rz, {q[0]}, detail::sgn(keys[q[0]].a) * (-pi / 2)));
            return;
        case GateKind::T:
            out.push_back(make_gate(GateKind::Rz, {q[0]}, detail::sgn(keys[q[0]].a) * (pi / 4)));
            return;
        case GateKind::Tdg:
            out.push_back(make_gate(GateKind::Rz, {q[0]}, detail::sgn(keys[q[0]].a) * (7 * pi / 4)));
            return;
        case GateKind::Rx: {
            out.push_back(make_gate(GateKind::H, {q[0]}));
            out.push_back(make_gate(GateKind::Rz, {q[0]}, detail::sgn(keys[q[0]].b) * g.theta));
            out.push_back(make_gate(GateKind::H, {q[0]}));
            return;
        }
        case GateKind::Ry:
            out.push_back(make_gate(GateKind::Ry, {q[0]},
                                    detail::sgn(keys[q[0]].a ^ keys[q[0]].b) * g.theta));
            return;
        case GateKind::Rz:
            out.push_back(make_gate(GateKind::Rz, {q[0]}, detail::sgn(keys[q[0]].a) * g.theta));
            return;
        case GateKind::Cx: {
            out.push_back(g);
            keys[q[1]].a ^= keys[q[0]].a;
            keys[q[0]].b ^= keys[q[1]].b;
            return;
        }
        case GateKind::Cz: {
            out.push_back(g);
            const std::uint8_t ac = keys[q[0]].a, at = keys[q[1]].a;
            keys[q[0]].b ^= at;
            keys[q[1]].b ^= ac;
            return;
        }
        case GateKind::Cs: {
            // Key update: none. The adjusted sequence needs diagonal Clifford
            // corrections because CS does not commute with X-masks.
            const int c = q[0], t = q[1];
            out.push_back(g);
            const std::uint8_t ac = keys[c].a, at = keys[t].a;
            if (ac && at) {
                out.push_back(make_gate(GateKind::Sdg, {c}));
                out.push_back(make_gate(GateKind::Sdg, {t}));
            } else if (at) {
                out.push_back(make_gate(GateKind::S, {c}));
                out.push_back(make_gate(GateKind::Cz, {c, t}));
            } else if (ac) {
                out.push_back(make_gate(GateKind::S, {t}));
                out.push_back(make_gate(GateKind::Cz, {c, t}));
            }
            return;
        }
        case GateKind::Swap: {
            out.push_back(g);
            std::swap(keys[q[0]], keys[q[1]]);
            return;
        }
        case GateKind::Rxx:
            out.push_back(make_gate(GateKind::Rxx, q,
                                    detail::sgn(keys[q[0]].b ^ keys[q[1]].b) * g.theta));
            return;
        case GateKind::Ryy:
            out.push_back(make_gate(
                GateKind::Ryy, q,
                detail::sgn(keys[q[0]].a ^ keys[q[0]].b ^ keys[q[1]].a ^ keys[q[1]].b) * g.theta));
            return;
        case GateKind::Rzz:
            out.push_back(make_gate(GateKind::Rzz, q,
                                    detail::sgn(keys[q[0]].a ^ keys[q[1]].a) * g.theta));
            return;
        case GateKind::Crx: case GateKind::Cry: case GateKind::Crz: {
            const int c = q[0], t = q[1];
            std::uint8_t flip = 0;
            GateKind plain;
            if (g.kind == GateKind::Crx) { flip = keys[t].b; plain = GateKind::Rx; }
            else if (g.kind == GateKind::Cry) { flip = keys[t].a ^ keys[t].b; plain = GateKind::Ry; }
            else { flip = keys[t].a; plain = GateKind::Rz; }
            const double theta = detail::sgn(flip) * g.theta;
            if (keys[c].a == 0) {
                out.push_back(make_gate(g.kind, q, theta));
            } else {
                out.push_back(make_gate(plain, {t}, theta));
                out.push_back(make_gate(g.kind, q, -theta));
            }
            return;
        }
        case GateKind::Cy: case GateKind::Ch: case GateKind::Ct:
        case GateKind::Cxx: case GateKind::Ccx: case GateKind::Ccz: case GateKind::Cswap: {
            for (const GateOp& sub : expand_decomposition(g)) adjust_gate_into(sub, keys, out);
            return;
        }
    }
    throw std::logic_error("adjust_gate_into: unreachable");
}

inline std::pair<std::vector<GateOp>, KeyMap> adjust_gate(const GateOp& g, const KeyMap& keys) {
    KeyMap k = keys;
    std::vector<GateOp> out;
    adjust_gate_into(g, k, out);
    return {std::move(out), std::move(k)};
}

inline std::pair<std::vector<GateOp>, KeyMap> evaluate_homomorphic(const Circuit& c,
                                                                   const KeyMap& keys) {
    if (static_cast<int>(keys.size()) < c.n_qubits)
        throw std::invalid_argument("evaluate_homomorphic: keys do not cover circuit");
    KeyMap k = keys;
    std::vector<GateOp> out;
    for (const GateOp& g : c.gates) adjust_gate_into(g, k, out);
    return {std::move(out), std::move(k)};
}

// Key threading without materializing adjusted gates. Written as a separate
// walk over the update rules so it can cross-check evaluate_homomorphic.
inline void update_keys_only_into(const GateOp& g, KeyMap& keys) {
    detail::require_keys(keys, g);
    const std::vector<int>& q = g.qubits;
    switch (g.kind) {
        case GateKind::H: std::swap(keys[q[0]].a, keys[q[0]].b); return;
        case GateKind::S: keys[q[0]].b ^= keys[q[0]].a; return;
        case GateKind::SqrtX: keys[q[0]].a ^= keys[q[0]].b; return;
        case GateKind::Cx:
            keys[q[1]].a ^= keys[q[0]].a;
            keys[q[0]].b ^= keys[q[1]].b;
            return;
        case GateKind::Cz: {
            const std::uint8_t ac = keys[q[0]].a, at = keys[q[1]].a;
            keys[q[0]].b ^= at;
            keys[q[1]].b ^= ac;
            return;
        }
        case GateKind::Swap: std::swap(keys[q[0]], keys[q[1]]); return;
        case GateKind::Cy: case GateKind::Ch: case GateKind::Ct:
        case GateKind::Cxx: case GateKind::Ccx: case GateKind::Ccz: case GateKind::Cswap:
            for (const GateOp& sub : expand_decomposition(g)) update_keys_only_into(sub, keys);
            return;
        default:
            return;  // every other row leaves the keys alone
    }
}

inline KeyMap update_keys_only(const std::vector<GateOp>& ops, const KeyMap& keys) {
    KeyMap k = keys;
    for (const GateOp& g : ops) update_keys_only_into(g, k);
    return k;
}

struct RuleValidationReport {
    GateKind kind = GateKind::X;
    int key_tuples_tested = 0;
    std::vector<double> theta_samples;
    double max_deviation = 0.0;
    std::string ordering_used = "as-listed";
    std::string notes;
    bool accepted = false;
};

inline std::vector<double> default_theta_samples() {
    constexpr double pi = std::numbers::pi;
    return {0.0, pi / 4, pi / 7, 1.2345, -pi / 2};
}

// Certifies one rule: over every key assignment on the gate's qubits and
// every theta sample, U_adjusted * Enc(K) must equal Enc(K') * U_logical up
// to global phase.
inline RuleValidationReport validate_rule(GateKind kind, std::vector<double> theta_samples = {}) {
    RuleValidationReport rep;
    rep.kind = kind;
    const int arity = gate_arity(kind);
    if (gate_has_theta(kind)) {
        if (theta_samples.empty()) theta_samples = default_theta_samples();
    } else {
        theta_samples = {0.0};
    }
    rep.theta_samples = theta_samples;
    std::vector<int> qubits(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) qubits[static_cast<std::size_t>(i)] = i;
    const std::uint32_t key_count = 1u << (2 * arity);
    rep.key_tuples_tested = static_cast<int>(key_count);
    for (std::uint32_t bits = 0; bits < key_count; ++bits) {
        KeyMap keys(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) {
            keys[static_cast<std::size_t>(i)].a = (bits >> (2 * i)) & 1u;
            keys[static_cast<std::size_t>(i)].b = (bits >> (2 * i + 1)) & 1u;
        }
        for (double theta : theta_samples) {
            const GateOp g = make_gate(kind, qubits, theta);
            const auto [adjusted, updated] = adjust_gate(g, keys);
            const Matrix u_adj = dense_unitary(adjusted, arity);
            const Matrix u_log = dense_unitary({g}, arity);
            const Matrix enc = dense_unitary(encryption_layer(keys), arity);
            const Matrix enc_out = dense_unitary(encryption_layer(updated), arity);
            const double dev = phase_aligned_deviation(u_adj * enc, enc_out * u_log);
            rep.max_deviation = std::max(rep.max_deviation, dev);
        }
    }
    if (kind == GateKind::Ct)
        rep.notes = "table 4-gate sequence realizes crz(pi/4); rz(pi/8) on the control appended";
    if (kind == GateKind::Cs)
        rep.notes = "adjusted sequence carries key-dependent diagonal corrections; key update none";
    if (kind == GateKind::Ccx)
        rep.notes = "standard 15-gate clifford+t decomposition; net key update is the identity";
    rep.accepted = rep.max_deviation <= 1e-9;
    return rep;
}

inline std::vector<RuleValidationReport> validate_all_rules() {
    std::vector<RuleValidationReport> reports;
    for (int i = 0; i < kGateKindCount; ++i)
        reports.push_back(validate_rule(static_cast<GateKind>(i)));
    return reports;
}

}  // namespace qotph
