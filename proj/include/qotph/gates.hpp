#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qotph {

enum class GateKind : std::uint8_t {
    X, Y, Z, H, S, Sdg, T, Tdg, SqrtX,
    Rx, Ry, Rz,
    Cx, Cy, Cz, Ch, Cs, Ct,
    Crx, Cry, Crz,
    Rxx, Ryy, Rzz,
    Cxx, Swap,
    Ccx, Ccz, Cswap,
};

inline constexpr int kGateKindCount = 29;

struct GateInfo {
    std::string_view name;  // lowercase text-format mnemonic
    int arity;              // number of qubit operands
    bool has_theta;         // true iff the gate takes one angle
};

inline constexpr std::array<GateInfo, kGateKindCount> kGateTable{{
    {"x", 1, false},     {"y", 1, false},     {"z", 1, false},
    {"h", 1, false},     {"s", 1, false},     {"sdg", 1, false},
    {"t", 1, false},     {"tdg", 1, false},   {"sqrtx", 1, false},
    {"rx", 1, true},     {"ry", 1, true},     {"rz", 1, true},
    {"cx", 2, false},    {"cy", 2, false},    {"cz", 2, false},
    {"ch", 2, false},    {"cs", 2, false},    {"ct", 2, false},
    {"crx", 2, true},    {"cry", 2, true},    {"crz", 2, true},
    {"rxx", 2, true},    {"ryy", 2, true},    {"rzz", 2, true},
    {"cxx", 3, false},   {"swap", 2, false},
    {"ccx", 3, false},   {"ccz", 3, false},   {"cswap", 3, false},
}};

inline const GateInfo& gate_info(GateKind k) {
    return kGateTable[static_cast<std::size_t>(k)];
}

inline std::string_view gate_name(GateKind k) { return gate_info(k).name; }
inline int gate_arity(GateKind k) { return gate_info(k).arity; }
inline bool gate_has_theta(GateKind k) { return gate_info(k).has_theta; }

inline std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (int i = 0; i < kGateKindCount; ++i) {
        if (kGateTable[static_cast<std::size_t>(i)].name == name) {
            return static_cast<GateKind>(i);
        }
    }
    return std::nullopt;
}

}  // namespace qotph
