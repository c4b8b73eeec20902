#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qotph/circuit.hpp"
#include "qotph/linalg.hpp"

namespace qotph {

// Basis index convention: index = sum_i b_i * 2^i, qubit 0 = least-significant
// bit. Bitstrings put qubit i at character position i (leftmost = qubit 0).
struct Statevector {
    int n_qubits = 0;
    std::vector<cplx> amps;

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps) s += std::norm(a);
        return s;
    }
};

using Counts = std::map<std::string, std::uint64_t>;
using Distribution = std::map<std::string, double>;

inline std::string index_to_bitstring(std::uint64_t idx, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((idx >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline std::uint64_t bitstring_to_index(const std::string& s) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') idx |= (std::uint64_t{1} << i);
    return idx;
}

inline Statevector init_state(const std::vector<int>& bits) {
    const int n = static_cast<int>(bits.size());
    if (n == 0) throw std::invalid_argument("init_state: zero qubits");
    std::uint64_t idx = 0;
    for (int i = 0; i < n; ++i) {
        if (bits[static_cast<std::size_t>(i)] != 0 && bits[static_cast<std::size_t>(i)] != 1)
            throw std::invalid_argument("init_state: bits must be 0/1");
        if (bits[static_cast<std::size_t>(i)]) idx |= (std::uint64_t{1} << i);
    }
    Statevector sv;
    sv.n_qubits = n;
    sv.amps.assign(std::uint64_t{1} << n, cplx{});
    sv.amps[idx] = 1.0;
    return sv;
}

namespace detail {

inline Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
    Matrix m(2);
    m.at(0, 0) = a; m.at(0, 1) = b; m.at(1, 0) = c; m.at(1, 1) = d;
    return m;
}

inline Matrix rot_matrix(char axis, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    switch (axis) {
        case 'x': return mat2(c, cplx(0, -s), cplx(0, -s), c);
        case 'y': return mat2(c, -s, s, c);
        default:  return mat2(std::polar(1.0, -theta / 2.0), 0, 0, std::polar(1.0, theta / 2.0));
    }
}

// Embed: controls occupy local bit positions 0..nc-1, base acts on the
// remaining (high) positions when all control bits are 1.
inline Matrix controlled(const Matrix& base, int nc) {
    const std::size_t bd = base.dim();
    const std::size_t dim = bd << nc;
    const std::size_t cmask = (std::size_t{1} << nc) - 1;
    Matrix m(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        if ((col & cmask) != cmask) {
            m.at(col, col) = 1.0;
            continue;
        }
        const std::size_t ct = col >> nc;
        for (std::size_t rt = 0; rt < bd; ++rt) {
            const cplx v = base.at(rt, ct);
            if (v != cplx{}) m.at((rt << nc) | cmask, col) = v;
        }
    }
    return m;
}

// exp(-i theta/2 P (x) P) for P in {X, Y, Z}.
inline Matrix two_qubit_rotation(char axis, double theta) {
    const Matrix p = axis == 'x' ? mat2(0, 1, 1, 0)
                   : axis == 'y' ? mat2(0, cplx(0, -1), cplx(0, 1), 0)
                                 : mat2(1, 0, 0, -1);
    Matrix pp(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            pp.at(r, c) = p.at(r & 1, c & 1) * p.at(r >> 1, c >> 1);
    const double co = std::cos(theta / 2.0);
    const double si = std::sin(theta / 2.0);
    Matrix m(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            m.at(r, c) = (r == c ? cplx(co) : cplx{}) - cplx(0, si) * pp.at(r, c);
    return m;
}

}  // namespace detail

// Gate unitary in the local convention: local bit p corresponds to
// operand qubits[p], so controls sit on the low local bits.
inline Matrix gate_matrix(GateKind k, double theta = 0.0) {
    using detail::mat2;
    using detail::controlled;
    using detail::rot_matrix;
    using detail::two_qubit_rotation;
    constexpr double pi = std::numbers::pi;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (k) {
        case GateKind::X: return mat2(0, 1, 1, 0);
        case GateKind::Y: return mat2(0, cplx(0, -1), cplx(0, 1), 0);
        case GateKind::Z: return mat2(1, 0, 0, -1);
        case GateKind::H: return mat2(inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
        case GateKind::S: return mat2(1, 0, 0, cplx(0, 1));
        case GateKind::Sdg: return mat2(1, 0, 0, cplx(0, -1));
        case GateKind::T: return mat2(1, 0, 0, std::polar(1.0, pi / 4));
        case GateKind::Tdg: return mat2(1, 0, 0, std::polar(1.0, -pi / 4));
        case GateKind::SqrtX:
            return mat2(cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5));
        case GateKind::Rx: return rot_matrix('x', theta);
        case GateKind::Ry: return rot_matrix('y', theta);
        case GateKind::Rz: return rot_matrix('z', theta);
        case GateKind::Cx: return controlled(gate_matrix(GateKind::X), 1);
        case GateKind::Cy: return controlled(gate_matrix(GateKind::Y), 1);
        case GateKind::Cz: return controlled(gate_matrix(GateKind::Z), 1);
        case GateKind::Ch: return controlled(gate_matrix(GateKind::H), 1);
        case GateKind::Cs: return controlled(gate_matrix(GateKind::S), 1);
        case GateKind::Ct: return controlled(gate_matrix(GateKind::T), 1);
        case GateKind::Crx: return controlled(rot_matrix('x', theta), 1);
        case GateKind::Cry: return controlled(rot_matrix('y', theta), 1);
        case GateKind::Crz: return controlled(rot_matrix('z', theta), 1);
        case GateKind::Rxx: return two_qubit_rotation('x', theta);
        case GateKind::Ryy: return two_qubit_rotation('y', theta);
        case GateKind::Rzz: return two_qubit_rotation('z', theta);
        case GateKind::Cxx: {
            Matrix xx(4);
            for (std::size_t i = 0; i < 4; ++i) xx.at(i ^ 3u, i) = 1.0;
            return controlled(xx, 1);
        }
        case GateKind::Swap: {
            Matrix m(4);
            m.at(0, 0) = m.at(3, 3) = m.at(1, 2) = m.at(2, 1) = 1.0;
            return m;
        }
        case GateKind::Ccx: return controlled(gate_matrix(GateKind::X), 2);
        case GateKind::Ccz: return controlled(gate_matrix(GateKind::Z), 2);
        case GateKind::Cswap: {
            Matrix sw(4);
            sw.at(0, 0) = sw.at(3, 3) = sw.at(1, 2) = sw.at(2, 1) = 1.0;
            return controlled(sw, 1);
        }
    }
    throw std::logic_error("gate_matrix: unreachable");
}

inline void apply_matrix(Statevector& sv, const Matrix& m, const std::vector<int>& qubits) {
    const int a = static_cast<int>(qubits.size());
    const std::uint64_t sub = std::uint64_t{1} << a;
    if (m.dim() != sub) throw std::invalid_argument("apply_matrix: dim/operand mismatch");
    // offsets[l]: global-index offset of local basis state l
    std::vector<std::uint64_t> offsets(sub, 0);
    for (std::uint64_t l = 1; l < sub; ++l)
        for (int p = 0; p < a; ++p)
            if ((l >> p) & 1u) offsets[l] |= (std::uint64_t{1} << qubits[static_cast<std::size_t>(p)]);
    std::vector<int> sorted(qubits);
    std::sort(sorted.begin(), sorted.end());
    const std::uint64_t outer = sv.amps.size() >> a;
    std::vector<cplx> in(sub), out(sub);
    for (std::uint64_t i = 0; i < outer; ++i) {
        // spread i over the non-operand bit positions
        std::uint64_t base = i;
        for (int q : sorted) {
            const std::uint64_t low = base & ((std::uint64_t{1} << q) - 1);
            base = ((base >> q) << (q + 1)) | low;
        }
        for (std::uint64_t l = 0; l < sub; ++l) in[l] = sv.amps[base | offsets[l]];
        for (std::uint64_t r = 0; r < sub; ++r) {
            cplx acc{};
            for (std::uint64_t c = 0; c < sub; ++c) acc += m.at(r, c) * in[c];
            out[r] = acc;
        }
        for (std::uint64_t l = 0; l < sub; ++l) sv.amps[base | offsets[l]] = out[l];
    }
}

inline void apply_gate(Statevector& sv, const GateOp& g) {
    const GateInfo& info = gate_info(g.kind);
    if (static_cast<int>(g.qubits.size()) != info.arity)
        throw std::invalid_argument("apply_gate: arity mismatch");
    for (int q : g.qubits)
        if (q < 0 || q >= sv.n_qubits) throw std::out_of_range("apply_gate: qubit index");
    apply_matrix(sv, gate_matrix(g.kind, g.theta), g.qubits);
}

inline void apply_gates(Statevector& sv, const std::vector<GateOp>& gates) {
    for (const GateOp& g : gates) apply_gate(sv, g);
}

inline Statevector run_circuit(const Circuit& c, const std::vector<int>& bits) {
    if (static_cast<int>(bits.size()) != c.n_qubits)
        throw std::invalid_argument("run_circuit: bit-width mismatch");
    Statevector sv = init_state(bits);
    apply_gates(sv, c.gates);
    return sv;
}

inline Distribution distribution(const Statevector& sv) {
    Distribution d;
    for (std::uint64_t i = 0; i < sv.amps.size(); ++i) {
        const double p = std::norm(sv.amps[i]);
        if (p >= 1e-15) d[index_to_bitstring(i, sv.n_qubits)] = p;
    }
    return d;
}

namespace detail {

// Deterministic uniform double in [0,1) from the raw engine output, so
// sampled results do not depend on the standard library's distribution
// implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over seed ^ stream tag
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

inline Counts sample_counts(const Statevector& sv, std::uint64_t shots, std::mt19937_64& rng) {
    if (shots == 0) throw std::invalid_argument("sample_counts: shots must be >= 1");
    std::vector<double> cdf(sv.amps.size());
    double acc = 0.0;
    for (std::uint64_t i = 0; i < sv.amps.size(); ++i) {
        acc += std::norm(sv.amps[i]);
        cdf[i] = acc;
    }
    std::map<std::uint64_t, std::uint64_t> hits;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = detail::uniform01(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t idx = std::min<std::uint64_t>(
            static_cast<std::uint64_t>(it - cdf.begin()), sv.amps.size() - 1);
        ++hits[idx];
    }
    Counts counts;
    for (const auto& [idx, n] : hits) counts[index_to_bitstring(idx, sv.n_qubits)] = n;
    return counts;
}

inline Counts sample_counts(const Statevector& sv, std::uint64_t shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_counts(sv, shots, rng);
}

inline Matrix dense_unitary(const std::vector<GateOp>& gates, int n_qubits) {
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    Matrix u = Matrix::identity(dim);
    // apply each gate to every column of the accumulated unitary
    Statevector col;
    col.n_qubits = n_qubits;
    for (std::uint64_t c = 0; c < dim; ++c) {
        col.amps.assign(dim, cplx{});
        for (std::uint64_t r = 0; r < dim; ++r) col.amps[r] = u.at(r, c);
        for (const GateOp& g : gates) apply_gate(col, g);
        for (std::uint64_t r = 0; r < dim; ++r) u.at(r, c) = col.amps[r];
    }
    return u;
}

inline Matrix dense_unitary(const Circuit& c) {
    if (c.n_qubits > 4) throw std::invalid_argument("dense_unitary: n_qubits > 4");
    return dense_unitary(c.gates, c.n_qubits);
}

// min over unit phases gamma of max_i |a_i - gamma * b_i|, with gamma fixed
// by aligning on b's largest-magnitude amplitude.
inline double phase_aligned_distance(const Statevector& a, const Statevector& b) {
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("phase_aligned_distance: size mismatch");
    std::uint64_t m = 0;
    double best = 0.0;
    for (std::uint64_t i = 0; i < b.amps.size(); ++i) {
        const double v = std::abs(b.amps[i]);
        if (v > best) { best = v; m = i; }
    }
    if (best == 0.0) throw std::invalid_argument("phase_aligned_distance: zero vector");
    cplx gamma = a.amps[m] / b.amps[m];
    const double g = std::abs(gamma);
    gamma = g > 1e-300 ? gamma / g : cplx{1.0};
    double dev = 0.0;
    for (std::uint64_t i = 0; i < a.amps.size(); ++i)
        dev = std::max(dev, std::abs(a.amps[i] - gamma * b.amps[i]));
    return dev;
}

}  // namespace qotph
