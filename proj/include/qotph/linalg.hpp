#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qotph {

using cplx = std::complex<double>;

// Small dense complex matrix, row-major. Sized for gate unitaries and
// density matrices (dim <= 16); not a general linear-algebra type.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), d_(dim * dim) {}

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }
    cplx& at(std::size_t r, std::size_t c) { return d_[r * dim_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return d_[r * dim_ + c]; }

    Matrix adjoint() const {
        Matrix m(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dim mismatch");
        Matrix m(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r) {
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const cplx v = a.at(r, k);
                if (v == cplx{}) continue;
                for (std::size_t c = 0; c < a.dim_; ++c) m.at(r, c) += v * b.at(k, c);
            }
        }
        return m;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> d_;
};

// Max-entry deviation between A and gamma*B, gamma the unit phase maximizing
// agreement (trace-overlap alignment). Zero iff A == B up to global phase.
inline double phase_aligned_deviation(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dim mismatch");
    cplx overlap = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) overlap += std::conj(b.at(r, c)) * a.at(r, c);
    cplx gamma = 1.0;
    if (std::abs(overlap) > 1e-300) gamma = overlap / std::abs(overlap);
    double dev = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            dev = std::max(dev, std::abs(a.at(r, c) - gamma * b.at(r, c)));
    return dev;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double dev = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            dev = std::max(dev, std::abs(a.at(r, c) - b.at(r, c)));
    return dev;
}

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
inline std::vector<double> hermitian_eigenvalues(Matrix a) {
    const std::size_t n = a.dim();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a.at(p, q)));
        if (off < 1e-15) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double m = std::abs(apq);
                if (m < 1e-18) continue;
                const cplx phase = apq / m;  // a_pq = m * phase
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary J: columns p,q -> (c*e_p - s*conj(phase)*e_q, s*phase*e_p + c*e_q)
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a.at(r, p);
                    const cplx arq = a.at(r, q);
                    a.at(r, p) = c * arp - s * std::conj(phase) * arq;
                    a.at(r, q) = s * phase * arp + c * arq;
                }
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx apc = a.at(p, col);
                    const cplx aqc = a.at(q, col);
                    a.at(p, col) = c * apc - s * phase * aqc;
                    a.at(q, col) = s * std::conj(phase) * apc + c * aqc;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
    return eig;
}

// 0.5 * trace norm, for Hermitian input.
inline double trace_distance(const Matrix& rho, const Matrix& sigma) {
    Matrix d(rho.dim());
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) d.at(r, c) = rho.at(r, c) - sigma.at(r, c);
    double td = 0.0;
    for (double e : hermitian_eigenvalues(d)) td += std::abs(e);
    return 0.5 * td;
}

}  // namespace qotph
