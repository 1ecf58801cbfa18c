#pragma once

// Dense complex matrices at desk scale (n <= 16), the cyclic Jacobi
// eigensolver for Hermitian matrices, and the density-matrix layer built on
// top of it: validated DensityMatrix / TangentVector types, spectra, matrix
// logarithm and Umegaki relative entropy, Gibbs spectra, random states.
// Self-contained on purpose; no external numerics dependency is worth it at
// these sizes.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "kmlab/errors.hpp"
#include "kmlab/rng.hpp"
#include "kmlab/spectrum.hpp"

namespace kmlab {

using cplx = std::complex<double>;

class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(std::size_t(n) * n) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }
    cplx& operator()(int i, int j) { return a_[std::size_t(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(cplx s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const cplx aik = a(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < a.n_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    Matrix adjoint() const {
        Matrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : a_) m = std::max(m, std::abs(x));
        return m;
    }

    double hermiticity_defect() const {
        double d = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    bool is_real() const {
        for (const auto& x : a_)
            if (x.imag() != 0.0) return false;
        return true;
    }

  private:
    int n_ = 0;
    std::vector<cplx> a_;
};

struct EighResult {
    std::vector<double> eigenvalues; // descending
    Matrix vectors;                  // columns match eigenvalues
};

// Cyclic Jacobi diagonalisation of a Hermitian matrix. Off-diagonal entries
// are annihilated with phased rotations until the off-diagonal Frobenius norm
// falls below 1e-14 relative to the matrix scale.
inline EighResult jacobi_eigh(const Matrix& input) {
    const int n = input.dim();
    if (n == 0) throw usage_error("jacobi_eigh: empty matrix");
    if (input.hermiticity_defect() > 1e-12 * std::max(1.0, input.max_abs()))
        throw domain_error("jacobi_eigh: matrix is not Hermitian");

    Matrix a = input;
    // enforce exact Hermitian symmetry before sweeping
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    Matrix u = Matrix::identity(n);
    const double tol = 1e-14 * std::max(1.0, a.frobenius());

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
        if (std::sqrt(off) < tol) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const cplx phase = apq / g;
                const double tau = (beta - alpha) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // columns: col_p' = c col_p - s conj(phase) col_q ; col_q' = s phase col_p + c col_q
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - s * std::conj(phase) * arq;
                    a(r, q) = s * phase * arp + c * arq;
                    const cplx urp = u(r, p), urq = u(r, q);
                    u(r, p) = c * urp - s * std::conj(phase) * urq;
                    u(r, q) = s * phase * urp + c * urq;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - s * phase * aqr;
                    a(q, r) = s * std::conj(phase) * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
            }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] > d[j]; });

    EighResult res;
    res.eigenvalues.resize(n);
    res.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        res.eigenvalues[k] = d[order[k]];
        for (int r = 0; r < n; ++r) res.vectors(r, k) = u(r, order[k]);
    }
    return res;
}

// Self-adjoint matrix with an optional traceless tag (tangent vectors of the
// trace-one submanifold are traceless).
struct TangentVector {
    Matrix m;
    bool traceless = false;

    static TangentVector from(Matrix mat, bool traceless_tag = false) {
        if (mat.hermiticity_defect() > 1e-12 * std::max(1.0, mat.max_abs()))
            throw domain_error("TangentVector: matrix is not self-adjoint");
        if (traceless_tag && std::abs(mat.trace()) > 1e-12 * std::max(1.0, mat.max_abs()))
            throw domain_error("TangentVector: trace is not zero");
        return TangentVector{std::move(mat), traceless_tag};
    }
};

// Invertible density matrix: Hermitian, trace one, strictly positive.
class DensityMatrix {
  public:
    static DensityMatrix from(Matrix m, bool real_only = false) {
        if (m.hermiticity_defect() > 1e-12)
            throw domain_error("DensityMatrix: matrix is not Hermitian");
        if (std::abs(m.trace() - cplx(1.0)) > 1e-12)
            throw domain_error("DensityMatrix: trace must be 1");
        if (real_only && !m.is_real())
            throw domain_error("DensityMatrix: real_only matrix has complex entries");
        DensityMatrix d;
        d.m_ = std::move(m);
        d.real_only_ = real_only;
        auto eig = jacobi_eigh(d.m_);
        if (eig.eigenvalues.back() <= 0.0)
            throw boundary_error("DensityMatrix: smallest eigenvalue is not positive");
        return d;
    }

    static DensityMatrix diagonal(const Spectrum& s) {
        Matrix m(int(s.size()));
        for (int i = 0; i < int(s.size()); ++i) m(i, i) = s[i];
        return from(std::move(m), true);
    }

    const Matrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }
    bool real_only() const { return real_only_; }

  private:
    Matrix m_;
    bool real_only_ = false;
};

// Descending spectrum of a density matrix.
inline Spectrum eigvalsh(const DensityMatrix& d) {
    auto eig = jacobi_eigh(d.matrix());
    if (eig.eigenvalues.back() <= 0.0)
        throw boundary_error("eigvalsh: eigenvalue <= 0");
    return Spectrum::from(eig.eigenvalues);
}

// log of a Hermitian positive definite matrix via its eigensystem.
inline Matrix matrix_log(const Matrix& m) {
    auto eig = jacobi_eigh(m);
    const int n = m.dim();
    if (eig.eigenvalues.back() <= 0.0)
        throw boundary_error("matrix_log: matrix is not positive definite");
    Matrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k)
                s += eig.vectors(i, k) * std::log(eig.eigenvalues[k]) * std::conj(eig.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

// Umegaki relative entropy S(D1, D2) = Tr D1 (log D1 - log D2). Nonnegative,
// zero exactly at D1 = D2.
inline double relative_entropy(const DensityMatrix& d1, const DensityMatrix& d2) {
    if (d1.dim() != d2.dim()) throw usage_error("relative_entropy: dimension mismatch");
    auto e1 = jacobi_eigh(d1.matrix());
    Matrix log2 = matrix_log(d2.matrix());
    double s = 0.0;
    // Tr D1 log D1 in D1's eigenbasis
    for (double lam : e1.eigenvalues) s += lam * std::log(lam);
    // Tr D1 log D2
    const int n = d1.dim();
    cplx t = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t += d1.matrix()(i, j) * log2(j, i);
    return s - t.real();
}

inline Matrix random_unitary(int n, Rng& rng) {
    Matrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    // modified Gram-Schmidt on columns
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (int r = 0; r < n; ++r) proj += std::conj(g(r, k)) * g(r, j);
            for (int r = 0; r < n; ++r) g(r, j) -= proj * g(r, k);
        }
        double nrm = 0.0;
        for (int r = 0; r < n; ++r) nrm += std::norm(g(r, j));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < n; ++r) g(r, j) /= nrm;
    }
    return g;
}

inline DensityMatrix random_density_matrix(int n, Rng& rng, bool real_only = false,
                                           double min_eig = 0.0) {
    Spectrum s = sample_spectrum(n, rng);
    while (s[std::size_t(n) - 1] < min_eig) s = sample_spectrum(n, rng);
    Matrix u = random_unitary(n, rng);
    if (real_only) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) u(i, j) = cplx(u(i, j).real(), 0.0);
        // re-orthonormalise the real part
        for (int jcol = 0; jcol < n; ++jcol) {
            for (int k = 0; k < jcol; ++k) {
                cplx proj = 0.0;
                for (int r = 0; r < n; ++r) proj += u(r, k) * u(r, jcol);
                for (int r = 0; r < n; ++r) u(r, jcol) -= proj * u(r, k);
            }
            double nrm = 0.0;
            for (int r = 0; r < n; ++r) nrm += std::norm(u(r, jcol));
            nrm = std::sqrt(nrm);
            for (int r = 0; r < n; ++r) u(r, jcol) /= nrm;
        }
    }
    Matrix d(n);
    for (int i = 0; i < n; ++i) d(i, i) = s[i];
    Matrix m = u * d * u.adjoint();
    // clean roundoff so the validated constructor accepts it
    for (int i = 0; i < n; ++i) {
        m(i, i) = cplx(m(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    cplx tr = m.trace();
    for (int i = 0; i < n; ++i) m(i, i) += (1.0 - tr.real()) / double(n);
    return DensityMatrix::from(std::move(m), real_only);
}

// Random self-adjoint direction, optionally projected onto the traceless
// tangent space.
inline TangentVector random_tangent(int n, Rng& rng, bool traceless = true) {
    Matrix x(n);
    for (int i = 0; i < n; ++i) {
        x(i, i) = rng.normal();
        for (int j = i + 1; j < n; ++j) {
            cplx e(rng.normal(), rng.normal());
            x(i, j) = e;
            x(j, i) = std::conj(e);
        }
    }
    if (traceless) {
        cplx tr = x.trace();
        for (int i = 0; i < n; ++i) x(i, i) -= tr / double(n);
    }
    return TangentVector::from(std::move(x), traceless);
}

} // namespace kmlab
