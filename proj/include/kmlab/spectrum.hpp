#pragma once

// Spectra on the interior of the probability simplex, the majorisation
// preorder, T-transforms with the constructive chain decomposition, Gibbs
// spectra and the entropy functional. Everything curvature-related consumes
// these types: the Kubo-Mori scalar curvature depends on the eigenvalues
// alone.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "kmlab/errors.hpp"
#include "kmlab/rng.hpp"

namespace kmlab {

// Descending positive eigenvalue list summing to 1. Kept sorted at all
// times; the majorisation inequalities are stated on the sorted order.
class Spectrum {
  public:
    static Spectrum from(std::vector<double> v) {
        if (v.empty()) throw usage_error("Spectrum: empty");
        std::sort(v.begin(), v.end(), std::greater<>());
        double sum = 0.0;
        for (double x : v) {
            if (!(x > 0.0) || !std::isfinite(x))
                throw boundary_error("Spectrum: entries must be strictly positive");
            sum += x;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw domain_error("Spectrum: entries must sum to 1");
        Spectrum s;
        s.v_ = std::move(v);
        return s;
    }

    static Spectrum uniform(std::size_t n) {
        if (n == 0) throw usage_error("Spectrum: empty");
        return from(std::vector<double>(n, 1.0 / double(n)));
    }

    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }

    bool operator==(const Spectrum& o) const { return v_ == o.v_; }

  private:
    std::vector<double> v_;
};

// a < b in the majorisation preorder ("a is more mixed than b"): every
// prefix sum of a stays below the matching prefix sum of b. A small
// absolute slack absorbs float accumulation; sums live in [0,1].
inline bool majorizes(const Spectrum& a, const Spectrum& b, double slack = 1e-12) {
    if (a.size() != b.size()) throw usage_error("majorizes: length mismatch");
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        pa += a[k];
        pb += b[k];
        if (pa > pb + slack) return false;
    }
    return true;
}

struct TTransform {
    std::size_t k = 0, l = 0;
    double t = 1.0;
};

// Mix entries k and l with weight t and re-sort. The output is always
// majorised by the input.
inline Spectrum t_transform(const Spectrum& x, std::size_t k, std::size_t l, double t) {
    if (k == l || k >= x.size() || l >= x.size())
        throw usage_error("t_transform: need two distinct valid indices");
    if (!(t >= 0.0 && t <= 1.0)) throw usage_error("t_transform: t must lie in [0,1]");
    std::vector<double> v = x.values();
    const double xk = v[k], xl = v[l];
    v[k] = t * xk + (1.0 - t) * xl;
    v[l] = (1.0 - t) * xk + t * xl;
    return Spectrum::from(std::move(v));
}

// Constructive decomposition: a sequence of at most n-1 T-transforms taking
// b to a, assuming a < b. Classical scheme: pick j as the largest index
// where the target still lies below the current vector, k as the smallest
// index past j where it lies above, and transfer mass between that
// straddling pair. Each step preserves sortedness, changes exactly two
// entries, and stays inside the majorisation interval [a, b].
inline std::vector<TTransform> t_transform_decompose(const Spectrum& a, const Spectrum& b) {
    if (a.size() != b.size()) throw usage_error("t_transform_decompose: length mismatch");
    if (!majorizes(a, b)) throw ordering_error("t_transform_decompose: need a majorised by b");
    const std::size_t n = a.size();
    const double tol = 1e-13;
    std::vector<double> y = b.values();
    std::vector<TTransform> out;
    for (std::size_t step = 0; step + 1 < n + 1; ++step) {
        std::ptrdiff_t j = -1;
        for (std::size_t i = 0; i < n; ++i)
            if (y[i] - a[i] > tol) j = std::ptrdiff_t(i);
        if (j < 0) break; // converged
        std::size_t kk = n;
        for (std::size_t i = std::size_t(j) + 1; i < n; ++i)
            if (a[i] - y[i] > tol) { kk = i; break; }
        if (kk == n) break; // residuals below tolerance
        const double delta = std::min(y[std::size_t(j)] - a[std::size_t(j)], a[kk] - y[kk]);
        const double t = 1.0 - delta / (y[std::size_t(j)] - y[kk]);
        y[std::size_t(j)] -= delta;
        y[kk] += delta;
        out.push_back(TTransform{std::size_t(j), kk, t});
    }
    return out;
}

// Chain of spectra pairwise ordered by majorisation, consecutive members
// differing in at most two sorted positions.
struct MajorisationChain {
    std::vector<Spectrum> members;

    void validate() const {
        for (std::size_t z = 0; z + 1 < members.size(); ++z) {
            if (!majorizes(members[z], members[z + 1]))
                throw ordering_error("MajorisationChain: links must be majorisation-ordered");
            std::size_t changed = 0;
            for (std::size_t i = 0; i < members[z].size(); ++i)
                if (std::fabs(members[z][i] - members[z + 1][i]) > 1e-12) ++changed;
            if (changed > 2)
                throw ordering_error("MajorisationChain: consecutive members differ in more than two entries");
        }
    }
};

// Chain from a (more mixed) to b built by replaying the T-transform
// decomposition; the replay end must match a to 1e-10 entrywise.
inline MajorisationChain pair_chain(const Spectrum& a, const Spectrum& b) {
    auto transforms = t_transform_decompose(a, b);
    std::vector<Spectrum> toward_a;
    toward_a.push_back(b);
    Spectrum cur = b;
    for (const auto& tr : transforms) {
        cur = t_transform(cur, tr.k, tr.l, tr.t);
        toward_a.push_back(cur);
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::fabs(cur[i] - a[i]) > 1e-10)
            throw numerical_error("pair_chain: replay did not reach the target spectrum");
    MajorisationChain chain;
    for (auto it = toward_a.rbegin(); it != toward_a.rend(); ++it) chain.members.push_back(*it);
    if (chain.members.size() > 1 && chain.members.front() == chain.members.back())
        chain.members.resize(1);
    chain.validate();
    return chain;
}

// Gibbs family exp(-beta H)/Tr exp(-beta H) for a fixed Hamiltonian
// spectrum; betas index the path points.
struct GibbsPath {
    std::vector<double> hamiltonian_eigs;
    std::vector<double> betas;

    void validate() const {
        if (hamiltonian_eigs.empty()) throw usage_error("GibbsPath: empty Hamiltonian");
        double prev = 0.0;
        bool first = true;
        for (double b : betas) {
            if (!(b > 0.0)) throw usage_error("GibbsPath: betas must be positive");
            if (!first && !(b > prev)) throw usage_error("GibbsPath: betas must increase strictly");
            prev = b;
            first = false;
        }
    }
};

// Gibbs spectrum at inverse temperature beta (beta = 0 gives the uniform
// state). Max-shifted so large beta*H cannot overflow; invariant under
// H -> H + c*I by construction.
inline Spectrum gibbs(const GibbsPath& path, double beta) {
    if (path.hamiltonian_eigs.empty()) throw usage_error("gibbs: empty Hamiltonian");
    if (!(beta >= 0.0)) throw usage_error("gibbs: beta must be >= 0");
    const auto& h = path.hamiltonian_eigs;
    const double hmin = *std::min_element(h.begin(), h.end());
    std::vector<double> w(h.size());
    double z = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        w[i] = std::exp(-beta * (h[i] - hmin));
        z += w[i];
    }
    for (double& x : w) x /= z;
    return Spectrum::from(std::move(w));
}

// Verifier direction of the Gibbs-chain equivalence: the spectra along an
// increasing beta grid must form a majorisation chain, more mixed at
// smaller beta.
inline bool gibbs_path_is_monotone(const GibbsPath& path) {
    path.validate();
    for (std::size_t i = 0; i + 1 < path.betas.size(); ++i)
        if (!majorizes(gibbs(path, path.betas[i]), gibbs(path, path.betas[i + 1])))
            return false;
    return true;
}

// von Neumann entropy of a spectrum, maximal (= log n) at uniform.
inline double von_neumann_entropy(const Spectrum& s) {
    double e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) e -= s[i] * std::log(s[i]);
    return e;
}

// Uniformly random interior spectrum via normalised exponential spacings,
// rejection-sampled to keep every entry above 1e-6.
inline Spectrum sample_spectrum(std::size_t n, Rng& rng) {
    if (n == 0) throw usage_error("sample_spectrum: n must be positive");
    if (n == 1) return Spectrum::from({1.0});
    for (;;) {
        std::vector<double> v(n);
        double sum = 0.0;
        for (auto& x : v) {
            double u = rng.uniform01();
            while (u <= 0.0) u = rng.uniform01();
            x = -std::log(u);
            sum += x;
        }
        for (auto& x : v) x /= sum;
        if (*std::min_element(v.begin(), v.end()) >= 1e-6) {
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) total += v[i];
            v[n - 1] = 1.0 - total; // exact unit sum
            return Spectrum::from(std::move(v));
        }
    }
}

} // namespace kmlab
