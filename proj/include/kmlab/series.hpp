#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace kmlab::detail {

// Truncated power series in e = c - 1, used to evaluate functions with a
// removable singularity at c = 1. 32 terms keep the truncation error below
// 1e-18 on the switch window |e| <= 0.2.
inline constexpr std::size_t series_len = 32;

struct Series {
    std::array<double, series_len> c{};

    double eval(double e) const {
        double acc = c[series_len - 1];
        for (std::size_t k = series_len - 1; k-- > 0;)
            acc = acc * e + c[k];
        return acc;
    }
};

inline Series operator+(const Series& a, const Series& b) {
    Series r;
    for (std::size_t k = 0; k < series_len; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

inline Series operator-(const Series& a, const Series& b) {
    Series r;
    for (std::size_t k = 0; k < series_len; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

inline Series operator*(const Series& a, const Series& b) {
    Series r;
    for (std::size_t i = 0; i < series_len; ++i)
        for (std::size_t j = 0; i + j < series_len; ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

inline Series operator*(double s, const Series& a) {
    Series r;
    for (std::size_t k = 0; k < series_len; ++k) r.c[k] = s * a.c[k];
    return r;
}

// Reciprocal of a series with nonzero constant term.
inline Series reciprocal(const Series& b) {
    Series r;
    r.c[0] = 1.0 / b.c[0];
    for (std::size_t k = 1; k < series_len; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += b.c[j] * r.c[k - j];
        r.c[k] = -s / b.c[0];
    }
    return r;
}

inline Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }

// Drops the leading `k` coefficients, i.e. divides by e^k. The dropped
// coefficients must vanish identically; they do for every series built here.
inline Series shift_down(const Series& a, std::size_t k) {
    Series r;
    for (std::size_t i = 0; i + k < series_len; ++i) r.c[i] = a.c[i + k];
    return r;
}

inline Series constant(double v) {
    Series r;
    r.c[0] = v;
    return r;
}

// p(e) = p0 + p1 e + p2 e^2
inline Series poly(double p0, double p1 = 0.0, double p2 = 0.0) {
    Series r;
    r.c[0] = p0;
    r.c[1] = p1;
    r.c[2] = p2;
    return r;
}

// log(1+e)/e = 1 - e/2 + e^2/3 - ...
inline const Series& log1p_over_e() {
    static const Series s = [] {
        Series r;
        for (std::size_t k = 0; k < series_len; ++k)
            r.c[k] = (k % 2 == 0 ? 1.0 : -1.0) / double(k + 1);
        return r;
    }();
    return s;
}

} // namespace kmlab::detail
