#pragma once

// Shared generators and brute-force tensor oracles for the test suites. The
// oracles work on the full 2x2x2 array with explicit index loops and never
// call the library's tensor algebra.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "typea/affine_core.hpp"

namespace typea::testing {

using Tensor3 = std::array<std::array<std::array<double, 2>, 2>, 2>;  // g[i][j][k] = Gamma_ij^k
using Mat2 = std::array<std::array<double, 2>, 2>;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53); }

    ChristoffelSymbols symbols(double bound = 2.0) {
        ChristoffelSymbols c;
        for (double* e : {&c.c111, &c.c112, &c.c121, &c.c122, &c.c221, &c.c222}) *e = uniform(-bound, bound);
        return c;
    }

    /// Entries in [-2, 2] with |det| >= 0.25, so the condition number stays moderate.
    LinearMap linear_map() {
        for (;;) {
            const LinearMap t{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
            if (std::abs(t.det()) >= 0.25) return t;
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline Tensor3 full(const ChristoffelSymbols& c) {
    Tensor3 g{};
    g[0][0] = {c.c111, c.c112};
    g[0][1] = g[1][0] = {c.c121, c.c122};
    g[1][1] = {c.c221, c.c222};
    return g;
}

inline ChristoffelSymbols packed(const Tensor3& g) {
    return {g[0][0][0], g[0][0][1], g[0][1][0], g[0][1][1], g[1][1][0], g[1][1][1]};
}

/// rho_jk = R_ijk^i, R_ijk^l = Gamma_im^l Gamma_jk^m - Gamma_jm^l Gamma_ik^m.
inline Mat2 oracle_ricci(const ChristoffelSymbols& c) {
    const Tensor3 g = full(c);
    Mat2 rho{};
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int m = 0; m < 2; ++m) rho[j][k] += g[i][m][i] * g[j][k][m] - g[j][m][i] * g[i][k][m];
    return rho;
}

inline Mat2 oracle_rho_check(const ChristoffelSymbols& c) {
    const Tensor3 g = full(c);
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r[i][j] += g[i][k][l] * g[j][l][k];
    return r;
}

/// Constant coefficients: nabla_i rho_jk = -Gamma_ij^m rho_mk - Gamma_ik^m rho_jm.
inline Tensor3 oracle_nabla_ricci(const ChristoffelSymbols& c) {
    const Tensor3 g = full(c);
    const Mat2 rho = oracle_ricci(c);
    Tensor3 d{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m) d[i][j][k] -= g[i][j][m] * rho[m][k] + g[i][k][m] * rho[j][m];
    return d;
}

inline Mat2 as_mat(const LinearMap& t) { return {{{t.t11, t.t12}, {t.t21, t.t22}}}; }

inline Mat2 inverse(const Mat2& m) {
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

/// Gamma in the coordinates w = T x, by the tensor transformation law.
inline ChristoffelSymbols oracle_pushforward(const ChristoffelSymbols& c, const LinearMap& map) {
    const Tensor3 g = full(c);
    const Mat2 t = as_mat(map), ti = inverse(t);
    Tensor3 out{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cc = 0; cc < 2; ++cc)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < 2; ++k) out[a][b][cc] += ti[i][a] * ti[j][b] * t[cc][k] * g[i][j][k];
    return packed(out);
}

/// Sigma = rho^ij rho_check_ij, Psi = det rho_check / det rho.
inline std::array<double, 2> oracle_sigma_psi(const ChristoffelSymbols& c) {
    const Mat2 rho = oracle_ricci(c), chk = oracle_rho_check(c);
    const Mat2 inv = inverse(rho);
    double sigma = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) sigma += inv[i][j] * chk[i][j];
    const double det_rho = rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0];
    const double det_chk = chk[0][0] * chk[1][1] - chk[0][1] * chk[1][0];
    return {sigma, det_chk / det_rho};
}

/// -Gamma_ij^k v^i v^j
inline Vec2 oracle_acceleration(const ChristoffelSymbols& c, const Vec2& v) {
    const Tensor3 g = full(c);
    Vec2 a{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) a[k] -= g[i][j][k] * v[i] * v[j];
    return a;
}

inline double max_abs_diff(const ChristoffelSymbols& a, const ChristoffelSymbols& b) {
    const Tensor3 x = full(a), y = full(b);
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) m = std::max(m, std::abs(x[i][j][k] - y[i][j][k]));
    return m;
}

inline double max_abs_diff(const SymmetricBilinear& a, const Mat2& b) {
    return std::max({std::abs(a.m11 - b[0][0]), std::abs(a.m12 - b[0][1]), std::abs(a.m12 - b[1][0]),
                     std::abs(a.m22 - b[1][1])});
}

}  // namespace typea::testing
