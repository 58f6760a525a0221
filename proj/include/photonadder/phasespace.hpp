#pragma once

// Phase-space representations of a Fock-basis state:
//   quadrature distribution  p(x, phi) = |sum_n c_n e^{i n phi} h_n(x)|^2
//   Wigner function          W(x, p) = (1/pi) int dy e^{2ipy} psi(x-y) psi*(x+y)
//   Husimi function          Q(x, p) = |<alpha|psi>|^2 / (2 pi),  alpha = (x+ip)/sqrt(2)
// with h_n the normalized Hermite functions (vacuum variance 1/2 in x).
//
// The Wigner integral runs over a Gauss-Legendre rule on the support window
// of psi(x-y) psi(x+y); node count defaults to max(4*cutoff + 64, 3*pmax*Y)
// and can be overridden.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fock.hpp"
#include "specfun.hpp"

namespace photonadder::phasespace {

using complexd = std::complex<double>;
using fock::FockVector;

struct PhaseSpaceGrid {
    double x_min = -6.0, x_max = 6.0;
    int nx = 201;
    double p_min = -6.0, p_max = 6.0;
    int np = 201;

    void validate() const {
        if (nx < 2 || np < 2) throw std::invalid_argument("PhaseSpaceGrid: counts < 2");
        if (!(x_max > x_min)) throw std::invalid_argument("PhaseSpaceGrid: x_max <= x_min");
        if (!(p_max > p_min)) throw std::invalid_argument("PhaseSpaceGrid: p_max <= p_min");
    }
    std::vector<double> xs() const {
        std::vector<double> v(nx);
        for (int i = 0; i < nx; ++i)
            v[i] = (nx == 1) ? x_min : x_min + (x_max - x_min) * i / (nx - 1.0);
        return v;
    }
    std::vector<double> ps() const {
        std::vector<double> v(np);
        for (int i = 0; i < np; ++i)
            v[i] = (np == 1) ? p_min : p_min + (p_max - p_min) * i / (np - 1.0);
        return v;
    }
};

// Row-major samples: values[ix * grid.np + ip].
struct PhaseSpaceField {
    PhaseSpaceGrid grid;
    std::vector<double> values;
};

namespace detail {

inline complexd wavefunction(const FockVector& s, double u, std::vector<double>& hbuf) {
    specfun::hermite_scaled_fill(static_cast<int>(s.cutoff()), u, hbuf);
    complexd acc(0.0);
    for (std::size_t n = 0; n < s.amps.size(); ++n) acc += s.amps[n] * hbuf[n];
    return acc;
}

} // namespace detail

inline std::vector<double> quadrature_distribution(const FockVector& s, double phi,
                                                   const std::vector<double>& xs) {
    std::vector<complexd> d(s.amps.size());
    for (std::size_t n = 0; n < d.size(); ++n)
        d[n] = s.amps[n] * std::polar(1.0, phi * static_cast<double>(n));
    std::vector<double> out(xs.size());
    std::vector<double> hbuf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        specfun::hermite_scaled_fill(static_cast<int>(s.cutoff()), xs[i], hbuf);
        complexd a(0.0);
        for (std::size_t n = 0; n < d.size(); ++n) a += d[n] * hbuf[n];
        out[i] = std::norm(a);
    }
    return out;
}

inline double quadrature_at(const FockVector& s, double x, double phi) {
    return quadrature_distribution(s, phi, {x})[0];
}

// Wigner samples on the tensor product xs x ps (row-major over xs).
inline std::vector<double> wigner_on_nodes(const FockVector& s,
                                           const std::vector<double>& xs,
                                           const std::vector<double>& ps,
                                           int ny_override = 0) {
    const int cutoff = static_cast<int>(s.cutoff());
    const double support = std::sqrt(2.0 * cutoff + 1.0) + 8.0;
    double pmax = 1.0;
    for (double p : ps) pmax = std::max(pmax, std::abs(p));
    std::vector<double> out(xs.size() * ps.size(), 0.0);
    std::vector<double> hbuf;
    std::vector<complexd> g;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        const double x = xs[ix];
        const double half = (std::abs(x) < support) ? (support - std::abs(x) + 2.0) : 2.0;
        const int ny = (ny_override > 0)
                           ? ny_override
                           : std::max(4 * cutoff + 64,
                                      static_cast<int>(std::ceil(3.0 * pmax * half)) + 32);
        const auto rule = specfun::gauss_legendre_rule(ny, -half, half);
        g.assign(rule.nodes.size(), complexd(0.0));
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double y = rule.nodes[j];
            const complexd fm = detail::wavefunction(s, x - y, hbuf);
            const complexd fp = detail::wavefunction(s, x + y, hbuf);
            g[j] = rule.weights[j] * fm * std::conj(fp);
        }
        for (std::size_t ip = 0; ip < ps.size(); ++ip) {
            const double p = ps[ip];
            complexd acc(0.0);
            for (std::size_t j = 0; j < rule.nodes.size(); ++j)
                acc += std::polar(1.0, 2.0 * p * rule.nodes[j]) * g[j];
            out[ix * ps.size() + ip] = acc.real() / M_PI;
        }
    }
    return out;
}

inline PhaseSpaceField wigner(const FockVector& s, const PhaseSpaceGrid& grid,
                              int ny_override = 0) {
    grid.validate();
    return {grid, wigner_on_nodes(s, grid.xs(), grid.ps(), ny_override)};
}

inline double wigner_at(const FockVector& s, double x, double p, int ny_override = 0) {
    return wigner_on_nodes(s, {x}, {p}, ny_override)[0];
}

inline double husimi_at(const FockVector& s, double x, double p) {
    const complexd alpha = complexd(x, p) / std::sqrt(2.0);
    complexd term = std::exp(-0.5 * std::norm(alpha));  // e^{-|a|^2/2} abar^n / sqrt(n!)
    complexd acc(0.0);
    const complexd ab = std::conj(alpha);
    for (std::size_t n = 0; n < s.amps.size(); ++n) {
        acc += s.amps[n] * term;
        term *= ab / std::sqrt(n + 1.0);
    }
    return std::norm(acc) / (2.0 * M_PI);
}

inline PhaseSpaceField husimi(const FockVector& s, const PhaseSpaceGrid& grid) {
    grid.validate();
    PhaseSpaceField f{grid, {}};
    f.values.reserve(static_cast<std::size_t>(grid.nx) * grid.np);
    for (double x : grid.xs())
        for (double p : grid.ps()) f.values.push_back(husimi_at(s, x, p));
    return f;
}

// Rotate a phase-space point by `angle` (counterclockwise).  A complex
// squeezing phase is equivalent to evaluating the real-parameter functions
// at the rotated point.
inline std::pair<double, double> rotate_point(double x, double p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * p, c * p + s * x};
}

} // namespace photonadder::phasespace
