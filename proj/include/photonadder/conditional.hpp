#pragma once

// Two-mode beam-splitter evolution and photon-number conditioning.
//
// Conventions.  The splitter has transmission T = cos(theta) e^{i phi_t} and
// reflection R = sin(theta) e^{i phi_r}, |T|^2 + |R|^2 = 1.  The Heisenberg
// map is (a_out, b_out) = (T a + R b, -R* a + T* b); states evolve with the
// inverse map.  Total photon number is conserved, so the evolution is block
// diagonal over N = n_1 + n_2 and implemented two independent ways:
//
//   two_mode_evolve  - per-block matrix exponential of the su(2) generator
//                      (Eigen eigendecomposition; the reference route),
//   factored_evolve  - the normal-ordered factorization
//                      T^{n_1} e^{-R* b^dag a} e^{R a^dag b} T^{-n_2},
//                      matrix-free, exact per block (nilpotent series).
//
// Conditioning on m_2 photons in mode 2 keeps the j = N - m_2 component of
// each block.  For the zero-photon outcome the conditioned state collapses to
// the closed form  (R^{n_0}/sqrt(n_0!)) (a^dag)^{n_0} T^{n_hat} |Phi>,  i.e.
// attenuate-then-add; its success probability is
//
//   P(n_0) = |R|^{2 n_0} sum_n rho_nn |T|^{2n} C(n + n_0, n_0)
//          = |R|^{2 n_0} N_{n_0} / n_0!
//
// where N_{n_0} = n_0! sum_n rho_nn |T|^{2n} C(n + n_0, n_0) is the squared
// norm of the unnormalized added state (the n_0! is kept explicit here; the
// shorthand N without it differs by exactly that factor).

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fock.hpp"
#include "specfun.hpp"

namespace photonadder::conditional {

using complexd = std::complex<double>;
using fock::FockVector;

struct BeamSplitter {
    double t_mag = 1.0;  // |T| in [0, 1]
    double r_mag = 0.0;  // |R| = sqrt(1 - |T|^2)
    double phi_t = 0.0;  // transmission phase
    double phi_r = 0.0;  // reflection phase

    complexd t() const { return std::polar(t_mag, phi_t); }
    complexd r() const { return std::polar(r_mag, phi_r); }
    // mixing angle in [0, pi/2]
    double mixing_angle() const { return std::atan2(r_mag, t_mag); }

    // t2 = |T|^2 in [0, 1]; phases in radians.  Magnitudes are stored
    // directly so the endpoint splitters (|T| = 0 or 1) are exact and the
    // T = 0 guards in the closed forms can fire.
    static BeamSplitter from_transmittance(double t2, double phi_t = 0.0, double phi_r = 0.0) {
        if (!(t2 >= 0.0 && t2 <= 1.0))
            throw std::invalid_argument("BeamSplitter: transmittance outside [0, 1]");
        return {std::sqrt(t2), std::sqrt(1.0 - t2), phi_t, phi_r};
    }
};

// Pure two-mode state with fixed second-mode input: block N holds the
// coefficients of |j, N-j> for j = 0..N (j = photons in mode 1).
// blocks[N] is empty when the block is unpopulated.
struct TwoModeState {
    std::vector<std::vector<complexd>> blocks;

    double norm2() const {
        double acc = 0.0;
        for (const auto& b : blocks)
            for (const auto& a : b) acc += std::norm(a);
        return acc;
    }
};

// Reference evolution: per-block eigendecomposition of the su(2) generator.
// Input |Phi>_1 |n_0>_2 with Phi truncated at its cutoff.
inline TwoModeState two_mode_evolve(const FockVector& in1, int n0, const BeamSplitter& bs) {
    if (n0 < 0) throw std::invalid_argument("two_mode_evolve: negative n0");
    const double theta = bs.mixing_angle(), phi_t = bs.phi_t, phi_r = bs.phi_r;
    TwoModeState out;
    out.blocks.resize(static_cast<std::size_t>(in1.cutoff() + n0) + 1);
    for (int n1 = 0; n1 <= in1.cutoff(); ++n1) {
        const complexd c = in1.amps[static_cast<std::size_t>(n1)];
        if (c == complexd(0.0)) continue;
        const int nn = n1 + n0;
        const int dim = nn + 1;
        // Hermitian H = -i S, S the real skew-symmetric mixing generator:
        // exp(theta S) = V exp(i theta Lambda) V^dag.
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
        for (int j = 0; j + 1 <= nn; ++j) {
            const double v = std::sqrt((j + 1.0) * (nn - j));
            h(j + 1, j) = complexd(0.0, -v);
            h(j, j + 1) = complexd(0.0, v);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
        // inner phase rotation e^{i (phi_t - phi_r) (n_1 - n_2)/2}
        x(n1) = c * std::polar(1.0, 0.5 * (phi_t - phi_r) * (2.0 * n1 - nn));
        Eigen::VectorXcd u = es.eigenvectors().adjoint() * x;
        for (int k = 0; k < dim; ++k)
            u(k) *= std::polar(1.0, theta * es.eigenvalues()(k));
        Eigen::VectorXcd y = es.eigenvectors() * u;
        auto& block = out.blocks[static_cast<std::size_t>(nn)];
        block.assign(static_cast<std::size_t>(dim), complexd(0.0));
        for (int j = 0; j < dim; ++j)
            block[static_cast<std::size_t>(j)] =
                y(j) * std::polar(1.0, 0.5 * (phi_t + phi_r) * (2.0 * j - nn));
    }
    return out;
}

// Independent evolution route via the normal-ordered factorization.
// Exact per block: both exponential series terminate after at most N steps.
// Requires T != 0 (the factorization conjugates by T^{n_hat}).
inline TwoModeState factored_evolve(const FockVector& in1, int n0, const BeamSplitter& bs) {
    if (n0 < 0) throw std::invalid_argument("factored_evolve: negative n0");
    const complexd t = bs.t(), r = bs.r();
    if (t == complexd(0.0))
        throw std::domain_error("factored_evolve: T = 0 not representable in factored form");
    TwoModeState out;
    out.blocks.resize(static_cast<std::size_t>(in1.cutoff() + n0) + 1);
    std::vector<complexd> v, term, next;
    for (int n1 = 0; n1 <= in1.cutoff(); ++n1) {
        const complexd c = in1.amps[static_cast<std::size_t>(n1)];
        if (c == complexd(0.0)) continue;
        const int nn = n1 + n0;
        const std::size_t dim = static_cast<std::size_t>(nn) + 1;
        v.assign(dim, complexd(0.0));
        v[static_cast<std::size_t>(n1)] = c * std::pow(t, -(nn - n1)); // T^{-n_2}
        // e^{R a^dag b}: raises j
        term = v;
        for (int step = 1; step <= nn; ++step) {
            next.assign(dim, complexd(0.0));
            for (std::size_t j = 0; j + 1 < dim; ++j)
                next[j + 1] = term[j] * r *
                              std::sqrt((j + 1.0) * (nn - static_cast<double>(j))) /
                              static_cast<double>(step);
            for (std::size_t j = 0; j < dim; ++j) v[j] += next[j];
            term.swap(next);
        }
        // e^{-R* b^dag a}: lowers j
        term = v;
        for (int step = 1; step <= nn; ++step) {
            next.assign(dim, complexd(0.0));
            for (std::size_t j = 1; j < dim; ++j)
                next[j - 1] = term[j] * (-std::conj(r)) *
                              std::sqrt(static_cast<double>(j) * (nn - j + 1.0)) /
                              static_cast<double>(step);
            for (std::size_t j = 0; j < dim; ++j) v[j] += next[j];
            term.swap(next);
        }
        // T^{n_1}
        complexd tj = 1.0;
        for (std::size_t j = 0; j < dim; ++j) {
            v[j] *= tj;
            tj *= t;
        }
        out.blocks[static_cast<std::size_t>(nn)] = v;
    }
    return out;
}

struct ProjectionResult {
    FockVector state;    // unnormalized mode-1 state after the projection
    double probability;  // squared norm of that state
};

// <m2|_2 applied to a TwoModeState: keeps the j = N - m2 component of block N.
inline ProjectionResult project_click(const TwoModeState& ts, int m2) {
    if (m2 < 0) throw std::invalid_argument("project_click: negative m2");
    const int nmax = static_cast<int>(ts.blocks.size()) - 1;
    const int top = nmax - m2;
    std::vector<complexd> amps(static_cast<std::size_t>(std::max(top, 0)) + 1, complexd(0.0));
    double p = 0.0;
    for (int nn = m2; nn <= nmax; ++nn) {
        const auto& block = ts.blocks[static_cast<std::size_t>(nn)];
        if (block.empty()) continue;
        const complexd a = block[static_cast<std::size_t>(nn - m2)];
        amps[static_cast<std::size_t>(nn - m2)] = a;
        p += std::norm(a);
    }
    return {FockVector(std::move(amps), 0.0), p};
}

inline ProjectionResult project_zero(const TwoModeState& ts) { return project_click(ts, 0); }

// P(n_0 | m_2 = 0) from the photon-number diagonal of the input state.
// Exact closed sum; the running factor g_n = |T|^{2n} C(n+n_0, n_0) makes the
// series manifestly positive (no cancellation).
inline double probability_zero_click(const std::vector<double>& diag, int n0,
                                     const BeamSplitter& bs) {
    if (n0 < 0) throw std::invalid_argument("probability_zero_click: negative n0");
    const double t2 = std::norm(bs.t()), r2 = std::norm(bs.r());
    double g = 1.0, acc = 0.0, comp = 0.0;
    for (std::size_t n = 0; n < diag.size(); ++n) {
        if (n > 0) g *= t2 * (static_cast<double>(n) + n0) / static_cast<double>(n);
        const double y = diag[n] * g - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return std::pow(r2, n0) * acc;
}

inline double probability_zero_click(const FockVector& in, int n0, const BeamSplitter& bs) {
    return probability_zero_click(fock::photon_number_distribution(in), n0, bs);
}

// P(n_0 | m_2 clicks) for general m_2.  The double alternating sum is
// factored into  sum_n1 rho_n1 w(n1) [S(n1)]^2  with w >= 0, which both
// exposes positivity and confines cancellation to the short inner sum.
// Requires T != 0.
inline double probability_click(const std::vector<double>& diag, int n0, int m2,
                                const BeamSplitter& bs) {
    if (n0 < 0 || m2 < 0) throw std::invalid_argument("probability_click: negative index");
    const double t2 = std::norm(bs.t());
    if (t2 == 0.0) throw std::domain_error("probability_click: T = 0 outside closed-form domain");
    const double r2 = std::norm(bs.r());
    const int nu = n0 - m2;
    const int mu = std::max(0, nu);
    const double log_t2 = std::log(t2);
    const double lg_n0 = std::lgamma(n0 + 1.0);
    const double lg_m2 = std::lgamma(m2 + 1.0);
    double acc = 0.0, comp = 0.0;
    for (std::size_t n1u = static_cast<std::size_t>(std::max(0, -nu)); n1u < diag.size(); ++n1u) {
        if (diag[n1u] == 0.0) continue;
        const int n1 = static_cast<int>(n1u);
        double s = 0.0;
        for (int j = mu; j <= n0; ++j) {
            const double a = std::pow(r2, j - mu) *
                             specfun::binomial(n0 - nu, j - nu) *
                             specfun::binomial(n1 + j, j);
            s += (j % 2 == 0) ? a : -a;
        }
        const double log_w = (n1 - m2) * log_t2 +
                             std::abs(nu) * ((r2 > 0.0) ? std::log(r2) : 0.0) +
                             lg_n0 + std::lgamma(n1 + 1.0) -
                             std::lgamma(n1 + nu + 1.0) - lg_m2;
        double w = std::exp(log_w);
        if (r2 == 0.0 && nu != 0) w = 0.0;
        const double y = diag[n1u] * w * s * s - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

inline double probability_click(const FockVector& in, int n0, int m2, const BeamSplitter& bs) {
    return probability_click(fock::photon_number_distribution(in), n0, m2, bs);
}

struct ConditionalResult {
    FockVector state;    // normalized conditional output state
    double probability;  // probability of the conditioning outcome
};

// Zero-photon conditioning via the closed form: attenuate by T^{n_hat}, add
// n_0 photons, renormalize.  T = 0 is representable only for vacuum input.
inline ConditionalResult conditional_zero_click(const FockVector& in, int n0,
                                                const BeamSplitter& bs) {
    if (n0 < 0) throw std::invalid_argument("conditional_zero_click: negative n0");
    const double p = probability_zero_click(fock::photon_number_distribution(in), n0, bs);
    const complexd t = bs.t();
    if (t == complexd(0.0)) {
        for (std::size_t n = 1; n < in.amps.size(); ++n)
            if (in.amps[n] != complexd(0.0))
                throw std::domain_error(
                    "conditional_zero_click: T = 0 transmits nothing; conditional state "
                    "undefined for non-vacuum input");
        return {fock::fock_state(n0), p};
    }
    FockVector shaped = fock::apply_creation(fock::attenuate(in, t), n0);
    return {fock::normalized(shaped), p};
}

// General-click conditioning through the reference evolution route
// (evolve, project <m2|, renormalize).
inline ConditionalResult conditional_general(const FockVector& in, int n0, int m2,
                                             const BeamSplitter& bs) {
    ProjectionResult proj = project_click(two_mode_evolve(in, n0, bs), m2);
    if (proj.probability <= 0.0)
        throw std::domain_error("conditional_general: outcome has zero probability");
    return {fock::normalized(proj.state), proj.probability};
}

} // namespace photonadder::conditional
