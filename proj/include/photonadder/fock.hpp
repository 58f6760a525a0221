#pragma once

// Truncated single-mode Fock-space states and elementary operations.
// A FockVector stores amplitudes c_0..c_cutoff of sum_n c_n |n>, plus a
// certified upper bound on the probability mass dropped by truncation.
// Constructors of physical states guarantee tail_bound < eps_tail, so the
// stored amplitudes have squared norm in [1 - tail_bound, 1].

#include <algorithm>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "specfun.hpp"

namespace photonadder::fock {

using complexd = std::complex<double>;

// Hard cap on representable photon number; constructors refuse states whose
// certified cutoff would exceed it.
inline constexpr int hard_cap = 4096;

struct FockVector {
    std::vector<complexd> amps;   // amps[n] = <n|psi>, n = 0..cutoff
    double tail_bound = 0.0;      // certified bound on truncated probability mass

    FockVector() : amps(1, complexd(0.0)) {}
    explicit FockVector(std::vector<complexd> a, double tail = 0.0)
        : amps(std::move(a)), tail_bound(tail) {
        if (amps.empty()) throw std::invalid_argument("FockVector: empty amplitude list");
        if (static_cast<int>(amps.size()) - 1 > hard_cap)
            throw std::invalid_argument("FockVector: cutoff exceeds hard cap");
    }

    int cutoff() const { return static_cast<int>(amps.size()) - 1; }
};

inline double norm2(const FockVector& s) {
    double acc = 0.0, c = 0.0;
    for (const auto& a : s.amps) {
        const double y = std::norm(a) - c;
        const double t = acc + y;
        c = (t - acc) - y;
        acc = t;
    }
    return acc;
}

inline complexd inner_product(const FockVector& a, const FockVector& b) {
    const std::size_t n = std::min(a.amps.size(), b.amps.size());
    complexd acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += std::conj(a.amps[j]) * b.amps[j];
    return acc;
}

inline double fidelity(const FockVector& a, const FockVector& b) {
    const double na = norm2(a), nb = norm2(b);
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("fidelity: zero-norm state");
    return std::norm(inner_product(a, b)) / (na * nb);
}

inline FockVector normalized(const FockVector& s) {
    const double n2 = norm2(s);
    if (n2 <= 0.0) throw std::invalid_argument("normalized: zero-norm state");
    FockVector out = s;
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : out.amps) a *= inv;
    return out;
}

// Coherent state |beta>: c_n = e^{-|beta|^2/2} beta^n / sqrt(n!).
// Cutoff chosen so the dropped Poisson tail is certifiably < eps_tail.
inline FockVector coherent_state(complexd beta, double eps_tail = 1e-12) {
    if (!(eps_tail > 0.0)) throw std::invalid_argument("coherent_state: eps_tail <= 0");
    const double mu = std::norm(beta);
    std::vector<complexd> amps;
    amps.reserve(32);
    complexd a = std::exp(complexd(-0.5 * mu, 0.0));
    double p = std::norm(a);
    amps.push_back(a);
    double tail = 1.0;
    for (int n = 1; n <= hard_cap + 1; ++n) {
        // geometric tail bound: for m > n, p_{m+1}/p_m = mu/(m+1) <= r < 1
        const double r = mu / (n + 1.0);
        if (r < 1.0) {
            const double bound = p * r / (1.0 - r);
            if (bound < eps_tail) {
                tail = bound;
                break;
            }
        }
        if (n > hard_cap) throw std::runtime_error("coherent_state: cutoff exceeds hard cap");
        a *= beta / std::sqrt(static_cast<double>(n));
        p = std::norm(a);
        amps.push_back(a);
    }
    return FockVector(std::move(amps), tail);
}

// Squeezed vacuum with Fock expansion c_{2n} = N (2n)!^{1/2} / n! (kappa/2)^n,
// N = (1 - |kappa|^2)^{1/4};  requires |kappa| < 1.  Odd amplitudes vanish.
inline FockVector squeezed_vacuum(complexd kappa, double eps_tail = 1e-12) {
    const double k2 = std::norm(kappa);
    if (!(k2 < 1.0)) throw std::invalid_argument("squeezed_vacuum: |kappa| >= 1");
    if (!(eps_tail > 0.0)) throw std::invalid_argument("squeezed_vacuum: eps_tail <= 0");
    const double n0 = std::pow(1.0 - k2, 0.25);
    std::vector<complexd> amps;
    amps.push_back(complexd(n0, 0.0));
    complexd c = n0; // c_{2n}
    double tail = 1.0;
    for (int n = 0; 2 * n <= hard_cap + 2; ++n) {
        // |c_{2n+2}|^2 / |c_{2n}|^2 = |kappa|^2 (2n+1)/(2n+2) < |kappa|^2
        const double p = std::norm(c);
        const double bound = p * k2 / (1.0 - k2);
        if (bound < eps_tail) {
            tail = bound;
            break;
        }
        if (2 * n + 2 > hard_cap) throw std::runtime_error("squeezed_vacuum: cutoff exceeds hard cap");
        c *= kappa * std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (2.0 * n + 2.0);
        amps.push_back(complexd(0.0));
        amps.push_back(c);
    }
    return FockVector(std::move(amps), tail);
}

inline FockVector fock_state(int n) {
    if (n < 0 || n > hard_cap) throw std::invalid_argument("fock_state: n out of range");
    std::vector<complexd> amps(static_cast<std::size_t>(n) + 1, complexd(0.0));
    amps.back() = 1.0;
    return FockVector(std::move(amps), 0.0);
}

// Arbitrary finite superposition, normalized; tail_bound = 0 by construction.
inline FockVector custom_state(std::vector<complexd> amps) {
    FockVector s(std::move(amps), 0.0);
    return normalized(s);
}

// (a^dagger)^k applied to s, unnormalized: c_n -> c_{n-k} sqrt(n!/(n-k)!).
inline FockVector apply_creation(const FockVector& s, int k) {
    if (k < 0) throw std::invalid_argument("apply_creation: negative power");
    if (k == 0) return s;
    if (s.cutoff() + k > hard_cap)
        throw std::runtime_error("apply_creation: cutoff exceeds hard cap");
    std::vector<complexd> out(s.amps.size() + static_cast<std::size_t>(k), complexd(0.0));
    for (std::size_t n = 0; n < s.amps.size(); ++n) {
        // sqrt((n+k)!/n!)
        double f = 1.0;
        for (int j = 1; j <= k; ++j) f *= static_cast<double>(n) + j;
        out[n + static_cast<std::size_t>(k)] = s.amps[n] * std::sqrt(f);
    }
    return FockVector(std::move(out), s.tail_bound);
}

// T^{n_hat} applied to s (|T| <= 1), unnormalized.
inline FockVector attenuate(const FockVector& s, complexd t) {
    std::vector<complexd> out(s.amps.size());
    complexd tn = 1.0;
    for (std::size_t n = 0; n < s.amps.size(); ++n) {
        out[n] = s.amps[n] * tn;
        tn *= t;
    }
    return FockVector(std::move(out), s.tail_bound);
}

// Photon-number probabilities of the stored (normalized) amplitudes.
inline std::vector<double> photon_number_distribution(const FockVector& s) {
    std::vector<double> p(s.amps.size());
    for (std::size_t n = 0; n < s.amps.size(); ++n) p[n] = std::norm(s.amps[n]);
    return p;
}

inline double mean_photon_number(const FockVector& s) {
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < s.amps.size(); ++n) {
        const double p = std::norm(s.amps[n]);
        num += static_cast<double>(n) * p;
        den += p;
    }
    if (den == 0.0) throw std::invalid_argument("mean_photon_number: zero-norm state");
    return num / den;
}

struct QuadratureMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Moments of x_phi = (a e^{i phi} + a^dagger e^{-i phi})/sqrt(2) in state s.
// With d_n = c_n e^{i n phi} these are the phi = 0 moments of d; variance of
// the vacuum is 1/2 in this convention.
inline QuadratureMoments quadrature_moments(const FockVector& s, double phi) {
    const std::size_t sz = s.amps.size();
    std::vector<complexd> d(sz);
    for (std::size_t n = 0; n < sz; ++n)
        d[n] = s.amps[n] * std::polar(1.0, phi * static_cast<double>(n));
    const double n2 = norm2(s);
    if (n2 <= 0.0) throw std::invalid_argument("quadrature_moments: zero-norm state");
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t n = 0; n < sz; ++n) {
        m2 += (2.0 * static_cast<double>(n) + 1.0) * std::norm(d[n]);
        if (n + 1 < sz)
            m1 += 2.0 * std::sqrt(n + 1.0) * (std::conj(d[n]) * d[n + 1]).real();
        if (n + 2 < sz)
            m2 += 2.0 * std::sqrt((n + 1.0) * (n + 2.0)) * (std::conj(d[n]) * d[n + 2]).real();
    }
    m1 /= std::sqrt(2.0) * n2;
    m2 /= 2.0 * n2;
    return {m1, m2 - m1 * m1};
}

// Statistical mixture of pure FockVectors with classical weights.
struct MixtureSpec {
    std::vector<double> weights;       // nonnegative, summing to 1
    std::vector<FockVector> members;   // same length as weights

    void validate() const {
        if (weights.size() != members.size())
            throw std::invalid_argument("MixtureSpec: weight/member length mismatch");
        if (weights.empty()) throw std::invalid_argument("MixtureSpec: empty mixture");
        double sum = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0)) throw std::invalid_argument("MixtureSpec: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("MixtureSpec: weights do not sum to 1");
    }

    // Diagonal (photon-number) mixture: {(weight, n)} pairs.
    static MixtureSpec from_diagonal(const std::vector<std::pair<double, int>>& entries) {
        MixtureSpec m;
        for (const auto& [w, n] : entries) {
            m.weights.push_back(w);
            m.members.push_back(fock_state(n));
        }
        m.validate();
        return m;
    }

    // <n|rho|n> up to the largest member cutoff.
    std::vector<double> diagonal() const {
        validate();
        std::size_t len = 0;
        for (const auto& s : members) len = std::max(len, s.amps.size());
        std::vector<double> d(len, 0.0);
        for (std::size_t k = 0; k < members.size(); ++k)
            for (std::size_t n = 0; n < members[k].amps.size(); ++n)
                d[n] += weights[k] * std::norm(members[k].amps[n]);
        return d;
    }
};

} // namespace photonadder::fock
