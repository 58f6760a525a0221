#pragma once

// Binomial mixtures over the auxiliary photon number: the n0 auxiliary input
// is not a sharp Fock state but n0 ~ Binomial(N, p) (N emitters firing
// independently with probability p).  Conditioning on the zero-click event
// then yields a mixture of the sharp-n0 conditional states, weighted either
// by the prior binomial weights or by the Bayes posterior
// w_{n0} ~ ptilde_{n0} P(n0).

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "conditional.hpp"
#include "fock.hpp"
#include "phasespace.hpp"

namespace photonadder::mixtures {

using conditional::BeamSplitter;
using fock::FockVector;
using fock::MixtureSpec;

struct BinomialParams {
    int N = 1;
    double p = 0.5;

    void validate() const {
        if (N < 1) throw std::invalid_argument("BinomialParams: N < 1");
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("BinomialParams: p not in (0,1)");
    }
};

enum class WeightMode { prior, posterior };

// ptilde_{n0} = C(N, n0) p^{n0} (1-p)^{N-n0}, n0 = 0..N.
inline std::vector<double> binomial_weights(const BinomialParams& bp) {
    bp.validate();
    std::vector<double> w(static_cast<std::size_t>(bp.N) + 1);
    for (int k = 0; k <= bp.N; ++k)
        w[k] = specfun::binomial(bp.N, k) * std::pow(bp.p, k) *
               std::pow(1.0 - bp.p, bp.N - k);
    return w;
}

// Joint weight of "n0 fired AND zero-click succeeded".
inline double joint_probability(const std::vector<double>& diag, const BinomialParams& bp,
                                const BeamSplitter& bs, int n0) {
    if (n0 < 0 || n0 > bp.N) throw std::invalid_argument("joint_probability: n0 out of range");
    return binomial_weights(bp)[n0] * conditional::probability_zero_click(diag, n0, bs);
}

// Success probability of the mixed protocol.
//   prior:     sum ptilde_{n0} P(n0)            (averaged success rate)
//   posterior: sum ptilde P^2 / sum ptilde P    (success rate re-weighted by
//                                                the states actually kept)
inline double mixed_probability(const std::vector<double>& diag, const BinomialParams& bp,
                                const BeamSplitter& bs,
                                WeightMode mode = WeightMode::prior) {
    const auto ptilde = binomial_weights(bp);
    double joint = 0.0, joint2 = 0.0;
    for (int n0 = 0; n0 <= bp.N; ++n0) {
        const double pn = conditional::probability_zero_click(diag, n0, bs);
        joint += ptilde[n0] * pn;
        joint2 += ptilde[n0] * pn * pn;
    }
    if (mode == WeightMode::prior) return joint;
    if (joint == 0.0) throw std::domain_error("mixed_probability: zero success probability");
    return joint2 / joint;
}

inline double mixed_probability(const FockVector& input, const BinomialParams& bp,
                                const BeamSplitter& bs,
                                WeightMode mode = WeightMode::prior) {
    return mixed_probability(fock::photon_number_distribution(input), bp, bs, mode);
}

// The mixed conditional state.  Members with zero (or undefined) success
// probability are dropped with a warning and the weights renormalized.
inline MixtureSpec mixed_conditional(const FockVector& input, const BinomialParams& bp,
                                     const BeamSplitter& bs,
                                     WeightMode mode = WeightMode::prior) {
    const auto ptilde = binomial_weights(bp);
    MixtureSpec mix;
    for (int n0 = 0; n0 <= bp.N; ++n0) {
        try {
            auto res = conditional::conditional_zero_click(input, n0, bs);
            if (res.probability <= 0.0) throw std::domain_error("zero probability");
            mix.members.push_back(std::move(res.state));
            mix.weights.push_back(mode == WeightMode::prior
                                      ? ptilde[n0]
                                      : ptilde[n0] * res.probability);
        } catch (const std::domain_error&) {
            std::cerr << "mixed_conditional: dropping n0=" << n0
                      << " (zero-probability branch)\n";
        }
    }
    double total = 0.0;
    for (double w : mix.weights) total += w;
    if (total <= 0.0) throw std::domain_error("mixed_conditional: no members survive");
    for (double& w : mix.weights) w /= total;
    mix.validate();
    return mix;
}

// Mixture-valued input: every (input member, n0) pair becomes a member.
inline MixtureSpec mixed_conditional(const MixtureSpec& input, const BinomialParams& bp,
                                     const BeamSplitter& bs,
                                     WeightMode mode = WeightMode::prior) {
    input.validate();
    MixtureSpec mix;
    for (std::size_t i = 0; i < input.members.size(); ++i) {
        const auto part = mixed_conditional(input.members[i], bp, bs, mode);
        for (std::size_t k = 0; k < part.members.size(); ++k) {
            mix.weights.push_back(input.weights[i] * part.weights[k]);
            mix.members.push_back(part.members[k]);
        }
    }
    double total = 0.0;
    for (double w : mix.weights) total += w;
    for (double& w : mix.weights) w /= total;
    mix.validate();
    return mix;
}

// Quadrature distribution of a mixture: convex sum of member distributions.
inline std::vector<double> mixture_quadrature(const MixtureSpec& mix, double phi,
                                              const std::vector<double>& xs) {
    mix.validate();
    std::vector<double> out(xs.size(), 0.0);
    for (std::size_t k = 0; k < mix.members.size(); ++k) {
        const auto part = phasespace::quadrature_distribution(mix.members[k], phi, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] += mix.weights[k] * part[i];
    }
    return out;
}

inline std::vector<double> mixed_quadrature(const FockVector& input, const BinomialParams& bp,
                                            const BeamSplitter& bs, double phi,
                                            const std::vector<double>& xs,
                                            WeightMode mode = WeightMode::prior) {
    return mixture_quadrature(mixed_conditional(input, bp, bs, mode), phi, xs);
}

// Wigner samples of a mixture on xs x ps (row-major over xs).
inline std::vector<double> mixture_wigner(const MixtureSpec& mix,
                                          const std::vector<double>& xs,
                                          const std::vector<double>& ps) {
    mix.validate();
    std::vector<double> out(xs.size() * ps.size(), 0.0);
    for (std::size_t k = 0; k < mix.members.size(); ++k) {
        const auto part = phasespace::wigner_on_nodes(mix.members[k], xs, ps);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += mix.weights[k] * part[i];
    }
    return out;
}

// Mean photon number of a mixture.
inline double mixture_mean_photon_number(const MixtureSpec& mix) {
    mix.validate();
    double acc = 0.0;
    for (std::size_t k = 0; k < mix.members.size(); ++k)
        acc += mix.weights[k] * fock::mean_photon_number(mix.members[k]);
    return acc;
}

} // namespace photonadder::mixtures
