#pragma once

// Special functions used by the photon-adder library: Laguerre and Hermite
// recurrences, Gaussian-weighted oscillator eigenfunctions, a Gauss series
// for 2F1, the complex complementary error function, and small factorial /
// binomial / quadrature helpers.  Everything is double precision; errors are
// reported by throwing std::invalid_argument (bad input), std::domain_error
// (outside a documented domain) or std::runtime_error (non-convergence).

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace photonadder::specfun {

using complexd = std::complex<double>;

struct SeriesControl {
    double rel_tol = 1e-15;
    std::size_t max_terms = 1000000;
};

// log(n!) via lgamma; exact for the whole admissible range.
inline double log_factorial(long long n) {
    if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

namespace detail {

// Exact multiplicative binomial in 128-bit; returns false on overflow of the
// intermediate product.
inline bool binomial_exact(long long n, long long k, double& out) {
    unsigned __int128 acc = 1;
    const unsigned __int128 limit = (unsigned __int128)1 << 100;
    for (long long j = 1; j <= k; ++j) {
        acc *= static_cast<unsigned __int128>(n - k + j);
        if (acc > limit) return false;
        acc /= static_cast<unsigned __int128>(j);
    }
    if (acc > ((unsigned __int128)1 << 53)) return false;
    out = static_cast<double>(static_cast<std::uint64_t>(acc));
    return true;
}

} // namespace detail

// C(n, k).  Exact (integer) whenever the result fits in 2^53, else rounded
// from the lgamma form; throws std::overflow_error past double range.
inline double binomial(long long n, long long k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    if (k == 0) return 1.0;
    double exact;
    if (detail::binomial_exact(n, k, exact)) return exact;
    const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    if (lg > 709.0) throw std::overflow_error("binomial: result exceeds double range");
    return std::exp(lg);
}

// Laguerre polynomial L_n(x), three-term recurrence.
inline double laguerre(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: negative degree");
    double lm1 = 1.0;             // L_0
    if (n == 0) return lm1;
    double l = 1.0 - x;           // L_1
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

// Associated Laguerre L_n^k(x), recurrence in the degree.
inline double assoc_laguerre(int n, int k, double x) {
    if (n < 0 || k < 0) throw std::invalid_argument("assoc_laguerre: negative index");
    double lm1 = 1.0;                     // L_0^k
    if (n == 0) return lm1;
    double l = 1.0 + k - x;               // L_1^k
    for (int m = 1; m < n; ++m) {
        const double lp1 = ((2.0 * m + k + 1.0 - x) * l - (m + k) * lm1) / (m + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

// Physicists' Hermite polynomial H_n(z) for complex argument.
// degree_cap guards against runaway degrees in generic callers.
inline complexd hermite(int n, complexd z, int degree_cap = 512) {
    if (n < 0) throw std::invalid_argument("hermite: negative degree");
    if (n > degree_cap) throw std::invalid_argument("hermite: degree exceeds cap");
    complexd hm1 = 1.0;
    if (n == 0) return hm1;
    complexd h = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        const complexd hp1 = 2.0 * z * h - 2.0 * static_cast<double>(k) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

// Oscillator eigenfunctions h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}
// for n = 0..nmax, written into out (resized).  The scaled recurrence
//   h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}
// keeps every intermediate O(1), so there is no overflow for any nmax.
inline void hermite_scaled_fill(int nmax, double x, std::vector<double>& out) {
    if (nmax < 0) throw std::invalid_argument("hermite_scaled_fill: negative nmax");
    out.resize(static_cast<std::size_t>(nmax) + 1);
    const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    out[0] = h0;
    if (nmax == 0) return;
    out[1] = std::sqrt(2.0) * x * h0;
    for (int k = 1; k < nmax; ++k)
        out[k + 1] = x * std::sqrt(2.0 / (k + 1.0)) * out[k]
                   - std::sqrt(k / (k + 1.0)) * out[k - 1];
}

inline double hermite_scaled(int n, double x) {
    std::vector<double> buf;
    hermite_scaled_fill(n, x, buf);
    return buf[static_cast<std::size_t>(n)];
}

// Gauss hypergeometric 2F1(a, b; c; z) by the defining series.  Domain:
// |z| < 1 unless the series terminates (a or b a nonpositive integer).
inline double gauss_2f1(double a, double b, double c, double z,
                        SeriesControl ctl = {}) {
    const bool a_terminates = (a <= 0.0 && a == std::floor(a));
    const bool b_terminates = (b <= 0.0 && b == std::floor(b));
    const bool terminates = a_terminates || b_terminates;
    if (c <= 0.0 && c == std::floor(c)) {
        // c a nonpositive integer: poles unless the numerator terminates first.
        long long stop = std::numeric_limits<long long>::max();
        if (a_terminates) stop = static_cast<long long>(-a);
        if (b_terminates) stop = std::min(stop, static_cast<long long>(-b));
        if (stop > static_cast<long long>(-c))
            throw std::domain_error("gauss_2f1: c is a nonpositive integer");
    }
    if (!terminates && std::abs(z) >= 1.0)
        throw std::domain_error("gauss_2f1: |z| >= 1");
    double term = 1.0, sum = 1.0;
    for (std::size_t k = 0; k < ctl.max_terms; ++k) {
        const double kk = static_cast<double>(k);
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
        if (term == 0.0) return sum;
        sum += term;
        if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
            // one confirming step: series ratio tends to z, so the next term
            // cannot resurrect the sum once two in a row are negligible
            const double next = term * (a + kk + 1.0) * (b + kk + 1.0)
                              / ((c + kk + 1.0) * (kk + 2.0)) * z;
            if (std::abs(next) <= ctl.rel_tol * std::abs(sum)) return sum + next;
            sum += next;
            term = next;
        }
    }
    throw std::runtime_error("gauss_2f1: series did not converge");
}

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1], Newton on the recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = -t;
        x[static_cast<std::size_t>(n - 1 - i)] = t;
        const double wi = 2.0 / ((1.0 - t * t) * pp * pp);
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
}

// erf(z) Taylor series; safe for |z| <~ 3 (used for |z| <= 1.5, where no term
// exceeds ~e^{2.25} and the alternation never cancels catastrophically).
inline complexd erf_taylor(complexd z) {
    const complexd z2 = z * z;
    complexd term = z, sum = z;
    for (int n = 0; n < 200; ++n) {
        term *= -z2 / static_cast<double>(n + 1);
        const complexd add = term / static_cast<double>(2 * n + 3);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum * (2.0 / std::sqrt(M_PI));
}

// Dawson integral D(y) = e^{-y^2} int_0^y e^{t^2} dt, odd in y.
// Only consulted for |y| > 1.4 here; the integral form
//   D(y) = int_0^{umax} e^{-u(2y-u)} du
// restricted to where the integrand exceeds ~1e-33 keeps Gauss-Legendre
// exact to full precision without any large intermediates.
inline double dawson(double y) {
    const double ay = std::abs(y);
    const double sgn = (y < 0.0) ? -1.0 : 1.0;
    if (ay < 1e-8) return y;
    if (ay <= 1.0) {
        // alternating series y - 2y^3/3 + ...
        double term = ay, sum = ay;
        const double y2 = ay * ay;
        for (int k = 0; k < 60; ++k) {
            term *= -2.0 * y2 / (2.0 * k + 3.0);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sgn * sum;
    }
    static thread_local std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(96, gx, gw);
    // integrand e^{-u(2y-u)} < 1e-33 once u(2y-u) > 75
    const double umax = (ay * ay <= 75.0) ? ay : ay - std::sqrt(ay * ay - 75.0);
    const double half = 0.5 * umax;
    double sum = 0.0;
    for (std::size_t j = 0; j < gx.size(); ++j) {
        const double u = half * (gx[j] + 1.0);
        sum += gw[j] * std::exp(-u * (2.0 * ay - u));
    }
    return sgn * half * sum;
}

// erfc on the strip 0 <= Re z < 1/4, |Im z| > 1.4:
//   erfc(x+iy) = 1 - (2/sqrt(pi)) e^{y^2} [ i D(y) + G(x, y) ],
//   G(x,y) = int_0^x e^{-t^2} e^{-2 i t y} dt  (short segment, GL-48).
// The bracket has modulus >= ~0.7/(2|y|) (its real and imaginary parts carry
// cos/sin quadratures that cannot vanish together), so no cancellation.
inline complexd erfc_strip(double x, double y) {
    static thread_local std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(48, gx, gw);
    const double half = 0.5 * x;
    complexd G = 0.0;
    for (std::size_t j = 0; j < gx.size(); ++j) {
        const double t = half * (gx[j] + 1.0);
        G += gw[j] * std::exp(-t * t) * std::polar(1.0, -2.0 * t * y);
    }
    G *= half;
    const complexd bracket = complexd(0.0, 1.0) * dawson(y) + G;
    const double e = y * y; // may overflow for |y| > ~26.6; erfc itself does
    return 1.0 - (2.0 / std::sqrt(M_PI)) * std::exp(e) * bracket;
}

// Trapezoidal expansion for Re z >= 1/4 (step h, truncation error
// O(e^{-pi^2/h^2}) ~ 1e-428 at h = 0.1; valid for |Im z| < pi/h = 31.4).
inline complexd erfc_trapezoid(complexd z) {
    constexpr double h = 0.1;
    constexpr int K = 70; // e^{-(Kh)^2} = e^{-49} below double noise
    const complexd z2 = z * z;
    complexd s = 1.0 / z2;
    for (int k = 1; k <= K; ++k) {
        const double kh2 = (k * h) * (k * h);
        s += 2.0 * std::exp(-kh2) / (kh2 + z2);
    }
    complexd result = (h * z / M_PI) * std::exp(-z2) * s;
    const complexd w = 2.0 * M_PI * z / h;
    if (w.real() <= 690.0) result += 2.0 / (1.0 - std::exp(w));
    return result;
}

inline complexd erfc_positive_re(complexd z) {
    if (std::abs(z) <= 1.5) return 1.0 - erf_taylor(z);
    if (z.real() >= 0.25) return erfc_trapezoid(z);
    return erfc_strip(z.real(), z.imag());
}

} // namespace detail

// Complementary error function for complex argument.  Relative accuracy
// ~1e-13 across |z| <= 30 wherever the result is representable in double
// (it overflows near the imaginary axis once |Im z| > ~26.6, as erfc itself
// grows like e^{|z|^2}; it underflows to 0 on the far real axis).
inline complexd erfc_complex(complexd z) {
    if (std::isnan(z.real()) || std::isnan(z.imag()))
        throw std::invalid_argument("erfc_complex: NaN argument");
    if (std::abs(z) > 30.0)
        throw std::domain_error("erfc_complex: |z| > 30 outside validated region");
    if (z.real() >= 0.0) return detail::erfc_positive_re(z);
    return 2.0 - detail::erfc_positive_re(-z);
}

// Gauss-Legendre rule mapped to [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline QuadratureRule gauss_legendre_rule(int n, double a, double b) {
    std::vector<double> x, w;
    detail::gauss_legendre(n, x, w);
    QuadratureRule r;
    r.nodes.resize(x.size());
    r.weights.resize(w.size());
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t j = 0; j < x.size(); ++j) {
        r.nodes[j] = mid + half * x[j];
        r.weights[j] = half * w[j];
    }
    return r;
}

} // namespace photonadder::specfun
