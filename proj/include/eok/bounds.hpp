#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

namespace eok::bounds {

// Component-size constant for a subcritical random graph G(n, c/n): 3 / (1-c)^2.
double lambda_c(double c);

// 2 [q (1-eps)]^(k-2) <= 1.
bool condition_one(double q, double epsilon, std::size_t k);

struct MuBounds {
    double mu_eq = 0.0;   // p [eps^2 + (1-eps)^2] / (k-2)! * [a(1-eps) + d eps]^(k-2)
    double mu_neq = 0.0;  // 4 p eps (1-eps)   / (k-2)! * [a(1-eps) + d eps]^(k-2)
};

MuBounds mu_bounds(std::size_t n, std::size_t a, std::size_t d, double p, double epsilon, std::size_t k);

// (3 - sqrt 3) / 6, the smaller root of eps^2 + (1-eps)^2 = 4 eps (1-eps).
double epsilon_0();
// The other root, (3 + sqrt 3) / 6.
double epsilon_0_conjugate();
// |eps^2 + (1-eps)^2 - 4 eps (1-eps)|.
double epsilon_0_residual(double eps);

struct EpsilonC {
    double root = 0.0;              // bisection root of 2x^3 - 2x^2 + 3x - 1 in (0,1)
    double residual_at_root = 0.0;
    double quoted = 0.2726;         // value quoted alongside the cubic
    double residual_at_quoted = 0.0;
    double discrepancy = 0.0;       // |root - quoted|
};

double epsilon_c_cubic(double x);
EpsilonC epsilon_c();

// c^(n-1) / n, an upper bound on Pr[G(n, c/n) connected].
double connected_prob_bound(std::size_t n, double c);

struct ConnectivityEstimate {
    std::uint64_t connected = 0;
    std::uint64_t samples = 0;
    double frequency() const noexcept { return samples ? static_cast<double>(connected) / static_cast<double>(samples) : 0.0; }
};

// Monte Carlo over G(n, c/n); n <= 64.
ConnectivityEstimate simulate_connectivity(std::size_t n, double c, std::uint64_t samples, std::uint64_t seed);

// h(l) = c (1-l)^k - l ln(1/l) - (1-l) ln(1/(1-l)); l in (0, 1/2).
double cover_exponent(double lambda_frac, double c, std::size_t k);

// First zero of h on (0, 1/2) by a 10^4-point sign scan and bisection; 1/2 if h stays positive.
double q_c(double c, std::size_t k);

// Upper bound on the probability of a hole pair of overlap i, evaluated in log space:
//   C(n,i) 2^i [2^(2-k) (i/n)^(k-2) (1-i/n)]^(n-i-1) / (n-i)
//     * exp(-(lambda n / C(k,2)) [1 - (k C(i,k) + 2 C(i,k-2) C(n-i,2)) / (2^k C(n,k))])
// i = n (identical endpoints, never a hole) returns 0.
double log_hole_prob_bound(std::size_t n, std::size_t i, double lambda, std::size_t k);
double hole_prob_bound(std::size_t n, std::size_t i, double lambda, std::size_t k);
// Same quantity with exact integer binomials and 50-digit floating point; n <= 60.
double hole_prob_bound_exact(std::size_t n, std::size_t i, double lambda, std::size_t k);

// f_k / g_k = ln f_k for a fixed density lambda in (0,1).
class HoleExponent {
public:
    HoleExponent(double lambda, std::size_t k);

    // lambda^(1-x) (x/2)^((k-2)(1-x) - x) exp(-lambda (1 - (k x^k + k(k-1) x^(k-2) (1-x)^2) / 2^k) / C(k,2))
    double f(double x) const;
    double g(double x) const;
    // Smallest root of g on (0, 1).
    std::optional<double> root() const;

    double lambda() const noexcept { return lambda_; }
    std::size_t k() const noexcept { return k_; }

private:
    double exponent_term(double x) const;

    double lambda_;
    std::size_t k_;
};

// Relative difference between the unsimplified per-n base of the hole bound and f_k(alpha).
double stirling_form_check(double alpha, double lambda, std::size_t k);

// Bisection on [lo, hi] given a sign change; stops when the bracket is narrower than tol.
double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol);

// Smallest sign change of fn on a uniform grid of `points` over (lo, hi], refined by bisection.
std::optional<double> smallest_root(const std::function<double(double)>& fn, double lo, double hi,
                                    std::size_t points, double tol);

}  // namespace eok::bounds
