#include "eok/bounds.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "eok/combinatorics.hpp"
#include "eok/errors.hpp"
#include "eok/rng.hpp"

namespace eok::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_k(std::size_t k) {
    if (k < 3) throw DomainError("k must be at least 3");
}

double pairs(std::size_t k) { return static_cast<double>(k * (k - 1)) / 2.0; }

}  // namespace

double lambda_c(double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("lambda_c requires 0 < c < 1");
    return 3.0 / ((1.0 - c) * (1.0 - c));
}

bool condition_one(double q, double epsilon, std::size_t k) {
    require_k(k);
    if (!(q >= 0.0 && q <= 1.0) || !(epsilon >= 0.0 && epsilon <= 1.0))
        throw DomainError("condition_one requires q, epsilon in [0, 1]");
    return 2.0 * std::pow(q * (1.0 - epsilon), static_cast<double>(k - 2)) <= 1.0;
}

MuBounds mu_bounds(std::size_t n, std::size_t a, std::size_t d, double p, double epsilon, std::size_t k) {
    require_k(k);
    if (a + d > n) throw DomainError("mu_bounds requires a + d <= n");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mu_bounds requires p in [0, 1]");
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw DomainError("epsilon must lie in [0, 1/2]");
    const double base = std::pow(static_cast<double>(a) * (1.0 - epsilon) + static_cast<double>(d) * epsilon,
                                 static_cast<double>(k - 2));
    const double scale = p / factorial(static_cast<unsigned>(k - 2)) * base;
    MuBounds out;
    out.mu_eq = scale * (epsilon * epsilon + (1.0 - epsilon) * (1.0 - epsilon));
    out.mu_neq = scale * 4.0 * epsilon * (1.0 - epsilon);
    return out;
}

double epsilon_0() { return (3.0 - std::sqrt(3.0)) / 6.0; }
double epsilon_0_conjugate() { return (3.0 + std::sqrt(3.0)) / 6.0; }

double epsilon_0_residual(double eps) {
    return std::fabs(eps * eps + (1.0 - eps) * (1.0 - eps) - 4.0 * eps * (1.0 - eps));
}

double epsilon_c_cubic(double x) { return ((2.0 * x - 2.0) * x + 3.0) * x - 1.0; }

EpsilonC epsilon_c() {
    EpsilonC out;
    // The cubic is strictly increasing (6x^2 - 4x + 3 > 0), so the root in (0,1) is unique.
    out.root = bisect(epsilon_c_cubic, 0.0, 1.0, 1e-12);
    out.residual_at_root = std::fabs(epsilon_c_cubic(out.root));
    out.residual_at_quoted = std::fabs(epsilon_c_cubic(out.quoted));
    out.discrepancy = std::fabs(out.root - out.quoted);
    return out;
}

double connected_prob_bound(std::size_t n, double c) {
    if (n < 2) throw DomainError("connected_prob_bound requires n >= 2");
    if (!(c > 0.0 && c < 1.0)) throw DomainError("connected_prob_bound requires 0 < c < 1");
    return std::pow(c, static_cast<double>(n - 1)) / static_cast<double>(n);
}

ConnectivityEstimate simulate_connectivity(std::size_t n, double c, std::uint64_t samples, std::uint64_t seed) {
    if (n < 2 || n > 64) throw DomainError("simulate_connectivity requires 2 <= n <= 64");
    if (!(c > 0.0 && c < static_cast<double>(n))) throw DomainError("simulate_connectivity requires 0 < c < n");
    const double p = c / static_cast<double>(n);
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    Rng rng(seed);
    std::vector<std::uint64_t> adj(n);
    ConnectivityEstimate est;
    est.samples = samples;
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::fill(adj.begin(), adj.end(), 0);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (rng.bernoulli(p)) {
                    adj[u] |= std::uint64_t{1} << v;
                    adj[v] |= std::uint64_t{1} << u;
                }
        std::uint64_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
            frontier = next & ~seen;
            seen |= next;
        }
        if (seen == all) ++est.connected;
    }
    return est;
}

double cover_exponent(double lambda_frac, double c, std::size_t k) {
    require_k(k);
    if (!(lambda_frac > 0.0 && lambda_frac < 0.5)) throw DomainError("cover_exponent requires lambda in (0, 1/2)");
    if (!(c > 0.0)) throw DomainError("cover_exponent requires c > 0");
    const double l = lambda_frac;
    return c * std::pow(1.0 - l, static_cast<double>(k)) - l * std::log(1.0 / l) - (1.0 - l) * std::log(1.0 / (1.0 - l));
}

double q_c(double c, std::size_t k) {
    require_k(k);
    if (!(c > 0.0)) throw DomainError("q_c requires c > 0");
    // h(0+) = c > 0; h is only defined on the open interval, so the scan stops just short of 1/2
    // and the cap is reported if no sign change occurs there.
    const auto h = [&](double l) { return cover_exponent(l, c, k); };
    const double lo = 1e-12;
    const double hi = 0.5 - 1e-12;
    auto root = smallest_root(h, lo, hi, 10'000, 1e-13);
    return root.value_or(0.5);
}

double log_hole_prob_bound(std::size_t n, std::size_t i, double lambda, std::size_t k) {
    require_k(k);
    if (n < k) throw DomainError("hole_prob_bound requires n >= k");
    if (i > n) throw DomainError("hole_prob_bound requires 0 <= i <= n");
    if (!(lambda > 0.0)) throw DomainError("hole_prob_bound requires lambda > 0");
    if (i == n) return -kInf;

    const double nd = static_cast<double>(n);
    const double id = static_cast<double>(i);
    const double kd = static_cast<double>(k);
    double log_val = log_choose(nd, id) + id * std::log(2.0) - std::log(nd - id);

    const std::size_t power = n - i - 1;
    if (power > 0) {
        const double frac = id / nd;
        if (i == 0) return -kInf;  // (i/n)^(k-2) = 0
        const double log_base = (2.0 - kd) * std::log(2.0) + (kd - 2.0) * std::log(frac) + std::log1p(-frac);
        log_val += static_cast<double>(power) * log_base;
    }

    const double fraction = (kd * choose(id, kd) + 2.0 * choose(id, kd - 2.0) * choose(nd - id, 2.0)) /
                            (std::ldexp(1.0, static_cast<int>(k)) * choose(nd, kd));
    log_val -= lambda * nd / pairs(k) * (1.0 - fraction);
    return log_val;
}

double hole_prob_bound(std::size_t n, std::size_t i, double lambda, std::size_t k) {
    return std::exp(log_hole_prob_bound(n, i, lambda, k));
}

double hole_prob_bound_exact(std::size_t n, std::size_t i, double lambda, std::size_t k) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    using Real = boost::multiprecision::cpp_bin_float_50;
    require_k(k);
    if (n < k || n > 60) throw DomainError("hole_prob_bound_exact requires k <= n <= 60");
    if (i > n) throw DomainError("hole_prob_bound requires 0 <= i <= n");
    if (i == n) return 0.0;

    auto binom = [](std::size_t top, std::size_t bottom) -> cpp_int {
        if (bottom > top) return 0;
        cpp_int r = 1;
        for (std::size_t j = 1; j <= bottom; ++j) r = r * (top - bottom + j) / j;
        return r;
    };

    // Everything except lambda is an exact rational until the final power and exponential.
    cpp_rational frac_base = cpp_rational(1, 1);
    for (std::size_t j = 0; j < k - 2; ++j) frac_base *= cpp_rational(i, n);
    frac_base *= cpp_rational(n - i, n);
    frac_base /= cpp_rational(cpp_int(1) << (k - 2), 1);

    const cpp_rational bracket =
        1 - cpp_rational(cpp_int(k) * binom(i, k) + 2 * binom(i, k - 2) * binom(n - i, 2),
                         (cpp_int(1) << k) * binom(n, k));

    const std::size_t power = n - i - 1;
    Real value = Real(binom(n, i)) * Real(cpp_int(1) << i) / Real(n - i);
    Real pw = 1;
    const Real fb = Real(numerator(frac_base)) / Real(denominator(frac_base));
    for (std::size_t j = 0; j < power; ++j) pw *= fb;
    value *= pw;
    const Real br = Real(numerator(bracket)) / Real(denominator(bracket));
    value *= boost::multiprecision::exp(-Real(lambda) * Real(n) / Real(pairs(k)) * br);
    return static_cast<double>(value);
}

HoleExponent::HoleExponent(double lambda, std::size_t k) : lambda_(lambda), k_(k) {
    require_k(k);
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("f_k/g_k require lambda in (0, 1)");
}

double HoleExponent::exponent_term(double x) const {
    const double kd = static_cast<double>(k_);
    const double inner = (kd * std::pow(x, kd) + kd * (kd - 1.0) * std::pow(x, kd - 2.0) * (1.0 - x) * (1.0 - x)) /
                         std::ldexp(1.0, static_cast<int>(k_));
    return -lambda_ * (1.0 - inner) / pairs(k_);
}

double HoleExponent::f(double x) const {
    const double kd = static_cast<double>(k_);
    return std::pow(lambda_, 1.0 - x) * std::pow(x / 2.0, (kd - 2.0) * (1.0 - x) - x) * std::exp(exponent_term(x));
}

double HoleExponent::g(double x) const {
    const double kd = static_cast<double>(k_);
    return (1.0 - x) * std::log(lambda_) + ((kd - 2.0) * (1.0 - x) - x) * std::log(x / 2.0) + exponent_term(x);
}

std::optional<double> HoleExponent::root() const {
    return smallest_root([this](double x) { return g(x); }, 1e-9, 1.0, 10'000, 1e-11);
}

double stirling_form_check(double alpha, double lambda, std::size_t k) {
    require_k(k);
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stirling_form_check requires alpha in (0, 1)");
    const HoleExponent hx(lambda, k);
    const double kd = static_cast<double>(k);
    const double a = alpha;
    // Unsimplified base: 2^a [(a/2)^(k-2) lambda (1-a)]^(1-a) e^{...} / (a^a (1-a)^(1-a)).
    const double inner = std::pow(a / 2.0, kd - 2.0) * lambda * (1.0 - a);
    const double numer = std::pow(2.0, a) * std::pow(inner, 1.0 - a) *
                         std::exp(-lambda / pairs(k) *
                                  (1.0 - (kd * std::pow(a, kd) + kd * (kd - 1.0) * std::pow(a, kd - 2.0) * (1.0 - a) * (1.0 - a)) /
                                             std::ldexp(1.0, static_cast<int>(k))));
    const double denom = std::pow(a, a) * std::pow(1.0 - a, 1.0 - a);
    const double raw = numer / denom;
    const double simplified = hx.f(a);
    if (raw == 0.0 && simplified == 0.0) return 0.0;
    return std::fabs(raw - simplified) / std::max(std::fabs(raw), std::fabs(simplified));
}

double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    double flo = fn(lo);
    if (flo == 0.0) return lo;
    const double fhi = fn(hi);
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) throw DomainError("bisect: no sign change on the bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<double> smallest_root(const std::function<double(double)>& fn, double lo, double hi,
                                    std::size_t points, double tol) {
    double prev_x = lo;
    double prev = fn(lo);
    if (prev == 0.0) return lo;
    for (std::size_t j = 1; j <= points; ++j) {
        const double x = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points);
        const double cur = fn(x);
        if (cur == 0.0) return x;
        if ((prev < 0.0) != (cur < 0.0)) return bisect(fn, prev_x, x, tol);
        prev_x = x;
        prev = cur;
    }
    return std::nullopt;
}

}  // namespace eok::bounds
