#pragma once

// Numeric checks for the running-time bound of the compressed DP.

#include <cmath>
#include <string>
#include <vector>

#include "kep/error.hpp"

namespace kep::analysis {

namespace detail {

// -p ln x - q ln(1 - x), with 0 · ln 0 taken as 0.
inline double log_s(int p, int q, double x) {
    double out = 0.0;
    if (p != 0) out -= p * std::log(x);
    if (q != 0) out -= q * std::log1p(-x);
    return out;
}

} // namespace detail

// s_{p,q} = x^-p (1 - x)^-q
inline double s_pq(int p, int q, double x) {
    if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::DomainError, "x must lie in (0, 1)");
    if (p < 0 || q < 0) throw Error(ErrorKind::DomainError, "p and q must be nonnegative");
    return std::exp(detail::log_s(p, q, x));
}

inline double x_of(int p, int q) { return static_cast<double>(p) / static_cast<double>(p + 2 * q); }

struct RatioViolation {
    int p = 0;
    int q = 0;
    double ratio = 0.0;
};

struct RatioReport {
    int p_max = 0;
    int q_max = 0;
    std::size_t checked = 0;
    double max_ratio = 0.0;
    int argmax_p = 0;
    int argmax_q = 0;
    std::vector<RatioViolation> violations;

    bool ok() const { return violations.empty(); }
};

inline constexpr double kRatioTolerance = 1e-9;

// s_{p,q} / (e^2 (p + 1) s_{p+1,q-1}) for 1 <= p <= p_max, 1 <= q <= q_max,
// each side at its own x = p / (p + 2q).
inline RatioReport check_ratio_inequality(int p_max, int q_max) {
    if (p_max < 1 || q_max < 1 || p_max > 200 || q_max > 200) {
        throw Error(ErrorKind::DomainError, "grid bounds must lie in [1, 200]");
    }
    RatioReport rep;
    rep.p_max = p_max;
    rep.q_max = q_max;
    for (int p = 1; p <= p_max; ++p) {
        for (int q = 1; q <= q_max; ++q) {
            const double lhs = detail::log_s(p, q, x_of(p, q));
            const double rhs = 2.0 + std::log(p + 1.0) + detail::log_s(p + 1, q - 1, x_of(p + 1, q - 1));
            const double ratio = std::exp(lhs - rhs);
            ++rep.checked;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.argmax_p = p;
                rep.argmax_q = q;
            }
            if (ratio > 1.0 + kRatioTolerance) rep.violations.push_back({p, q, ratio});
        }
    }
    return rep;
}

// f(α) = ((4 - α) / α)^α ((4 - α) / (4 - 2α))^(4 - 2α)
inline double f_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw Error(ErrorKind::DomainError, "alpha must lie in (0, 2)");
    const double a = alpha * std::log((4.0 - alpha) / alpha);
    const double b = (4.0 - 2.0 * alpha) * std::log((4.0 - alpha) / (4.0 - 2.0 * alpha));
    return std::exp(a + b);
}

struct FMaximum {
    double alpha_star = 0.0;
    double f_star = 0.0;
    int iterations = 0;
};

inline double alpha_closed_form() { return 2.0 - 0.4 * std::sqrt(5.0); }

// Golden-section search for the maximum of f on (lo, hi).
inline FMaximum maximize_f(double lo = 0.001, double hi = 1.999, double tol = 1e-10) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f_alpha(c), fd = f_alpha(d);
    FMaximum out;
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f_alpha(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f_alpha(d);
        }
        ++out.iterations;
    }
    out.alpha_star = (a + b) / 2.0;
    out.f_star = f_alpha(out.alpha_star);
    return out;
}

} // namespace kep::analysis
