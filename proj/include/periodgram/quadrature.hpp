#pragma once

// Double-exponential (tanh-sinh) quadrature on (0,1), and the direct numeric
// evaluation of the Mellin integrals as an oracle independent of the exact
// contiguity recursion. The change of variables absorbs the integrable
// boundary behaviour at the corners of the square.

#include <cmath>
#include <functional>
#include <mutex>
#include <vector>

#include "periodgram/errors.hpp"
#include "periodgram/exponents.hpp"

namespace periodgram {

namespace tanhsinh {

struct Node {
    double x;    // abscissa in (0,1)
    double omx;  // 1 - x, computed without cancellation
    double w;    // weight
};

// Nodes at t = j*h for j odd (level > 0) or all j (level 0), h = 2^-level.
inline const std::vector<Node>& level_nodes(int level) {
    static std::vector<std::vector<Node>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(cache.size()) <= level) {
        int lvl = static_cast<int>(cache.size());
        double h = std::ldexp(1.0, -lvl);
        std::vector<Node> nodes;
        for (long j = lvl == 0 ? 0 : 1;; j += lvl == 0 ? 1 : 2) {
            double t = static_cast<double>(j) * h;
            double sh = M_PI_2 * std::sinh(t);
            double ch = std::cosh(sh);
            double w = M_PI_4 * std::cosh(t) / (ch * ch);
            if (!(w > 1e-300)) break;
            double ep = std::exp(2.0 * sh);
            double x = ep / (1.0 + ep);
            double omx = 1.0 / (1.0 + ep);
            nodes.push_back({x, omx, w});
        }
        cache.push_back(std::move(nodes));
    }
    return cache[static_cast<size_t>(level)];
}

// Integral of f over (0,1); f receives (x, 1-x). Levels are doubled until
// two successive trapezoid refinements agree to `tol` (absolute).
inline double integrate(const std::function<double(double, double)>& f, double tol,
                        int max_level = 12) {
    double prev = 0.0;
    double sum0 = 0.0;
    for (int level = 0; level <= max_level; ++level) {
        double h = std::ldexp(1.0, -level);
        const auto& nodes = level_nodes(level);
        double part = 0.0;
        for (const auto& nd : nodes) {
            // nodes are symmetric: t and -t swap x and 1-x
            double fx = f(nd.x, nd.omx);
            double fm = f(nd.omx, nd.x);
            part += nd.w * (fx + fm);
        }
        if (level == 0) part -= M_PI_4 * f(0.5, 0.5);  // j = 0 enters the loop twice
        double total;
        if (level == 0) {
            sum0 = part;
            total = h * sum0;
        } else {
            sum0 += part;
            total = h * sum0;
        }
        if (level >= 3 && std::abs(total - prev) <= tol) return total;
        prev = total;
    }
    throw NonConvergence("tanh-sinh refinement stalled before reaching tolerance");
}

}  // namespace tanhsinh

inline double ipow(double base, long e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    double r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Direct 2-D quadrature of I(s) = int over (0,1)^2 of
// x^s1 (1-x)^s2 (1-y)^s3 y^s4 (1-xy)^(s5-s2-s3-1) dx dy.
inline double quad_oracle(const Exp5& s, double tol) {
    if (tol < 1e-12) throw Error("quad_oracle: tolerance below 1e-12");
    long total = 0;
    for (long v : s) total += v;
    if (total > 12) throw Error("quad_oracle: sum of exponents above accuracy guard 12");

    // u1 = x, u2 = (1-x)/(1-xy), u3 = (1-y)/(1-xy), u4 = y, u5 = 1-xy are all
    // in [0,1] on the square, so the product below never overflows; the lone
    // 1/t factor is the measure omega.
    auto inner = [&](double x, double omx) {
        auto g = [&](double y, double omy) {
            double t = omx + x * omy;  // 1 - xy
            return ipow(x, s[0]) * ipow(omx / t, s[1]) * ipow(omy / t, s[2]) *
                   ipow(y, s[3]) * ipow(t, s[4]) / t;
        };
        return tanhsinh::integrate(g, tol / 16.0);
    };
    return tanhsinh::integrate(inner, tol / 2.0);
}

}  // namespace periodgram
