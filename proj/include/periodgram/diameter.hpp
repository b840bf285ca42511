#pragma once

// Transfinite-diameter machinery: the closed-form catalog, scaling and
// product rules, tensor/direct-sum limit bounds, the hyperbola-region
// estimates, the zeta(2) region bounds, and Fekete-point maximization of
// generalised Vandermonde determinants.

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "periodgram/constants.hpp"
#include "periodgram/parallel.hpp"
#include "periodgram/real.hpp"
#include "periodgram/region.hpp"
#include "periodgram/vandermonde.hpp"

namespace periodgram {

// A numeric bound together with the audit trail of rules that produced it.
struct BoundValue {
    Real value{50};
    std::vector<std::string> derivation;

    BoundValue() = default;
    BoundValue(Real v, std::string rule) : value(std::move(v)) {
        derivation.push_back(std::move(rule));
    }
};

namespace detail {

inline Real euler_e(int digits) { return exp(Real::of(1L, digits)); }

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace detail

// Exact catalog values: interval (b-a)/4, box sqrt((b-a)(d-c))/4, triangle
// sqrt(vol)/(e sqrt(2)), ball r/sqrt(2e). Affine images scale by
// |det P|^(1/2); everything else has no catalog entry.
inline BoundValue closed_form_diameter(const Region& region, int digits = 50) {
    switch (region.kind()) {
        case RegionKind::interval: {
            double a = region.param(0), b = region.param(1);
            if (!(a < b)) throw Error("closed_form_diameter: need a < b");
            Real v = (Real::of(b, digits) - Real::of(a, digits)) / Real::of(4L, digits);
            return {v, "interval[" + detail::fmt(a) + "," + detail::fmt(b) + "]: (b-a)/4"};
        }
        case RegionKind::box: {
            double a = region.param(0), b = region.param(1), c = region.param(2),
                   d = region.param(3);
            Real v = sqrt((Real::of(b, digits) - Real::of(a, digits)) *
                          (Real::of(d, digits) - Real::of(c, digits))) /
                     Real::of(4L, digits);
            return {v, "box: sqrt((b-a)(d-c))/4"};
        }
        case RegionKind::triangle: {
            double x1 = region.param(0), y1 = region.param(1), x2 = region.param(2),
                   y2 = region.param(3), x3 = region.param(4), y3 = region.param(5);
            double vol2 = std::abs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1));
            Real vol = Real::of(vol2, digits) / Real::of(2L, digits);
            Real e = detail::euler_e(digits);
            Real v = sqrt(vol) / (e * sqrt(Real::of(2L, digits)));
            return {v, "triangle vol=" + detail::fmt(vol2 / 2) + ": sqrt(vol)/(e sqrt(2))"};
        }
        case RegionKind::ball: {
            Real v = Real::of(region.param(0), digits) /
                     sqrt(Real::of(2L, digits) * detail::euler_e(digits));
            return {v, "ball r=" + detail::fmt(region.param(0)) + ": r/sqrt(2e)"};
        }
        case RegionKind::affine_image: {
            BoundValue base = closed_form_diameter(*region.source(), digits);
            double det = region.param(0) * region.param(3) - region.param(1) * region.param(2);
            Real scale = sqrt(abs(Real::of(det, digits)));
            BoundValue out;
            out.value = scale * base.value;
            out.derivation = base.derivation;
            out.derivation.push_back("affine scaling: |det P|^(1/2)");
            return out;
        }
        default:
            throw NoClosedForm("no closed-form diameter for this region kind");
    }
}

// tr(P tau) = |det P|^(1/n) tr(tau)
inline BoundValue gl_scaling(const std::array<std::array<double, 2>, 2>& p,
                             const BoundValue& diam, long n, int digits = 50) {
    double det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    if (det == 0) throw SingularMatrix("gl_scaling: det P = 0");
    BoundValue out = diam;
    Real scale = pow(abs(Real::of(det, digits)),
                     Real::of(1L, digits) / Real::of(n, digits));
    out.value = scale * diam.value;
    out.derivation.push_back("gl_scaling: |det P|^(1/" + std::to_string(n) + ")");
    return out;
}

// tr(tau1 x tau2) = tr(tau1)^(m/(m+n)) tr(tau2)^(n/(m+n))
inline BoundValue product_rule(const BoundValue& d1, long m, const BoundValue& d2, long n,
                               int digits = 50) {
    if (m < 1 || n < 1) throw Error("product_rule: need m,n >= 1");
    Real mm = Real::of(m, digits), nn = Real::of(n, digits);
    Real v = pow(d1.value, mm / (mm + nn)) * pow(d2.value, nn / (mm + nn));
    BoundValue out;
    out.value = v;
    out.derivation = d1.derivation;
    out.derivation.insert(out.derivation.end(), d2.derivation.begin(), d2.derivation.end());
    out.derivation.push_back("product_rule: weights " + std::to_string(m) + "/" +
                             std::to_string(m + n) + ", " + std::to_string(n) + "/" +
                             std::to_string(m + n));
    return out;
}

// Sup_{M (x) N} <= Sup_M^alpha Sup_N^beta (beta = 0 covers the stationary case).
inline BoundValue tensor_limit_bound(const BoundValue& sup_m, double alpha,
                                     const BoundValue& sup_n, double beta, int digits = 50) {
    if (alpha < 0 || beta < 0) throw Error("tensor_limit_bound: exponents must be >= 0");
    Real v = pow(sup_m.value, Real::of(alpha, digits)) * pow(sup_n.value, Real::of(beta, digits));
    BoundValue out;
    out.value = v;
    out.derivation = sup_m.derivation;
    out.derivation.insert(out.derivation.end(), sup_n.derivation.begin(), sup_n.derivation.end());
    out.derivation.push_back("tensor_limit_bound: alpha=" + detail::fmt(alpha) +
                             " beta=" + detail::fmt(beta));
    return out;
}

inline BoundValue directsum_limit_bound(const std::vector<BoundValue>& sups,
                                        const std::vector<double>& alphas, int digits = 50) {
    if (sups.size() != alphas.size())
        throw DimensionMismatch("directsum_limit_bound: length mismatch");
    BoundValue out;
    out.value = Real::of(1L, digits);
    for (size_t i = 0; i < sups.size(); ++i) {
        out.value = out.value * pow(sups[i].value, Real::of(alphas[i], digits));
        for (const auto& d : sups[i].derivation) out.derivation.push_back(d);
    }
    out.derivation.push_back("directsum_limit_bound");
    return out;
}

// Upper and lower estimates for the rectangular supremal diameter of
// tau_eps = {0 <= x,y <= 1, xy <= eps}.
struct TauEpsBounds {
    BoundValue naive;          // 1/4 from tau_eps inside the unit square
    BoundValue rect_cube_root; // (eps/16)^(1/3)
    BoundValue triangle_bound; // (eps/(4 e^2 (2 sqrt(eps)-eps)))^(1/3)
    BoundValue lower_bound;    // (eps (1-sqrt(eps))^2/16)^(1/3)
    BoundValue best_upper;
    bool lower_below_uppers = false;
};

inline TauEpsBounds tau_eps_bounds(double eps, int digits = 50) {
    if (!(eps > 0 && eps <= 1)) throw Error("tau_eps_bounds: need 0 < eps <= 1");
    Real e2 = pow(detail::euler_e(digits), 2L);
    Real ep = Real::of(eps, digits);
    Real third = Real::of(1L, digits) / Real::of(3L, digits);
    TauEpsBounds out;
    out.naive = {Real::of(0.25, digits), "naive: tau_eps inside [0,1]^2"};
    out.rect_cube_root = {pow(ep / Real::of(16L, digits), third),
                          "rect: (eps/16)^(1/3) via [0,eps]x[0,1]"};
    Real denom = Real::of(4L, digits) * e2 *
                 (Real::of(2L, digits) * sqrt(ep) - ep);
    out.triangle_bound = {pow(ep / denom, third),
                          "triangle: (eps/(4 e^2 (2 sqrt(eps)-eps)))^(1/3)"};
    Real omr = Real::of(1L, digits) - sqrt(ep);
    out.lower_bound = {pow(ep * omr * omr / Real::of(16L, digits), third),
                       "lower: (eps (1-sqrt(eps))^2/16)^(1/3)"};
    out.best_upper = out.naive;
    for (const BoundValue* b : {&out.rect_cube_root, &out.triangle_bound})
        if (b->value < out.best_upper.value) out.best_upper = *b;
    out.lower_below_uppers = out.lower_bound.value <= out.naive.value &&
                             out.lower_bound.value <= out.rect_cube_root.value &&
                             out.lower_bound.value <= out.triangle_bound.value;
    return out;
}

// eps where the rectangle and triangle upper bounds cross (the triangle
// bound wins above it).
inline double tau_eps_crossover() {
    auto diff = [](double eps) {
        double e2 = std::exp(2.0);
        double rect = std::cbrt(eps / 16.0);
        double tri = std::cbrt(eps / (4.0 * e2 * (2.0 * std::sqrt(eps) - eps)));
        return rect - tri;
    };
    double lo = 0.02, hi = 0.9;
    if (diff(lo) >= 0 || diff(hi) <= 0) throw Error("tau_eps_crossover: no sign change");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (diff(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Bounds for the squared rectangular supremal diameter of the two-parameter
// image region, via the triangles sandwiching its phi image, plus the
// induced five-parameter bound upper^(3/2).
struct Zeta2RegionBound {
    BoundValue lower;
    BoundValue upper;
    BoundValue five_param_bound;
    bool lower_above_0017 = false;
    bool upper_below_0023 = false;
    bool five_param_below_0003488 = false;
};

inline Zeta2RegionBound zeta2_region_bound(int digits = 50) {
    Real e2 = pow(detail::euler_e(digits), 2L);
    Real two = Real::of(2L, digits);
    Real twothirds = two / Real::of(3L, digits);
    // triangle vertices read off the sandwiching construction
    Real vol_max = Real::of("1.05", digits) * Real::of("0.098", digits) / two;
    Real vol_min = (Real::of("0.99", digits) - Real::of("0.25", digits)) *
                   Real::of("0.0885", digits) / two;
    Zeta2RegionBound out;
    out.upper = {pow(vol_max / (two * e2), twothirds),
                 "outer triangle (0,0),(0,1.05),(0.098,0.653): (vol/(2e^2))^(2/3)"};
    out.lower = {pow(vol_min / (two * e2), twothirds),
                 "inner triangle (0,0.25),(0,0.99),(0.0885,0.63): (vol/(2e^2))^(2/3)"};
    out.five_param_bound = {pow(out.upper.value, Real::of(3L, digits) / two),
                            "five-parameter: upper^(3/2)"};
    out.lower_above_0017 = out.lower.value > Real::of("0.017", digits);
    out.upper_below_0023 = out.upper.value < Real::of("0.023", digits);
    out.five_param_below_0003488 = out.five_param_bound.value < Real::of("0.003488", digits);
    return out;
}

// eta = (5 sqrt(5) - 11)/2, the maximum of x(1-x)y(1-y)/(1-xy) on the unit
// square, with the two thresholds derived from it, cross-checked on a grid.
struct EtaCritical {
    Real eta{50};
    Real theta_classical{50};
    Real theta_one{50};
    double grid_max = 0;
    double grid_deviation = 0;
};

inline EtaCritical eta_critical(int digits = 50, long grid_steps = 2000) {
    EtaCritical out;
    Real five = Real::of(5L, digits);
    out.eta = (five * sqrt(five) - Real::of(11L, digits)) / Real::of(2L, digits);
    out.theta_classical = -log(out.eta) / Real::of(2L, digits);
    out.theta_one = -log(out.eta / Real::of(4L, digits)) / Real::of(3L, digits);

    double best = 0;
    for (long i = 0; i <= grid_steps; ++i)
        for (long j = 0; j <= grid_steps; ++j) {
            double x = static_cast<double>(i) / static_cast<double>(grid_steps);
            double y = static_cast<double>(j) / static_cast<double>(grid_steps);
            double den = 1.0 - x * y;
            if (den <= 0) continue;
            best = std::max(best, x * (1 - x) * y * (1 - y) / den);
        }
    out.grid_max = best;
    out.grid_deviation = std::abs(best - out.eta.to_double());
    return out;
}

// exp((w/r)(2r+1)/(r+1)), the denominator inflation factor in the
// rectangular irrationality criterion.
inline BoundValue intuitive_threshold(long r, long w, int digits = 50) {
    if (r < 1 || w < 0) throw Error("intuitive_threshold: need r >= 1 and w >= 0");
    Rational expo = make_rational(w * (2 * r + 1), r * (r + 1));
    BoundValue out;
    out.value = exp(Real::of(expo, digits));
    out.derivation.push_back("intuitive_threshold: exp((w/r)(2r+1)/(r+1)), r=" +
                             std::to_string(r) + " w=" + std::to_string(w));
    return out;
}

// ---------------------------------------------------------------------------
// Fekete maximization
// ---------------------------------------------------------------------------

struct FeketeResult {
    PointConfig points;       // in the optimization domain (source for images)
    double log_abs_det = -
        std::numeric_limits<double>::infinity();
    double proxy = 0;         // |det|^(1/e_n), a lower-bound witness
    long iterations = 0;      // total exchange sweeps of the best restart
    int restarts = 0;
    std::vector<double> sweep_log;  // log|det| after each sweep (best restart)
};

namespace detail {

inline double halton(uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<uint64_t>(base));
        index /= static_cast<uint64_t>(base);
    }
    return r;
}

// Low-discrepancy candidates inside the domain (Halton in the bbox with
// rejection, interleaved with uniform rejection samples).
class CandidatePool {
public:
    CandidatePool(const Region& domain, uint64_t seed)
        : domain_(domain), rng_(seed), counter_(1 + (seed % 7919) * 31) {}

    std::vector<double> next() {
        const auto& bb = domain_.bbox();
        int d = domain_.dim();
        for (int attempt = 0; attempt < 200000; ++attempt) {
            std::vector<double> p(static_cast<size_t>(d));
            if (attempt % 2 == 0) {
                ++counter_;
                static const int bases[2] = {2, 3};
                for (int k = 0; k < d; ++k) {
                    auto [lo, hi] = bb[static_cast<size_t>(k)];
                    p[static_cast<size_t>(k)] = lo + (hi - lo) * halton(counter_, bases[k]);
                }
            } else {
                std::uniform_real_distribution<double> u(0.0, 1.0);
                for (int k = 0; k < d; ++k) {
                    auto [lo, hi] = bb[static_cast<size_t>(k)];
                    p[static_cast<size_t>(k)] = lo + (hi - lo) * u(rng_);
                }
            }
            if (domain_.contains(p)) return p;
        }
        throw Error("CandidatePool: cannot draw members of the region");
    }

    std::vector<std::vector<double>> draw(size_t count) {
        std::vector<std::vector<double>> out;
        out.reserve(count);
        for (size_t i = 0; i < count; ++i) out.push_back(next());
        return out;
    }

private:
    const Region& domain_;
    std::mt19937_64 rng_;
    uint64_t counter_;
};

inline double log_abs_det_double(Matrix<double> a) {
    size_t n = a.size();
    double acc = 0;
    int sign = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (a[p][c] == 0.0) return -std::numeric_limits<double>::infinity();
        if (p != c) {
            std::swap(a[p], a[c]);
            sign = -sign;
        }
        acc += std::log(std::abs(a[c][c]));
        for (size_t r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return acc;
}

// Nelder-Mead over the region, maximizing fn; points outside are rejected.
inline std::vector<double> nelder_mead(const Region& domain,
                                       const std::function<double(const std::vector<double>&)>& fn,
                                       std::vector<double> start, double scale, int iters) {
    int d = domain.dim();
    auto clampval = [&](const std::vector<double>& p) {
        return domain.contains(p) ? fn(p) : -std::numeric_limits<double>::infinity();
    };
    std::vector<std::vector<double>> simplex{start};
    for (int k = 0; k < d; ++k) {
        std::vector<double> p = start;
        auto [lo, hi] = domain.bbox()[static_cast<size_t>(k)];
        p[static_cast<size_t>(k)] += scale * (hi - lo);
        if (!domain.contains(p)) p[static_cast<size_t>(k)] = start[static_cast<size_t>(k)] - scale * (hi - lo);
        simplex.push_back(p);
    }
    std::vector<double> val(simplex.size());
    for (size_t i = 0; i < simplex.size(); ++i) val[i] = clampval(simplex[i]);
    for (int it = 0; it < iters; ++it) {
        // order: best first
        for (size_t i = 0; i < simplex.size(); ++i)
            for (size_t j = i + 1; j < simplex.size(); ++j)
                if (val[j] > val[i]) {
                    std::swap(val[i], val[j]);
                    std::swap(simplex[i], simplex[j]);
                }
        size_t worst = simplex.size() - 1;
        std::vector<double> centroid(static_cast<size_t>(d), 0.0);
        for (size_t i = 0; i < worst; ++i)
            for (int k = 0; k < d; ++k) centroid[static_cast<size_t>(k)] += simplex[i][static_cast<size_t>(k)];
        for (int k = 0; k < d; ++k) centroid[static_cast<size_t>(k)] /= static_cast<double>(worst);

        auto blend = [&](double t) {
            std::vector<double> p(static_cast<size_t>(d));
            for (int k = 0; k < d; ++k)
                p[static_cast<size_t>(k)] = centroid[static_cast<size_t>(k)] +
                                            t * (simplex[worst][static_cast<size_t>(k)] -
                                                 centroid[static_cast<size_t>(k)]);
            return p;
        };
        std::vector<double> refl = blend(-1.0);
        double vr = clampval(refl);
        if (vr > val[0]) {
            std::vector<double> expd = blend(-2.0);
            double ve = clampval(expd);
            if (ve > vr) {
                simplex[worst] = expd;
                val[worst] = ve;
            } else {
                simplex[worst] = refl;
                val[worst] = vr;
            }
        } else if (vr > val[worst - 1]) {
            simplex[worst] = refl;
            val[worst] = vr;
        } else {
            std::vector<double> contr = blend(0.5);
            double vc = clampval(contr);
            if (vc > val[worst]) {
                simplex[worst] = contr;
                val[worst] = vc;
            } else {
                for (size_t i = 1; i < simplex.size(); ++i) {
                    for (int k = 0; k < d; ++k)
                        simplex[i][static_cast<size_t>(k)] =
                            0.5 * (simplex[i][static_cast<size_t>(k)] + simplex[0][static_cast<size_t>(k)]);
                    val[i] = clampval(simplex[i]);
                }
            }
        }
    }
    size_t best = 0;
    for (size_t i = 1; i < simplex.size(); ++i)
        if (val[i] > val[best]) best = i;
    return simplex[best];
}

}  // namespace detail

// Greedy Leja initialization followed by cyclic single-point exchange over
// fresh candidate pools with a local simplex polish, best of `restarts`.
inline FeketeResult fekete_maximize(const ModuleBasis& basis, const Region& region, int restarts,
                                    int max_sweeps, uint64_t seed, int workers = 1,
                                    size_t pool_size = 512) {
    long N = basis.rank();
    if (N > 400) throw Error("fekete_maximize: rank capped at 400");
    const Region& domain = region.pullback() ? *region.source() : region;
    const bool lifted = region.pullback();

    auto eval_row = [&](const std::vector<double>& p, std::vector<double>& row) {
        std::vector<double> q = lifted ? region.transform(p) : p;
        for (long j = 0; j < N; ++j)
            row[static_cast<size_t>(j)] =
                detail::eval_monomial(basis.monomials[static_cast<size_t>(j)], q);
    };

    auto config_logdet = [&](const PointConfig& pts) {
        Matrix<double> m(static_cast<size_t>(N), std::vector<double>(static_cast<size_t>(N)));
        for (long i = 0; i < N; ++i) eval_row(pts[static_cast<size_t>(i)], m[static_cast<size_t>(i)]);
        return detail::log_abs_det_double(std::move(m));
    };

    std::vector<FeketeResult> results(static_cast<size_t>(restarts));
    parallel_for(restarts, workers, [&](long ridx) {
        detail::CandidatePool pool(domain, seed + static_cast<uint64_t>(ridx) * 10007);
        FeketeResult res;
        res.restarts = restarts;

        // Leja growth: add the candidate maximizing the leading minor
        PointConfig pts;
        for (long k = 0; k < N; ++k) {
            auto candidates = pool.draw(pool_size);
            double best = -std::numeric_limits<double>::infinity();
            std::vector<double> best_pt;
            Matrix<double> minor(static_cast<size_t>(k) + 1,
                                 std::vector<double>(static_cast<size_t>(k) + 1));
            std::vector<double> full_row(static_cast<size_t>(N));
            for (auto& cand : candidates) {
                for (long i = 0; i < k; ++i) {
                    eval_row(pts[static_cast<size_t>(i)], full_row);
                    for (long j = 0; j <= k; ++j)
                        minor[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                            full_row[static_cast<size_t>(j)];
                }
                eval_row(cand, full_row);
                for (long j = 0; j <= k; ++j)
                    minor[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                        full_row[static_cast<size_t>(j)];
                double v = detail::log_abs_det_double(minor);
                if (v > best) {
                    best = v;
                    best_pt = cand;
                }
            }
            if (best_pt.empty()) throw DegenerateBasis("fekete: all candidate minors vanish");
            pts.push_back(best_pt);
        }

        double cur = config_logdet(pts);
        if (!std::isfinite(cur)) throw DegenerateBasis("fekete: initial determinant vanishes");
        res.sweep_log.push_back(cur);

        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double before = cur;
            for (long i = 0; i < N; ++i) {
                auto candidates = pool.draw(pool_size);
                candidates.push_back(pts[static_cast<size_t>(i)]);
                double best = -std::numeric_limits<double>::infinity();
                std::vector<double> best_pt;
                for (auto& cand : candidates) {
                    PointConfig trial = pts;
                    trial[static_cast<size_t>(i)] = cand;
                    double v = config_logdet(trial);
                    if (v > best) {
                        best = v;
                        best_pt = cand;
                    }
                }
                // local polish around the pool winner
                auto objective = [&](const std::vector<double>& p) {
                    PointConfig trial = pts;
                    trial[static_cast<size_t>(i)] = p;
                    return config_logdet(trial);
                };
                std::vector<double> polished =
                    detail::nelder_mead(domain, objective, best_pt, 0.02, 60);
                double pv = objective(polished);
                if (pv > best) {
                    best = pv;
                    best_pt = polished;
                }
                if (best > cur) {
                    pts[static_cast<size_t>(i)] = best_pt;
                    cur = best;
                }
            }
            ++res.iterations;
            res.sweep_log.push_back(cur);
            if (cur - before < 1e-8 * std::max(1.0, std::abs(cur))) break;
        }

        res.points = pts;
        res.log_abs_det = cur;
        results[static_cast<size_t>(ridx)] = std::move(res);
    });

    size_t best = 0;
    for (size_t i = 1; i < results.size(); ++i)
        if (results[i].log_abs_det > results[best].log_abs_det) best = i;
    FeketeResult out = results[best];
    if (basis.exponent_value > 0)
        out.proxy = std::exp(out.log_abs_det / basis.exponent_value.get_d());
    return out;
}

// Exact ranks behind the decomposition of the rectangular module through
// phi: Z[xy, x+y] (x) (Z + xZ) equals the rectangular module up to rank-n
// correction modules.
inline bool phi_decomposition_rank_check(long n) {
    if (n < 1) throw Error("phi_decomposition_rank_check: n >= 1");
    long width = 2 * n + 2;  // monomials x^a y^b with a,b <= 2n+1
    auto index = [&](long a, long b) { return a * width + b; };

    auto expand_pn_gen = [&](long i, long j, long eps) {
        // (xy)^i (x+y)^j x^eps = sum_k C(j,k) x^(i+k+eps) y^(i+j-k)
        std::vector<Rational> row(static_cast<size_t>(width * width), Rational(0));
        for (long k = 0; k <= j; ++k)
            row[static_cast<size_t>(index(i + k + eps, i + j - k))] +=
                Rational(binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(k)));
        return row;
    };
    auto monomial_gen = [&](long a, long b) {
        std::vector<Rational> row(static_cast<size_t>(width * width), Rational(0));
        row[static_cast<size_t>(index(a, b))] = 1;
        return row;
    };
    auto rank = [](std::vector<std::vector<Rational>> rows) {
        long r = 0;
        size_t cols = rows.empty() ? 0 : rows[0].size();
        size_t lead = 0;
        for (size_t c = 0; c < cols && lead < rows.size(); ++c) {
            size_t p = lead;
            while (p < rows.size() && rows[p][c] == 0) ++p;
            if (p == rows.size()) continue;
            std::swap(rows[p], rows[lead]);
            for (size_t rr = lead + 1; rr < rows.size(); ++rr) {
                if (rows[rr][c] == 0) continue;
                Rational f = rows[rr][c] / rows[lead][c];
                for (size_t k = c; k < cols; ++k) rows[rr][k] -= f * rows[lead][k];
            }
            ++lead;
            ++r;
        }
        return r;
    };

    auto pn_gens = [&](long level) {
        std::vector<std::vector<Rational>> rows;
        for (long i = 0; i + 0 <= level - 1; ++i)
            for (long j = 0; i + j <= level - 1; ++j)
                for (long eps = 0; eps < 2; ++eps) rows.push_back(expand_pn_gen(i, j, eps));
        return rows;
    };
    auto rect_gens = [&] {
        std::vector<std::vector<Rational>> rows;
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) rows.push_back(monomial_gen(a, b));
        return rows;
    };

    // (1) P_n (x) N is free of rank n(n+1)
    auto pn = pn_gens(n);
    if (rank(pn) != n * (n + 1)) return false;
    // (2) the rectangular module sits inside it: the union adds no rank
    auto un = pn;
    for (auto& g : rect_gens()) un.push_back(g);
    if (rank(un) != n * (n + 1)) return false;
    // (3) P_{n-1} (x) N plus the top row x^i y^(n-1) spans exactly rect_n
    auto small = pn_gens(n - 1);
    long base_rank = rank(small);
    if (base_rank != n * (n - 1)) return false;
    for (long i = 0; i < n; ++i) small.push_back(monomial_gen(i, n - 1));
    if (rank(small) != n * n) return false;
    for (auto& g : rect_gens()) small.push_back(g);
    return rank(small) == n * n;
}

}  // namespace periodgram
