#pragma once

// Gram matrices of Mellin integrals for a module basis, exact determinants
// as polynomials in xi by evaluation-interpolation, numeric determinants
// with cancellation-aware precision, and the table metrics (d_n, proxy,
// threshold).

#include <random>
#include <vector>

#include "periodgram/bases.hpp"
#include "periodgram/contiguity.hpp"
#include "periodgram/linear_form.hpp"
#include "periodgram/parallel.hpp"
#include "periodgram/quadrature.hpp"

namespace periodgram {

struct GramMatrix {
    Family family = Family::two_param;
    long n = 0;
    ModuleBasis basis;
    std::vector<std::vector<LinearForm>> entries;

    long rank() const { return static_cast<long>(entries.size()); }
    const LinearForm& at(long i, long j) const {
        return entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
};

inline GramMatrix build_gram_from_basis(Family family, ModuleBasis basis) {
    GramMatrix g;
    g.family = family;
    g.n = basis.level;
    long N = basis.rank();
    g.entries.assign(static_cast<size_t>(N), std::vector<LinearForm>(static_cast<size_t>(N)));
    for (long i = 0; i < N; ++i) {
        const Monomial& mi = basis.monomials[static_cast<size_t>(i)];
        for (long j = i; j < N; ++j) {
            const Monomial& mj = basis.monomials[static_cast<size_t>(j)];
            Exp5 s = to_exponent_vector(family, mi) + to_exponent_vector(family, mj);
            LinearForm value = Rational(mi.coefficient * mj.coefficient) * mellin_integral(s);
            g.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] = value;
            g.entries[static_cast<size_t>(j)][static_cast<size_t>(i)] = value;
        }
    }
    g.basis = std::move(basis);
    return g;
}

inline GramMatrix build_gram(Family family, long n) {
    return build_gram_from_basis(family, family_basis(family, n));
}

// Determinant of a rational matrix by Gaussian elimination (in place).
inline Rational rational_det(std::vector<std::vector<Rational>> a) {
    long n = static_cast<long>(a.size());
    Rational det(1);
    for (long c = 0; c < n; ++c) {
        long p = c;
        while (p < n && a[static_cast<size_t>(p)][static_cast<size_t>(c)] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(a[static_cast<size_t>(p)], a[static_cast<size_t>(c)]);
            det = -det;
        }
        const Rational& pv = a[static_cast<size_t>(c)][static_cast<size_t>(c)];
        det *= pv;
        for (long r = c + 1; r < n; ++r) {
            Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] / pv;
            if (f == 0) continue;
            for (long k = c; k < n; ++k)
                a[static_cast<size_t>(r)][static_cast<size_t>(k)] -=
                    f * a[static_cast<size_t>(c)][static_cast<size_t>(k)];
        }
    }
    return det;
}

// Exact determinant as a polynomial in xi: substitute xi -> t_k for the
// N+1 nodes t_k = k, take plain rational determinants, Lagrange-interpolate.
inline XiPolynomial det_exact(const GramMatrix& g, long exact_limit = 40, int workers = 1) {
    long N = g.rank();
    if (N > exact_limit)
        throw ExactLimitExceeded("det_exact: rank " + std::to_string(N) + " above limit " +
                                 std::to_string(exact_limit));
    if (N == 0) return XiPolynomial(Rational(1));
    long nodes = N + 1;
    std::vector<Rational> values(static_cast<size_t>(nodes));
    parallel_for(nodes, workers, [&](long k) {
        std::vector<std::vector<Rational>> a(static_cast<size_t>(N),
                                             std::vector<Rational>(static_cast<size_t>(N)));
        Rational t(k);
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) {
                const LinearForm& e = g.at(i, j);
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    e.const_part + t * e.xi_part;
            }
        values[static_cast<size_t>(k)] = rational_det(std::move(a));
    });

    // Lagrange interpolation through (k, values[k]), k = 0..N
    std::vector<Rational> poly(static_cast<size_t>(nodes), Rational(0));
    for (long k = 0; k < nodes; ++k) {
        // numerator prod_{m != k} (x - m), denominator prod_{m != k} (k - m)
        std::vector<Rational> num{Rational(1)};
        Rational den(1);
        for (long m = 0; m < nodes; ++m) {
            if (m == k) continue;
            std::vector<Rational> next(num.size() + 1, Rational(0));
            for (size_t d = 0; d < num.size(); ++d) {
                next[d + 1] += num[d];
                next[d] -= Rational(m) * num[d];
            }
            num = std::move(next);
            den *= Rational(k - m);
        }
        Rational scale = values[static_cast<size_t>(k)] / den;
        for (size_t d = 0; d < num.size(); ++d) poly[d] += scale * num[d];
    }
    return XiPolynomial(std::move(poly));
}

// Numeric determinant at zeta(2) with partial pivoting. Working precision
// starts at max(50, requested) and doubles whenever the result magnitude
// drops below 10^(-digits/2), i.e. when cancellation ate half the digits.
inline Real det_numeric_direct(const GramMatrix& g, int precision, int digit_cap = 20000) {
    long N = g.rank();
    for (int digits = std::max(50, precision);; digits *= 2) {
        if (digits > digit_cap)
            throw PrecisionExhausted("det_numeric_direct: precision doubling exceeded cap");
        Real z = zeta2(digits);
        std::vector<std::vector<Real>> a(static_cast<size_t>(N),
                                         std::vector<Real>(static_cast<size_t>(N), Real(digits)));
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) {
                const LinearForm& e = g.at(i, j);
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    Real::of(e.const_part, digits) + Real::of(e.xi_part, digits) * z;
            }
        Real det = Real::of(1L, digits);
        bool singular = false;
        for (long c = 0; c < N && !singular; ++c) {
            long p = c;
            for (long r = c + 1; r < N; ++r)
                if (abs(a[static_cast<size_t>(r)][static_cast<size_t>(c)]) >
                    abs(a[static_cast<size_t>(p)][static_cast<size_t>(c)]))
                    p = r;
            if (a[static_cast<size_t>(p)][static_cast<size_t>(c)].is_zero()) {
                singular = true;
                break;
            }
            if (p != c) {
                std::swap(a[static_cast<size_t>(p)], a[static_cast<size_t>(c)]);
                det = -det;
            }
            Real pv = a[static_cast<size_t>(c)][static_cast<size_t>(c)];
            det *= pv;
            for (long r = c + 1; r < N; ++r) {
                Real f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] / pv;
                for (long k = c; k < N; ++k)
                    a[static_cast<size_t>(r)][static_cast<size_t>(k)] -=
                        f * a[static_cast<size_t>(c)][static_cast<size_t>(k)];
            }
        }
        if (!singular && !det.is_zero()) {
            Real threshold = Real::of("1e-" + std::to_string(digits / 2), 20);
            if (abs(det) >= threshold) return det.at_precision(std::min(digits, precision));
        }
    }
}

// Evaluate an exact determinant polynomial at zeta(2) under the same
// cancellation-triggered doubling schedule.
inline Real det_numeric_from_poly(const XiPolynomial& p, int precision, int digit_cap = 20000) {
    if (p.is_zero()) return Real(precision);
    for (int digits = std::max(50, precision);; digits *= 2) {
        if (digits > digit_cap)
            throw PrecisionExhausted("det_numeric_from_poly: precision doubling exceeded cap");
        Real v = eval_xi(p, digits);
        Real threshold = Real::of("1e-" + std::to_string(digits / 2), 20);
        if (!v.is_zero() && abs(v) >= threshold) return v.at_precision(std::min(digits, precision));
    }
}

// scalar * prod(factors) == p, exactly.
inline bool verify_factorization(const XiPolynomial& p, const std::vector<XiPolynomial>& factors,
                                 const Rational& scalar) {
    XiPolynomial prod{scalar};
    for (const auto& f : factors) prod = prod * f;
    return prod == p;
}

struct GramReport {
    Family family = Family::two_param;
    long n = 0;
    long rank = 0;
    Int e_n = 0;
    bool exact = false;            // det_poly/d_n from the exact determinant
    XiPolynomial det_poly;         // empty when !exact
    Real det_numeric{50};
    IntFactorization d_n;          // denominator (exact) or row-lcm estimate
    bool d_n_estimated = false;
    Real proxy{50};                // det^(1/e_n)
    Real log_d_per_e{50};
    Real product{50};              // proxy * d^(1/e)
    Real threshold{50};            // -log det / log d_n
};

// Row-lcm denominator estimate (the fallback the tables flag as estimated).
inline Int row_lcm_denominator(const GramMatrix& g) {
    Int delta = 1;
    for (const auto& row : g.entries) {
        Int rowlcm = 1;
        for (const auto& e : row) {
            rowlcm = lcm(rowlcm, e.const_part.get_den());
            rowlcm = lcm(rowlcm, e.xi_part.get_den());
        }
        delta *= rowlcm;
    }
    return delta;
}

inline GramReport report(Family family, long n, int precision = 50, long exact_limit = 40,
                         int workers = 1) {
    GramMatrix g = build_gram(family, n);
    GramReport r;
    r.family = family;
    r.n = n;
    r.rank = g.rank();
    r.e_n = g.basis.exponent_value;
    Int d_value;
    try {
        r.det_poly = det_exact(g, exact_limit, workers);
        r.exact = true;
        r.d_n = denominator_lcm(r.det_poly);
        d_value = r.d_n.value();
        r.det_numeric = det_numeric_from_poly(r.det_poly, precision);
    } catch (const ExactLimitExceeded&) {
        r.exact = false;
        r.d_n = factorize(row_lcm_denominator(g));
        r.d_n_estimated = true;
        d_value = r.d_n.value();
        r.det_numeric = det_numeric_direct(g, precision);
    }
    int wd = std::max(50, precision);
    Real det = abs(r.det_numeric).at_precision(wd);
    if (r.e_n > 0) {
        Real e = Real::of(r.e_n, wd);
        r.proxy = exp(log(det) / e);
        r.log_d_per_e = log(Real::of(d_value, wd)) / e;
        r.product = r.proxy * exp(r.log_d_per_e);
    }
    if (d_value > 1) r.threshold = -log(det) / log(Real::of(d_value, wd));
    return r;
}

// Numeric Cholesky at zeta(2); true iff every pivot stays above
// 10^(-precision/2).
inline bool positivity_check(const GramMatrix& g, int precision = 50) {
    long N = g.rank();
    int digits = std::max(50, precision);
    Real z = zeta2(digits);
    std::vector<std::vector<Real>> a(static_cast<size_t>(N),
                                     std::vector<Real>(static_cast<size_t>(N), Real(digits)));
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) {
            const LinearForm& e = g.at(i, j);
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                Real::of(e.const_part, digits) + Real::of(e.xi_part, digits) * z;
        }
    Real floor = Real::of("1e-" + std::to_string(precision / 2), 20);
    std::vector<std::vector<Real>> l(static_cast<size_t>(N),
                                     std::vector<Real>(static_cast<size_t>(N), Real(digits)));
    for (long j = 0; j < N; ++j) {
        Real diag = a[static_cast<size_t>(j)][static_cast<size_t>(j)];
        for (long k = 0; k < j; ++k)
            diag -= l[static_cast<size_t>(j)][static_cast<size_t>(k)] *
                    l[static_cast<size_t>(j)][static_cast<size_t>(k)];
        if (!(diag > floor * floor)) return false;
        Real root_d = sqrt(diag);
        l[static_cast<size_t>(j)][static_cast<size_t>(j)] = root_d;
        for (long i = j + 1; i < N; ++i) {
            Real v = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (long k = 0; k < j; ++k)
                v -= l[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                     l[static_cast<size_t>(j)][static_cast<size_t>(k)];
            l[static_cast<size_t>(i)][static_cast<size_t>(j)] = v / root_d;
        }
    }
    return true;
}

struct MonteCarloResult {
    double estimate = 0;
    double standard_error = 0;
    double reference = 0;
    double relative_deviation = 0;
    double deviation_in_sigma = 0;
};

namespace detail {

// Sample (x, y) with density omega/zeta(2) = 1/(zeta(2)(1-xy)) on (0,1)^2:
// pick K with P(K = k) = 1/((k+1)^2 zeta(2)), then x, y ~ Beta(k+1, 1).
class OmegaSampler {
public:
    explicit OmegaSampler(uint64_t seed) : rng_(seed) {
        double acc = 0;
        cumulative_.reserve(table_size_);
        for (long j = 1; j <= table_size_; ++j) {
            acc += 1.0 / (static_cast<double>(j) * static_cast<double>(j));
            cumulative_.push_back(acc);
        }
        total_ = 1.6449340668482264;
    }

    std::pair<double, double> draw() {
        long j = draw_index();
        double inv = 1.0 / static_cast<double>(j);
        double x = std::pow(uniform(), inv);
        double y = std::pow(uniform(), inv);
        return {x, y};
    }

private:
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

    long draw_index() {  // returns j = k+1 >= 1 with P ~ 1/j^2
        double u = uniform() * total_;
        if (u < cumulative_.back()) {
            auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
            return static_cast<long>(it - cumulative_.begin()) + 1;
        }
        // tail j > table_size_: propose floor of a Pareto, accept with (j+1)/(2j)
        for (;;) {
            double y = static_cast<double>(table_size_) / uniform();
            double fj = std::floor(y);
            if (fj < static_cast<double>(table_size_ + 1) || fj > 9e15) continue;
            long j = static_cast<long>(fj);
            if (uniform() <= static_cast<double>(j + 1) / (2.0 * static_cast<double>(j)))
                return j;
        }
    }

    static constexpr long table_size_ = 4096;
    std::mt19937_64 rng_;
    std::vector<double> cumulative_;
    double total_;
};

inline double det_double(std::vector<std::vector<double>>& a) {
    size_t n = a.size();
    double det = 1.0;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (a[p][c] == 0.0) return 0.0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

}  // namespace detail

// Monte Carlo check of det Q = (1/N!) int over sigma^N of (det V)^2 w^N:
// with z_i drawn from omega/zeta(2), det Q = zeta(2)^N/N! * E[(det V)^2].
inline MonteCarloResult montecarlo_det_identity(Family family, long n, long samples,
                                                uint64_t seed = 1, int workers = 1) {
    ModuleBasis basis = family_basis(family, n);
    long N = basis.rank();
    if (N > 9) throw SizeLimit("montecarlo_det_identity: rank capped at 9");
    GramMatrix g = build_gram(family, n);
    double reference = det_numeric_from_poly(det_exact(g), 50).to_double();

    // evaluate a basis monomial at a sample point via the dihedral coordinates
    auto eval = [&](const Monomial& m, double x, double y) {
        Exp5 s = to_exponent_vector(family, m);
        double omx = 1.0 - x, omy = 1.0 - y;
        double t = omx + x * omy;
        return ipow(x, s[0]) * ipow(omx / t, s[1]) * ipow(omy / t, s[2]) * ipow(y, s[3]) *
               ipow(t, s[4]);
    };

    int threads = std::max(1, workers);
    std::vector<double> sums(static_cast<size_t>(threads), 0.0);
    std::vector<double> sums2(static_cast<size_t>(threads), 0.0);
    long per = samples / threads;
    parallel_for(threads, threads, [&](long w) {
        detail::OmegaSampler sampler(seed + static_cast<uint64_t>(w) * 7919);
        std::vector<std::vector<double>> v(static_cast<size_t>(N),
                                           std::vector<double>(static_cast<size_t>(N)));
        double s1 = 0, s2 = 0;
        for (long it = 0; it < per; ++it) {
            for (long i = 0; i < N; ++i) {
                auto [x, y] = sampler.draw();
                for (long j = 0; j < N; ++j)
                    v[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        eval(basis.monomials[static_cast<size_t>(j)], x, y);
            }
            double d = detail::det_double(v);
            double d2 = d * d;
            s1 += d2;
            s2 += d2 * d2;
        }
        sums[static_cast<size_t>(w)] = s1;
        sums2[static_cast<size_t>(w)] = s2;
    });
    double total = 0, total2 = 0;
    for (double s : sums) total += s;
    for (double s : sums2) total2 += s;
    long m = per * threads;
    double mean = total / static_cast<double>(m);
    double var = std::max(0.0, total2 / static_cast<double>(m) - mean * mean);
    double se_mean = std::sqrt(var / static_cast<double>(m));

    double scale = std::pow(1.6449340668482264, static_cast<double>(N));
    for (long k = 2; k <= N; ++k) scale /= static_cast<double>(k);
    MonteCarloResult r;
    r.estimate = scale * mean;
    r.standard_error = scale * se_mean;
    r.reference = reference;
    r.relative_deviation = std::abs(r.estimate - reference) / std::abs(reference);
    r.deviation_in_sigma =
        r.standard_error > 0 ? std::abs(r.estimate - reference) / r.standard_error : 0.0;
    return r;
}

}  // namespace periodgram
