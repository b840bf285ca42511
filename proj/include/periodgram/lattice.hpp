#pragma once

// Integerization of Gram matrices (diagonal clearing of denominators),
// denominator accounting, and Minkowski extraction of small linear forms
// (exhaustive for small rank, LLL-reduced for larger rank).

#include <vector>

#include "periodgram/gram.hpp"

namespace periodgram {

struct IntegerLinearForm {
    Int const_part = 0;
    Int xi_part = 0;
    bool is_zero() const { return const_part == 0 && xi_part == 0; }
};

struct IntegerizedGram {
    std::vector<Int> d_left;        // row multipliers (lcm of denominators)
    std::vector<Rational> d_right;  // column multipliers (1/gcd of coefficients)
    std::vector<std::vector<IntegerLinearForm>> a_tilde;
    Rational delta = 1;             // |det D_l * det D_r|
    IntFactorization delta_num;
    IntFactorization delta_den;
    XiPolynomial det_poly;          // exact det of the underlying Q, if available
    Real det_numeric{50};

    long rank() const { return static_cast<long>(a_tilde.size()); }
};

inline IntegerizedGram integerize(const GramMatrix& g, int precision = 50,
                                  long exact_limit = 40, int workers = 1) {
    long N = g.rank();
    IntegerizedGram ig;
    ig.d_left.resize(static_cast<size_t>(N));
    ig.d_right.assign(static_cast<size_t>(N), Rational(1));
    ig.a_tilde.assign(static_cast<size_t>(N),
                      std::vector<IntegerLinearForm>(static_cast<size_t>(N)));

    for (long i = 0; i < N; ++i) {
        Int rowlcm = 1;
        for (long j = 0; j < N; ++j) {
            rowlcm = lcm(rowlcm, g.at(i, j).const_part.get_den());
            rowlcm = lcm(rowlcm, g.at(i, j).xi_part.get_den());
        }
        ig.d_left[static_cast<size_t>(i)] = rowlcm;
        for (long j = 0; j < N; ++j) {
            Rational c = Rational(rowlcm) * g.at(i, j).const_part;
            Rational x = Rational(rowlcm) * g.at(i, j).xi_part;
            ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)] = {c.get_num(),
                                                                          x.get_num()};
        }
    }
    for (long j = 0; j < N; ++j) {
        Int g_col = 0;
        for (long i = 0; i < N; ++i) {
            g_col = gcd(g_col, ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)].const_part);
            g_col = gcd(g_col, ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)].xi_part);
        }
        if (g_col > 1) {
            ig.d_right[static_cast<size_t>(j)] = make_rational(Int(1), g_col);
            for (long i = 0; i < N; ++i) {
                ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)].const_part /= g_col;
                ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)].xi_part /= g_col;
            }
        }
    }
    ig.delta = 1;
    for (const Int& d : ig.d_left) ig.delta *= Rational(d);
    for (const Rational& d : ig.d_right) ig.delta *= d;
    if (ig.delta < 0) ig.delta = -ig.delta;
    ig.delta_num = factorize(ig.delta.get_num());
    ig.delta_den = factorize(ig.delta.get_den());

    try {
        ig.det_poly = det_exact(g, exact_limit, workers);
        ig.det_numeric = det_numeric_from_poly(ig.det_poly, precision);
    } catch (const ExactLimitExceeded&) {
        ig.det_numeric = det_numeric_direct(g, precision);
    }
    return ig;
}

// d_{m1} d_{m2} for the two successive maxima of the pole vector (clamped
// at zero): this clears the denominator of I(s).
inline Int pole_denominator_bound(const Exp5& s) {
    Exp5 p = pole_vector(s);
    std::sort(p.begin(), p.end());
    long m1 = std::max(0L, p[4]);
    long m2 = std::max(0L, p[3]);
    return lcm_consecutive(m1) * lcm_consecutive(m2);
}

// Every Gram entry of the family at level n, multiplied by its pole
// denominator bound, must have integer coefficients.
inline bool verify_denominator(Family family, long n, Exp5* violating = nullptr) {
    ModuleBasis basis = family_basis(family, n);
    long N = basis.rank();
    for (long i = 0; i < N; ++i)
        for (long j = i; j < N; ++j) {
            Exp5 s = to_exponent_vector(family, basis.monomials[static_cast<size_t>(i)]) +
                     to_exponent_vector(family, basis.monomials[static_cast<size_t>(j)]);
            LinearForm f = mellin_integral(s);
            Rational d{pole_denominator_bound(s)};
            if (Rational(d * f.const_part).get_den() != 1 || Rational(d * f.xi_part).get_den() != 1) {
                if (violating) *violating = s;
                return false;
            }
        }
    return true;
}

// Asymptotic limits of log delta^(1/e) for the denominator constructions.
enum class DenominatorModel { rectangular, g_basis_two_param, five_param };

struct DenominatorAsymptotics {
    Rational limit_log;   // exact value of the limit
    std::string formula;
};

// rectangular model: (2w/r)(2r+1)/(r+1); the improved g-basis two-parameter
// bound 19/12 + 29/18 = 115/36; the five-parameter row-lcm bound 19/4.
inline DenominatorAsymptotics denominator_asymptotics(DenominatorModel model, long r = 0,
                                                      long w = 0) {
    DenominatorAsymptotics out;
    switch (model) {
        case DenominatorModel::rectangular:
            if (r < 1) throw Error("denominator_asymptotics: rectangular model needs r >= 1");
            out.limit_log = make_rational(2 * w * (2 * r + 1), r * (r + 1));
            out.formula = "(2w/r)(2r+1)/(r+1)";
            return out;
        case DenominatorModel::g_basis_two_param:
            out.limit_log = make_rational(19, 12) + make_rational(29, 18);
            out.formula = "19/12 + 29/18";
            return out;
        case DenominatorModel::five_param:
            out.limit_log = make_rational(19, 4);
            out.formula = "5(5/6 + 3/4)/(5/3)";
            return out;
    }
    throw Error("denominator_asymptotics: unreachable");
}

// Discrete sums whose n^3-normalized limits justify the g-basis constant:
// sum max{a+n, b-a+n} ~ 19/12 n^3 and sum max{b+n, a-b/2+n} ~ 29/18 n^3.
inline std::pair<double, double> g_basis_denominator_sums(long n) {
    double s1 = 0, s2 = 0;
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            s1 += static_cast<double>(std::max(a + n, b - a + n));
            s2 += std::max(static_cast<double>(b + n),
                           static_cast<double>(a + n) - static_cast<double>(b) / 2.0);
        }
    double n3 = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
    return {s1 / n3, s2 / n3};
}

struct SmallForm {
    std::vector<Int> c;
    long row = -1;
    LinearForm value;
    Real numeric{50};
    Real bound{50};   // |det A~|^(1/N)
    double slack = 0; // |numeric| / bound
    std::string method;  // "exhaustive" or "lll"
};

namespace detail {

// Exact-arithmetic LLL (delta = 0.99) on the columns of an integer matrix;
// returns the transformation columns (the reduced basis is B * U).
inline std::vector<std::vector<Int>> lll_reduce(std::vector<std::vector<Int>> basis) {
    // basis[j] is the j-th lattice vector
    size_t n = basis.size();
    auto dotzz = [](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int s = 0;
        for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
        return s;
    };

    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> norm2(n, Rational(0));  // squared lengths of GS vectors

    auto gram_schmidt = [&] {
        std::vector<std::vector<Rational>> gs(n);
        for (size_t i = 0; i < n; ++i) {
            gs[i].assign(basis[i].size(), Rational(0));
            for (size_t k = 0; k < basis[i].size(); ++k) gs[i][k] = Rational(basis[i][k]);
            for (size_t j = 0; j < i; ++j) {
                Rational num(0);
                for (size_t k = 0; k < basis[i].size(); ++k)
                    num += Rational(basis[i][k]) * gs[j][k];
                mu[i][j] = norm2[j] == 0 ? Rational(0) : num / norm2[j];
                for (size_t k = 0; k < gs[i].size(); ++k) gs[i][k] -= mu[i][j] * gs[j][k];
            }
            norm2[i] = Rational(0);
            for (size_t k = 0; k < gs[i].size(); ++k) norm2[i] += gs[i][k] * gs[i][k];
        }
    };

    gram_schmidt();
    const Rational delta = make_rational(99, 100);
    size_t k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 100000) throw Error("lll_reduce: iteration guard tripped");
        for (size_t j = k; j-- > 0;) {
            Rational r = mu[k][j];
            Int q;
            // nearest integer to r
            Int num = r.get_num(), den = r.get_den();
            Int twice = 2 * num;
            mpz_fdiv_q(q.get_mpz_t(), Int(twice + den).get_mpz_t(), Int(2 * den).get_mpz_t());
            if (q != 0)
                for (size_t t = 0; t < basis[k].size(); ++t) basis[k][t] -= q * basis[j][t];
        }
        gram_schmidt();
        Rational lhs = norm2[k];
        Rational rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            gram_schmidt();
            k = k > 1 ? k - 1 : 1;
        }
    }
    (void)dotzz;
    return basis;
}

}  // namespace detail

// Minkowski extraction: a nonzero integer combination of the columns with a
// small value at zeta(2). Exhaustive minimax over |c_j| <= 8 for N <= 6;
// otherwise LLL over the real matrix embedded at scale 10^(precision/2).
inline SmallForm extract_small_form(const IntegerizedGram& ig, int precision = 50) {
    long N = ig.rank();
    if (N == 0) throw Error("extract_small_form: empty matrix");
    if (ig.det_numeric.is_zero()) throw Error("extract_small_form: det = 0");
    int digits = std::max(50, precision);
    Real z = zeta2(digits);

    // numeric matrix and |det|^(1/N) bound
    std::vector<std::vector<double>> a(static_cast<size_t>(N),
                                       std::vector<double>(static_cast<size_t>(N)));
    double zd = z.to_double();
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) {
            const auto& e = ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)];
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                e.const_part.get_d() + e.xi_part.get_d() * zd;
        }
    Real det_at = abs(ig.det_numeric) * Real::of(ig.delta, digits);
    Real bound = root(det_at, static_cast<unsigned long>(N));

    SmallForm best;
    best.bound = bound;

    auto evaluate_c = [&](const std::vector<Int>& c) {
        // exact row values, pick the row with the smallest nonzero |value|
        SmallForm cand;
        cand.c = c;
        cand.bound = bound;
        Real best_abs(digits);
        bool found = false;
        for (long i = 0; i < N; ++i) {
            IntegerLinearForm acc;
            for (long j = 0; j < N; ++j) {
                const auto& e = ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)];
                acc.const_part += e.const_part * c[static_cast<size_t>(j)];
                acc.xi_part += e.xi_part * c[static_cast<size_t>(j)];
            }
            if (acc.is_zero()) continue;
            Real v = Real::of(acc.const_part, digits) + Real::of(acc.xi_part, digits) * z;
            if (!found || abs(v) < best_abs) {
                found = true;
                best_abs = abs(v);
                cand.row = i;
                cand.value = LinearForm{Rational(acc.const_part), Rational(acc.xi_part)};
                cand.numeric = v;
            }
        }
        if (!found) throw AllZero("extract_small_form: A~c = 0 for nonzero c");
        return cand;
    };

    if (N <= 6) {
        // minimize the max-norm of A~ c over the box |c_j| <= 8 (in doubles);
        // ties prefer the smaller |c|_1; the winner is evaluated exactly
        std::vector<long> c(static_cast<size_t>(N), -8);
        std::vector<long> best_c;
        double best_minimax = 1e300;
        long best_l1 = 0;
        auto canonical = [](std::vector<long> v) {
            for (long x : v)
                if (x != 0) {
                    if (x < 0)
                        for (long& w : v) w = -w;
                    break;
                }
            return v;
        };
        for (;;) {
            long l1 = 0;
            for (long v : c) l1 += std::abs(v);
            if (l1 != 0) {
                double cutoff = best_minimax * (1 + 1e-12) + 1e-300;
                double maxrow = 0;
                for (long i = 0; i < N && maxrow < cutoff; ++i) {
                    double acc = 0;
                    for (long j = 0; j < N; ++j)
                        acc += a[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                               static_cast<double>(c[static_cast<size_t>(j)]);
                    maxrow = std::max(maxrow, std::abs(acc));
                }
                bool better = maxrow < best_minimax * (1 - 1e-12);
                bool tie = !better && maxrow <= best_minimax * (1 + 1e-12) &&
                           (l1 < best_l1 ||
                            (l1 == best_l1 && canonical(c) > canonical(best_c)));
                if (better || tie || best_c.empty()) {
                    best_minimax = std::min(best_minimax, maxrow);
                    best_l1 = l1;
                    best_c.assign(c.begin(), c.end());
                }
            }
            long k = 0;
            while (k < N && c[static_cast<size_t>(k)] == 8) {
                c[static_cast<size_t>(k)] = -8;
                ++k;
            }
            if (k == N) break;
            ++c[static_cast<size_t>(k)];
        }
        best_c = canonical(best_c);
        std::vector<Int> ci;
        for (long v : best_c) ci.emplace_back(v);
        best = evaluate_c(ci);
        best.method = "exhaustive";
    } else {
        // scale, round, reduce columns, track the transformation via an
        // identity block appended below the embedding
        Int scale = 1;
        for (int k = 0; k < precision / 2; ++k) scale *= 10;
        size_t rows = static_cast<size_t>(N);
        std::vector<std::vector<Int>> cols(static_cast<size_t>(N));
        Real rs = Real::of(scale, digits);
        for (long j = 0; j < N; ++j) {
            std::vector<Int> col(rows + static_cast<size_t>(N), Int(0));
            for (long i = 0; i < N; ++i) {
                const auto& e = ig.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)];
                Real v = (Real::of(e.const_part, digits) + Real::of(e.xi_part, digits) * z) * rs;
                mpfr_get_z(col[static_cast<size_t>(i)].get_mpz_t(), v.raw(), MPFR_RNDN);
            }
            col[rows + static_cast<size_t>(j)] = 1;  // carries the coefficients
            cols[static_cast<size_t>(j)] = std::move(col);
        }
        auto reduced = detail::lll_reduce(std::move(cols));
        // shortest reduced vector by the embedded part
        size_t pick = 0;
        Real best_norm(digits);
        bool first = true;
        for (size_t j = 0; j < reduced.size(); ++j) {
            Real norm(digits);
            for (size_t i = 0; i < rows; ++i) {
                Real v = Real::of(reduced[j][i], digits);
                norm += v * v;
            }
            bool zero = true;
            for (size_t i = 0; i < static_cast<size_t>(N); ++i)
                zero = zero && reduced[j][rows + i] == 0;
            if (zero) continue;
            if (first || norm < best_norm) {
                first = false;
                best_norm = norm;
                pick = j;
            }
        }
        std::vector<Int> ci(reduced[pick].begin() + static_cast<long>(rows),
                            reduced[pick].end());
        best = evaluate_c(ci);
        best.method = "lll";
    }

    best.slack = (abs(best.numeric) / bound).to_double();
    return best;
}

// The sequence d_n |det Q_n| that must tend to zero for irrationality.
inline std::vector<std::pair<long, Real>> det_criterion_series(Family family, long n_max,
                                                               int precision = 50,
                                                               long exact_limit = 40,
                                                               int workers = 1) {
    std::vector<std::pair<long, Real>> out;
    for (long n = family == Family::two_param ? 2 : 1; n <= n_max; ++n) {
        GramReport r = report(family, n, precision, exact_limit, workers);
        Real scaled = abs(r.det_numeric) * Real::of(r.d_n.value(), std::max(50, precision));
        out.emplace_back(n, scaled);
    }
    return out;
}

}  // namespace periodgram
