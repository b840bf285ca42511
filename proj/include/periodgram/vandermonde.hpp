#pragma once

// Generalised Vandermonde matrices for a module basis at a point
// configuration, amalgamated matrix products, and the tableau formula for
// the determinant of an amalgam.

#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "periodgram/bases.hpp"
#include "periodgram/rational.hpp"

namespace periodgram {

using PointConfig = std::vector<std::vector<double>>;

template <typename T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

template <typename T>
T eval_monomial(const Monomial& m, const std::vector<T>& point) {
    if (m.exponents.size() != point.size())
        throw DimensionMismatch("monomial arity does not match point dimension");
    T acc(1);
    for (size_t k = 0; k < point.size(); ++k)
        for (long e = 0; e < m.exponents[k]; ++e) acc = acc * point[k];
    if (m.coefficient != 1) {
        if constexpr (std::is_same_v<T, double>)
            acc = acc * m.coefficient.get_d();
        else
            acc = acc * T(m.coefficient);
    }
    return acc;
}

template <typename T>
T det_in_place(Matrix<T>& a) {
    size_t n = a.size();
    T det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        if constexpr (std::is_same_v<T, double>) {
            for (size_t r = c + 1; r < n; ++r)
                if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        } else {
            while (p < n && a[p][c] == 0) ++p;
            if (p == n) return T(0);
        }
        if constexpr (std::is_same_v<T, double>) {
            if (a[p][c] == 0.0) return T(0);
        }
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            T f = a[r][c] / a[c][c];
            if (f == 0) continue;
            for (size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
        }
    }
    return det;
}

}  // namespace detail

// Rows indexed by points, columns by the basis monomials in canonical order.
template <typename T>
Matrix<T> vdm_matrix(const ModuleBasis& basis, const std::vector<std::vector<T>>& points) {
    if (static_cast<long>(points.size()) != basis.rank())
        throw DimensionMismatch("vdm_matrix: need exactly rank(basis) points");
    Matrix<T> m(points.size(), std::vector<T>(points.size(), T(0)));
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = 0; j < points.size(); ++j)
            m[i][j] = detail::eval_monomial(basis.monomials[j], points[i]);
    return m;
}

inline double vdm_det_abs(const ModuleBasis& basis, const PointConfig& z) {
    Matrix<double> m = vdm_matrix(basis, z);
    return std::abs(detail::det_in_place(m));
}

inline Rational vdm_det_exact(const ModuleBasis& basis,
                              const std::vector<std::vector<Rational>>& z) {
    Matrix<Rational> m = vdm_matrix(basis, z);
    return detail::det_in_place(m);
}

// Amalgam A*B: row i is the Kronecker product of row i of A (mn x m) with
// row i of B (mn x n), entries ordered a_1 b_1, ..., a_m b_1, a_1 b_2, ...
template <typename T>
Matrix<T> amalgam(const Matrix<T>& a, const Matrix<T>& b) {
    size_t rows = a.size();
    if (rows == 0 || b.size() != rows) throw ShapeError("amalgam: row counts must match");
    size_t m = a[0].size(), n = b[0].size();
    if (rows != m * n) throw ShapeError("amalgam: need exactly m*n rows");
    Matrix<T> out(rows, std::vector<T>(rows, T(0)));
    for (size_t i = 0; i < rows; ++i) {
        if (a[i].size() != m || b[i].size() != n) throw ShapeError("amalgam: ragged input");
        for (size_t cb = 0; cb < n; ++cb)
            for (size_t ca = 0; ca < m; ++ca) out[i][cb * m + ca] = a[i][ca] * b[i][cb];
    }
    return out;
}

// H_{m,n} = prod_{i=0}^{n-1} (m+i)!/i!
inline Int h_constant(long m, long n) {
    if (m < 1 || n < 1) throw Error("h_constant: need m,n >= 1");
    Int h = 1;
    for (long i = 0; i < n; ++i) {
        Int f = 1;
        for (long k = i + 1; k <= m + i; ++k) f *= k;
        h *= f;
    }
    return h;
}

// det(A*B) = (1/H_{m,n}) sum over permutations sigma of sign(sigma) A_sigma
// B_sigma, where the tableau of shape n^m is filled 1..mn down the columns;
// A_sigma multiplies the m x m minors picked by the permuted columns, and
// B_sigma the n x n minors picked by the permuted rows (row order of the
// tableau orients each minor).
inline Rational amalgam_det_formula(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    size_t rows = a.size();
    if (rows == 0 || b.size() != rows) throw ShapeError("amalgam_det_formula: bad shapes");
    size_t m = a[0].size(), n = b[0].size();
    if (rows != m * n) throw ShapeError("amalgam_det_formula: need m*n rows");
    if (rows > 8) throw SizeLimit("amalgam_det_formula: factorial sum capped at mn <= 8");

    std::vector<size_t> perm(rows);
    for (size_t i = 0; i < rows; ++i) perm[i] = i;

    auto minor_det = [](const Matrix<Rational>& src, const std::vector<size_t>& idx) {
        Matrix<Rational> sub(idx.size());
        for (size_t r = 0; r < idx.size(); ++r) sub[r] = src[idx[r]];
        return detail::det_in_place(sub);
    };

    Rational total(0);
    std::vector<size_t> colpick(m), rowpick(n);
    do {
        // sign of perm
        int sign = 1;
        {
            std::vector<bool> seen(rows, false);
            for (size_t i = 0; i < rows; ++i) {
                if (seen[i]) continue;
                size_t len = 0;
                for (size_t j = i; !seen[j]; j = perm[j]) {
                    seen[j] = true;
                    ++len;
                }
                if (len % 2 == 0) sign = -sign;
            }
        }
        // tableau entry (r, c) holds sigma(c*m + r)
        Rational prod(1);
        for (size_t c = 0; c < n && prod != 0; ++c) {
            for (size_t r = 0; r < m; ++r) colpick[r] = perm[c * m + r];
            prod *= minor_det(a, colpick);
        }
        if (prod != 0) {
            for (size_t r = 0; r < m && prod != 0; ++r) {
                for (size_t c = 0; c < n; ++c) rowpick[c] = perm[c * m + r];
                prod *= minor_det(b, rowpick);
            }
        }
        if (sign < 0) prod = -prod;
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));

    return total / Rational(h_constant(static_cast<long>(m), static_cast<long>(n)));
}

// Per-configuration tensor bound from the amalgam expansion:
// |det V_{N1 (x) N2}(z)| <= ((n1 n2)!/H) max_I |det V_{N1}(z_I)|^(n2)
//                                       max_J |det V_{N2}(z_J)|^(n1).
// Returns false only if a sampled configuration violates the bound; a
// non-free product module reports trivially true (det vanishes).
struct TensorBoundReport {
    bool holds = true;
    bool product_free = true;
    double worst_ratio = 0;  // max over configs of LHS / RHS
};

inline ModuleBasis tensor_product_basis(const ModuleBasis& b1, const ModuleBasis& b2,
                                        bool* free_flag = nullptr) {
    ModuleBasis prod;
    prod.tag = b1.tag + "x" + b2.tag;
    prod.ambient = b1.ambient;
    if (b1.ambient != b2.ambient)
        throw DimensionMismatch("tensor_product_basis: ambient dimensions differ");
    std::set<std::vector<long>> seen;
    bool free = true;
    for (const auto& m2 : b2.monomials)
        for (const auto& m1 : b1.monomials) {
            Monomial m;
            m.exponents.resize(m1.exponents.size());
            for (size_t k = 0; k < m.exponents.size(); ++k)
                m.exponents[k] = m1.exponents[k] + m2.exponents[k];
            if (!seen.insert(m.exponents).second) free = false;
            prod.monomials.push_back(std::move(m));
        }
    if (free_flag) *free_flag = free;
    return prod;
}

inline TensorBoundReport tensor_bound_check(const ModuleBasis& b1, const ModuleBasis& b2,
                                            const std::function<std::vector<double>()>& sample,
                                            long configs) {
    long n1 = b1.rank(), n2 = b2.rank();
    long N = n1 * n2;
    if (N > 9) throw SizeLimit("tensor_bound_check: rank product capped at 9");
    TensorBoundReport rep;
    ModuleBasis prod = tensor_product_basis(b1, b2, &rep.product_free);

    double scale = factorial(static_cast<unsigned long>(N)).get_d() /
                   h_constant(n1, n2).get_d();

    // subsets of {0..N-1} of a given size
    auto subsets = [](long total, long size) {
        std::vector<std::vector<size_t>> out;
        std::vector<size_t> cur;
        std::function<void(long)> rec = [&](long start) {
            if (static_cast<long>(cur.size()) == size) {
                out.push_back(cur);
                return;
            }
            for (long i = start; i < total; ++i) {
                cur.push_back(static_cast<size_t>(i));
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
        return out;
    };
    auto subs1 = subsets(N, n1), subs2 = subsets(N, n2);

    for (long t = 0; t < configs; ++t) {
        PointConfig z;
        for (long i = 0; i < N; ++i) z.push_back(sample());
        double lhs = vdm_det_abs(prod, z);
        auto max_minor = [&](const ModuleBasis& basis, const std::vector<std::vector<size_t>>& ss) {
            double best = 0;
            for (const auto& idx : ss) {
                PointConfig sub;
                for (size_t r : idx) sub.push_back(z[r]);
                best = std::max(best, vdm_det_abs(basis, sub));
            }
            return best;
        };
        double t1 = max_minor(b1, subs1), t2 = max_minor(b2, subs2);
        double rhs = scale * std::pow(t1, static_cast<double>(n2)) *
                     std::pow(t2, static_cast<double>(n1));
        if (rhs == 0) {
            if (lhs > 1e-12) rep.holds = false;
            continue;
        }
        double ratio = lhs / rhs;
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (ratio > 1.0 + 1e-9) rep.holds = false;
    }
    return rep;
}

// Laplace expansion bound for direct sums, checked per configuration:
// |det V_{N1 (+) N2}(z)| <= C(n1+n2, n1) max_I |det V_{N1}(z_I)| max |det V_{N2}(z_J)|.
inline bool directsum_laplace_check(const ModuleBasis& b1, const ModuleBasis& b2,
                                    const std::function<std::vector<double>()>& sample,
                                    long configs) {
    long n1 = b1.rank(), n2 = b2.rank();
    long N = n1 + n2;
    if (N > 12) throw SizeLimit("directsum_laplace_check: rank sum capped at 12");
    ModuleBasis sum;
    sum.ambient = b1.ambient;
    sum.tag = b1.tag + "+" + b2.tag;
    for (const auto& m : b1.monomials) sum.monomials.push_back(m);
    for (const auto& m : b2.monomials) sum.monomials.push_back(m);

    std::vector<std::vector<size_t>> subs;
    {
        std::vector<size_t> cur;
        std::function<void(long)> rec = [&](long start) {
            if (static_cast<long>(cur.size()) == n1) {
                subs.push_back(cur);
                return;
            }
            for (long i = start; i < N; ++i) {
                cur.push_back(static_cast<size_t>(i));
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }
    double comb = binomial(static_cast<unsigned long>(N), static_cast<unsigned long>(n1)).get_d();

    for (long t = 0; t < configs; ++t) {
        PointConfig z;
        for (long i = 0; i < N; ++i) z.push_back(sample());
        double lhs = vdm_det_abs(sum, z);
        double best1 = 0, best2 = 0;
        for (const auto& idx : subs) {
            PointConfig s1;
            for (size_t r : idx) s1.push_back(z[r]);
            best1 = std::max(best1, vdm_det_abs(b1, s1));
        }
        std::vector<std::vector<size_t>> subs2;
        {
            std::vector<size_t> cur;
            std::function<void(long)> rec = [&](long start) {
                if (static_cast<long>(cur.size()) == n2) {
                    subs2.push_back(cur);
                    return;
                }
                for (long i = start; i < N; ++i) {
                    cur.push_back(static_cast<size_t>(i));
                    rec(i + 1);
                    cur.pop_back();
                }
            };
            rec(0);
        }
        for (const auto& idx : subs2) {
            PointConfig s2;
            for (size_t r : idx) s2.push_back(z[r]);
            best2 = std::max(best2, vdm_det_abs(b2, s2));
        }
        if (lhs > comb * best1 * best2 * (1.0 + 1e-9) + 1e-300) return false;
    }
    return true;
}

}  // namespace periodgram
