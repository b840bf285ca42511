#pragma once

// Filtered Z-module bases: rectangular and homogeneous monomial modules on
// affine space, and the module families living on the five dihedral
// coordinates (two-parameter, two-copies, five-parameter).

#include <string>
#include <vector>

#include "periodgram/exponents.hpp"
#include "periodgram/rational.hpp"

namespace periodgram {

// Monomial in r ambient variables, with an optional integer coefficient.
struct Monomial {
    std::vector<long> exponents;
    Int coefficient = 1;

    long total_degree() const {
        long d = 0;
        for (long e : exponents) d += e;
        return d;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exponents == b.exponents && a.coefficient == b.coefficient;
    }
};

enum class Family { one_param, two_param, two_copies, five_param };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::one_param: return "one_param";
        case Family::two_param: return "two_param";
        case Family::two_copies: return "two_copies";
        case Family::five_param: return "five_param";
    }
    return "?";
}

inline Family family_from_name(const std::string& name) {
    if (name == "one_param") return Family::one_param;
    if (name == "two_param") return Family::two_param;
    if (name == "two_copies") return Family::two_copies;
    if (name == "five_param") return Family::five_param;
    throw Error("unknown family '" + name + "'");
}

struct ModuleBasis {
    std::string tag;      // family or construction name
    long level = 0;       // filtration level n
    long ambient = 0;     // number of ambient variables
    std::vector<Monomial> monomials;
    Int exponent_value = 0;  // e_n

    long rank() const { return static_cast<long>(monomials.size()); }
    Int degree_sum() const {
        Int d = 0;
        for (const auto& m : monomials) d += m.total_degree();
        return d;
    }
};

namespace detail {

// Canonical order: graded by total degree, lexicographically largest
// exponent tuple first within a degree (matches the displayed matrices).
inline bool graded_order(const Monomial& a, const Monomial& b) {
    long da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a.exponents > b.exponents;
}

}  // namespace detail

// All monomials with exponent of x_i strictly below n_i, in tensor order
// (first variable fastest); rank n1...nr, degree (n1...nr/2)(sum n_i - r).
inline ModuleBasis rectangular_basis(const std::vector<long>& bounds) {
    for (long n : bounds)
        if (n < 1) throw Error("rectangular_basis: all n_i must be >= 1");
    ModuleBasis b;
    b.tag = "rectangular";
    b.ambient = static_cast<long>(bounds.size());
    long rank = 1;
    for (long n : bounds) rank *= n;
    b.level = bounds.empty() ? 0 : bounds[0];
    for (long idx = 0; idx < rank; ++idx) {
        Monomial m;
        long rem = idx;
        for (long n : bounds) {
            m.exponents.push_back(rem % n);
            rem /= n;
        }
        b.monomials.push_back(std::move(m));
    }
    Int prod = 1;
    long sum = 0;
    for (long n : bounds) {
        prod *= n;
        sum += n - 1;
    }
    b.exponent_value = prod * Int(sum) / 2;
    return b;
}

// All monomials of total degree < n in r variables; rank C(n+r-1, r),
// degree r*C(n+r-1, r+1).
inline ModuleBasis homogeneous_basis(long n, long r) {
    if (n < 1 || r < 1) throw Error("homogeneous_basis: need n >= 1 and r >= 1");
    ModuleBasis b;
    b.tag = "homogeneous";
    b.level = n;
    b.ambient = r;
    std::vector<long> exps(static_cast<size_t>(r), 0);
    // enumerate all tuples with sum < n
    for (;;) {
        Monomial m;
        m.exponents = exps;
        b.monomials.push_back(std::move(m));
        long i = 0;
        for (; i < r; ++i) {
            ++exps[static_cast<size_t>(i)];
            long total = 0;
            for (long e : exps) total += e;
            if (total < n) break;
            exps[static_cast<size_t>(i)] = 0;
        }
        if (i == r) break;
    }
    std::sort(b.monomials.begin(), b.monomials.end(), detail::graded_order);
    b.exponent_value = Int(r) * binomial(static_cast<unsigned long>(n + r - 1),
                                         static_cast<unsigned long>(r + 1));
    return b;
}

// Basis ofM_n on the five dihedral coordinates: 1 plus u_i^a u_{i+1}^b for
// a >= 1, b >= 0, a+b <= n; e_n = (5/6) n(n+1)(2n+1).
inline ModuleBasis m05_basis(long n) {
    if (n < 0) throw Error("m05_basis: n must be >= 0");
    ModuleBasis b;
    b.tag = "five_param";
    b.level = n;
    b.ambient = 5;
    b.monomials.push_back(Monomial{{0, 0, 0, 0, 0}, 1});
    for (int i = 0; i < 5; ++i)
        for (long a = 1; a <= n; ++a)
            for (long bb = 0; a + bb <= n; ++bb) {
                Monomial m;
                m.exponents = {0, 0, 0, 0, 0};
                m.exponents[static_cast<size_t>(i)] = a;
                m.exponents[static_cast<size_t>((i + 1) % 5)] += bb;
                b.monomials.push_back(std::move(m));
            }
    std::sort(b.monomials.begin(), b.monomials.end(), detail::graded_order);
    b.exponent_value = Int(5) * Int(n) * Int(n + 1) * Int(2 * n + 1) / 6;
    return b;
}

// Graded increments of the m05 filtration match (1+3t+t^2)/(1-t)^2.
inline bool poincare_check(long max_n) {
    if (max_n > 12) throw Error("poincare_check: max_n capped at 12");
    // series coefficients: c_0 = 1, c_k = 5k for k >= 1
    std::vector<long> counts(static_cast<size_t>(max_n) + 1, 0);
    ModuleBasis top = m05_basis(max_n);
    for (const auto& m : top.monomials) ++counts[static_cast<size_t>(m.total_degree())];
    if (counts[0] != 1) return false;
    for (long k = 1; k <= max_n; ++k)
        if (counts[static_cast<size_t>(k)] != 5 * k) return false;
    return true;
}

// Two-parameter family: monomials f1^i f2^j, 0 <= i,j < n, in the variables
// (f1, f2); rank n^2, e_n = n^2(n-1).
inline ModuleBasis two_param_basis(long n) {
    ModuleBasis b = rectangular_basis({n, n});
    b.tag = "two_param";
    b.level = n;
    Int nn(n);
    b.exponent_value = nn * nn * Int(n - 1);
    return b;
}

// Direct sum M_n + u1*M_n; the third exponent slot marks the u1 factor.
// rank 2n^2, e_n = 2n^2(n-1) (defined as exactly double the two-parameter
// exponent; the extra u1 degrees are asymptotically negligible).
inline ModuleBasis two_copies_basis(long n) {
    if (n < 1) throw Error("two_copies_basis: n must be >= 1");
    ModuleBasis b;
    b.tag = "two_copies";
    b.level = n;
    b.ambient = 3;  // (f1, f2, u1)
    ModuleBasis rect = two_param_basis(n);
    for (int copy = 0; copy < 2; ++copy)
        for (const auto& m : rect.monomials) {
            Monomial ext;
            ext.exponents = {m.exponents[0], m.exponents[1], copy};
            b.monomials.push_back(std::move(ext));
        }
    Int nn(n);
    b.exponent_value = 2 * nn * nn * Int(n - 1);
    return b;
}

inline ModuleBasis family_basis(Family f, long n) {
    switch (f) {
        case Family::two_param: return two_param_basis(n);
        case Family::two_copies: return two_copies_basis(n);
        case Family::five_param: return m05_basis(n);
        case Family::one_param: {
            // the Apery diagonal: single element f^n
            ModuleBasis b;
            b.tag = "one_param";
            b.level = n;
            b.ambient = 1;
            b.monomials.push_back(Monomial{{n}, 1});
            b.exponent_value = n;
            return b;
        }
    }
    throw Error("family_basis: unreachable");
}

// Rewrite a basis monomial in the dihedral coordinates u1..u5.
//   two_param:  f1 = u2 u4, f2 = u1 u3 u5, so f1^i f2^j -> (j,i,j,i,j)
//   two_copies: u1^eps f1^i f2^j -> (eps+j, i, j, i, j)
//   five_param: identity
//   one_param:  f^n = (u1...u5)^n -> (n,n,n,n,n)
inline Exp5 to_exponent_vector(Family f, const Monomial& m) {
    switch (f) {
        case Family::two_param: {
            if (m.exponents.size() != 2) throw DimensionMismatch("two_param monomial has 2 slots");
            long i = m.exponents[0], j = m.exponents[1];
            return {j, i, j, i, j};
        }
        case Family::two_copies: {
            if (m.exponents.size() != 3)
                throw DimensionMismatch("two_copies monomial has 3 slots");
            long i = m.exponents[0], j = m.exponents[1], eps = m.exponents[2];
            return {eps + j, i, j, i, j};
        }
        case Family::five_param: {
            if (m.exponents.size() != 5)
                throw DimensionMismatch("five_param monomial has 5 slots");
            return {m.exponents[0], m.exponents[1], m.exponents[2], m.exponents[3],
                    m.exponents[4]};
        }
        case Family::one_param: {
            if (m.exponents.size() != 1) throw DimensionMismatch("one_param monomial has 1 slot");
            long n = m.exponents[0];
            return {n, n, n, n, n};
        }
    }
    throw Error("to_exponent_vector: unreachable");
}

// g1^a g2^b = u3^a (u1+u5)^b expanded into monomials in the u_i.
inline std::vector<std::pair<Int, Exp5>> binomial_expand_g_basis(long a, long b) {
    if (a < 0 || b < 0) throw Error("binomial_expand_g_basis: need a,b >= 0");
    std::vector<std::pair<Int, Exp5>> out;
    for (long k = b; k >= 0; --k)
        out.emplace_back(binomial(static_cast<unsigned long>(b), static_cast<unsigned long>(k)),
                         Exp5{k, 0, a, 0, b - k});
    return out;
}

}  // namespace periodgram
