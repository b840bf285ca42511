#pragma once

// Arbitrary-precision rationals and integers (GMP-backed), lcm(1..n),
// and smooth-part factorization of integers.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "periodgram/errors.hpp"

namespace periodgram {

using Int = mpz_class;
using Rational = mpq_class;  // gmp keeps these in lowest terms, denominator > 0

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Rational q;
    if (slash == std::string::npos) {
        q = Rational(Int(s));
    } else {
        q = make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    return q;
}

// Serialized as "p/q", denominator always explicit.
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// lcm(1,...,n); the empty range gives 1.
inline Int lcm_consecutive(long n) {
    if (n < 0) throw Error("lcm_consecutive: n must be >= 0");
    Int acc = 1;
    for (long k = 2; k <= n; ++k) acc = lcm(acc, Int(k));
    return acc;
}

// Prime factorization by trial division up to `bound`; whatever is left
// unsplit is reported as the cofactor.
struct IntFactorization {
    std::vector<std::pair<Int, unsigned>> factors;  // primes strictly increasing
    Int cofactor = 1;                               // 1 when fully factored
    int sign = 1;

    Int value() const {
        Int v = sign;
        for (const auto& [p, e] : factors)
            for (unsigned i = 0; i < e; ++i) v *= p;
        return v * cofactor;
    }

    std::string str() const {
        if (factors.empty() && cofactor == 1) return sign < 0 ? "-1" : "1";
        std::string out = sign < 0 ? "-" : "";
        bool first = true;
        for (const auto& [p, e] : factors) {
            if (!first) out += " ";
            first = false;
            out += p.get_str();
            if (e > 1) out += "^" + std::to_string(e);
        }
        if (cofactor != 1) {
            if (!first) out += " ";
            out += "* " + cofactor.get_str();
        }
        return out;
    }
};

inline IntFactorization factorize(Int n, unsigned long bound = 1000000) {
    IntFactorization f;
    if (n < 0) {
        f.sign = -1;
        n = -n;
    }
    if (n == 0) throw Error("factorize: zero has no factorization");
    for (unsigned long p = 2; p <= bound && n > 1; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * Int(p) > n) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= static_cast<unsigned long>(p);
            ++e;
        }
        if (e > 0) f.factors.emplace_back(Int(p), e);
    }
    if (n > 1) {
        // n is prime, or a leftover above the trial bound
        if (n <= Int(bound) * Int(bound))
            f.factors.emplace_back(n, 1);
        else
            f.cofactor = n;
    }
    return f;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace periodgram
