#pragma once

// zeta(2) at arbitrary precision, by Euler-Maclaurin summation with exact
// Bernoulli-number corrections. The working parameters (cutoff N, number of
// correction terms) are chosen from the standard remainder estimate, then the
// value is recomputed at higher precision until the requested digits agree.

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "periodgram/rational.hpp"
#include "periodgram/real.hpp"

namespace periodgram {

namespace detail {

// B_0, B_1, B_2, ... via B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k.
inline const std::vector<Rational>& bernoulli_table(size_t count) {
    static std::vector<Rational> table;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (table.size() < count) {
        size_t m = table.size();
        if (m == 0) {
            table.emplace_back(1);
            continue;
        }
        Rational acc(0);
        for (size_t k = 0; k < m; ++k)
            acc += Rational(binomial(m + 1, k)) * table[k];
        table.push_back(-acc / Rational(Int(m + 1)));
    }
    return table;
}

// log10 of the first omitted Euler-Maclaurin term, |B_{2J+2}| / N^{2J+3},
// using |B_{2j}| ~ 2 (2j)! / (2 pi)^{2j}.
inline double em_tail_log10(double n, long j) {
    double two_j = 2.0 * (j + 1);
    return std::log10(2.0) + std::lgamma(two_j + 1.0) / std::log(10.0) -
           two_j * std::log10(2.0 * M_PI * n) - std::log10(n);
}

inline Real zeta2_em(int work_digits) {
    long terms = 16;
    long cutoff = 0;
    for (;; terms *= 2) {
        double need = -(work_digits + 5);
        double lo = 1.0, hi = 9.0;  // N between 10 and 10^9
        if (em_tail_log10(std::pow(10.0, hi), terms) > need) continue;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (em_tail_log10(std::pow(10.0, mid), terms) <= need ? hi : lo) = mid;
        }
        cutoff = static_cast<long>(std::pow(10.0, hi)) + 2;
        if (cutoff <= 4000000) break;
    }

    const auto& bern = bernoulli_table(static_cast<size_t>(2 * terms + 1));
    Real sum(work_digits);
    for (long k = cutoff - 1; k >= 1; --k) {  // ascending magnitude
        Int kk = Int(k) * Int(k);
        sum += Real::of(1L, work_digits) / Real::of(kk, work_digits);
    }
    // tail sum_{k>=N} k^-2 = 1/N + 1/(2N^2) + sum_j B_{2j} N^{-2j-1}
    Int n(cutoff);
    Int n2 = n * n;
    sum += Real::of(Rational(make_rational(1, 1) / Rational(n)), work_digits);
    sum += Real::of(Rational(make_rational(1, 2) / Rational(n2)), work_digits);
    Int npow = n2 * n;
    for (long j = 1; j <= terms; ++j) {
        sum += Real::of(Rational(bern[static_cast<size_t>(2 * j)] / Rational(npow)), work_digits);
        npow *= n2;
    }
    return sum;
}

}  // namespace detail

// zeta(2) correct to `digits` decimal digits.
inline Real zeta2(int digits) {
    if (digits < 10) throw Error("zeta2: precision must be >= 10");
    static std::map<int, Real> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.lower_bound(digits);
    if (it != cache.end()) return it->second.at_precision(digits);

    int work = digits + 10;
    Real value = detail::zeta2_em(work);
    for (;;) {
        Real check = detail::zeta2_em(work + 20);
        if (abs(value - check) <= abs(check) * Real::of("1e-" + std::to_string(digits + 2), 20)) {
            value = check;
            break;
        }
        work *= 2;
        value = detail::zeta2_em(work);
    }
    cache.emplace(digits, value.at_precision(digits));
    return value.at_precision(digits);
}

}  // namespace periodgram
