#pragma once

// Exact values a + b*xi and polynomials in xi, where xi stands for zeta(2).

#include <string>
#include <vector>

#include "periodgram/constants.hpp"
#include "periodgram/rational.hpp"
#include "periodgram/real.hpp"

namespace periodgram {

struct LinearForm {
    Rational const_part;  // coefficient of 1
    Rational xi_part;     // coefficient of xi

    LinearForm() : const_part(0), xi_part(0) {}
    LinearForm(Rational c, Rational x) : const_part(std::move(c)), xi_part(std::move(x)) {}

    static LinearForm one() { return {Rational(1), Rational(0)}; }
    static LinearForm xi() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return const_part == 0 && xi_part == 0; }

    friend LinearForm operator+(const LinearForm& a, const LinearForm& b) {
        return {a.const_part + b.const_part, a.xi_part + b.xi_part};
    }
    friend LinearForm operator-(const LinearForm& a, const LinearForm& b) {
        return {a.const_part - b.const_part, a.xi_part - b.xi_part};
    }
    LinearForm operator-() const { return {-const_part, -xi_part}; }
    friend LinearForm operator*(const Rational& c, const LinearForm& f) {
        return {c * f.const_part, c * f.xi_part};
    }
    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.const_part == b.const_part && a.xi_part == b.xi_part;
    }

    Real numeric(int digits) const {
        return Real::of(const_part, digits) + Real::of(xi_part, digits) * zeta2(digits);
    }

    std::string str() const {
        return to_string(const_part) + " + " + to_string(xi_part) + "*zeta2";
    }
};

// Polynomial in xi, coefficient of xi^k at index k, trailing zeros stripped.
struct XiPolynomial {
    std::vector<Rational> coeffs;

    XiPolynomial() = default;
    explicit XiPolynomial(std::vector<Rational> c) : coeffs(std::move(c)) { strip(); }
    explicit XiPolynomial(const Rational& c) : coeffs{c} { strip(); }
    explicit XiPolynomial(const LinearForm& f) : coeffs{f.const_part, f.xi_part} { strip(); }

    void strip() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    Rational coeff(size_t k) const { return k < coeffs.size() ? coeffs[k] : Rational(0); }

    friend XiPolynomial operator+(const XiPolynomial& a, const XiPolynomial& b) {
        std::vector<Rational> c(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return XiPolynomial(std::move(c));
    }
    friend XiPolynomial operator-(const XiPolynomial& a, const XiPolynomial& b) {
        std::vector<Rational> c(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return XiPolynomial(std::move(c));
    }
    friend XiPolynomial operator*(const XiPolynomial& a, const XiPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs.size(); ++i)
            for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
        return XiPolynomial(std::move(c));
    }
    friend XiPolynomial operator*(const Rational& s, const XiPolynomial& a) {
        std::vector<Rational> c = a.coeffs;
        for (auto& x : c) x *= s;
        return XiPolynomial(std::move(c));
    }
    friend bool operator==(const XiPolynomial& a, const XiPolynomial& b) {
        return a.coeffs == b.coeffs;
    }

    Rational eval_rational(const Rational& t) const {
        Rational acc(0);
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
        return acc;
    }

    std::string str() const {
        if (coeffs.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i) out += " + ";
            out += to_string(coeffs[i]);
            if (i) out += "*x^" + std::to_string(i);
        }
        return out;
    }
};

namespace detail {

// log10 of max |coefficient| as a crude magnitude, for Horner guard digits
inline long coeff_magnitude_digits(const XiPolynomial& p) {
    size_t bits = 1;
    for (const auto& c : p.coeffs) {
        bits = std::max(bits, mpz_sizeinbase(c.get_num().get_mpz_t(), 2));
        bits = std::max(bits, mpz_sizeinbase(c.get_den().get_mpz_t(), 2));
    }
    return static_cast<long>(bits * 0.302) + 1;
}

}  // namespace detail

// Horner evaluation of p at zeta(2). Working precision adds guard digits for
// the coefficient magnitudes; the result is tagged with the smaller of the
// requested precision and the digits that survive cancellation.
inline Real eval_xi(const XiPolynomial& p, int digits) {
    if (p.is_zero()) return Real(digits);
    int guard = static_cast<int>(detail::coeff_magnitude_digits(p)) +
                static_cast<int>(p.degree()) + 10;
    int work = digits + guard;
    Real x = zeta2(work);
    Real acc(work);
    Real peak(work);
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        acc = acc * x + Real::of(p.coeffs[i], work);
        peak = std::max(peak, abs(acc));
    }
    int achieved = work;
    if (!acc.is_zero() && !peak.is_zero()) {
        double lost = (log10(peak) - log10(abs(acc))).to_double();
        achieved = work - static_cast<int>(lost) - guard + 10;
    }
    return acc.at_precision(std::max(2, std::min(digits, achieved)));
}

// lcm of the coefficient denominators, factored.
inline IntFactorization denominator_lcm(const XiPolynomial& p) {
    Int l = 1;
    for (const auto& c : p.coeffs) l = lcm(l, c.get_den());
    return factorize(l);
}

inline IntFactorization denominator_lcm_int(const Int& n) { return factorize(n); }

}  // namespace periodgram
