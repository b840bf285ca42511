#pragma once

// Thin RAII wrapper over MPFR. Every value carries the decimal precision it
// was computed at; arithmetic works at the larger precision of its operands.

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "periodgram/rational.hpp"

namespace periodgram {

class Real {
public:
    explicit Real(int digits = 50) : digits_(clamped(digits)) {
        mpfr_init2(v_, bits(digits_));
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) : digits_(o.digits_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept : digits_(o.digits_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
            digits_ = o.digits_;
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        std::swap(digits_, o.digits_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(long x, int digits) {
        Real r(digits);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(double x, int digits) {
        Real r(digits);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const Int& x, int digits) {
        Real r(digits);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const Rational& x, int digits) {
        Real r(digits);
        mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const std::string& s, int digits) {
        Real r(digits);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw Error("Real: cannot parse '" + s + "'");
        return r;
    }

    int precision() const { return digits_; }

    Real at_precision(int digits) const {
        Real r(digits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }
    Real operator-() const {
        Real r(digits_);
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend Real abs(const Real& a) {
        Real r(a.digits_);
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) { return unop(a, mpfr_sqrt); }
    friend Real log(const Real& a) { return unop(a, mpfr_log); }
    friend Real log10(const Real& a) { return unop(a, mpfr_log10); }
    friend Real exp(const Real& a) { return unop(a, mpfr_exp); }
    friend Real pow(const Real& a, const Real& b) { return binop(a, b, mpfr_pow); }
    friend Real pow(const Real& a, long e) {
        Real r(a.digits_);
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    // a^(1/k), a >= 0
    friend Real root(const Real& a, unsigned long k) {
        Real r(a.digits_);
        mpfr_rootn_ui(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }

    // Round-trip decimal string with the full carried precision.
    std::string str() const { return str(digits_); }
    std::string str(int digits) const {
        digits = std::max(2, digits);
        int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
        std::string buf(static_cast<size_t>(n), '\0');
        mpfr_snprintf(buf.data(), static_cast<size_t>(n) + 1, "%.*Re", digits - 1, v_);
        return buf;
    }
    // "value@digits" annotation used by the CLI.
    std::string annotated() const { return str() + "@" + std::to_string(digits_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    static int clamped(int digits) { return std::max(2, digits); }
    static mpfr_prec_t bits(int digits) {
        return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 24);
    }
    using Binop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using Unop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    static Real binop(const Real& a, const Real& b, Binop f) {
        Real r(std::max(a.digits_, b.digits_));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unop(const Real& a, Unop f) {
        Real r(a.digits_);
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
    int digits_;
};

}  // namespace periodgram
