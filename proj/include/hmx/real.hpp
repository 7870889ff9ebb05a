#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "hmx/rational.hpp"

namespace hmx {

// Thin RAII wrapper over mpfr_t. Each value carries its own precision;
// binary operations compute at the larger precision of the operands.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static Real of_long(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of_rat(const Rat& q, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real of_int(const Int& n, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.v_, n.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    // Decimal string, e.g. "0.3" or "-1.25e-3".
    static Real of_str(const std::string& s, mpfr_prec_t prec);
    static Real sqrt_int(const Int& n, mpfr_prec_t prec) {
        Real r = of_int(n, prec);
        mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e
    static Real pow2(long e, mpfr_prec_t prec = 64) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real abs() const {
        Real r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real exp() const {
        Real r(prec());
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real log() const {
        Real r(prec());
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real sqrt() const {
        Real r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real pow_si(long e) const {
        Real r(prec());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    // a^x for a > 0
    Real pow(const Real& x) const {
        Real r(std::max(prec(), x.prec()));
        mpfr_pow(r.v_, v_, x.v_, MPFR_RNDN);
        return r;
    }
    Real floor() const {
        Real r(prec());
        mpfr_floor(r.v_, v_);
        return r;
    }

    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    friend bool operator<(const Real& a, const Real& b) { return a.cmp(b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return a.cmp(b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return a.cmp(b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return a.cmp(b) >= 0; }

    // true iff |*this| < 2^e
    bool abs_below_pow2(long e) const {
        if (mpfr_zero_p(v_)) return true;
        return mpfr_get_exp(v_) <= e; // |v| < 2^exp(v)
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    Int to_int_floor() const {
        Int n;
        mpfr_get_z(n.get_mpz_t(), Real(*this).floor().v_, MPFR_RNDN);
        return n;
    }
    std::string str(size_t digits = 0) const;

  private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    static Complex of_long(long x, mpfr_prec_t prec) {
        return {Real::of_long(x, prec), Real::of_long(0, prec)};
    }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex operator-() const { return {-re, -im}; }
    Complex conj() const { return {re, -im}; }

    Real abs() const { return (re * re + im * im).sqrt(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex pow_si(long e) const;
};

// e(tau) = exp(2*pi*i*tau) for complex tau.
Complex e_tau(const Complex& tau);
// e(r) for rational r (an exact root of unity, up to rounding).
Complex e_rat(const Rat& r, mpfr_prec_t prec);

} // namespace hmx
