#include "hmx/real.hpp"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <vector>

namespace hmx {

Rat rat_from_string(const std::string& s) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw InputError("bad rational literal: " + s);
    if (q.get_den() == 0) throw InputError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

Real Real::of_str(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw InputError("bad decimal literal: " + s);
    return r;
}

std::string Real::str(size_t digits) const {
    if (digits == 0) digits = static_cast<size_t>(prec() * 0.30103) + 2;
    char* s = nullptr;
    int n = mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    if (n < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Complex Complex::pow_si(long e) const {
    mpfr_prec_t p = prec();
    if (e == 0) return Complex::of_long(1, p);
    Complex base = *this;
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
    Complex acc = Complex::of_long(1, p);
    while (k) {
        if (k & 1UL) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    if (inv) acc = Complex::of_long(1, p) / acc;
    return acc;
}

Complex e_tau(const Complex& tau) {
    mpfr_prec_t p = tau.prec();
    Real two_pi = Real::of_long(2, p) * Real::pi(p);
    // exp(2*pi*i*(x+iy)) = exp(-2*pi*y) * (cos(2*pi*x) + i sin(2*pi*x))
    Real mag = (-(two_pi * tau.im)).exp();
    Real ang = two_pi * tau.re;
    Real c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
    return {mag * c, mag * s};
}

Complex e_rat(const Rat& r, mpfr_prec_t prec) {
    // Reduce mod 1 first so the angle stays small.
    Rat f = r - Rat(rat_floor(r));
    Real ang = Real::of_long(2, prec) * Real::pi(prec) * Real::of_rat(f, prec);
    Real c(prec), s(prec);
    mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
    return {c, s};
}

} // namespace hmx
