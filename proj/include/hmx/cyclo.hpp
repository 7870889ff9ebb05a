#pragma once

#include <map>
#include <vector>

#include "hmx/rational.hpp"
#include "hmx/real.hpp"

namespace hmx {

// Exact element of a cyclotomic field Q(zeta_n), stored as a sparse rational
// combination of roots of unity zeta_n^j. Arithmetic is lazy; zero tests and
// power-basis coordinates reduce modulo the n-th cyclotomic polynomial.
class Cyclo {
  public:
    Cyclo() : order_(1) {}
    static Cyclo of_rat(const Rat& r);
    static Cyclo of_long(long r) { return of_rat(Rat(r)); }
    // e(r) = exp(2*pi*i*r) for rational r.
    static Cyclo root_of_unity(const Rat& r);

    long order() const { return order_; }
    const std::map<long, Rat>& terms() const { return terms_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat to_rational() const; // throws if not rational

    // Power-basis coordinates (1, zeta, ..., zeta^(phi(n)-1)) after reduction.
    std::vector<Rat> coords() const;
    // Coordinates viewed inside Q(zeta_n); order() must divide n.
    std::vector<Rat> coords_at(long n) const;
    // Smallest divisor m of order() with the value in Q(zeta_m), plus the
    // coordinates there. Canonical form for serialization.
    std::pair<long, std::vector<Rat>> canonical_order_coords() const;
    static Cyclo from_coords(long order, const std::vector<Rat>& coords);

    Complex to_complex(mpfr_prec_t prec) const;

    // Lower the order when all exponents share a factor with it.
    void canonicalize();

    friend Cyclo operator+(const Cyclo& x, const Cyclo& y);
    friend Cyclo operator-(const Cyclo& x, const Cyclo& y);
    friend Cyclo operator*(const Cyclo& x, const Cyclo& y);
    Cyclo operator-() const;
    friend Cyclo operator*(const Cyclo& x, const Rat& r);
    friend bool operator==(const Cyclo& x, const Cyclo& y) { return (x - y).is_zero(); }
    friend bool operator!=(const Cyclo& x, const Cyclo& y) { return !(x == y); }

  private:
    long order_;
    std::map<long, Rat> terms_; // exponent (mod order) -> coefficient, no zeros

    void add_term(long e, const Rat& c);
    Cyclo lifted(long n) const; // same value in Q(zeta_n), order_ | n
};

// Euler phi and the n-th cyclotomic polynomial (monic, integer, cached).
long euler_phi(long n);
const std::vector<Int>& cyclotomic_poly(long n);

} // namespace hmx
