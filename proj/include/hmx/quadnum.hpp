#pragma once

#include <array>
#include <string>
#include <vector>

#include "hmx/rational.hpp"

namespace hmx {

// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)), d square-free > 1,
// embedded in R through the positive square root. All values in one computation
// are expected to share d; mixing two irrational values over different d throws.
struct QuadNum {
    Rat a, b;
    long d = 2;

    QuadNum() : a(0), b(0) {}
    QuadNum(Rat a_, Rat b_, long d_);
    static QuadNum rational(const Rat& r, long d_) { return QuadNum(r, Rat(0), d_); }
    static QuadNum sqrt_d(long d_) { return QuadNum(Rat(0), Rat(1), d_); }

    bool is_rational() const { return b == 0; }
    bool is_zero() const { return a == 0 && b == 0; }
};

long common_field(const QuadNum& x, const QuadNum& y);

QuadNum operator+(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x, const QuadNum& y);
QuadNum operator*(const QuadNum& x, const QuadNum& y);
QuadNum operator/(const QuadNum& x, const QuadNum& y); // throws DomainError on /0
QuadNum operator-(const QuadNum& x);
bool operator==(const QuadNum& x, const QuadNum& y);
inline bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }

QuadNum operator*(const QuadNum& x, const Rat& r);
QuadNum operator*(const Rat& r, const QuadNum& x);

QuadNum conj(const QuadNum& x);
Rat trace(const QuadNum& x);
Rat norm(const QuadNum& x);
QuadNum inv(const QuadNum& x);

// Exact sign of a + b*sqrt(d) as a real number (integer comparisons only).
int sgn(const QuadNum& x);
inline bool operator<(const QuadNum& x, const QuadNum& y) { return sgn(x - y) < 0; }
inline bool operator>(const QuadNum& x, const QuadNum& y) { return sgn(x - y) > 0; }

// Exact floor of x.
Int qfloor(const QuadNum& x);
// floor(l * w), exact. l >= 1 per the series conventions, but any l works.
Int floor_scaled(const Int& l, const QuadNum& w);

struct CFExpansion {
    std::vector<Int> preperiod; // digits before the periodic tail
    std::vector<Int> period;    // even length, non-empty
};

// Continued fraction of an irrational w with 0 < w < 1, written
// w = 1/(c1 + 1/(c2 + ...)). Minimal preperiod; odd minimal periods doubled.
CFExpansion cf_expand(const QuadNum& w);

// 0 < theta < 1 and theta' < -1 (exact sign tests).
bool is_perron(const QuadNum& theta);

// 2x2 integer matrix, row-major.
struct Mat2z {
    std::array<std::array<Int, 2>, 2> m;

    Mat2z() : m{{{Int(0), Int(0)}, {Int(0), Int(0)}}} {}
    Mat2z(Int a, Int b, Int c, Int d) : m{{{std::move(a), std::move(b)}, {std::move(c), std::move(d)}}} {}
    static Mat2z identity() { return Mat2z(Int(1), Int(0), Int(0), Int(1)); }

    Int& at(int i, int j) { return m[i][j]; }
    const Int& at(int i, int j) const { return m[i][j]; }
    Int det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    bool operator==(const Mat2z& o) const { return m == o.m; }
};

Mat2z operator*(const Mat2z& x, const Mat2z& y);
Mat2z mat_pow(const Mat2z& x, unsigned long k);
Mat2z mat_transpose(const Mat2z& x);
// Adjugate; for det = ±1 matrices, inverse = adjugate / det.
Mat2z mat_adjugate(const Mat2z& x);

// (m00*x + m01) / (m10*x + m11)
QuadNum moebius(const Mat2z& m, const QuadNum& x);

struct ReductionResult {
    QuadNum theta;
    Mat2z matD; // w = moebius(matD, theta), det = +-1
    Mat2z matT; // built from the preperiod digits, det = +-1
};

// Reduce a positive irrational w to a Perron theta via its continued fraction.
ReductionResult reduce_w(const QuadNum& w);

// The totally positive unit eta > 1 of S(Z + theta^-1 Z) obtained from one
// even continued-fraction period of theta^-1.
QuadNum positive_unit(const QuadNum& theta);

// Literal grammar "(p + q*sqrt(d))/r", integers p, q, r with r > 0.
QuadNum quadnum_parse(const std::string& s);
std::string quadnum_to_string(const QuadNum& x);

} // namespace hmx
