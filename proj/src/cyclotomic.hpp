#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "ball.hpp"
#include "errors.hpp"
#include "intutil.hpp"

namespace eiskron {

// Element of Q(zeta_K) stored in the redundant group-ring basis
// sum_j c[j] * zeta_K^j, 0 <= j < K. Addition and multiplication by a root
// of unity are coefficient shuffles; canonical form (coefficients reduced
// mod Phi_K) is computed on demand for equality, inversion and export.
class ZetaPoly {
public:
    ZetaPoly() : k_(1), c_(1, Rat(0)) {}
    explicit ZetaPoly(unsigned k) : k_(k), c_(k, Rat(0)) {}

    static ZetaPoly from_q(const Rat& q, unsigned k = 1);
    static ZetaPoly zeta(unsigned k, long j); // zeta_K^j
    static ZetaPoly zero(unsigned k) { return ZetaPoly(k); }

    unsigned modulus() const { return k_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat& at(unsigned j) { return c_[j % k_]; }

    ZetaPoly promoted(unsigned k2) const;     // requires k_ | k2
    static unsigned common_modulus(const ZetaPoly& a, const ZetaPoly& b);

    ZetaPoly& operator+=(const ZetaPoly& o);
    ZetaPoly& operator-=(const ZetaPoly& o);
    friend ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b) { a += b; return a; }
    friend ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b) { a -= b; return a; }
    friend ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b);
    ZetaPoly operator-() const;

    void add_rotated(const ZetaPoly& x, long shift); // += zeta^shift * x, same modulus
    ZetaPoly& scale(const Rat& q);

    ZetaPoly galois(long j) const; // zeta -> zeta^j, gcd(j, K) = 1
    ZetaPoly conj() const { return galois(-1); }

    ZetaPoly inv() const;
    friend ZetaPoly operator/(const ZetaPoly& a, const ZetaPoly& b) { return a * b.inv(); }

    bool is_zero() const;
    bool operator==(const ZetaPoly& o) const;
    bool operator!=(const ZetaPoly& o) const { return !(*this == o); }

    bool is_rational() const;
    Rat to_rational() const; // requires is_rational()

    // canonical coefficients in the power basis 1, zeta, ..., zeta^{phi(K)-1}
    std::vector<Rat> canonical() const;
    // rebuild from canonical coefficients
    static ZetaPoly from_canonical(unsigned k, const std::vector<Rat>& v);

    CBall embed(mpfr_prec_t prec) const; // zeta_K -> exp(2 pi i / K)

    // x * conj(x); lands in the real subfield
    ZetaPoly norm_to_real() const { return *this * conj(); }

private:
    unsigned k_;
    std::vector<Rat> c_;
};

// cached data of the K-th cyclotomic field
struct CycloFieldData {
    unsigned k = 1;
    unsigned deg = 1;                       // phi(k)
    std::vector<Int> phi;                   // Phi_k, monic, length deg+1
    std::vector<std::vector<Int>> red;      // zeta^j for j in [deg, k), as integer rows
};

const CycloFieldData& cyclo_field(unsigned k);
unsigned euler_phi(unsigned k);

// zeta_E^ex as a monomial of exact order (modulus E/gcd)
ZetaPoly reduced_root(unsigned E, long ex);

} // namespace eiskron
