#pragma once

#include <array>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "intutil.hpp"

namespace eiskron {

// Unramified coefficient context: Zp for deg 1, Zp[x]/(x^2 - A x - B) for
// deg 2 with a deterministically chosen irreducible (constant term the
// smallest primitive root, smallest linear term making the residue class
// of x a generator of F_{p^2}^*).
struct PadicCtx {
    long p = 0;
    int deg = 1;
    Int A = 0, B = 0; // x^2 = A x + B
    Int q() const { return deg == 1 ? Int(p) : Int(p) * p; }
};

const PadicCtx& padic_ctx(long p, int deg);

// Element of the fraction field at fixed absolute precision: p^val * u with
// u a unit known modulo p^(absprec - val). A value indistinguishable from 0
// keeps only absprec.
class Padic {
public:
    Padic() = default;

    static Padic zero(const PadicCtx& c, long absprec);
    static Padic from_int(const PadicCtx& c, const Int& n, long absprec);
    static Padic from_rat(const PadicCtx& c, const Rat& r, long absprec);
    static Padic from_unit_coeffs(const PadicCtx& c, std::array<Int, 2> u, long val, long absprec);

    const PadicCtx& ctx() const { return *ctx_; }
    long prime() const { return ctx_->p; }
    int deg() const { return ctx_->deg; }
    long valuation() const;             // fails on zero-at-precision
    long abs_precision() const { return absprec_; }
    long rel_precision() const { return zero_ ? 0 : absprec_ - val_; }
    bool is_zero_at_precision() const { return zero_; }
    bool is_unit() const { return !zero_ && val_ == 0; }

    // residue digits of the unit part: digits[i][j] = j-th basis coefficient
    // of the i-th p-adic digit
    std::vector<std::array<long, 2>> unit_digits(long count) const;
    std::array<Int, 2> unit_coeffs() const { return u_; }

    friend Padic operator+(const Padic& a, const Padic& b);
    friend Padic operator-(const Padic& a, const Padic& b);
    friend Padic operator*(const Padic& a, const Padic& b);
    friend Padic operator/(const Padic& a, const Padic& b);
    Padic operator-() const;
    Padic pow_ui(unsigned long e) const;
    Padic pow_si(long e) const;
    Padic inv() const;
    Padic frobenius() const; // x -> A - x on the generator

    // equal as elements known to the common precision
    bool eq_at_common_precision(const Padic& o) const;
    // congruent modulo p^k
    bool congruent_mod(const Padic& o, long k) const;

    Padic with_abs_precision(long n) const; // cap (never raise) precision

    std::string str() const; // "p^v * (d0 + d1*p + ...) + O(p^N)"

private:
    const PadicCtx* ctx_ = nullptr;
    std::array<Int, 2> u_{Int(0), Int(0)};
    long val_ = 0;
    long absprec_ = 0;
    bool zero_ = true;

    void normalize();
    static void check_compat(const Padic& a, const Padic& b);
};

// Teichmueller lift: omega(x) == x mod p, omega(x)^(q-1) = 1.
Padic teichmuller(const Padic& x);
// Iwasawa logarithm on units (one_unit: input is already == 1 mod p, else
// the Teichmueller part is divided out first). p = 2 uses the sign mod 4.
Padic plog(const Padic& u, bool one_unit = true);
// exponential; requires val >= 1 (p odd) or val >= 2 (p = 2)
Padic pexp(const Padic& v);

// both roots of y^2 - t y + n = 0, requires the reduction mod p separable
std::vector<Padic> padic_quadratic_roots(const PadicCtx& c, const Int& t, const Int& n, long absprec);
// fixed primitive root of unity system: zeta_K := tau^{(q-1)/K} with tau the
// Teichmueller lift of the canonical residue generator; requires K | q-1
Padic padic_zeta(const PadicCtx& c, unsigned K, long absprec);
// embedding of a cyclotomic value through the zeta system above
Padic padic_embed(const ZetaPoly& z, const PadicCtx& c, long absprec);

} // namespace eiskron
