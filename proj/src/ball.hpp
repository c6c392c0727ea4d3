#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "errors.hpp"
#include "intutil.hpp"

namespace eiskron {

// Complex ball: an mpfr midpoint plus an absolute (Euclidean) error radius.
// The radius accounts for input radii, propagation through the operation,
// and the midpoint rounding of every mpfr call involved.
class CBall {
public:
    explicit CBall(mpfr_prec_t prec = 128);
    CBall(const CBall& o);
    CBall(CBall&& o) noexcept;
    CBall& operator=(const CBall& o);
    CBall& operator=(CBall&& o) noexcept;
    ~CBall();

    mpfr_prec_t prec() const { return prec_; }
    double rad() const { return rad_; }
    void set_rad(double r) { rad_ = r; }
    void widen(double extra) { rad_ += extra; }

    mpfr_srcptr re() const { return re_; }
    mpfr_srcptr im() const { return im_; }
    mpfr_ptr re() { return re_; }
    mpfr_ptr im() { return im_; }

    static CBall zero(mpfr_prec_t prec) { return CBall(prec); }
    static CBall from_long(long v, mpfr_prec_t prec);
    static CBall from_q(const Rat& re, const Rat& im, mpfr_prec_t prec);
    static CBall from_d(double re, double im, mpfr_prec_t prec);
    static CBall pi(mpfr_prec_t prec);

    CBall& operator+=(const CBall& o);
    CBall& operator-=(const CBall& o);

    friend CBall operator+(CBall a, const CBall& b) { a += b; return a; }
    friend CBall operator-(CBall a, const CBall& b) { a -= b; return a; }
    friend CBall operator*(const CBall& a, const CBall& b);
    friend CBall operator/(const CBall& a, const CBall& b);
    CBall operator-() const;

    CBall conj() const;
    CBall scaled_q(const Rat& q) const;        // multiply by exact rational
    CBall scaled_d(double s) const;            // multiply by exact double (power of two safe)
    CBall pow_ui(unsigned long e) const;
    CBall inv() const;
    CBall sqrt() const;                        // principal branch

    // upper/lower bounds for |z| over the whole ball
    double abs_upper() const;
    double abs_lower() const;                  // 0 if the ball may contain 0
    bool contains_zero() const { return abs_lower() <= 0.0; }

    double mid_re_d() const { return mpfr_get_d(re_, MPFR_RNDN); }
    double mid_im_d() const { return mpfr_get_d(im_, MPFR_RNDN); }

    // |this - o| <= rad + o.rad (consistency of two enclosures)
    bool overlaps(const CBall& o) const;
    // upper bound for |this - o|
    double dist_upper(const CBall& o) const;

    std::string str(int digits = 20) const;

private:
    mpfr_t re_, im_;
    double rad_;
    mpfr_prec_t prec_;

    double ulp_scale() const;  // 2^(3-prec), folded per-operation
};

// real helpers on mpfr with explicit rounding, used by the engines
double dbl_up(mpfr_srcptr x);                  // |result| >= |x|

// e^{i theta} for an exact rational multiple of 2*pi: theta = 2*pi*(num/den)
CBall unit_root(const Rat& frac, mpfr_prec_t prec);
// e^{x} for a real ball given as (midpoint mpfr, radius); result real CBall
CBall exp_real(mpfr_srcptr x, double xrad, mpfr_prec_t prec);
// e^{i x} for a real ball
CBall exp_imag(mpfr_srcptr x, double xrad, mpfr_prec_t prec);

} // namespace eiskron
