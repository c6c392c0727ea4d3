#include "ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace eiskron {

namespace {
constexpr double kRadFloor = 1e-307; // keep radii away from subnormal underflow

double clampr(double r) { return r < kRadFloor ? kRadFloor : r; }
} // namespace

double dbl_up(mpfr_srcptr x) {
    double d = mpfr_get_d(x, MPFR_RNDA);
    return std::fabs(d);
}

CBall::CBall(mpfr_prec_t prec) : rad_(0.0), prec_(prec) {
    mpfr_init2(re_, prec);
    mpfr_init2(im_, prec);
    mpfr_set_zero(re_, 1);
    mpfr_set_zero(im_, 1);
}

CBall::CBall(const CBall& o) : rad_(o.rad_), prec_(o.prec_) {
    mpfr_init2(re_, prec_);
    mpfr_init2(im_, prec_);
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
}

CBall::CBall(CBall&& o) noexcept : rad_(o.rad_), prec_(o.prec_) {
    mpfr_init2(re_, 2);
    mpfr_init2(im_, 2);
    mpfr_swap(re_, o.re_);
    mpfr_swap(im_, o.im_);
}

CBall& CBall::operator=(const CBall& o) {
    if (this != &o) {
        mpfr_set_prec(re_, o.prec_);
        mpfr_set_prec(im_, o.prec_);
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
        rad_ = o.rad_;
        prec_ = o.prec_;
    }
    return *this;
}

CBall& CBall::operator=(CBall&& o) noexcept {
    mpfr_swap(re_, o.re_);
    mpfr_swap(im_, o.im_);
    std::swap(rad_, o.rad_);
    std::swap(prec_, o.prec_);
    return *this;
}

CBall::~CBall() {
    mpfr_clear(re_);
    mpfr_clear(im_);
}

double CBall::ulp_scale() const { return std::ldexp(1.0, 3 - static_cast<int>(prec_)); }

CBall CBall::from_long(long v, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_set_si(z.re_, v, MPFR_RNDN);
    return z;
}

CBall CBall::from_q(const Rat& re, const Rat& im, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_set_q(z.re_, re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(z.im_, im.get_mpq_t(), MPFR_RNDN);
    z.rad_ = (dbl_up(z.re_) + dbl_up(z.im_)) * z.ulp_scale();
    z.rad_ = clampr(z.rad_);
    return z;
}

CBall CBall::from_d(double re, double im, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_set_d(z.re_, re, MPFR_RNDN);
    mpfr_set_d(z.im_, im, MPFR_RNDN);
    return z;
}

CBall CBall::pi(mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_const_pi(z.re_, MPFR_RNDN);
    z.rad_ = clampr(dbl_up(z.re_) * z.ulp_scale());
    return z;
}

CBall& CBall::operator+=(const CBall& o) {
    mpfr_add(re_, re_, o.re_, MPFR_RNDN);
    mpfr_add(im_, im_, o.im_, MPFR_RNDN);
    rad_ = clampr(rad_ + o.rad_ + (dbl_up(re_) + dbl_up(im_)) * ulp_scale());
    return *this;
}

CBall& CBall::operator-=(const CBall& o) {
    mpfr_sub(re_, re_, o.re_, MPFR_RNDN);
    mpfr_sub(im_, im_, o.im_, MPFR_RNDN);
    rad_ = clampr(rad_ + o.rad_ + (dbl_up(re_) + dbl_up(im_)) * ulp_scale());
    return *this;
}

CBall operator*(const CBall& a, const CBall& b) {
    mpfr_prec_t p = std::max(a.prec_, b.prec_);
    CBall z(p);
    mpfr_t t1, t2;
    mpfr_init2(t1, p);
    mpfr_init2(t2, p);
    // re = a.re*b.re - a.im*b.im ; im = a.re*b.im + a.im*b.re
    mpfr_mul(t1, a.re_, b.re_, MPFR_RNDN);
    mpfr_mul(t2, a.im_, b.im_, MPFR_RNDN);
    mpfr_sub(z.re_, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re_, b.im_, MPFR_RNDN);
    mpfr_mul(t2, a.im_, b.re_, MPFR_RNDN);
    mpfr_add(z.im_, t1, t2, MPFR_RNDN);
    mpfr_clear(t1);
    mpfr_clear(t2);
    double ma = a.abs_upper(), mb = b.abs_upper();
    z.rad_ = clampr(ma * b.rad_ + mb * a.rad_ + a.rad_ * b.rad_ +
                    (dbl_up(z.re_) + dbl_up(z.im_)) * 4.0 * z.ulp_scale());
    return z;
}

CBall CBall::inv() const {
    double low = abs_lower();
    if (low <= 0.0)
        fail(Err::PrecisionInsufficient, "ball division by an enclosure containing zero");
    CBall z(prec_);
    mpfr_t n, t;
    mpfr_init2(n, prec_);
    mpfr_init2(t, prec_);
    mpfr_mul(n, re_, re_, MPFR_RNDN);
    mpfr_mul(t, im_, im_, MPFR_RNDN);
    mpfr_add(n, n, t, MPFR_RNDN); // |z|^2
    mpfr_div(z.re_, re_, n, MPFR_RNDN);
    mpfr_div(z.im_, im_, n, MPFR_RNDN);
    mpfr_neg(z.im_, z.im_, MPFR_RNDN);
    mpfr_clear(n);
    mpfr_clear(t);
    // |1/z - 1/zhat| <= rad / (|zhat| * low)
    double mhat = std::sqrt(dbl_up(re_) * dbl_up(re_) + dbl_up(im_) * dbl_up(im_)) + rad_;
    z.rad_ = clampr(rad_ / (low * (mhat - rad_ > 0 ? (mhat - rad_) : low)) +
                    (dbl_up(z.re_) + dbl_up(z.im_)) * 6.0 * z.ulp_scale());
    return z;
}

CBall operator/(const CBall& a, const CBall& b) { return a * b.inv(); }

CBall CBall::operator-() const {
    CBall z(*this);
    mpfr_neg(z.re_, z.re_, MPFR_RNDN);
    mpfr_neg(z.im_, z.im_, MPFR_RNDN);
    return z;
}

CBall CBall::conj() const {
    CBall z(*this);
    mpfr_neg(z.im_, z.im_, MPFR_RNDN);
    return z;
}

CBall CBall::scaled_q(const Rat& q) const {
    CBall z(prec_);
    mpfr_mul_q(z.re_, re_, q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(z.im_, im_, q.get_mpq_t(), MPFR_RNDN);
    double qa = std::fabs(mpq_get_d(q.get_mpq_t())) * 1.0000000001 + 1e-300;
    z.rad_ = clampr(rad_ * qa + (dbl_up(z.re_) + dbl_up(z.im_)) * z.ulp_scale());
    return z;
}

CBall CBall::scaled_d(double s) const {
    CBall z(prec_);
    mpfr_mul_d(z.re_, re_, s, MPFR_RNDN);
    mpfr_mul_d(z.im_, im_, s, MPFR_RNDN);
    z.rad_ = clampr(rad_ * std::fabs(s) * 1.0000000001 +
                    (dbl_up(z.re_) + dbl_up(z.im_)) * z.ulp_scale());
    return z;
}

CBall CBall::pow_ui(unsigned long e) const {
    CBall r = CBall::from_long(1, prec_);
    if (e == 0) return r;
    CBall base(*this);
    while (true) {
        if (e & 1UL) r = r * base;
        e >>= 1UL;
        if (e == 0) break;
        base = base * base;
    }
    return r;
}

CBall CBall::sqrt() const {
    CBall z(prec_);
    mpfr_t r, t, u;
    mpfr_init2(r, prec_);
    mpfr_init2(t, prec_);
    mpfr_init2(u, prec_);
    mpfr_hypot(r, re_, im_, MPFR_RNDN);
    if (mpfr_zero_p(r)) {
        mpfr_clears(r, t, u, nullptr);
        CBall out(prec_);
        out.rad_ = clampr(std::sqrt(rad_));
        return out;
    }
    if (mpfr_sgn(re_) >= 0) {
        mpfr_add(t, r, re_, MPFR_RNDN);
        mpfr_div_2ui(t, t, 1, MPFR_RNDN);
        mpfr_sqrt(u, t, MPFR_RNDN); // u = sqrt((r+a)/2)
        mpfr_set(z.re_, u, MPFR_RNDN);
        mpfr_mul_2ui(u, u, 1, MPFR_RNDN);
        mpfr_div(z.im_, im_, u, MPFR_RNDN);
    } else {
        mpfr_sub(t, r, re_, MPFR_RNDN);
        mpfr_div_2ui(t, t, 1, MPFR_RNDN);
        mpfr_sqrt(u, t, MPFR_RNDN); // u = sqrt((r-a)/2)
        if (mpfr_sgn(im_) >= 0) {
            mpfr_set(z.im_, u, MPFR_RNDN);
        } else {
            mpfr_neg(z.im_, u, MPFR_RNDN);
        }
        mpfr_mul_2ui(u, u, 1, MPFR_RNDN);
        mpfr_div(z.re_, im_, u, MPFR_RNDN);
        mpfr_abs(z.re_, z.re_, MPFR_RNDN);
    }
    mpfr_clears(r, t, u, nullptr);
    double low = abs_lower();
    double drad;
    if (low > 0.0) {
        drad = rad_ / (2.0 * std::sqrt(low));
    } else {
        drad = std::sqrt(abs_upper()); // disk through zero
    }
    z.rad_ = clampr(drad + (dbl_up(z.re_) + dbl_up(z.im_)) * 8.0 * z.ulp_scale());
    return z;
}

double CBall::abs_upper() const {
    double a = dbl_up(re_), b = dbl_up(im_);
    return std::sqrt(a * a + b * b) * 1.0000000001 + rad_;
}

double CBall::abs_lower() const {
    double a = dbl_up(re_), b = dbl_up(im_);
    double m = std::sqrt(a * a + b * b) * 0.9999999999;
    return m > rad_ ? m - rad_ : 0.0;
}

bool CBall::overlaps(const CBall& o) const {
    return dist_upper(o) <= 1.0000000001 * (rad_ + o.rad_) + 1e-305 ||
           dist_upper(o) <= rad_ + o.rad_;
}

double CBall::dist_upper(const CBall& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    mpfr_t dr, di;
    mpfr_init2(dr, p);
    mpfr_init2(di, p);
    mpfr_sub(dr, re_, o.re_, MPFR_RNDA);
    mpfr_sub(di, im_, o.im_, MPFR_RNDA);
    double a = dbl_up(dr), b = dbl_up(di);
    mpfr_clear(dr);
    mpfr_clear(di);
    return std::sqrt(a * a + b * b) * 1.0000000001 + 1e-305;
}

std::string CBall::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg %+.*Rg*i", digits, re_, digits, im_);
    std::string out = s ? s : "?";
    mpfr_free_str(s);
    char buf[64];
    std::snprintf(buf, sizeof buf, " (+/- %.3g)", rad_);
    return out + buf;
}

CBall unit_root(const Rat& frac, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_t th;
    mpfr_init2(th, prec + 16);
    mpfr_const_pi(th, MPFR_RNDN);
    mpfr_mul_2ui(th, th, 1, MPFR_RNDN);
    mpfr_mul_q(th, th, frac.get_mpq_t(), MPFR_RNDN);
    mpfr_sin_cos(z.im(), z.re(), th, MPFR_RNDN);
    // |theta| rounding error is ~ |theta| * 2^-(prec+16); derivative of e^{ix} has norm 1
    double terr = (dbl_up(th) + 1.0) * std::ldexp(1.0, -static_cast<int>(prec) - 13);
    mpfr_clear(th);
    z.set_rad(terr + 4.0 * std::ldexp(1.0, 3 - static_cast<int>(prec)));
    return z;
}

CBall exp_real(mpfr_srcptr x, double xrad, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_exp(z.re(), x, MPFR_RNDN);
    double m = dbl_up(z.re());
    double prop = (xrad < 0.5) ? m * xrad * 2.0 : m * (std::exp(xrad) - 1.0);
    z.set_rad(clampr(prop + m * std::ldexp(1.0, 3 - static_cast<int>(prec))));
    return z;
}

CBall exp_imag(mpfr_srcptr x, double xrad, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_sin_cos(z.im(), z.re(), x, MPFR_RNDN);
    z.set_rad(clampr(xrad + 4.0 * std::ldexp(1.0, 3 - static_cast<int>(prec))));
    return z;
}

} // namespace eiskron
