#include "eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "lll.hpp"

namespace eiskron {

namespace {

constexpr double kEps = 2.220446049250313e-16;

// nearest integer of a rational
Int nearest_int(const Rat& q) {
    Int m;
    Int num = q.get_num(), den = q.get_den();
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (q - Rat(m) > Rat(1, 2)) m += 1;
    return m;
}

// exact Gauss reduction of a rank-2 module basis under the norm form
void gauss_reduce_basis(const ImagQuadField& F, QuadRat& u, QuadRat& v) {
    if (F.norm(u) < F.norm(v)) std::swap(u, v);
    for (int guard = 0; guard < 256; ++guard) {
        Rat b = F.trace(F.mul(u, F.conj(v))); // 2 B(u, v)
        Rat nv = F.norm(v);
        Int m = nearest_int(b / (2 * nv));
        QuadRat u2 = F.sub(u, F.mul(v, QuadRat(Rat(m), Rat(0))));
        if (F.norm(u2) >= nv) {
            if (F.norm(u2) < F.norm(u)) u = u2;
            // order: |v| <= |u|
            std::swap(u, v);
            if (F.norm(u) > F.norm(v)) std::swap(u, v);
            return;
        }
        u = v;
        v = u2;
    }
    fail(Err::Internal, "basis reduction did not terminate");
}

} // namespace

CBall LatticeC::covol_ball() const {
    CBall sq = CBall::from_long(-F->disc(), prec).sqrt();
    Rat n = ideal.norm();
    return sq.scaled_q(n / 2);
}

LatticeC make_lattice(const Ideal& lam, const Ideal& f_for_gamma, mpfr_prec_t prec) {
    LatticeC L;
    L.F = &lam.field();
    L.ideal = lam;
    L.prec = prec;
    const ImagQuadField& F = *L.F;
    QuadRat u = lam.gen();
    QuadRat v = F.mul(u, QuadRat(Rat(0), Rat(1)));
    gauss_reduce_basis(F, u, v);
    L.b1 = u;
    L.b2 = v;
    L.w1 = F.embed(u, prec);
    L.w2 = F.embed(v, prec);
    CBall A = L.covol_ball();
    L.covol_lo = std::max(0.0, std::fabs(A.mid_re_d()) - A.rad());
    L.shortest_lo = L.w1.abs_lower() < L.w2.abs_lower() ? L.w1.abs_lower() : L.w2.abs_lower();
    L.diam_hi = L.w1.abs_upper() + L.w2.abs_upper();
    if (f_for_gamma.gen().is_zero()) {
        L.gamma = {QuadInt{1, 0}};
    } else {
        for (const QuadInt& g : F.units()) {
            QuadInt gm1{g.a - 1, g.b};
            if ((gm1.a == 0 && gm1.b == 0) || f_for_gamma.divides(Ideal::principal(F, gm1)))
                L.gamma.push_back(g);
        }
    }
    L.label = "N=" + lam.norm().get_str();
    return L;
}

QuadRat reduce_mod_lattice(const LatticeC& L, const QuadRat& x) {
    const ImagQuadField& F = *L.F;
    // solve x = a b1 + b b2 over Q
    Rat det = L.b1.a * L.b2.b - L.b2.a * L.b1.b;
    Rat a = (x.a * L.b2.b - L.b2.a * x.b) / det;
    Rat b = (L.b1.a * x.b - x.a * L.b1.b) / det;
    Int fa, fb;
    mpz_fdiv_q(fa.get_mpz_t(), Int(a.get_num()).get_mpz_t(), Int(a.get_den()).get_mpz_t());
    mpz_fdiv_q(fb.get_mpz_t(), Int(b.get_num()).get_mpz_t(), Int(b.get_den()).get_mpz_t());
    QuadRat r = F.sub(x, F.add(F.mul(L.b1, QuadRat(Rat(fa), Rat(0))),
                               F.mul(L.b2, QuadRat(Rat(fb), Rat(0)))));
    return r;
}

namespace {

// certified tail of sum over |lambda| > R of |lambda|^{-beta} for a
// translate of the lattice; integral comparison over the shifted annulus
double tail_direct(double R, double beta, double A_lo, double D_hi) {
    double U = R - 2 * D_hi;
    if (U <= 0 || beta <= 2) return 1e300;
    double t1 = std::pow(U, 2 - beta) / (beta - 2);
    double t2 = D_hi * std::pow(U, 1 - beta) / (beta - 1);
    return 1.02 * (2 * M_PI / A_lo) * (t1 + t2);
}

// integral bound int_U^inf (u+D)^m e^{-c u^2} du <= e^{cD^2-ish} ... we use
// e^{-c u^2} <= e^{-cU u} for u >= U and the incomplete gamma inequality
// Gamma(m+1, x) <= 2 x^m e^{-x} for x >= 2(m+1)
double tail_gaussian(double U, double D, double m, double c2, double A_lo) {
    // terms bounded by g(r) = r^m e^{-c2 r^2}; sum over |lambda| > U+2D-ish
    double c = c2 * U; // e^{-c2 u^2} <= e^{-c u} on u >= U
    double x = c * (U + D);
    if (x < 2 * (m + 2)) return 1e300;
    // int_{U}^inf (u+D)^{m+1} e^{-cu} du = e^{cD} Gamma(m+2, c(U+D)) / c^{m+2}
    double lg = (m + 1) * std::log(x) - x + c * D - (m + 2) * std::log(c);
    double val = 2.0 * std::exp(lg);
    return 1.05 * (2 * M_PI / A_lo) * val;
}

struct Enumerator {
    // iterate integer pairs (m, n) with |x + m w1 + n w2| <= R
    double x0, y0, u1, v1, u2, v2, R;
    long mlo, mhi;
    bool box;
    template <typename Fn>
    void run(Fn&& fn) const {
        if (!box) {
            for (long m = mlo; m <= mhi; ++m) scan_m(m, fn);
        } else {
            // expanding square shells ordering
            long span = std::max(std::labs(mlo), std::labs(mhi));
            for (long s = 0; s <= span; ++s) {
                if (s == 0) {
                    if (0 >= mlo && 0 <= mhi) scan_m(0, fn);
                } else {
                    if (-s >= mlo && -s <= mhi) scan_m(-s, fn);
                    if (s >= mlo && s <= mhi) scan_m(s, fn);
                }
            }
        }
    }
    template <typename Fn>
    void scan_m(long m, Fn&& fn) const {
        double cx = x0 + m * u1, cy = y0 + m * v1;
        double A = u2 * u2 + v2 * v2;
        double B = 2 * (cx * u2 + cy * v2);
        double C = cx * cx + cy * cy - R * R;
        double disc = B * B - 4 * A * C;
        if (disc < 0) return;
        double sq = std::sqrt(disc);
        long nlo = static_cast<long>(std::floor((-B - sq) / (2 * A))) - 1;
        long nhi = static_cast<long>(std::ceil((-B + sq) / (2 * A))) + 1;
        for (long n = nlo; n <= nhi; ++n) {
            double lx = cx + n * u2, ly = cy + n * v2;
            if (lx * lx + ly * ly > R * R) continue;
            fn(m, n, lx, ly);
        }
    }
};

Enumerator make_enumerator(const LatticeC& L, const CBall& x, double R, bool box) {
    Enumerator e;
    e.x0 = x.mid_re_d();
    e.y0 = x.mid_im_d();
    e.u1 = L.w1.mid_re_d();
    e.v1 = L.w1.mid_im_d();
    e.u2 = L.w2.mid_re_d();
    e.v2 = L.w2.mid_im_d();
    e.R = R;
    e.box = box;
    double xabs = std::hypot(e.x0, e.y0);
    double h = L.covol_lo / std::hypot(e.u2, e.v2); // distance between m-lines
    long M = static_cast<long>((R + xabs) / h) + 2;
    e.mlo = -M;
    e.mhi = M;
    return e;
}

} // namespace

CBall coset_sum_direct(const LatticeC& L, const QuadRat& x, long alpha, long s, double R,
                       bool box_order) {
    double beta = static_cast<double>(alpha + 2 * s);
    if (beta <= 2) fail(Err::ConvergenceNotGuaranteed, "direct sum needs alpha + 2s > 2");
    mpfr_prec_t prec = L.prec;
    const ImagQuadField& F = *L.F;
    CBall xe = F.embed(x, prec);
    CBall acc(prec);

    const double R0 = 24.0; // ball phase for the innermost shells
    Enumerator en = make_enumerator(L, xe, R, box_order);

    std::complex<double> batch{0, 0};
    double batch_abs = 0, batch_err = 0;
    long batch_count = 0;
    const double wmax = std::max(L.w1.abs_upper(), L.w2.abs_upper());
    const double radw = std::max({L.w1.rad(), L.w2.rad(), xe.rad()});

    auto flush = [&]() {
        if (batch_count == 0) return;
        CBall add = CBall::from_d(batch.real(), batch.imag(), prec);
        add.set_rad(batch_err + batch_abs * kEps * (batch_count + 4));
        acc += add;
        batch = {0, 0};
        batch_abs = batch_err = 0;
        batch_count = 0;
    };

    en.run([&](long m, long n, double lx, double ly) {
        double absl2 = lx * lx + ly * ly;
        double absl = std::sqrt(absl2);
        if (absl <= R0) {
            // exact ball term
            QuadRat pt = F.add(x, F.add(F.mul(L.b1, QuadRat(Rat(m), Rat(0))),
                                        F.mul(L.b2, QuadRat(Rat(n), Rat(0)))));
            if (pt.is_zero()) return; // the excluded origin
            CBall lam = F.embed(pt, prec);
            if (lam.contains_zero())
                fail(Err::PrecisionInsufficient, "lattice point enclosure touches zero");
            CBall inv = lam.inv();
            CBall term = inv.pow_ui(static_cast<unsigned long>(alpha));
            if (s != 0) {
                CBall n2inv = (lam * lam.conj()).inv();
                term = term * n2inv.pow_ui(static_cast<unsigned long>(s));
            }
            acc += term;
            return;
        }
        // double phase
        std::complex<double> lam(lx, ly);
        std::complex<double> c = std::conj(lam);
        std::complex<double> pw{1, 0};
        for (long k = 0; k < alpha; ++k) pw *= c;
        double den = std::pow(absl2, static_cast<double>(alpha + s));
        std::complex<double> term = pw / den;
        double at = std::abs(term);
        batch += term;
        batch_abs += at;
        double coord = ((std::labs(m) + std::labs(n)) * (wmax * kEps + radw) + radw) / absl;
        batch_err += at * ((beta + 4) * coord + 12 * (beta + 2) * kEps);
        if (++batch_count >= 8192) flush();
    });
    flush();
    double tail = tail_direct(R - 1.0, beta, L.covol_lo, L.diam_hi);
    acc.widen(tail);
    return acc;
}

CBall coset_sum_theta(const LatticeC& L, const QuadRat& x, long alpha, double tail_target) {
    if (alpha < 1) fail(Err::ConvergenceNotGuaranteed, "theta evaluation needs alpha >= 1");
    const long a = alpha;
    mpfr_prec_t prec = L.prec;
    const ImagQuadField& F = *L.F;
    CBall xe = F.embed(x, prec);
    CBall A = L.covol_ball();
    CBall pi = CBall::pi(prec);
    CBall t0b = pi / A;
    double t0 = t0b.mid_re_d();

    // factorial and the constant pi (-i pi)^a / (A Gamma(a))
    Rat fact(1);
    for (long j = 2; j < a; ++j) fact *= j;
    CBall mi(prec); // -i
    mpfr_set_si(mi.im(), -1, MPFR_RNDN);
    CBall cst = pi * (mi * pi).pow_ui(static_cast<unsigned long>(a)) / A;
    cst = cst.scaled_q(Rat(1) / fact);

    // primal radius
    double R1 = std::sqrt((2.0 * a + 4) / t0) + 2 * L.diam_hi + 2;
    while (2.0 * std::pow(t0, a - 1.0) / fact.get_d() *
               tail_gaussian(R1 - 2 * L.diam_hi, L.diam_hi, a - 2.0, t0 * 0.99, L.covol_lo) >
           tail_target / 2)
        R1 *= 1.15;

    CBall primal(prec);
    const ImagQuadField& Fq = *L.F;
    Enumerator en = make_enumerator(L, xe, R1, false);
    en.run([&](long m, long n, double, double) {
        QuadRat pt = Fq.add(x, Fq.add(Fq.mul(L.b1, QuadRat(Rat(m), Rat(0))),
                                      Fq.mul(L.b2, QuadRat(Rat(n), Rat(0)))));
        if (pt.is_zero()) return; // excluded origin
        CBall lam = Fq.embed(pt, prec);
        if (lam.contains_zero()) fail(Err::PrecisionInsufficient, "lattice point enclosure touches zero");
        CBall n2 = lam * lam.conj();
        CBall y = t0b * n2;
        // Q = e^{-y} sum_{j<a} y^j / j!   (upper incomplete gamma over (a-1)!)
        CBall q(prec);
        CBall yj = CBall::from_long(1, prec);
        Rat jf(1);
        for (long j = 0; j < a; ++j) {
            if (j > 0) {
                yj = yj * y;
                jf *= j;
            }
            q += yj.scaled_q(Rat(1) / jf);
        }
        // e^{-y}: y is a real positive ball
        CBall my = -y;
        CBall e = exp_real(my.re(), my.rad(), prec);
        CBall term = lam.conj().pow_ui(static_cast<unsigned long>(a)) * n2.inv().pow_ui(static_cast<unsigned long>(a));
        primal += term * q * e;
    });
    double pref_primal = 2.0 * std::pow(t0, a - 1.0) / fact.get_d();
    double ptail = pref_primal *
                   tail_gaussian(R1 - 2 * L.diam_hi, L.diam_hi, a - 2.0, t0 * 0.99, L.covol_lo);
    primal.widen(ptail);

    // dual lattice: basis solving Re(conj(w_i) mu_j) = delta_ij
    // with w = u + iv: Re(conj(w) mu) = u x + v y for mu = x + iy
    // real 2x2 solve in balls
    auto re = [&](const CBall& z) {
        CBall r(prec);
        mpfr_set(r.re(), z.re(), MPFR_RNDN);
        r.set_rad(z.rad());
        return r;
    };
    auto im = [&](const CBall& z) {
        CBall r(prec);
        mpfr_set(r.re(), z.im(), MPFR_RNDN);
        r.set_rad(z.rad());
        return r;
    };
    CBall u1 = re(L.w1), v1 = im(L.w1), u2 = re(L.w2), v2 = im(L.w2);
    CBall dd = u1 * v2 - u2 * v1; // = +- covol
    // mu1 = (v2 - i u2)/dd, mu2 = (-v1 + i u1)/dd
    CBall i1(prec);
    mpfr_set_si(i1.im(), 1, MPFR_RNDN);
    CBall mu1 = (v2 - i1 * u2) / dd;
    CBall mu2 = (i1 * u1 - v1) / dd;

    LatticeC Ld;
    Ld.F = L.F;
    Ld.prec = prec;
    Ld.w1 = mu1;
    Ld.w2 = mu2;
    // reduce the embedded dual basis (integer steps keep exactness)
    for (int guard = 0; guard < 64; ++guard) {
        double n1 = Ld.w1.abs_upper(), n2 = Ld.w2.abs_upper();
        if (n1 < n2) std::swap(Ld.w1, Ld.w2);
        CBall ip = Ld.w1 * Ld.w2.conj();
        double t = ip.mid_re_d() / (Ld.w2.abs_lower() * Ld.w2.abs_lower());
        long k = std::lround(t);
        if (k == 0) break;
        Ld.w1 = Ld.w1 - Ld.w2.scaled_q(Rat(k));
    }
    if (Ld.w1.abs_upper() < Ld.w2.abs_upper()) std::swap(Ld.w1, Ld.w2);
    double Ad_lo = 1.0 / (L.covol_ball().abs_upper());
    Ld.covol_lo = Ad_lo > 0 ? Ad_lo : 1e-300;
    Ld.diam_hi = Ld.w1.abs_upper() + Ld.w2.abs_upper();

    double c2 = (M_PI * M_PI / t0) * 0.99;
    double R2 = std::sqrt((2.0 * a + 4) / c2) + 2 * Ld.diam_hi + 2;
    double cstabs = cst.abs_upper();
    double pref_dual = cstabs / (M_PI * M_PI);
    while (pref_dual * tail_gaussian(R2 - 2 * Ld.diam_hi, Ld.diam_hi, a - 2.0, c2, Ld.covol_lo) >
           tail_target / 2)
        R2 *= 1.15;

    CBall dual(prec);
    CBall pi2_over_t0 = pi * pi / t0b;
    CBall zero(prec);
    Enumerator den2 = make_enumerator(Ld, zero, R2, false);
    CBall two_pi = pi.scaled_q(Rat(2));
    den2.run([&](long m, long n, double, double) {
        if (m == 0 && n == 0) return;
        CBall mu = Ld.w1.scaled_q(Rat(m)) + Ld.w2.scaled_q(Rat(n));
        CBall n2 = mu * mu.conj();
        CBall earg = -(pi2_over_t0 * n2);
        CBall e = exp_real(earg.re(), earg.rad(), prec);
        // phase 2 pi Re(conj(x) mu)
        CBall ph = two_pi * re(xe.conj() * mu);
        CBall rot = exp_imag(ph.re(), ph.rad(), prec);
        CBall term = mu.conj().pow_ui(static_cast<unsigned long>(a)) * (pi * pi * n2).inv();
        dual += term * e * rot;
    });
    double dtail = pref_dual * tail_gaussian(R2 - 2 * Ld.diam_hi, Ld.diam_hi, a - 2.0, c2, Ld.covol_lo);
    CBall out = primal + cst * dual;
    out.widen(dtail);
    return out;
}

namespace {

CosetFunction reduce_points(const LatticeC& L, const CosetFunction& f) {
    CosetFunction out;
    for (const auto& cp : f) {
        QuadRat r = reduce_mod_lattice(L, cp.point);
        bool merged = false;
        for (auto& o : out)
            if (o.point == r) {
                o.weight += cp.weight;
                merged = true;
                break;
            }
        if (!merged) out.push_back(CosetPoint{r, cp.weight});
    }
    return out;
}

void check_gamma_invariance(const LatticeC& L, const CosetFunction& f, long alpha) {
    const ImagQuadField& F = *L.F;
    for (const QuadInt& g : L.gamma) {
        if (g.a == 1 && g.b == 0) continue;
        ZetaPoly ga = F.to_cyclo(QuadRat(F.pow(g, static_cast<unsigned long>(alpha))));
        for (const auto& cp : f) {
            QuadRat gx = reduce_mod_lattice(L, F.mul(QuadRat(g), cp.point));
            const ZetaPoly* wg = nullptr;
            for (const auto& o : f)
                if (o.point == gx) {
                    wg = &o.weight;
                    break;
                }
            ZetaPoly expect = ga * cp.weight;
            if (wg == nullptr) {
                if (!expect.is_zero())
                    fail(Err::NotGammaInvariant, "summand is not invariant under the unit group");
            } else if (!(*wg == expect)) {
                fail(Err::NotGammaInvariant, "summand is not invariant under the unit group");
            }
        }
    }
}

} // namespace

EisensteinValue eisenstein_series(const LatticeC& L, const CosetFunction& f0, long alpha, long s,
                                  const EisParams& par) {
    CosetFunction f = reduce_points(L, f0);
    if (par.check_invariance) check_gamma_invariance(L, f, alpha);
    bool use_theta;
    switch (par.mode) {
        case EisParams::Mode::Direct: use_theta = false; break;
        case EisParams::Mode::Theta: use_theta = true; break;
        default: use_theta = (s == 0);
    }
    if (use_theta) {
        if (s != 0) fail(Err::ConvergenceNotGuaranteed, "theta path is an s = 0 evaluator");
        if (alpha < 3 && !par.experimental_low_weight)
            fail(Err::ConvergenceNotGuaranteed,
                 "alpha in {1,2} at s = 0 needs the experimental low-weight flag");
    } else {
        if (alpha + 2 * s <= 2)
            fail(Err::ConvergenceNotGuaranteed, "direct summation needs alpha + 2s > 2");
    }
    double R = par.radius;
    if (!use_theta && R <= 0) {
        R = 8 + 2 * L.diam_hi;
        while (tail_direct(R - 1.0, static_cast<double>(alpha + 2 * s), L.covol_lo, L.diam_hi) >
               par.tail_target_direct)
            R *= 1.3;
    }
    CBall acc(par.prec);
    for (const auto& cp : f) {
        if (cp.weight.is_zero()) continue;
        LatticeC Lp = L;
        Lp.prec = par.prec;
        Lp.w1 = L.F->embed(L.b1, par.prec);
        Lp.w2 = L.F->embed(L.b2, par.prec);
        CBall cs = use_theta ? coset_sum_theta(Lp, cp.point, alpha, par.tail_target)
                             : coset_sum_direct(Lp, cp.point, alpha, s, R, par.box_order);
        acc += cp.weight.embed(par.prec) * cs;
    }
    acc = acc.scaled_q(Rat(1, static_cast<long>(L.gamma.size())));
    EisensteinValue out{acc, acc.rad(), alpha, s, L.label, R};
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// conductor-times-b^{-1} lattice and the unit group O_f^*
LatticeC chi_lattice(const HeckeCharacter& chi, const Ideal& b, const Ideal& extra_inv,
                     mpfr_prec_t prec) {
    const ImagQuadField& F = chi.field();
    Ideal cond = chi.f_part();
    for (size_t i = 0; i < chi.primes_over_p().size(); ++i)
        if (chi.p_conductor_exponents()[i] > 0)
            cond = cond.mul(chi.primes_over_p()[i].prime.pow(chi.p_conductor_exponents()[i]));
    Ideal lam = cond.mul(b.inverse());
    if (!extra_inv.gen().is_zero()) lam = lam.mul(extra_inv.inverse());
    return make_lattice(lam, chi.f_part(), prec);
}

void check_gamma_in_ker_alpha(const LatticeC& L, long alpha) {
    for (const QuadInt& g : L.gamma) {
        QuadInt ga = L.F->pow(g, static_cast<unsigned long>(alpha));
        if (!(ga.a == 1 && ga.b == 0))
            fail(Err::NotGammaInvariant, "unit group is not contained in ker(alpha)");
    }
}

} // namespace

EisensteinValue partial_L(const HeckeCharacter& chi, long s, const Ideal& b, const EisParams& par) {
    LatticeC L = chi_lattice(chi, b, Ideal(), par.prec);
    check_gamma_in_ker_alpha(L, chi.alpha());
    CosetFunction f{CosetPoint{QuadRat(Rat(1), Rat(0)), ZetaPoly::from_q(Rat(1), 1)}};
    EisensteinValue ev = eisenstein_series(L, f, chi.alpha(), s, par);
    CBall scale = chi.eval(b).embed(par.prec);
    if (s != 0) scale = scale * CBall::from_q(Rat(1) / pow_int(Int(b.norm().get_num()), static_cast<unsigned long>(s)), Rat(0), par.prec);
    ev.value = ev.value * scale;
    ev.abs_error = ev.value.rad();
    return ev;
}

EisensteinValue full_L(const HeckeCharacter& chi, long s, const EisParams& par, const Ideal& aux) {
    const ImagQuadField& F = chi.field();
    Ideal cond = chi.f_part();
    for (size_t i = 0; i < chi.primes_over_p().size(); ++i)
        if (chi.p_conductor_exponents()[i] > 0)
            cond = cond.mul(chi.primes_over_p()[i].prime.pow(chi.p_conductor_exponents()[i]));
    RayClassData ray(F, cond, UnitsMode::GlobalUnits);
    Ideal avoid = Ideal::principal(F, QuadInt{Int(chi.p()), Int(0)});
    if (!aux.gen().is_zero()) avoid = avoid.mul(aux);
    auto reps = ray.representatives(avoid);
    CBall acc(par.prec);
    EisensteinValue last{};
    for (const Ideal& bi : reps) {
        EisensteinValue ev = partial_L(chi, s, bi, par);
        acc += ev.value;
        last = ev;
    }
    last.value = acc;
    last.abs_error = acc.rad();
    last.lattice_label = "full";
    return last;
}

CBall l_series_ideal_sum(const HeckeCharacter& chi, long s, const Ideal& b, double normbound,
                         mpfr_prec_t prec) {
    const ImagQuadField& F = chi.field();
    Ideal cond = chi.f_part();
    for (size_t i = 0; i < chi.primes_over_p().size(); ++i)
        if (chi.p_conductor_exponents()[i] > 0)
            cond = cond.mul(chi.primes_over_p()[i].prime.pow(chi.p_conductor_exponents()[i]));
    RayClassData ray(F, cond, UnitsMode::GlobalUnits);
    int target = ray.class_of(b);
    CBall acc(prec);
    // enumerate integral elements up to norm bound, dedupe associates by the
    // canonical ideal generator
    std::set<std::pair<Int, Int>> seen;
    long B = static_cast<long>(std::sqrt(normbound)) + 2;
    for (long y = -B; y <= B; ++y)
        for (long x = -B; x <= B; ++x) {
            if (x == 0 && y == 0) continue;
            QuadInt g{Int(x), Int(y)};
            if (F.norm(g) > static_cast<long>(normbound)) continue;
            Ideal a = Ideal::principal(F, g);
            auto key = std::make_pair(Int(a.gen().a.get_num()), Int(a.gen().b.get_num()));
            if (!seen.insert(key).second) continue;
            if (!a.is_coprime(cond)) continue;
            if (ray.class_of(a) != target) continue;
            CBall term = chi.eval(a).embed(prec);
            term = term.scaled_q(Rat(1) / pow_int(a.norm_z(), static_cast<unsigned long>(s)));
            acc += term;
        }
    // tail: |chi(a)| Na^{-s} = Na^{-(s + alpha/2)}
    double sigma = 2.0 * (s + chi.alpha() / 2.0);
    LatticeC OL = make_lattice(Ideal::one(F), Ideal(), prec);
    double tail = tail_direct(std::sqrt(normbound) - 1.0, sigma, OL.covol_lo, OL.diam_hi) /
                  F.num_units();
    acc.widen(tail * 1.05);
    return acc;
}

EisensteinValue smoothed_eisenstein(const HeckeCharacter& chi, const TorsionFunction& rho_hat,
                                    long alpha, const Ideal& b, const Ideal& c,
                                    const EisParams& par) {
    const ImagQuadField& F = chi.field();
    Ideal p_id = Ideal::principal(F, QuadInt{Int(chi.p()), Int(0)});
    Ideal fm = chi.f_part();
    // pairwise coprimality of f, b, c, p
    auto cop = [&](const Ideal& u, const Ideal& v, const char* what) {
        if (!u.is_coprime(v)) fail(Err::CoprimalityViolation, what);
    };
    cop(fm, b, "f and b must be coprime");
    cop(fm, c, "f and c must be coprime");
    cop(b, c, "b and c must be coprime");
    cop(p_id, b, "p and b must be coprime");
    cop(p_id, c, "p and c must be coprime");
    cop(p_id, fm, "p and f must be coprime");

    LatticeC L1 = chi_lattice(chi, b, Ideal(), par.prec);
    LatticeC L2 = chi_lattice(chi, b, c, par.prec);
    check_gamma_in_ker_alpha(L1, alpha);
    CosetFunction f;
    for (long i = 0; i < rho_hat.size(); ++i) {
        if (rho_hat.value_at(i).is_zero()) continue;
        QuadRat t = rho_hat.point_element(rho_hat.point_at(i));
        f.push_back(CosetPoint{F.add(QuadRat(Rat(1), Rat(0)), t), rho_hat.value_at(i)});
    }
    EisensteinValue e1 = eisenstein_series(L1, f, alpha, 0, par);
    EisensteinValue e2 = eisenstein_series(L2, f, alpha, 0, par);
    EisensteinValue out = e1;
    out.value = e1.value.scaled_q(Rat(c.norm_z())) - e2.value;
    out.abs_error = out.value.rad();
    out.lattice_label = "smoothed " + L1.label + " / " + L2.label;
    return out;
}

// ---------------------------------------------------------------------------

CBall complex_agm(CBall a, CBall b) {
    mpfr_prec_t prec = std::max(a.prec(), b.prec());
    double prev = 1e300;
    for (int it = 0; it < 4 * static_cast<int>(prec); ++it) {
        CBall m = (a + b).scaled_q(Rat(1, 2));
        CBall g = (a * b).sqrt();
        // right choice: |m - g| <= |m + g|
        CBall d1 = m - g, d2 = m + g;
        if (d1.abs_upper() > d2.abs_upper()) g = -g;
        a = m;
        b = g;
        double diff = (a - b).abs_upper();
        bool tiny = diff <= std::ldexp(4.0, -static_cast<int>(prec)) * a.abs_upper() +
                                2 * (a.rad() + b.rad());
        bool stalled = it >= 4 && diff >= 0.5 * prev;
        if (tiny || stalled) {
            CBall out = a;
            out.widen(diff);
            return out;
        }
        prev = diff;
    }
    fail(Err::Internal, "complex agm did not converge");
}

CBall agm_period(const CBall& e1, const CBall& e2, const CBall& e3, mpfr_prec_t prec) {
    CBall x = (e1 - e3).sqrt();
    CBall y = (e1 - e2).sqrt();
    CBall m = complex_agm(x, y);
    return CBall::pi(prec) / m;
}

namespace {

struct CurveModel {
    std::string id;
    Rat g2, g3;
};

CurveModel model_for(const ImagQuadField& F) {
    // b-invariants from (a1, a2, a3, a4, a6)
    auto from_a = [](const std::string& id, Rat a1, Rat a2, Rat a3, Rat a4, Rat a6) {
        Rat b2 = a1 * a1 + 4 * a2;
        Rat b4 = 2 * a4 + a1 * a3;
        Rat b6 = a3 * a3 + 4 * a6;
        Rat g2 = (b2 * b2 - 24 * b4) / 12;
        Rat g3 = (36 * b2 * b4 - b2 * b2 * b2 - 216 * b6) / 216;
        return CurveModel{id, g2, g3};
    };
    switch (F.disc()) {
        case -4: return from_a("y^2=x^3-x", 0, 0, 0, -1, 0);
        case -3: return from_a("y^2=x^3+1", 0, 0, 0, 0, 1);
        case -7: return from_a("j=-3375", 1, 0, 0, Rat(-36) / Rat(-3375 - 1728), Rat(-1) / Rat(-3375 - 1728));
        case -8: return from_a("j=8000", 1, 0, 0, Rat(-36) / Rat(8000 - 1728), Rat(-1) / Rat(8000 - 1728));
        case -11: return from_a("j=-32768", 1, 0, 0, Rat(-36) / Rat(-32768 - 1728), Rat(-1) / Rat(-32768 - 1728));
        default: fail(Err::UnsupportedField, "no CM model for this discriminant");
    }
}

// roots of 4x^3 - g2 x - g3 as certified balls
std::vector<CBall> cubic_roots(const Rat& g2, const Rat& g3, mpfr_prec_t prec) {
    // double seeds by Cardano, then ball Newton
    std::complex<double> c2(g2.get_d(), 0), c3(g3.get_d(), 0);
    // depressed: x^3 + p x + q with p = -g2/4, q = -g3/4
    std::complex<double> p = -c2 / 4.0, q = -c3 / 4.0;
    std::complex<double> disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    std::complex<double> u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
    if (std::abs(u) < 1e-30) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
    std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
    std::vector<CBall> roots;
    for (int k = 0; k < 3; ++k) {
        std::complex<double> uk = u * (k == 0 ? std::complex<double>(1, 0) : (k == 1 ? w : w * w));
        std::complex<double> r = uk - p / (3.0 * uk);
        CBall x = CBall::from_d(r.real(), r.imag(), prec);
        for (int it = 0; it < 96; ++it) {
            CBall f = x * x * x - x.scaled_q(g2 / 4) - CBall::from_q(g3 / 4, Rat(0), prec);
            CBall fp = (x * x).scaled_q(Rat(3)) - CBall::from_q(g2 / 4, Rat(0), prec);
            CBall corr = f / fp;
            x = x - corr;
            x.set_rad(0.0); // midpoint iteration; enclosure computed at the end
            if (corr.abs_upper() < std::ldexp(1.0, -static_cast<int>(prec) + 8)) break;
        }
        // enclosure: residual / derivative lower bound
        CBall f = x * x * x - x.scaled_q(g2 / 4) - CBall::from_q(g3 / 4, Rat(0), prec);
        CBall fp = (x * x).scaled_q(Rat(3)) - CBall::from_q(g2 / 4, Rat(0), prec);
        double extra = 2.0 * f.abs_upper() / fp.abs_lower();
        x.widen(extra);
        roots.push_back(x);
    }
    return roots;
}

} // namespace

PeriodData period_omega(const ImagQuadField& F, mpfr_prec_t prec) {
    CurveModel M = model_for(F);
    // g2, g3 of the embedded O_L via the certified engine
    LatticeC OL = make_lattice(Ideal::one(F), Ideal(), prec);
    double target = std::ldexp(1.0, -static_cast<int>(prec) + 24);
    CBall G4 = coset_sum_theta(OL, QuadRat(Rat(0), Rat(0)), 4, target);
    CBall G6 = coset_sum_theta(OL, QuadRat(Rat(0), Rat(0)), 6, target);
    CBall g2L = G4.scaled_q(Rat(60));
    CBall g3L = G6.scaled_q(Rat(140));
    CBall omega(prec);
    if (F.disc() == -4) {
        // g3 = 0: Omega^4 = g2(O_L)/g2m; the 4th-root ambiguity is a unit
        CBall r = g2L.scaled_q(Rat(1) / M.g2);
        omega = r.sqrt().sqrt();
    } else if (F.disc() == -3) {
        // g2 = 0: Omega^6 = g3(O_L)/g3m; 6th-root ambiguity is a unit
        CBall r6 = g3L.scaled_q(Rat(1) / M.g3);
        CBall rh = r6.sqrt();
        std::complex<double> seed0 = std::pow(std::complex<double>(rh.mid_re_d(), rh.mid_im_d()),
                                              1.0 / 3.0);
        CBall x = CBall::from_d(seed0.real(), seed0.imag(), prec);
        for (int it = 0; it < 96; ++it) {
            CBall f = x * x * x - rh;
            CBall fp = (x * x).scaled_q(Rat(3));
            CBall corr = f / fp;
            x = x - corr;
            x.set_rad(0.0);
            if (corr.abs_upper() < std::ldexp(1.0, -static_cast<int>(prec) + 8)) break;
        }
        CBall f = x * x * x - rh;
        CBall fp = (x * x).scaled_q(Rat(3));
        x.widen(2.0 * f.abs_upper() / fp.abs_lower() + 2 * rh.rad() / fp.abs_lower());
        omega = x;
    } else {
        CBall r = (g3L.scaled_q(M.g2)) / (g2L.scaled_q(M.g3));
        omega = r.sqrt();
    }
    // canonical associate: the branch of Omega is only defined up to a unit;
    // pick the unit multiple with maximal real part (then imaginary part)
    {
        CBall best = omega;
        for (const QuadInt& u : F.units()) {
            CBall cand = omega * F.embed(QuadRat(u), prec);
            if (cand.mid_re_d() > best.mid_re_d() + 1e-30 ||
                (std::fabs(cand.mid_re_d() - best.mid_re_d()) <= 1e-30 &&
                 cand.mid_im_d() > best.mid_im_d()))
                best = cand;
        }
        omega = best;
    }
    // certification: Omega^4 g2m = g2(O_L), Omega^6 g3m = g3(O_L)
    if (M.g2 != 0) {
        CBall lhs = omega.pow_ui(4).scaled_q(M.g2);
        if (!lhs.overlaps(g2L)) fail(Err::Internal, "period bootstrap failed the g2 check");
    }
    if (M.g3 != 0) {
        CBall lhs = omega.pow_ui(6).scaled_q(M.g3);
        if (!lhs.overlaps(g3L)) fail(Err::Internal, "period bootstrap failed the g3 check");
    }
    // AGM cross-check: some AGM period of the model must be an O_L multiple
    auto roots = cubic_roots(M.g2, M.g3, prec);
    bool agm_ok = false;
    for (int i = 0; i < 3 && !agm_ok; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        CBall q = agm_period(roots[i], roots[j], roots[k], prec);
        CBall ratio = q / omega;
        // nearest O_L element
        double rr = ratio.mid_re_d(), ri = ratio.mid_im_d();
        double wim = F.embed(QuadRat(Rat(0), Rat(1)), 64).mid_im_d();
        double wre = F.embed(QuadRat(Rat(0), Rat(1)), 64).mid_re_d();
        long cb = std::lround(ri / wim);
        long ca = std::lround(rr - cb * wre);
        if (ca == 0 && cb == 0) continue;
        CBall cand = F.embed(QuadRat(Rat(ca), Rat(cb)), prec);
        if (ratio.dist_upper(cand) < 1e-10) agm_ok = true;
    }
    if (!agm_ok) fail(Err::Internal, "AGM cross-check of the period failed");
    PeriodData P;
    P.F = &F;
    P.model_id = M.id;
    P.omega = omega;
    P.model_g2g3 = {M.g2, M.g3};
    P.prec = prec;
    return P;
}

// ---------------------------------------------------------------------------

ZetaPoly Recognition::as_zeta() const { return ZetaPoly::from_canonical(conductor, coords); }

Recognition recognize_algebraic(const CBall& z, unsigned k, const Int& denom_bound) {
    Recognition out;
    out.conductor = k;
    unsigned m = euler_phi(k);
    mpfr_prec_t prec = z.prec();
    double err = std::max(z.rad(), std::ldexp(1.0, -static_cast<int>(prec) + 16));
    // scale so that the relation residual dominates the identity block
    double logC = -std::log2(err) - 6;
    if (logC < 30) return out; // nowhere near enough precision
    long S = std::min<long>(static_cast<long>(logC), 3000);
    // rows: i < m: [e_i | C Re(zeta^i), C Im(zeta^i)]; row m: [e_m | -C Re z, -C Im z]
    std::vector<std::vector<Int>> rows(m + 1, std::vector<Int>(m + 3, Int(0)));
    auto scaled = [&](mpfr_srcptr v) {
        mpfr_t t;
        mpfr_init2(t, prec + 64);
        mpfr_mul_2ui(t, v, static_cast<unsigned long>(S), MPFR_RNDN);
        Int out_i;
        mpfr_get_z(out_i.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return out_i;
    };
    for (unsigned i = 0; i < m; ++i) {
        CBall zi = unit_root(Rat(static_cast<long>(i), static_cast<long>(k)), prec);
        rows[i][i] = 1;
        rows[i][m + 1] = scaled(zi.re());
        rows[i][m + 2] = scaled(zi.im());
    }
    rows[m][m] = 1;
    rows[m][m + 1] = -scaled(z.re());
    rows[m][m + 2] = -scaled(z.im());
    lll_reduce(rows);
    // pick the shortest vector with a nonzero last coefficient
    for (const auto& r : rows) {
        Int den = r[m];
        if (den == 0) continue;
        std::vector<Rat> coords(m);
        for (unsigned i = 0; i < m; ++i) coords[i] = Rat(r[i]) / Rat(den);
        // verify by back-substitution
        CBall acc(prec);
        for (unsigned i = 0; i < m; ++i) {
            if (coords[i] == 0) continue;
            acc += unit_root(Rat(static_cast<long>(i), static_cast<long>(k)), prec).scaled_q(coords[i]);
        }
        double resid = acc.dist_upper(z);
        if (resid > 10 * err + 10 * z.rad()) continue;
        Int dena = den < 0 ? Int(-den) : den;
        if (dena > denom_bound) continue;
        out.ok = true;
        out.coords = coords;
        out.denominator = dena;
        out.residual = resid;
        return out;
    }
    return out;
}

Recognition recognize_in_conductors(const CBall& z, const std::vector<unsigned>& ks,
                                    const Int& denom_bound) {
    std::vector<unsigned> order = ks;
    std::sort(order.begin(), order.end(),
              [](unsigned a, unsigned b) { return euler_phi(a) != euler_phi(b) ? euler_phi(a) < euler_phi(b) : a < b; });
    for (unsigned k : order) {
        Recognition r = recognize_algebraic(z, k, denom_bound);
        if (r.ok) return r;
    }
    return Recognition{};
}

} // namespace eiskron
