#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ball.hpp"
#include "heckechar.hpp"
#include "quadfield.hpp"

namespace eiskron {

// Embedded rank-2 lattice: a fractional ideal with a Gauss-reduced exact
// Z-basis, its ball embedding, and the unit group O_f^* acting on it.
struct LatticeC {
    const ImagQuadField* F = nullptr;
    Ideal ideal;
    QuadRat b1, b2;            // reduced exact basis
    CBall w1, w2;              // embedded basis
    double covol_lo = 0;       // certified bounds
    double shortest_lo = 0;    // lower bound on the shortest vector
    double diam_hi = 0;        // upper bound on the cell diameter
    std::vector<QuadInt> gamma; // units congruent to 1 mod f
    mpfr_prec_t prec = 128;
    std::string label;

    CBall covol_ball() const;  // N(ideal) * sqrt|d| / 2
};

LatticeC make_lattice(const Ideal& lam, const Ideal& f_for_gamma, mpfr_prec_t prec);

// finitely supported function on Q (x) Lambda / Lambda given by exact points
// and exact cyclotomic weights; points are kept reduced mod Lambda
struct CosetPoint {
    QuadRat point;
    ZetaPoly weight;
};
using CosetFunction = std::vector<CosetPoint>;

QuadRat reduce_mod_lattice(const LatticeC& L, const QuadRat& x);

struct EisParams {
    enum class Mode { Auto, Direct, Theta } mode = Mode::Auto;
    mpfr_prec_t prec = 192;
    double tail_target = 1e-30;  // theta path
    double radius = 0.0;         // direct path; 0 = derive from tail_target_direct
    double tail_target_direct = 1e-10;
    bool box_order = false;      // oracle enumeration order for the direct path
    bool experimental_low_weight = false;
    bool check_invariance = true;
};

struct EisensteinValue {
    CBall value;         // radius includes the certified truncation tail
    double abs_error;
    long alpha = 0;
    long s = 0;
    std::string lattice_label;
    double radius_used = 0;
};

// sum over nonzero lambda in x + Lambda of lambda^{-alpha} N(lambda)^{-s}
CBall coset_sum_direct(const LatticeC& L, const QuadRat& x, long alpha, long s, double R,
                       bool box_order);
// the same value at s = 0 through the incomplete-gamma decomposition
CBall coset_sum_theta(const LatticeC& L, const QuadRat& x, long alpha, double tail_target);

// E^{0,alpha}(f, s, Lambda, Gamma)
EisensteinValue eisenstein_series(const LatticeC& L, const CosetFunction& f, long alpha, long s,
                                  const EisParams& par);

// L_f(chi, s, [b]) = chi(b) Nb^{-s} E^{0,alpha}(delta_1, s, f b^{-1}, O_f^*)
EisensteinValue partial_L(const HeckeCharacter& chi, long s, const Ideal& b, const EisParams& par);
// sum of partial_L over ray class representatives coprime to aux
EisensteinValue full_L(const HeckeCharacter& chi, long s, const EisParams& par,
                       const Ideal& aux = Ideal());
// independent oracle: truncated sum over integral ideals in the ray class
CBall l_series_ideal_sum(const HeckeCharacter& chi, long s, const Ideal& b, double normbound,
                         mpfr_prec_t prec);

// Nc E^{0,alpha}(rho * delta_1, 0, f b^{-1}, Gamma) - E^{0,alpha}(rho * delta_1, 0, c^{-1} f b^{-1}, Gamma)
// rho is a p-power-level torsion function (transform side), delta_1 shifts by 1
EisensteinValue smoothed_eisenstein(const HeckeCharacter& chi, const TorsionFunction& rho_hat,
                                    long alpha, const Ideal& b, const Ideal& c,
                                    const EisParams& par);

// ---------------------------------------------------------------------------
// periods

struct PeriodData {
    const ImagQuadField* F = nullptr;
    std::string model_id;
    CBall omega;
    std::vector<Rat> model_g2g3; // exact invariants of the model
    mpfr_prec_t prec = 0;
};

// Omega with Omega * O_L the period lattice of the built-in model for the
// field; certified through the g2/g3 bootstrap and cross-checked by AGM
PeriodData period_omega(const ImagQuadField& F, mpfr_prec_t prec);

// optimal complex AGM (principal square roots, right-half-plane choice)
CBall complex_agm(CBall a, CBall b);
// real lemniscate-style AGM period pi / M(x, y)
CBall agm_period(const CBall& e_big, const CBall& e_mid, const CBall& e_small, mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// recognition

struct Recognition {
    bool ok = false;
    unsigned conductor = 1;
    std::vector<Rat> coords; // in the power basis of Q(zeta_k)
    Int denominator = 0;
    double residual = 0;
    ZetaPoly as_zeta() const;
};

// integer-relation search for z in Q(zeta_k) with bounded denominator,
// verified by back-substitution within 10x the input error
Recognition recognize_algebraic(const CBall& z, unsigned k, const Int& denom_bound);
// try several conductors in ascending degree order
Recognition recognize_in_conductors(const CBall& z, const std::vector<unsigned>& ks,
                                    const Int& denom_bound);

} // namespace eiskron
