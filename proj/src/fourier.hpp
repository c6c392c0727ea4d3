#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "intutil.hpp"
#include "padic.hpp"
#include "quadfield.hpp"

namespace eiskron {

// Coordinate space for p^n-torsion of a rank-r lattice: points of T/p^nT,
// identified with p^{-n}L/L through the fixed pairing. For field-backed
// spaces the pairing is the trace form; for plain Zp^r it is the dot
// product. Both are perfect mod p^n (p unramified).
struct TorsionSpace {
    long p = 2;
    int rank = 1;
    int level = 0;                       // n
    const ImagQuadField* field = nullptr; // optional O_L tensor Zp structure
    std::string lattice_label = "Zp";

    long pn() const; // p^level (fits in long at desk scale)
    long points() const;
    std::array<std::array<long, 2>, 2> gram() const; // pairing matrix mod p^n

    bool same_group(const TorsionSpace& o) const {
        return p == o.p && rank == o.rank && level == o.level && field == o.field;
    }
    bool operator==(const TorsionSpace& o) const {
        return same_group(o) && lattice_label == o.lattice_label;
    }
};

struct TorsionPoint {
    std::array<long, 2> c{0, 0}; // coordinates mod p^n
};

// A character of T/p^nT presented by the torsion point pairing against it.
struct FiniteCharacter {
    TorsionSpace space;
    TorsionPoint dual_point;
    // image exponents of the basis vectors: chi(e_j) = zeta_{p^n}^{exp[j]}
    std::array<long, 2> basis_exponents() const;
    long pair(const TorsionPoint& s) const; // exponent of zeta_{p^n} at s
    bool is_trivial() const;
};

// Finitely supported function on p^{-n}L/L (equivalently T/p^nT) with exact
// cyclotomic values.
class TorsionFunction {
public:
    TorsionFunction() = default;
    TorsionFunction(const TorsionSpace& s, unsigned value_modulus = 1);

    const TorsionSpace& space() const { return space_; }
    long size() const { return static_cast<long>(values_.size()); }
    unsigned value_modulus() const { return zmod_; }

    long index_of(const TorsionPoint& t) const;
    TorsionPoint point_at(long idx) const;

    const ZetaPoly& value(const TorsionPoint& t) const { return values_[index_of(t)]; }
    const ZetaPoly& value_at(long idx) const { return values_[idx]; }
    void set_value(const TorsionPoint& t, const ZetaPoly& v);
    void add_value(const TorsionPoint& t, const ZetaPoly& v);

    static TorsionFunction delta(const TorsionSpace& s, const TorsionPoint& t, const Rat& mass = Rat(1));
    static TorsionFunction constant(const TorsionSpace& s, const Rat& mass);
    static TorsionFunction constant_on_units(const TorsionSpace& s, const Rat& mass);

    bool is_zero() const;
    bool operator==(const TorsionFunction& o) const;

    // view a level-m function at level n >= m through T/p^n ->> T/p^m
    TorsionFunction pullback_to_level(int n) const;
    // zero-padding inclusion p^{-m}L/L into p^{-n}L/L (torsion-point role)
    TorsionFunction include_to_level(int n) const;
    // coarsen a zero-padded function back (inverse of include_to_level)
    TorsionFunction restrict_to_level(int m) const;

    bool unit_supported() const;
    bool is_unit_point(const TorsionPoint& t) const;

    // exact field element of L (or Q^r coordinates) representing the point
    QuadRat point_element(const TorsionPoint& t) const; // field-backed spaces

    TorsionFunction promoted_values(unsigned zmod) const;

private:
    TorsionSpace space_;
    unsigned zmod_ = 1;
    std::vector<ZetaPoly> values_;
};

// rho_hat(chi) = (1/#G) sum_s chi(s)^{-1} rho(s), exactly, for all level-n
// characters; returned as a function on the dual torsion points plus the
// character-keyed view
struct FourierTable {
    TorsionFunction table; // indexed by the dual point of each character
    FiniteCharacter character_at(long idx) const;
    const ZetaPoly& coefficient(const FiniteCharacter& chi) const;
};

FourierTable finite_fourier(const TorsionFunction& rho, int n);
TorsionFunction inverse_finite_fourier(const FourierTable& tab);
TorsionFunction convolve(const TorsionFunction& f1, const TorsionFunction& f2);
TorsionFunction extend_by_zero(const TorsionFunction& rho_on_units);

// the three-case local table for the transform of the unit-indicator
Rat char_hat(const Int& Np, long v);

// sum over characters of rho_hat(chi) * f(chi); throws MissingCharacterValue
// when f skips a character with a nonzero coefficient
ZetaPoly integrate_against(const FourierTable& rho_hat,
                           const std::map<long, ZetaPoly>& f_values_by_index);
CBall integrate_against(const FourierTable& rho_hat,
                        const std::map<long, CBall>& f_values_by_index, mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// W-analyticity

// row span of a matrix over the p-adic coefficient field
struct AnalyticityCondition {
    long p = 2;
    int rank = 2;
    std::vector<std::vector<Padic>> rows;
    std::string tag; // e.g. "W(Sigma)"
};

// chi_{beta (x) z}: z^{beta(g)} with |z - 1| < 1
struct CharacterPoint {
    std::vector<Int> beta;
    Padic z;
};

enum class Analyticity { Yes, No };

// decides membership of (beta_i log z)_i in the row span of W at the working
// precision; PrecisionInsufficient when the residual is not distinguishable
Analyticity is_W_analytic(const CharacterPoint& chi, const AnalyticityCondition& W,
                          long decision_margin = 3);
Analyticity is_W_analytic_differential(const std::vector<Padic>& dchi,
                                       const AnalyticityCondition& W, long decision_margin = 3);

// W(Sigma) for the CM type of an imaginary quadratic field: the line spanned
// by the chosen embedding's coordinate functional (1, sigma(w))
AnalyticityCondition w_sigma(const ImagQuadField& F, long p, long absprec);
// differential of z -> z^{-alpha} through the Sigma-embedding
std::vector<Padic> sigma_power_differential(const ImagQuadField& F, long p, long alpha, long absprec);
// differential of the inverse norm direction z -> N(z)^{-1}
std::vector<Padic> norm_inverse_differential(const ImagQuadField& F, long p, long absprec);

// ---------------------------------------------------------------------------
// Amice transform at finite precision

// multi-index power series in r variables truncated at total degree D
struct AmiceSeries {
    int rank = 1;
    int degree = 0;
    long p = 2;
    std::vector<Padic> coeff; // dense, index = i0 + i1*(D+1)
    long index(int i0, int i1) const { return i0 + static_cast<long>(i1) * (degree + 1); }
};

// level-n measure table on T/p^nT (rank <= 2 over Zp, no field structure
// needed) with exact rational masses
struct DistributionTable {
    TorsionSpace space;
    std::vector<Rat> mass; // indexed like TorsionFunction
};

DistributionTable refine_table(const DistributionTable& t); // level n -> n+1, equal split
DistributionTable dirac_table(const TorsionSpace& s, const TorsionPoint& t, const Rat& m = Rat(1));
DistributionTable convolve_tables(const DistributionTable& a, const DistributionTable& b);

AmiceSeries amice_transform(const DistributionTable& mu, int degree, long padic_prec);
AmiceSeries amice_multiply(const AmiceSeries& a, const AmiceSeries& b);
bool amice_equal(const AmiceSeries& a, const AmiceSeries& b);
// integrate chi_{beta (x) z} against the table (Dirac lift of the masses)
Padic amice_pair(const DistributionTable& mu, const CharacterPoint& chi, long padic_prec);
// evaluate a truncated series at x_i = z^{beta_i} - 1
Padic amice_eval(const AmiceSeries& f, const CharacterPoint& chi);

} // namespace eiskron
