#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ball.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "intutil.hpp"
#include "padic.hpp"

namespace eiskron {

class ImagQuadField;

// a + b*w with integer coordinates, w the canonical ring generator
struct QuadInt {
    Int a{0}, b{0};
    bool operator==(const QuadInt& o) const { return a == o.a && b == o.b; }
    bool operator<(const QuadInt& o) const { return b != o.b ? b < o.b : a < o.a; }
};

// a + b*w with rational coordinates
struct QuadRat {
    Rat a{0}, b{0};
    QuadRat() = default;
    QuadRat(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
    QuadRat(const QuadInt& z) : a(z.a), b(z.b) {}
    bool operator==(const QuadRat& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a == 0 && b == 0; }
};

// Imaginary quadratic field Q(sqrt(d)) of fundamental discriminant d < 0,
// with ring generator w = (d mod 4 == 1 ? (1+sqrt d)/2 : sqrt(d)/2), the
// principal complex embedding, and a deterministic p-adic embedding.
class ImagQuadField {
public:
    static const ImagQuadField& get(long disc);

    long disc() const { return d_; }
    Int trw() const { return trw_; }   // trace of w
    Int nmw() const { return nmw_; }   // norm of w
    int class_number_one() const;      // 1 if in the h=1 list, 0 otherwise
    const std::vector<QuadInt>& units() const { return units_; }
    unsigned num_units() const { return static_cast<unsigned>(units_.size()); }

    // ring arithmetic
    QuadInt mul(const QuadInt& x, const QuadInt& y) const;
    QuadInt add(const QuadInt& x, const QuadInt& y) const;
    QuadInt sub(const QuadInt& x, const QuadInt& y) const;
    QuadInt conj(const QuadInt& x) const;
    Int norm(const QuadInt& x) const;
    Int trace(const QuadInt& x) const;
    QuadInt pow(QuadInt x, unsigned long e) const;

    QuadRat mul(const QuadRat& x, const QuadRat& y) const;
    QuadRat add(const QuadRat& x, const QuadRat& y) const;
    QuadRat sub(const QuadRat& x, const QuadRat& y) const;
    QuadRat conj(const QuadRat& x) const;
    Rat norm(const QuadRat& x) const;
    Rat trace(const QuadRat& x) const;
    QuadRat inv(const QuadRat& x) const;
    QuadRat div(const QuadRat& x, const QuadRat& y) const { return mul(x, inv(y)); }
    QuadRat pow_si(QuadRat x, long e) const;

    // principal complex embedding: w -> (tr + i sqrt|d|)/2
    CBall embed(const QuadRat& x, mpfr_prec_t prec) const;

    // exact image of w in Q(zeta_{|d|'}), used to express field elements
    // cyclotomically when needed (|d|' = |d| or 8 for d = -8, 4 for d = -4)
    unsigned cyclo_conductor() const;
    ZetaPoly to_cyclo(const QuadRat& x) const;

    // deterministic p-adic embedding data for unramified p; force_deg2
    // realizes a split embedding inside the unramified quadratic extension
    // (same root choice) when values need roots of unity beyond mu_{p-1}
    struct PadicEmbedding {
        const PadicCtx* ctx;
        Padic w_image;   // chosen root of x^2 - tr x + nm
        bool split;
    };
    PadicEmbedding padic_embedding(long p, long absprec, bool force_deg2 = false) const;
    Padic embed_p(const QuadRat& x, const PadicEmbedding& e, long absprec) const;

private:
    explicit ImagQuadField(long d);
    long d_;
    Int trw_, nmw_;
    std::vector<QuadInt> units_;
};

// Nonzero fractional ideal of a class-number-one field, held by a canonical
// generator (deterministic associate).
class Ideal {
public:
    Ideal() = default;
    static Ideal principal(const ImagQuadField& F, const QuadRat& g);
    static Ideal principal(const ImagQuadField& F, const QuadInt& g) { return principal(F, QuadRat(g)); }
    static Ideal one(const ImagQuadField& F) { return principal(F, QuadRat(Rat(1), Rat(0))); }

    const ImagQuadField& field() const { return *F_; }
    const QuadRat& gen() const { return gen_; }
    Rat norm() const { return norm_; } // |N(gen)|
    bool is_integral() const;
    Int norm_z() const; // integral ideals only

    Ideal mul(const Ideal& o) const;
    Ideal inverse() const;
    Ideal pow(long e) const;
    Ideal conjugate() const;
    bool equals(const Ideal& o) const;
    bool is_coprime(const Ideal& o) const; // integral ideals
    bool divides(const Ideal& o) const;    // this | o, integral
    long val_at(const Ideal& prime) const; // valuation of this at a prime ideal

    // Z-basis (g, g*w) of an integral ideal in Hermite form:
    // columns (a,0),(b,d) in coordinates over (1, w)
    Hnf2 hnf() const;

private:
    const ImagQuadField* F_ = nullptr;
    QuadRat gen_;
    Rat norm_;
};

// primes over an unramified rational prime, residue degrees attached; for
// split p the prime where the chosen iota_p has positive valuation comes
// first
struct PrimeOverP {
    Ideal prime;
    int f = 1; // residue degree
};
std::vector<PrimeOverP> factor_over(const ImagQuadField& F, long p);

// all primes over q, ramified case included (e = 2 flagged)
struct PrimeOverQ {
    Ideal prime;
    int e = 1, f = 1;
};
std::vector<PrimeOverQ> primes_over(const ImagQuadField& F, long q);

// prime factorization of a fractional ideal (class number one)
std::vector<std::pair<Ideal, long>> factor_ideal(const Ideal& a);

// canonical residue representatives modulo an integral ideal
class ResidueRing {
public:
    ResidueRing(const ImagQuadField& F, const Ideal& m);
    const Ideal& modulus() const { return m_; }
    QuadInt reduce(const QuadInt& x) const;
    QuadInt reduce(const QuadRat& x) const; // denominators must be coprime to m
    bool is_coprime(const QuadInt& x) const;
    std::vector<QuadInt> all_residues() const;

private:
    const ImagQuadField* F_;
    Ideal m_;
    Hnf2 h_;
};

// basis decomposition of a finite abelian group given by a multiplication
// oracle on indices 0..n-1
struct AbelianBasis {
    std::vector<int> gens;                 // generator indices
    std::vector<long> orders;              // independent cyclic orders
    std::vector<std::vector<long>> dlog;   // index -> exponent vector
    long size = 1;
    unsigned exponent() const;
};
AbelianBasis abelian_basis(long n, int id, const std::function<int(int, int)>& mul);

// (O/m)^* with its abelian structure
class ResidueUnits {
public:
    ResidueUnits(const ImagQuadField& F, const Ideal& m);
    const ImagQuadField& field() const { return *F_; }
    const Ideal& modulus() const { return m_; }
    const ResidueRing& ring() const { return ring_; }
    long size() const { return static_cast<long>(elems_.size()); }
    const std::vector<QuadInt>& elements() const { return elems_; }
    const AbelianBasis& basis() const { return basis_; }
    int index_of(const QuadInt& reduced) const;
    int mul_idx(int i, int j) const;
    std::vector<long> dlog(const QuadRat& x) const; // x must be coprime to m

private:
    const ImagQuadField* F_;
    Ideal m_;
    ResidueRing ring_;
    std::vector<QuadInt> elems_;
    std::map<std::pair<Int, Int>, int> idx_;
    AbelianBasis basis_;
};

enum class UnitsMode { GlobalUnits, OneUnitsModF };

// ray class group I(m)/P_m of a class-number-one field, realized as
// (O/m)^* divided by the image of the chosen unit group
class RayClassData {
public:
    RayClassData(const ImagQuadField& F, const Ideal& m, UnitsMode mode,
                 const Ideal& f_for_units = Ideal());
    long order() const { return static_cast<long>(coset_reps_.size()); }
    const ResidueUnits& residues() const { return units_; }
    // representative ideals, coprime to m and to aux
    std::vector<Ideal> representatives(const Ideal& aux) const;
    // class index of an ideal coprime to m
    int class_of(const Ideal& a) const;
    int mul_class(int i, int j) const;
    const AbelianBasis& basis() const { return basis_; }
    int coset_rep_unit_index(int cls) const { return coset_reps_[cls]; }

private:
    const ImagQuadField* F_;
    Ideal m_;
    ResidueUnits units_;
    std::vector<int> unit_to_coset_;  // residue-unit index -> coset index
    std::vector<int> coset_reps_;     // coset index -> residue-unit index
    AbelianBasis basis_;
};

} // namespace eiskron
