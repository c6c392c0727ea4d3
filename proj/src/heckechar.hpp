#pragma once

#include <memory>
#include <vector>

#include "fourier.hpp"
#include "quadfield.hpp"

namespace eiskron {

// Multiplicative character value: a root of unity times an element of L.
// Closed under products, inverses and powers; embedded only at evaluation
// boundaries so exact identities stay exact.
struct CharValue {
    const ImagQuadField* F = nullptr;
    ZetaPoly zeta;   // cyclotomic part
    QuadRat elem;    // field part

    static CharValue one(const ImagQuadField& F);
    CharValue mul(const CharValue& o) const;
    CharValue inv() const;
    CharValue pow(long e) const;
    bool equals(const CharValue& o) const; // as elements of Q(zeta)(w)
    bool is_one() const { return equals(one(*F)); }

    ZetaPoly to_cyclo() const;                         // into Q(zeta_lcm)
    CBall embed(mpfr_prec_t prec) const;               // iota_infty
    Padic embed_p(const ImagQuadField::PadicEmbedding& e, long absprec) const;
};

// Algebraic Hecke character of infinity type -alpha on a class-number-one
// field, stored as a character eps of (O/m)^* with eps(u) = u^alpha on the
// global units; chi((x)) = eps(x) x^{-alpha}.
class HeckeCharacter {
public:
    HeckeCharacter(const ImagQuadField& F, const Ideal& modulus, long alpha,
                   std::vector<long> eps_exponents, long p);

    const ImagQuadField& field() const { return *F_; }
    long alpha() const { return alpha_; }
    long p() const { return p_; }
    const Ideal& modulus() const { return m_; }
    const Ideal& f_part() const { return f_part_; }         // prime-to-p part of the modulus
    const ResidueUnits& residues() const { return *units_; }
    const std::vector<long>& eps_exponents() const { return eps_; }
    unsigned eps_order() const;

    // eps on a residue class, as an exact root of unity
    ZetaPoly eps_value(const QuadInt& residue_rep) const;

    // chi on a fractional ideal prime to the modulus
    CharValue eval(const Ideal& a) const;

    // conductor exponent of chi at each prime over p (iota_p prime first)
    const std::vector<long>& p_conductor_exponents() const { return mp_; }
    const std::vector<PrimeOverP>& primes_over_p() const { return primes_p_; }
    bool unramified_at_p() const;

    // the locally constant character chi_fin at level n, as a unit-supported
    // TorsionFunction on (O tensor Zp)/p^n; inverse_values flips chi to chi^{-1}
    TorsionFunction chi_fin(int level, bool inverse_values = false) const;

    // Local(chi, Sigma) together with the decomposition used
    struct LocalFactor {
        CharValue value;
        QuadRat c;
        Ideal n_ideal;
    };
    LocalFactor local_factor(int which_decomposition = 0) const;

    // prod over p | p of (1 - chi(p)^{-1}/Np), ramified primes contributing 1
    ZetaPoly euler_factor() const;

    // p-adic avatar on an ideal prime to p * modulus
    Padic avatar(const Ideal& a, long absprec) const;
    Padic avatar_omega(const Ideal& a, long absprec) const;    // Teichmueller part
    Padic avatar_one_unit(const Ideal& a, long absprec) const; // <chi> part

    // all exponent vectors defining a valid eps for this (modulus, alpha),
    // sorted by (order, exponents); the p argument fixes iota_p conventions
    static std::vector<std::vector<long>> valid_eps(const ImagQuadField& F, const Ideal& modulus,
                                                    long alpha);

private:
    const ImagQuadField* F_;
    Ideal m_, f_part_;
    long alpha_;
    long p_;
    std::shared_ptr<ResidueUnits> units_;
    std::vector<long> eps_;
    std::vector<PrimeOverP> primes_p_;
    std::vector<long> mp_;       // conductor exponent at primes_p_[i]
    std::vector<long> mod_vp_;   // modulus exponent at primes_p_[i]
    mutable std::shared_ptr<ImagQuadField::PadicEmbedding> empb_[2];
    mutable long empb_prec_[2] = {0, 0};

    const ImagQuadField::PadicEmbedding& embedding_p(long absprec, bool force_deg2 = false) const;
    QuadInt crt_lift_p_part(const TorsionPoint& t, int level) const; // == t mod p^level, == 1 mod f
    void compute_p_conductors();
};

} // namespace eiskron
