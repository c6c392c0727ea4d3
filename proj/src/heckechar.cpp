#include "heckechar.hpp"

#include <algorithm>
#include <numeric>

namespace eiskron {

CharValue CharValue::one(const ImagQuadField& F) {
    return CharValue{&F, ZetaPoly::from_q(Rat(1), 1), QuadRat(Rat(1), Rat(0))};
}

CharValue CharValue::mul(const CharValue& o) const {
    if (o.F != F) fail(Err::IncompatibleStructures, "character values over different fields");
    return CharValue{F, zeta * o.zeta, F->mul(elem, o.elem)};
}

CharValue CharValue::inv() const { return CharValue{F, zeta.inv(), F->inv(elem)}; }

CharValue CharValue::pow(long e) const {
    CharValue r = one(*F);
    CharValue b = e < 0 ? inv() : *this;
    unsigned long n = e < 0 ? -e : e;
    while (n) {
        if (n & 1UL) r = r.mul(b);
        b = b.mul(b);
        n >>= 1UL;
    }
    return r;
}

bool CharValue::equals(const CharValue& o) const {
    // compare zeta * elem as elements of the cyclotomic model
    return to_cyclo() == o.to_cyclo();
}

ZetaPoly CharValue::to_cyclo() const { return zeta * F->to_cyclo(elem); }

CBall CharValue::embed(mpfr_prec_t prec) const {
    return zeta.embed(prec) * F->embed(elem, prec);
}

Padic CharValue::embed_p(const ImagQuadField::PadicEmbedding& e, long absprec) const {
    return padic_embed(zeta, *e.ctx, absprec) * F->embed_p(elem, e, absprec);
}

namespace {

// CRT unit: returns e with e == 1 mod A, e == 0 mod B, for coprime integral
// ideals A, B
QuadInt crt_unit(const ImagQuadField& F, const Ideal& A, const Ideal& B) {
    if (hnf_index(A.hnf()) == 1) return QuadInt{0, 0};
    if (hnf_index(B.hnf()) == 1) return QuadInt{1, 0};
    QuadInt gb{Int(B.gen().a.get_num()), Int(B.gen().b.get_num())};
    ResidueUnits UA(F, A);
    // gb^{-1} mod A by Lagrange: gb^{|G|-1}
    QuadInt inv{1, 0};
    QuadInt base = UA.ring().reduce(gb);
    long e = UA.size() - 1;
    while (e) {
        if (e & 1L) inv = UA.ring().reduce(F.mul(inv, base));
        base = UA.ring().reduce(F.mul(base, base));
        e >>= 1L;
    }
    return F.mul(gb, inv); // == 1 mod A, == 0 mod B
}

} // namespace

HeckeCharacter::HeckeCharacter(const ImagQuadField& F, const Ideal& modulus, long alpha,
                               std::vector<long> eps_exponents, long p)
    : F_(&F), m_(modulus), alpha_(alpha), p_(p), eps_(std::move(eps_exponents)) {
    if (!F.class_number_one()) fail(Err::UnsupportedClassNumber, "restricted to class number one");
    if (alpha_ < 1) fail(Err::IncompatibleStructures, "infinity type needs alpha >= 1");
    if (!m_.is_integral()) fail(Err::IncompatibleStructures, "modulus must be integral");
    units_ = std::make_shared<ResidueUnits>(F, m_);
    if (eps_.size() != units_->basis().orders.size())
        fail(Err::IncompatibleStructures, "eps exponent vector has the wrong length");
    // unit consistency: eps(u) = u^alpha for every global unit
    for (const QuadInt& u : F.units()) {
        ZetaPoly lhs = eps_value(units_->ring().reduce(u));
        ZetaPoly rhs = F.to_cyclo(QuadRat(F.pow(u, static_cast<unsigned long>(alpha_))));
        if (!(lhs == rhs))
            fail(Err::IncompatibleStructures,
                 "finite part is inconsistent with the infinity type on the units");
    }
    primes_p_ = factor_over(F, p);
    mod_vp_.clear();
    for (const auto& pr : primes_p_) mod_vp_.push_back(m_.val_at(pr.prime));
    // prime-to-p part of the modulus
    QuadRat fg = m_.gen();
    for (size_t i = 0; i < primes_p_.size(); ++i)
        fg = F.mul(fg, F.pow_si(primes_p_[i].prime.gen(), -mod_vp_[i]));
    f_part_ = Ideal::principal(F, fg);
    if (!f_part_.is_integral() || !f_part_.is_coprime(Ideal::principal(F, QuadInt{Int(p), Int(0)})))
        fail(Err::Internal, "modulus decomposition failed");
    compute_p_conductors();
}

unsigned HeckeCharacter::eps_order() const {
    long o = 1;
    const auto& orders = units_->basis().orders;
    for (size_t j = 0; j < eps_.size(); ++j) {
        long n = orders[j];
        long e = ((eps_[j] % n) + n) % n;
        o = std::lcm(o, n / std::gcd(n, e == 0 ? n : e));
    }
    return static_cast<unsigned>(o);
}

ZetaPoly HeckeCharacter::eps_value(const QuadInt& residue_rep) const {
    const auto& B = units_->basis();
    const auto& v = B.dlog[units_->index_of(residue_rep)];
    unsigned E = B.exponent();
    long ex = 0;
    for (size_t j = 0; j < eps_.size(); ++j)
        ex = (ex + eps_[j] % B.orders[j] * v[j] % E * (E / B.orders[j])) % E;
    return reduced_root(E, ex);
}

CharValue HeckeCharacter::eval(const Ideal& a) const {
    auto fac = factor_ideal(a);
    // coprimality to the modulus
    for (const auto& [q, v] : fac) {
        if (!m_.is_coprime(q))
            fail(Err::NotCoprimeToConductor, "ideal shares a prime with the modulus");
    }
    const auto& B = units_->basis();
    unsigned E = B.exponent();
    long ex = 0;
    QuadRat elem{Rat(1), Rat(0)};
    for (const auto& [q, v] : fac) {
        QuadInt pi{Int(q.gen().a.get_num()), Int(q.gen().b.get_num())};
        const auto& dl = B.dlog[units_->index_of(units_->ring().reduce(pi))];
        for (size_t j = 0; j < eps_.size(); ++j) {
            long term = eps_[j] % B.orders[j] * dl[j] % E * (E / B.orders[j]) % E;
            ex = ((ex + term * (v % E)) % E + E) % E;
        }
        elem = F_->mul(elem, F_->pow_si(QuadRat(pi), -alpha_ * v));
    }
    return CharValue{F_, reduced_root(E, ex), elem};
}

void HeckeCharacter::compute_p_conductors() {
    mp_.assign(primes_p_.size(), 0);
    for (size_t i = 0; i < primes_p_.size(); ++i) {
        long m = mod_vp_[i];
        if (m == 0) continue;
        // other-part valuation constraints
        long k = m;
        for (; k >= 1; --k) {
            // is eps trivial on { y == 1 mod p_i^{k-1} * rest of modulus }?
            // find a witness with eps(y) != 1; if none at k-1, conductor <= k-1
            bool trivial = true;
            for (const QuadInt& y : units_->elements()) {
                QuadInt ym1{y.a - 1, y.b};
                bool in_subgroup = true;
                if (!(ym1.a == 0 && ym1.b == 0)) {
                    Ideal yid = Ideal::principal(*F_, ym1);
                    for (size_t j = 0; j < primes_p_.size(); ++j) {
                        long need = (j == i) ? k - 1 : mod_vp_[j];
                        if (need > 0 && yid.val_at(primes_p_[j].prime) < need) {
                            in_subgroup = false;
                            break;
                        }
                    }
                    if (in_subgroup && hnf_index(f_part_.hnf()) != 1 &&
                        !f_part_.divides(Ideal::principal(*F_, ym1)))
                        in_subgroup = false;
                }
                if (!in_subgroup) continue;
                if (!eps_value(y).is_rational()) {
                    trivial = false;
                    break;
                }
                if (eps_value(y).to_rational() != 1) {
                    trivial = false;
                    break;
                }
            }
            if (!trivial) break;
        }
        mp_[i] = k;
    }
}

bool HeckeCharacter::unramified_at_p() const {
    for (long m : mp_)
        if (m > 0) return false;
    return true;
}

const ImagQuadField::PadicEmbedding& HeckeCharacter::embedding_p(long absprec, bool force_deg2) const {
    int slot = force_deg2 ? 1 : 0;
    if (!empb_[slot] || empb_prec_[slot] < absprec) {
        empb_[slot] = std::make_shared<ImagQuadField::PadicEmbedding>(
            F_->padic_embedding(p_, absprec, force_deg2));
        empb_prec_[slot] = absprec;
    }
    return *empb_[slot];
}

QuadInt HeckeCharacter::crt_lift_p_part(const TorsionPoint& t, int level) const {
    // x == t mod p^level, x == 1 mod f-part
    Int Nf = f_part_.norm_z();
    Int pl = pow_int(Int(p_), static_cast<unsigned long>(level));
    Int g, s, tt;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), Nf.get_mpz_t(), pl.get_mpz_t());
    if (g != 1) fail(Err::Internal, "f-part not coprime to p");
    // u = s*Nf == 1 mod p^level, u in (f)
    QuadInt telt{Int(t.c[0]), Int(t.c[1])};
    Int u = s * Nf;
    Int v = tt * pl; // == 1 - u
    return QuadInt{u * telt.a + v, u * telt.b};
}

TorsionFunction HeckeCharacter::chi_fin(int level, bool inverse_values) const {
    long maxm = 0;
    for (long m : mod_vp_) maxm = std::max(maxm, m);
    if (level < std::max<long>(maxm, 1))
        fail(Err::LevelTooSmall, "chi_fin level below the modulus exponent at p");
    TorsionSpace s;
    s.p = p_;
    s.rank = 2;
    s.level = level;
    s.field = F_;
    s.lattice_label = "O";
    TorsionFunction out(s, 1);
    for (long i = 0; i < out.size(); ++i) {
        TorsionPoint t = out.point_at(i);
        if (!out.is_unit_point(t)) continue;
        QuadInt lift = crt_lift_p_part(t, level);
        ZetaPoly val = eps_value(units_->ring().reduce(lift));
        out.set_value(t, inverse_values ? val.conj() : val);
    }
    return out;
}

HeckeCharacter::LocalFactor HeckeCharacter::local_factor(int which) const {
    if (unramified_at_p())
        return LocalFactor{CharValue::one(*F_), QuadRat(Rat(1), Rat(0)), Ideal::one(*F_)};
    long n0 = 0;
    for (long m : mp_) n0 = std::max(n0, m);

    // F = prod F_p as a level-n0 torsion function
    Ideal Aram = Ideal::one(*F_); // product of ramified p-primes to their conductor exponent
    for (size_t i = 0; i < primes_p_.size(); ++i)
        if (mp_[i] > 0) Aram = Aram.mul(primes_p_[i].prime.pow(mp_[i]));
    Ideal Brest = Ideal::principal(*F_, F_->div(m_.gen(), Aram.gen()));
    QuadInt eA = crt_unit(*F_, Aram, Brest); // == 1 mod Aram, == 0 mod Brest

    TorsionSpace s;
    s.p = p_;
    s.rank = 2;
    s.level = static_cast<int>(n0);
    s.field = F_;
    s.lattice_label = "O";
    TorsionFunction Ff(s, 1);
    for (long i = 0; i < Ff.size(); ++i) {
        TorsionPoint t = Ff.point_at(i);
        QuadInt x{Int(t.c[0]), Int(t.c[1])};
        // zero whenever x is a non-unit at a ramified prime
        bool zero = false;
        Ideal xid = (x.a == 0 && x.b == 0) ? Ideal() : Ideal::principal(*F_, x);
        for (size_t j = 0; j < primes_p_.size(); ++j) {
            if (mp_[j] == 0) continue;
            if (x.a == 0 && x.b == 0) { zero = true; break; }
            if (xid.val_at(primes_p_[j].prime) > 0) { zero = true; break; }
        }
        if (zero) continue;
        // lift: == x at the ramified part, == 1 elsewhere mod m
        QuadInt lift = F_->add(F_->mul(eA, x), F_->sub(QuadInt{1, 0}, eA));
        ZetaPoly val = eps_value(units_->ring().reduce(lift)).conj(); // chi_fin,p(x^{-1})
        Ff.set_value(t, val);
    }
    FourierTable Fhat = finite_fourier(Ff, static_cast<int>(n0));

    // decomposition prod p^{m_p} = (c) n with n coprime to p f and c == 1 mod* f
    QuadRat c0 = Aram.gen();
    Ideal pf = f_part_.mul(Ideal::principal(*F_, QuadInt{Int(p_), Int(0)}));
    std::vector<QuadRat> seen_c;
    for (long bound = 1; bound <= 24; ++bound) {
        for (Int y = -bound; y <= bound; ++y)
            for (Int x = -bound; x <= bound; ++x) {
                if (std::max(abs(x), abs(y)) != bound && bound > 1) continue; // shell order
                QuadInt nu{x, y};
                if (x == 0 && y == 0) continue;
                Ideal nid = Ideal::principal(*F_, nu);
                if (!nid.is_coprime(pf)) continue;
                for (const QuadInt& u : F_->units()) {
                    QuadRat c = F_->div(F_->mul(c0, QuadRat(u)), QuadRat(nu));
                    QuadRat cm1 = F_->sub(c, QuadRat(Rat(1), Rat(0)));
                    bool ok;
                    if (cm1.is_zero()) {
                        ok = true;
                    } else {
                        Ideal cm1id = Ideal::principal(*F_, cm1);
                        ok = true;
                        for (const auto& [q, v] : factor_ideal(f_part_))
                            if (cm1id.val_at(q) < v) { ok = false; break; }
                    }
                    if (!ok) continue;
                    bool dup = false;
                    for (const auto& prev : seen_c)
                        if (prev == c) { dup = true; break; }
                    if (dup) continue;
                    seen_c.push_back(c);
                    if (static_cast<int>(seen_c.size()) - 1 < which) continue;
                    // evaluate F_hat at the class of c^{-1}
                    QuadRat ci = F_->inv(c);
                    Int pn = pow_int(Int(p_), static_cast<unsigned long>(n0));
                    QuadRat yq = F_->mul(ci, QuadRat(Rat(pn), Rat(0)));
                    Int d0 = Int(yq.a.get_den()), d1 = Int(yq.b.get_den());
                    if (mpz_divisible_ui_p(d0.get_mpz_t(), p_) || mpz_divisible_ui_p(d1.get_mpz_t(), p_))
                        fail(Err::Internal, "c^{-1} is not p^-n0-integral");
                    Int md = pn;
                    Int a0 = mod_reduce(Int(yq.a.get_num()) * invmod(mod_reduce(d0, md), md), md);
                    Int a1 = mod_reduce(Int(yq.b.get_num()) * invmod(mod_reduce(d1, md), md), md);
                    TorsionPoint tci{{a0.get_si(), a1.get_si()}};
                    ZetaPoly num = Fhat.table.value(tci);
                    if (num.is_zero())
                        fail(Err::DegenerateDecomposition, "F-hat vanishes at c^{-1}");
                    CharValue den = eval(nid).mul(CharValue{F_, ZetaPoly::from_q(Rat(1), 1),
                                                            F_->pow_si(c, -alpha_)});
                    CharValue val = CharValue{F_, num, QuadRat(Rat(1), Rat(0))}.mul(den.inv());
                    return LocalFactor{val, c, nid};
                }
            }
    }
    fail(Err::DegenerateDecomposition, "no decomposition (c) n found in the search range");
}

ZetaPoly HeckeCharacter::euler_factor() const {
    ZetaPoly out = ZetaPoly::from_q(Rat(1), 1);
    for (size_t i = 0; i < primes_p_.size(); ++i) {
        if (mp_[i] > 0) continue; // ramified primes contribute 1
        const Ideal& pr = primes_p_[i].prime;
        QuadInt pi{Int(pr.gen().a.get_num()), Int(pr.gen().b.get_num())};
        CharValue chip;
        if (mod_vp_[i] == 0) {
            chip = eval(pr);
        } else {
            // modulus carries the prime but the conductor does not: evaluate
            // through the lift that is 1 at the p_i-part of the modulus
            Ideal A = pr.pow(mod_vp_[i]);
            Ideal B = Ideal::principal(*F_, F_->div(m_.gen(), A.gen()));
            QuadInt eA = crt_unit(*F_, A, B);
            // lift == pi mod B, == 1 mod A
            QuadInt lift = F_->add(F_->mul(F_->sub(QuadInt{1, 0}, eA), pi), eA);
            ZetaPoly z = eps_value(units_->ring().reduce(lift));
            chip = CharValue{F_, z, F_->pow_si(QuadRat(pi), -alpha_)};
        }
        ZetaPoly term = chip.inv().to_cyclo();
        term.scale(Rat(1, primes_p_[i].prime.norm_z()));
        out = out * (ZetaPoly::from_q(Rat(1), 1) - term);
    }
    return out;
}

Padic HeckeCharacter::avatar(const Ideal& a, long absprec) const {
    Ideal pm = Ideal::principal(*F_, QuadInt{Int(p_), Int(0)}).mul(m_);
    // require a prime to p and to the modulus
    for (const auto& [q, v] : factor_ideal(a))
        if (!q.is_coprime(pm) && v != 0)
            fail(Err::NotCoprimeToConductor, "avatar needs an ideal prime to p and the conductor");
    CharValue v = eval(a);
    // values of order beyond mu_{p-1} need the unramified quadratic extension
    unsigned K = v.zeta.modulus();
    bool wide = (p_ - 1) % K != 0;
    return v.embed_p(embedding_p(absprec, wide), absprec);
}

Padic HeckeCharacter::avatar_omega(const Ideal& a, long absprec) const {
    return teichmuller(avatar(a, absprec));
}

Padic HeckeCharacter::avatar_one_unit(const Ideal& a, long absprec) const {
    Padic v = avatar(a, absprec);
    return v / teichmuller(v);
}

std::vector<std::vector<long>> HeckeCharacter::valid_eps(const ImagQuadField& F, const Ideal& modulus,
                                                         long alpha) {
    ResidueUnits U(F, modulus);
    const auto& B = U.basis();
    unsigned E = B.exponent();
    // unit residue dlogs and targets
    std::vector<std::vector<long>> udlogs;
    std::vector<ZetaPoly> targets;
    for (const QuadInt& u : F.units()) {
        udlogs.push_back(B.dlog[U.index_of(U.ring().reduce(u))]);
        targets.push_back(F.to_cyclo(QuadRat(F.pow(u, static_cast<unsigned long>(alpha)))));
    }
    std::vector<std::vector<long>> found;
    std::vector<long> e(B.orders.size(), 0);
    auto order_of = [&](const std::vector<long>& ee) {
        long o = 1;
        for (size_t j = 0; j < ee.size(); ++j) {
            long n = B.orders[j];
            long x = ((ee[j] % n) + n) % n;
            o = std::lcm(o, x == 0 ? 1 : n / std::gcd(n, x));
        }
        return o;
    };
    // enumerate all exponent tuples
    while (true) {
        bool ok = true;
        for (size_t ui = 0; ui < udlogs.size() && ok; ++ui) {
            long ex = 0;
            for (size_t j = 0; j < e.size(); ++j)
                ex = (ex + e[j] * udlogs[ui][j] % E * (E / B.orders[j])) % E;
            if (!(ZetaPoly::zeta(E, ex) == targets[ui])) ok = false;
        }
        if (ok) found.push_back(e);
        // increment
        size_t j = 0;
        for (; j < e.size(); ++j) {
            if (++e[j] < B.orders[j]) break;
            e[j] = 0;
        }
        if (j == e.size()) break;
    }
    std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
        long oa = order_of(a), ob = order_of(b);
        if (oa != ob) return oa < ob;
        return a < b;
    });
    return found;
}

} // namespace eiskron
