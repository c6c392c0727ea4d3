#include "fourier.hpp"

#include <algorithm>
#include <numeric>

namespace eiskron {

long TorsionSpace::pn() const {
    long r = 1;
    for (int i = 0; i < level; ++i) r *= p;
    return r;
}

long TorsionSpace::points() const {
    long q = pn();
    return rank == 1 ? q : q * q;
}

std::array<std::array<long, 2>, 2> TorsionSpace::gram() const {
    if (field == nullptr) return {{{1, 0}, {0, 1}}};
    // trace form on (1, w): [[2, tr w], [tr w, (tr w)^2 - 2 N w]]
    long t = field->trw().get_si();
    long nw = field->nmw().get_si();
    return {{{2, t}, {t, t * t - 2 * nw}}};
}

std::array<long, 2> FiniteCharacter::basis_exponents() const {
    auto G = space.gram();
    long q = space.pn();
    auto red = [&](long x) { return ((x % q) + q) % q; };
    return {red(G[0][0] * dual_point.c[0] + G[1][0] * dual_point.c[1]),
            red(G[0][1] * dual_point.c[0] + G[1][1] * dual_point.c[1])};
}

long FiniteCharacter::pair(const TorsionPoint& s) const {
    auto e = basis_exponents();
    long q = space.pn();
    long v = e[0] % q * (s.c[0] % q) % q;
    if (space.rank == 2) v = (v + e[1] % q * (s.c[1] % q)) % q;
    return ((v % q) + q) % q;
}

bool FiniteCharacter::is_trivial() const {
    auto e = basis_exponents();
    long q = space.pn();
    return e[0] % q == 0 && (space.rank == 1 || e[1] % q == 0);
}

TorsionFunction::TorsionFunction(const TorsionSpace& s, unsigned value_modulus)
    : space_(s), zmod_(value_modulus), values_(s.points(), ZetaPoly(value_modulus)) {}

long TorsionFunction::index_of(const TorsionPoint& t) const {
    long q = space_.pn();
    long x0 = ((t.c[0] % q) + q) % q;
    if (space_.rank == 1) return x0;
    long x1 = ((t.c[1] % q) + q) % q;
    return x0 + x1 * q;
}

TorsionPoint TorsionFunction::point_at(long idx) const {
    long q = space_.pn();
    if (space_.rank == 1) return TorsionPoint{{idx % q, 0}};
    return TorsionPoint{{idx % q, idx / q}};
}

void TorsionFunction::set_value(const TorsionPoint& t, const ZetaPoly& v) {
    ZetaPoly w = v;
    if (w.modulus() != zmod_) {
        unsigned k = std::lcm(zmod_, w.modulus());
        if (k != zmod_) {
            zmod_ = k;
            for (auto& x : values_) x = x.promoted(k);
        }
        w = w.promoted(zmod_);
    }
    values_[index_of(t)] = w;
}

void TorsionFunction::add_value(const TorsionPoint& t, const ZetaPoly& v) {
    ZetaPoly cur = values_[index_of(t)];
    cur += v;
    set_value(t, cur);
}

TorsionFunction TorsionFunction::delta(const TorsionSpace& s, const TorsionPoint& t, const Rat& mass) {
    TorsionFunction f(s);
    f.set_value(t, ZetaPoly::from_q(mass, 1));
    return f;
}

TorsionFunction TorsionFunction::constant(const TorsionSpace& s, const Rat& mass) {
    TorsionFunction f(s);
    ZetaPoly v = ZetaPoly::from_q(mass, 1);
    for (auto& x : f.values_) x = v;
    return f;
}

TorsionFunction TorsionFunction::constant_on_units(const TorsionSpace& s, const Rat& mass) {
    TorsionFunction f(s);
    ZetaPoly v = ZetaPoly::from_q(mass, 1);
    for (long i = 0; i < f.size(); ++i)
        if (f.is_unit_point(f.point_at(i))) f.values_[i] = v;
    return f;
}

bool TorsionFunction::is_zero() const {
    for (const auto& v : values_)
        if (!v.is_zero()) return false;
    return true;
}

bool TorsionFunction::operator==(const TorsionFunction& o) const {
    if (!space_.same_group(o.space_)) return false;
    for (long i = 0; i < size(); ++i)
        if (values_[i] != o.values_[i]) return false;
    return true;
}

TorsionFunction TorsionFunction::pullback_to_level(int n) const {
    if (n < space_.level) fail(Err::LevelMismatch, "pullback target level below the function level");
    if (n == space_.level) return *this;
    TorsionSpace s2 = space_;
    s2.level = n;
    TorsionFunction out(s2, zmod_);
    long qm = space_.pn();
    for (long i = 0; i < out.size(); ++i) {
        TorsionPoint t = out.point_at(i);
        TorsionPoint tm{{t.c[0] % qm, t.c[1] % qm}};
        out.values_[i] = values_[index_of(tm)];
    }
    return out;
}

TorsionFunction TorsionFunction::include_to_level(int n) const {
    if (n < space_.level) fail(Err::LevelMismatch, "inclusion target level below the function level");
    if (n == space_.level) return *this;
    TorsionSpace s2 = space_;
    s2.level = n;
    TorsionFunction out(s2, zmod_);
    long scale = 1;
    for (int i = 0; i < n - space_.level; ++i) scale *= space_.p;
    for (long i = 0; i < size(); ++i) {
        TorsionPoint t = point_at(i);
        out.set_value(TorsionPoint{{t.c[0] * scale, t.c[1] * scale}}, values_[i]);
    }
    return out;
}

TorsionFunction TorsionFunction::restrict_to_level(int m) const {
    if (m > space_.level) fail(Err::LevelMismatch, "restriction target above the function level");
    TorsionSpace s2 = space_;
    s2.level = m;
    TorsionFunction out(s2, zmod_);
    long scale = 1;
    for (int i = 0; i < space_.level - m; ++i) scale *= space_.p;
    for (long i = 0; i < size(); ++i) {
        TorsionPoint t = point_at(i);
        if (t.c[0] % scale != 0 || t.c[1] % scale != 0) {
            if (!values_[i].is_zero())
                fail(Err::LevelMismatch, "function is not supported at the coarser level");
            continue;
        }
        out.set_value(TorsionPoint{{t.c[0] / scale, t.c[1] / scale}}, values_[i]);
    }
    return out;
}

bool TorsionFunction::is_unit_point(const TorsionPoint& t) const {
    long p = space_.p;
    if (space_.field == nullptr) {
        if (t.c[0] % p == 0) return false;
        if (space_.rank == 2 && t.c[1] % p == 0) return false;
        return true;
    }
    const auto& F = *space_.field;
    QuadInt x{Int(t.c[0]), Int(t.c[1])};
    return mod_reduce(F.norm(x), Int(p)) != 0;
}

bool TorsionFunction::unit_supported() const {
    for (long i = 0; i < size(); ++i)
        if (!values_[i].is_zero() && !is_unit_point(point_at(i))) return false;
    return true;
}

QuadRat TorsionFunction::point_element(const TorsionPoint& t) const {
    if (space_.field == nullptr) fail(Err::Internal, "point_element needs a field-backed space");
    Rat q(1, space_.pn());
    return QuadRat(Rat(t.c[0]) * q, Rat(t.c[1]) * q);
}

TorsionFunction TorsionFunction::promoted_values(unsigned zmod) const {
    TorsionFunction out(space_, std::lcm(zmod_, zmod));
    for (long i = 0; i < size(); ++i) out.values_[i] = values_[i].promoted(out.zmod_);
    return out;
}

FiniteCharacter FourierTable::character_at(long idx) const {
    return FiniteCharacter{table.space(), table.point_at(idx)};
}

const ZetaPoly& FourierTable::coefficient(const FiniteCharacter& chi) const {
    if (!chi.space.same_group(table.space()))
        fail(Err::LevelMismatch, "character from a different torsion group");
    return table.value(chi.dual_point);
}

FourierTable finite_fourier(const TorsionFunction& rho0, int n) {
    if (rho0.space().level > n) fail(Err::LevelMismatch, "function level exceeds the transform level");
    TorsionFunction rho = rho0.pullback_to_level(n);
    const TorsionSpace& S = rho.space();
    long q = S.pn();
    long G = S.points();
    unsigned K = std::lcm<unsigned>(rho.value_modulus(), static_cast<unsigned>(q));
    rho = rho.promoted_values(K);
    long rotunit = static_cast<long>(K) / q; // zeta_{p^n} = zeta_K^rotunit

    TorsionFunction out(S, K);
    auto Gm = S.gram();
    for (long it = 0; it < G; ++it) {
        TorsionPoint t = out.point_at(it);
        // exponent e(s) = <t, s> via the gram form
        long e0 = (Gm[0][0] * t.c[0] + Gm[1][0] * t.c[1]) % q;
        long e1 = (Gm[0][1] * t.c[0] + Gm[1][1] * t.c[1]) % q;
        ZetaPoly acc(K);
        for (long is = 0; is < G; ++is) {
            const ZetaPoly& v = rho.value_at(is);
            if (v.is_zero()) continue;
            TorsionPoint s = rho.point_at(is);
            long e = (e0 * s.c[0] + e1 * s.c[1]) % q;
            acc.add_rotated(v, -((e % q + q) % q) * rotunit);
        }
        acc.scale(Rat(1, G));
        out.set_value(t, acc);
    }
    return FourierTable{out};
}

TorsionFunction inverse_finite_fourier(const FourierTable& tab) {
    const TorsionSpace& S = tab.table.space();
    long q = S.pn();
    long G = S.points();
    unsigned K = std::lcm<unsigned>(tab.table.value_modulus(), static_cast<unsigned>(q));
    TorsionFunction coeffs = tab.table.promoted_values(K);
    long rotunit = static_cast<long>(K) / q;
    TorsionFunction out(S, K);
    auto Gm = S.gram();
    for (long is = 0; is < G; ++is) {
        TorsionPoint s = out.point_at(is);
        ZetaPoly acc(K);
        for (long it = 0; it < G; ++it) {
            const ZetaPoly& v = coeffs.value_at(it);
            if (v.is_zero()) continue;
            TorsionPoint t = coeffs.point_at(it);
            long e0 = (Gm[0][0] * t.c[0] + Gm[1][0] * t.c[1]) % q;
            long e1 = (Gm[0][1] * t.c[0] + Gm[1][1] * t.c[1]) % q;
            long e = (e0 * s.c[0] + e1 * s.c[1]) % q;
            acc.add_rotated(v, ((e % q + q) % q) * rotunit);
        }
        out.set_value(s, acc);
    }
    return out;
}

TorsionFunction convolve(const TorsionFunction& f1, const TorsionFunction& f2) {
    if (f1.space().p != f2.space().p || f1.space().rank != f2.space().rank ||
        f1.space().field != f2.space().field || f1.space().lattice_label != f2.space().lattice_label)
        fail(Err::LatticeMismatch, "convolution needs functions on the same lattice");
    int n = std::max(f1.space().level, f2.space().level);
    TorsionFunction a = f1.include_to_level(n);
    TorsionFunction b = f2.include_to_level(n);
    unsigned K = std::lcm(a.value_modulus(), b.value_modulus());
    a = a.promoted_values(K);
    b = b.promoted_values(K);
    long q = a.space().pn();
    TorsionFunction out(a.space(), K);
    for (long i = 0; i < a.size(); ++i) {
        if (a.value_at(i).is_zero()) continue;
        TorsionPoint x = a.point_at(i);
        for (long j = 0; j < b.size(); ++j) {
            if (b.value_at(j).is_zero()) continue;
            TorsionPoint y = b.point_at(j);
            TorsionPoint z{{(x.c[0] + y.c[0]) % q, (x.c[1] + y.c[1]) % q}};
            out.add_value(z, a.value_at(i) * b.value_at(j));
        }
    }
    return out;
}

TorsionFunction extend_by_zero(const TorsionFunction& rho) {
    if (!rho.unit_supported())
        fail(Err::Internal, "extend_by_zero input must be supported on units");
    return rho; // values off the units are already zero
}

Rat char_hat(const Int& Np, long v) {
    if (v >= 0) return Rat(1) - Rat(1, Np);
    if (v == -1) return Rat(-1, Np);
    return Rat(0);
}

ZetaPoly integrate_against(const FourierTable& rho_hat, const std::map<long, ZetaPoly>& f) {
    ZetaPoly acc(1);
    for (long i = 0; i < rho_hat.table.size(); ++i) {
        const ZetaPoly& c = rho_hat.table.value_at(i);
        if (c.is_zero()) continue;
        auto it = f.find(i);
        if (it == f.end())
            fail(Err::MissingCharacterValue, "no evaluation supplied for character index " + std::to_string(i));
        acc += c * it->second;
    }
    return acc;
}

CBall integrate_against(const FourierTable& rho_hat, const std::map<long, CBall>& f, mpfr_prec_t prec) {
    CBall acc(prec);
    for (long i = 0; i < rho_hat.table.size(); ++i) {
        const ZetaPoly& c = rho_hat.table.value_at(i);
        if (c.is_zero()) continue;
        auto it = f.find(i);
        if (it == f.end())
            fail(Err::MissingCharacterValue, "no evaluation supplied for character index " + std::to_string(i));
        acc += c.embed(prec) * it->second;
    }
    return acc;
}

// ---------------------------------------------------------------------------

namespace {

// Gaussian elimination of v against the rows of W (in place on copies);
// returns the residual vector
std::vector<Padic> eliminate(const std::vector<std::vector<Padic>>& rows, std::vector<Padic> v) {
    std::vector<std::vector<Padic>> W = rows;
    size_t ncols = v.size();
    size_t rpos = 0;
    for (size_t c = 0; c < ncols && rpos < W.size(); ++c) {
        // pick the pivot of minimal valuation in column c
        long best = -1;
        long bestval = 0;
        for (size_t r = rpos; r < W.size(); ++r) {
            if (W[r][c].is_zero_at_precision()) continue;
            long val = W[r][c].valuation();
            if (best < 0 || val < bestval) {
                best = static_cast<long>(r);
                bestval = val;
            }
        }
        if (best < 0) continue;
        std::swap(W[rpos], W[best]);
        for (size_t r = rpos + 1; r < W.size(); ++r) {
            if (W[r][c].is_zero_at_precision()) continue;
            Padic f = W[r][c] / W[rpos][c];
            for (size_t k = 0; k < ncols; ++k) W[r][k] = W[r][k] - f * W[rpos][k];
        }
        if (!v[c].is_zero_at_precision()) {
            Padic f = v[c] / W[rpos][c];
            for (size_t k = 0; k < ncols; ++k) v[k] = v[k] - f * W[rpos][k];
        }
        ++rpos;
    }
    return v;
}

} // namespace

Analyticity is_W_analytic_differential(const std::vector<Padic>& dchi, const AnalyticityCondition& W,
                                       long decision_margin) {
    if (static_cast<int>(dchi.size()) != W.rank)
        fail(Err::IncompatibleStructures, "differential vector has the wrong rank");
    auto res = eliminate(W.rows, dchi);
    bool all_zeroish = true;
    long min_prec = 1 << 30;
    for (const auto& x : res) {
        if (!x.is_zero_at_precision()) {
            all_zeroish = false;
            break;
        }
        min_prec = std::min(min_prec, x.abs_precision());
    }
    if (!all_zeroish) return Analyticity::No;
    if (min_prec < decision_margin)
        fail(Err::PrecisionInsufficient,
             "membership undecidable: residual is O(p^" + std::to_string(min_prec) +
                 ") which is below the decision margin");
    return Analyticity::Yes;
}

Analyticity is_W_analytic(const CharacterPoint& chi, const AnalyticityCondition& W, long decision_margin) {
    if (static_cast<int>(chi.beta.size()) != W.rank)
        fail(Err::IncompatibleStructures, "character point has the wrong rank");
    const PadicCtx& c = chi.z.ctx();
    Padic one = Padic::from_int(c, 1, chi.z.abs_precision());
    Padic zm1 = chi.z - one;
    if (!zm1.is_zero_at_precision() && zm1.valuation() < 1)
        fail(Err::ConvergenceDomainViolated, "character point needs |z-1| < 1");
    Padic lg = plog(chi.z);
    std::vector<Padic> d;
    d.reserve(chi.beta.size());
    for (const Int& b : chi.beta) d.push_back(Padic::from_rat(c, Rat(b), lg.abs_precision()) * lg);
    return is_W_analytic_differential(d, W, decision_margin);
}

AnalyticityCondition w_sigma(const ImagQuadField& F, long p, long absprec) {
    auto emb = F.padic_embedding(p, absprec);
    AnalyticityCondition W;
    W.p = p;
    W.rank = 2;
    W.tag = "W(Sigma)";
    W.rows = {{Padic::from_int(*emb.ctx, 1, absprec), emb.w_image}};
    return W;
}

std::vector<Padic> sigma_power_differential(const ImagQuadField& F, long p, long alpha, long absprec) {
    auto emb = F.padic_embedding(p, absprec);
    Padic a = Padic::from_rat(*emb.ctx, Rat(-alpha), absprec);
    return {a, a * emb.w_image};
}

std::vector<Padic> norm_inverse_differential(const ImagQuadField& F, long p, long absprec) {
    // -d(N) = -(sigma + sigma-bar) = -(2, tr w)
    auto emb = F.padic_embedding(p, absprec);
    return {Padic::from_rat(*emb.ctx, Rat(-2), absprec),
            Padic::from_rat(*emb.ctx, Rat(-F.trw()), absprec)};
}

// ---------------------------------------------------------------------------

DistributionTable dirac_table(const TorsionSpace& s, const TorsionPoint& t, const Rat& m) {
    DistributionTable d{s, std::vector<Rat>(s.points(), Rat(0))};
    TorsionFunction idx(s);
    d.mass[idx.index_of(t)] = m;
    return d;
}

DistributionTable refine_table(const DistributionTable& t) {
    TorsionSpace s2 = t.space;
    s2.level += 1;
    DistributionTable out{s2, std::vector<Rat>(s2.points(), Rat(0))};
    TorsionFunction icoarse(t.space), ifine(s2);
    long fibers = t.space.rank == 1 ? t.space.p : t.space.p * t.space.p;
    long qm = t.space.pn();
    for (long i = 0; i < static_cast<long>(out.mass.size()); ++i) {
        TorsionPoint f = ifine.point_at(i);
        TorsionPoint c{{f.c[0] % qm, f.c[1] % qm}};
        out.mass[i] = t.mass[icoarse.index_of(c)] / fibers;
    }
    return out;
}

DistributionTable convolve_tables(const DistributionTable& a, const DistributionTable& b) {
    if (!a.space.same_group(b.space)) fail(Err::LatticeMismatch, "tables on different groups");
    // Dirac lifts live on Zp^r: point masses at the canonical representatives
    // add without wrapping, so the result needs one more level
    TorsionSpace sfine = a.space;
    sfine.level += 1;
    DistributionTable out{sfine, std::vector<Rat>(sfine.points(), Rat(0))};
    TorsionFunction idx(a.space), idxf(sfine);
    for (long i = 0; i < static_cast<long>(a.mass.size()); ++i) {
        if (a.mass[i] == 0) continue;
        TorsionPoint x = idx.point_at(i);
        for (long j = 0; j < static_cast<long>(b.mass.size()); ++j) {
            if (b.mass[j] == 0) continue;
            TorsionPoint y = idx.point_at(j);
            TorsionPoint z{{x.c[0] + y.c[0], x.c[1] + y.c[1]}};
            out.mass[idxf.index_of(z)] += a.mass[i] * b.mass[j];
        }
    }
    return out;
}

AmiceSeries amice_transform(const DistributionTable& mu, int degree, long padic_prec) {
    AmiceSeries f;
    f.rank = mu.space.rank;
    f.degree = degree;
    f.p = mu.space.p;
    const PadicCtx& c = padic_ctx(mu.space.p, 1);
    long D = degree;
    long ncoef = (f.rank == 1) ? (D + 1) : (D + 1) * (D + 1);
    f.coeff.assign(ncoef, Padic::zero(c, padic_prec));
    // F(mu) = sum_a mass(a) (1+X0)^{a0} (1+X1)^{a1}: accumulate binomials
    TorsionFunction idx(mu.space);
    for (long i = 0; i < static_cast<long>(mu.mass.size()); ++i) {
        if (mu.mass[i] == 0) continue;
        TorsionPoint a = idx.point_at(i);
        // binom(a0, k0) * binom(a1, k1), exact
        for (int k0 = 0; k0 <= D; ++k0) {
            Int b0;
            mpz_bin_uiui(b0.get_mpz_t(), static_cast<unsigned long>(a.c[0]), static_cast<unsigned long>(k0));
            if (b0 == 0 && k0 > 0) continue;
            if (f.rank == 1) {
                Padic add = Padic::from_rat(c, mu.mass[i] * Rat(b0), padic_prec);
                f.coeff[k0] = f.coeff[k0] + add;
            } else {
                for (int k1 = 0; k0 + k1 <= D; ++k1) {
                    Int b1;
                    mpz_bin_uiui(b1.get_mpz_t(), static_cast<unsigned long>(a.c[1]),
                                 static_cast<unsigned long>(k1));
                    if (b1 == 0 && k1 > 0) continue;
                    Padic add = Padic::from_rat(c, mu.mass[i] * Rat(b0 * b1), padic_prec);
                    f.coeff[f.index(k0, k1)] = f.coeff[f.index(k0, k1)] + add;
                }
            }
        }
    }
    return f;
}

AmiceSeries amice_multiply(const AmiceSeries& a, const AmiceSeries& b) {
    if (a.rank != b.rank || a.p != b.p) fail(Err::IncompatibleStructures, "series mismatch");
    if (a.degree != b.degree) fail(Err::TruncationOverflow, "series truncated at different degrees");
    AmiceSeries out;
    out.rank = a.rank;
    out.degree = a.degree;
    out.p = a.p;
    const PadicCtx& c = padic_ctx(a.p, 1);
    long prec = 1 << 30;
    for (const auto& x : a.coeff) prec = std::min(prec, x.abs_precision());
    for (const auto& x : b.coeff) prec = std::min(prec, x.abs_precision());
    int D = a.degree;
    long ncoef = (a.rank == 1) ? (D + 1) : (D + 1) * (D + 1);
    out.coeff.assign(ncoef, Padic::zero(c, prec));
    if (a.rank == 1) {
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j)
                out.coeff[i + j] = out.coeff[i + j] + a.coeff[i] * b.coeff[j];
    } else {
        for (int i0 = 0; i0 <= D; ++i0)
            for (int i1 = 0; i0 + i1 <= D; ++i1)
                for (int j0 = 0; j0 + i0 <= D; ++j0)
                    for (int j1 = 0; i0 + i1 + j0 + j1 <= D; ++j1)
                        out.coeff[out.index(i0 + j0, i1 + j1)] =
                            out.coeff[out.index(i0 + j0, i1 + j1)] +
                            a.coeff[a.index(i0, i1)] * b.coeff[b.index(j0, j1)];
    }
    return out;
}

bool amice_equal(const AmiceSeries& a, const AmiceSeries& b) {
    if (a.rank != b.rank || a.degree != b.degree || a.p != b.p) return false;
    int D = a.degree;
    if (a.rank == 1) {
        for (int i = 0; i <= D; ++i)
            if (!a.coeff[i].eq_at_common_precision(b.coeff[i])) return false;
        return true;
    }
    for (int i0 = 0; i0 <= D; ++i0)
        for (int i1 = 0; i0 + i1 <= D; ++i1)
            if (!a.coeff[a.index(i0, i1)].eq_at_common_precision(b.coeff[b.index(i0, i1)])) return false;
    return true;
}

Padic amice_pair(const DistributionTable& mu, const CharacterPoint& chi, long padic_prec) {
    if (static_cast<int>(chi.beta.size()) != mu.space.rank)
        fail(Err::IncompatibleStructures, "character rank mismatch");
    const PadicCtx& c = chi.z.ctx();
    Padic acc = Padic::zero(c, padic_prec);
    TorsionFunction idx(mu.space);
    for (long i = 0; i < static_cast<long>(mu.mass.size()); ++i) {
        if (mu.mass[i] == 0) continue;
        TorsionPoint a = idx.point_at(i);
        long e = chi.beta[0].get_si() * a.c[0];
        if (mu.space.rank == 2) e += chi.beta[1].get_si() * a.c[1];
        Padic term = chi.z.pow_si(e) * Padic::from_rat(c, mu.mass[i], padic_prec);
        acc = acc + term;
    }
    return acc;
}

Padic amice_eval(const AmiceSeries& f, const CharacterPoint& chi) {
    if (static_cast<int>(chi.beta.size()) != f.rank)
        fail(Err::IncompatibleStructures, "character rank mismatch");
    const PadicCtx& c = chi.z.ctx();
    long prec = chi.z.abs_precision();
    Padic one = Padic::from_int(c, 1, prec);
    std::vector<Padic> x;
    for (const Int& b : chi.beta) x.push_back(chi.z.pow_si(b.get_si()) - one);
    for (const Padic& xi : x)
        if (!xi.is_zero_at_precision() && xi.valuation() < 1)
            fail(Err::ConvergenceDomainViolated, "evaluation point outside the open unit disk");
    Padic acc = Padic::zero(c, prec);
    int D = f.degree;
    if (f.rank == 1) {
        for (int i = D; i >= 0; --i) acc = acc * x[0] + f.coeff[i];
    } else {
        for (int i0 = D; i0 >= 0; --i0) {
            Padic inner = Padic::zero(c, prec);
            for (int i1 = D - i0; i1 >= 0; --i1) inner = inner * x[1] + f.coeff[f.index(i0, i1)];
            acc = acc * x[0] + inner;
        }
    }
    return acc;
}

} // namespace eiskron
