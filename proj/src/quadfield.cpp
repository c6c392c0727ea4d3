#include "quadfield.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace eiskron {

namespace {

std::mutex field_mutex;
std::map<long, ImagQuadField*>& field_registry() {
    static std::map<long, ImagQuadField*> reg;
    return reg;
}

bool squarefree(long n) {
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

bool fundamental_disc(long d) {
    if (d >= 0) return false;
    long m = ((d % 4) + 4) % 4;
    if (m == 1) return squarefree(-d);
    if (m == 0) {
        long q = d / 4;
        long r = ((q % 4) + 4) % 4;
        return (r == 2 || r == 3) && squarefree(-q);
    }
    return false;
}

const long kClassNumberOne[] = {-3, -4, -7, -8, -11, -19, -43, -67, -163};

} // namespace

ImagQuadField::ImagQuadField(long d) : d_(d) {
    if (!fundamental_disc(d)) fail(Err::UnsupportedField, "discriminant is not fundamental and negative");
    if (((d % 4) + 4) % 4 == 1) {
        trw_ = 1;
        nmw_ = Int(1 - d) / 4;
    } else {
        trw_ = 0;
        nmw_ = Int(-d) / 4;
    }
    units_ = {QuadInt{1, 0}, QuadInt{-1, 0}};
    if (d == -4) {
        units_.push_back(QuadInt{0, 1});  // w = i
        units_.push_back(QuadInt{0, -1});
    } else if (d == -3) {
        // w = zeta_6; units are w^k
        QuadInt u{1, 0};
        units_.clear();
        for (int k = 0; k < 6; ++k) {
            units_.push_back(u);
            u = mul(u, QuadInt{0, 1});
        }
    }
}

const ImagQuadField& ImagQuadField::get(long disc) {
    std::lock_guard<std::mutex> lock(field_mutex);
    auto& reg = field_registry();
    auto it = reg.find(disc);
    if (it != reg.end()) return *it->second;
    auto* f = new ImagQuadField(disc);
    reg.emplace(disc, f);
    return *f;
}

int ImagQuadField::class_number_one() const {
    for (long d : kClassNumberOne)
        if (d == d_) return 1;
    return 0;
}

QuadInt ImagQuadField::mul(const QuadInt& x, const QuadInt& y) const {
    // w^2 = trw*w - nmw
    Int bd = x.b * y.b;
    return {x.a * y.a - bd * nmw_, x.a * y.b + x.b * y.a + bd * trw_};
}
QuadInt ImagQuadField::add(const QuadInt& x, const QuadInt& y) const { return {x.a + y.a, x.b + y.b}; }
QuadInt ImagQuadField::sub(const QuadInt& x, const QuadInt& y) const { return {x.a - y.a, x.b - y.b}; }
QuadInt ImagQuadField::conj(const QuadInt& x) const { return {x.a + x.b * trw_, -x.b}; }
Int ImagQuadField::norm(const QuadInt& x) const { return x.a * x.a + trw_ * x.a * x.b + nmw_ * x.b * x.b; }
Int ImagQuadField::trace(const QuadInt& x) const { return 2 * x.a + trw_ * x.b; }

QuadInt ImagQuadField::pow(QuadInt x, unsigned long e) const {
    QuadInt r{1, 0};
    while (e) {
        if (e & 1UL) r = mul(r, x);
        x = mul(x, x);
        e >>= 1UL;
    }
    return r;
}

QuadRat ImagQuadField::mul(const QuadRat& x, const QuadRat& y) const {
    Rat bd = x.b * y.b;
    return {x.a * y.a - bd * Rat(nmw_), x.a * y.b + x.b * y.a + bd * Rat(trw_)};
}
QuadRat ImagQuadField::add(const QuadRat& x, const QuadRat& y) const { return {x.a + y.a, x.b + y.b}; }
QuadRat ImagQuadField::sub(const QuadRat& x, const QuadRat& y) const { return {x.a - y.a, x.b - y.b}; }
QuadRat ImagQuadField::conj(const QuadRat& x) const { return {x.a + x.b * Rat(trw_), -x.b}; }
Rat ImagQuadField::norm(const QuadRat& x) const {
    return x.a * x.a + Rat(trw_) * x.a * x.b + Rat(nmw_) * x.b * x.b;
}
Rat ImagQuadField::trace(const QuadRat& x) const { return 2 * x.a + Rat(trw_) * x.b; }

QuadRat ImagQuadField::inv(const QuadRat& x) const {
    Rat n = norm(x);
    if (n == 0) fail(Err::DivisionByZeroAtPrecision, "division by zero field element");
    QuadRat c = conj(x);
    return {c.a / n, c.b / n};
}

QuadRat ImagQuadField::pow_si(QuadRat x, long e) const {
    if (e < 0) {
        x = inv(x);
        e = -e;
    }
    QuadRat r{Rat(1), Rat(0)};
    while (e) {
        if (e & 1L) r = mul(r, x);
        x = mul(x, x);
        e >>= 1L;
    }
    return r;
}

CBall ImagQuadField::embed(const QuadRat& x, mpfr_prec_t prec) const {
    // w = (tr + i sqrt|d|)/2
    CBall sq = CBall::from_long(-d_, prec).sqrt();
    CBall w = (CBall::from_q(Rat(trw_), Rat(0), prec) +
               CBall::from_q(Rat(0), Rat(1), prec) * sq)
                  .scaled_q(Rat(1, 2));
    return CBall::from_q(x.a, Rat(0), prec) + w.scaled_q(x.b);
}

unsigned ImagQuadField::cyclo_conductor() const { return static_cast<unsigned>(-d_); }

ZetaPoly ImagQuadField::to_cyclo(const QuadRat& x) const {
    unsigned k = cyclo_conductor();
    ZetaPoly sqrt_d(k);
    if (d_ == -4) {
        sqrt_d = ZetaPoly::zeta(4, 1);
        sqrt_d.scale(Rat(2)); // sqrt(-4) = 2i
    } else if (d_ == -8) {
        sqrt_d = ZetaPoly::zeta(8, 1) + ZetaPoly::zeta(8, 3);
        sqrt_d.scale(Rat(2)); // sqrt(-8) = 2 sqrt(-2)
    } else {
        // d = -l, prime l == 3 mod 4: quadratic Gauss sum
        long l = -d_;
        for (long a = 1; a < l; ++a) {
            long leg = mpz_legendre(Int(a).get_mpz_t(), Int(l).get_mpz_t());
            if (leg == 1)
                sqrt_d += ZetaPoly::zeta(static_cast<unsigned>(l), a);
            else
                sqrt_d -= ZetaPoly::zeta(static_cast<unsigned>(l), a);
        }
    }
    ZetaPoly w = sqrt_d;
    w += ZetaPoly::from_q(Rat(trw_), k);
    w.scale(Rat(1, 2));
    ZetaPoly out = ZetaPoly::from_q(x.a, k);
    ZetaPoly bw = w;
    bw.scale(x.b);
    out += bw;
    return out;
}

namespace {

// deterministic comparison of two p-adic values by (valuation, digits of the
// Teichmueller lift when a unit, else digits of the value)
bool padic_root_less(const Padic& x, const Padic& y) {
    long vx = x.is_zero_at_precision() ? x.abs_precision() : x.valuation();
    long vy = y.is_zero_at_precision() ? y.abs_precision() : y.valuation();
    if (vx != vy) return vx < vy;
    auto key = [](const Padic& z) {
        if (!z.is_zero_at_precision() && z.valuation() == 0) return teichmuller(z).unit_digits(z.abs_precision());
        if (z.is_zero_at_precision()) return std::vector<std::array<long, 2>>{};
        return z.unit_digits(z.rel_precision());
    };
    return key(x) < key(y);
}

} // namespace

ImagQuadField::PadicEmbedding ImagQuadField::padic_embedding(long p, long absprec, bool force_deg2) const {
    if (d_ % p == 0 || (p == 2 && d_ % 2 == 0))
        fail(Err::UnsupportedField, "p ramifies in the field");
    int kro = mpz_kronecker_si(Int(d_).get_mpz_t(), p);
    bool split = (kro == 1);
    const PadicCtx& c = padic_ctx(p, (split && !force_deg2) ? 1 : 2);
    auto roots = padic_quadratic_roots(c, trw_, nmw_, absprec);
    if (split) {
        // keep only the Zp-rational roots so the choice rule agrees with the
        // degree-1 embedding
        std::vector<Padic> rat;
        for (const auto& r : roots)
            if (c.deg == 1 || r.unit_coeffs()[1] == 0) rat.push_back(r);
        roots = rat;
    }
    if (roots.size() != 2) fail(Err::Internal, "expected two roots of the minimal polynomial");
    Padic w0 = padic_root_less(roots[0], roots[1]) ? roots[0] : roots[1];
    return PadicEmbedding{&c, w0, split};
}

Padic ImagQuadField::embed_p(const QuadRat& x, const PadicEmbedding& e, long absprec) const {
    Padic a = Padic::from_rat(*e.ctx, x.a, absprec);
    Padic b = Padic::from_rat(*e.ctx, x.b, absprec);
    return a + b * e.w_image;
}

// ---------------------------------------------------------------------------

Ideal Ideal::principal(const ImagQuadField& F, const QuadRat& g) {
    if (g.is_zero()) fail(Err::IncompatibleStructures, "the zero ideal is rejected");
    Ideal I;
    I.F_ = &F;
    // canonical associate: minimal (b, a) among unit multiples
    QuadRat best = g;
    bool first = true;
    for (const QuadInt& u : F.units()) {
        QuadRat cand = F.mul(g, QuadRat(u));
        if (first || (cand.b < best.b || (cand.b == best.b && cand.a < best.a))) {
            best = cand;
            first = false;
        }
    }
    I.gen_ = best;
    Rat n = F.norm(best);
    I.norm_ = n < 0 ? Rat(-n) : n;
    return I;
}

bool Ideal::is_integral() const {
    return gen_.a.get_den() == 1 && gen_.b.get_den() == 1;
}

Int Ideal::norm_z() const {
    if (norm_.get_den() != 1) fail(Err::Internal, "norm of a non-integral ideal requested");
    return Int(norm_.get_num());
}

Ideal Ideal::mul(const Ideal& o) const {
    if (F_ != o.F_) fail(Err::IncompatibleStructures, "ideals from different fields");
    return principal(*F_, F_->mul(gen_, o.gen_));
}

Ideal Ideal::inverse() const { return principal(*F_, F_->inv(gen_)); }

Ideal Ideal::pow(long e) const { return principal(*F_, F_->pow_si(gen_, e)); }

Ideal Ideal::conjugate() const { return principal(*F_, F_->conj(gen_)); }

bool Ideal::equals(const Ideal& o) const { return F_ == o.F_ && gen_ == o.gen_; }

Hnf2 Ideal::hnf() const {
    if (!is_integral()) fail(Err::Internal, "hnf of a fractional ideal");
    QuadInt g{Int(gen_.a.get_num()), Int(gen_.b.get_num())};
    QuadInt gw = F_->mul(g, QuadInt{0, 1});
    return hnf_2xn({{g.a, g.b}, {gw.a, gw.b}});
}

bool Ideal::is_coprime(const Ideal& o) const {
    if (!is_integral() || !o.is_integral()) fail(Err::Internal, "coprimality needs integral ideals");
    QuadInt g1{Int(gen_.a.get_num()), Int(gen_.b.get_num())};
    QuadInt g2{Int(o.gen_.a.get_num()), Int(o.gen_.b.get_num())};
    QuadInt g1w = F_->mul(g1, QuadInt{0, 1});
    QuadInt g2w = F_->mul(g2, QuadInt{0, 1});
    Hnf2 h = hnf_2xn({{g1.a, g1.b}, {g1w.a, g1w.b}, {g2.a, g2.b}, {g2w.a, g2w.b}});
    return hnf_index(h) == 1;
}

bool Ideal::divides(const Ideal& o) const {
    QuadRat q = F_->div(o.gen_, gen_);
    return q.a.get_den() == 1 && q.b.get_den() == 1;
}

long Ideal::val_at(const Ideal& prime) const {
    // write gen = x / n with x integral, n a positive integer
    Int n = lcm(Int(gen_.a.get_den()), Int(gen_.b.get_den()));
    QuadRat xr = F_->mul(gen_, QuadRat(Rat(n), Rat(0)));
    Ideal num = principal(*F_, xr);
    long v = 0;
    Ideal cur = num;
    while (prime.divides(cur)) {
        cur = principal(*F_, F_->div(cur.gen(), prime.gen()));
        ++v;
    }
    if (n != 1) {
        Ideal den = principal(*F_, QuadRat(Rat(n), Rat(0)));
        Ideal curd = den;
        while (prime.divides(curd)) {
            curd = principal(*F_, F_->div(curd.gen(), prime.gen()));
            --v;
        }
    }
    return v;
}

namespace {

// shortest nonzero vector of the Z-module spanned by the columns
// (Lagrange-Gauss reduction under the norm form); in a class-number-one
// field the shortest vector of a principal module is a generator
QuadInt shortest_generator(const ImagQuadField& F, const Hnf2& h) {
    QuadInt u{h.a, 0}, v{h.b, h.d};
    if (F.norm(u) < F.norm(v)) std::swap(u, v);
    while (true) {
        // B(u, v) = Tr(u conj(v)) / 2
        Int b2 = F.trace(F.mul(u, F.conj(v))); // = 2 B(u,v)
        Int nv2 = 2 * F.norm(v);
        // nearest integer of b2 / nv2
        Int m, r;
        mpz_fdiv_qr(m.get_mpz_t(), r.get_mpz_t(), b2.get_mpz_t(), nv2.get_mpz_t());
        if (2 * r > nv2) m += 1;
        QuadInt u2 = F.sub(u, QuadInt{m * v.a, m * v.b});
        if (F.norm(u2) >= F.norm(v)) {
            return F.norm(v) <= F.norm(u2) ? v : u2;
        }
        u = v;
        v = u2;
    }
}

// the prime = (q, w - r) for a root r of the minimal polynomial of w mod q
Ideal prime_from_root(const ImagQuadField& F, long q, const Int& r) {
    QuadInt g1{Int(q), 0}, g2{-r, 1};
    QuadInt g1w = F.mul(g1, QuadInt{0, 1});
    QuadInt g2w = F.mul(g2, QuadInt{0, 1});
    Hnf2 h = hnf_2xn({{g1.a, g1.b}, {g1w.a, g1w.b}, {g2.a, g2.b}, {g2w.a, g2w.b}});
    QuadInt gen = shortest_generator(F, h);
    if (F.norm(gen) != q) fail(Err::Internal, "prime generator search failed");
    return Ideal::principal(F, gen);
}

} // namespace

std::vector<PrimeOverP> factor_over(const ImagQuadField& F, long p) {
    int kro = mpz_kronecker_si(Int(F.disc()).get_mpz_t(), p);
    if (kro == 0) fail(Err::UnsupportedField, "p ramifies in the field");
    if (kro == -1) {
        std::vector<PrimeOverP> out;
        out.push_back(PrimeOverP{Ideal::principal(F, QuadRat(Rat(p), Rat(0))), 2});
        return out;
    }
    // split: w has two residues mod p; x^2 - tr x + nm = 0
    Int disc = F.trw() * F.trw() - 4 * F.nmw();
    Int s = sqrt_mod(disc, Int(p));
    Int r = mod_reduce((F.trw() + s) * invmod(Int(2), Int(p)), Int(p));
    Ideal p1 = prime_from_root(F, p, r);
    Ideal p2 = p1.conjugate();
    // the prime the fixed iota_p sends to positive valuation first
    auto emb = F.padic_embedding(p, 8);
    Padic im = F.embed_p(p1.gen(), emb, 8);
    bool p1_first = im.is_zero_at_precision() || im.valuation() >= 1;
    std::vector<PrimeOverP> out;
    out.push_back(PrimeOverP{p1_first ? p1 : p2, 1});
    out.push_back(PrimeOverP{p1_first ? p2 : p1, 1});
    return out;
}

std::vector<PrimeOverQ> primes_over(const ImagQuadField& F, long q) {
    int kro = mpz_kronecker_si(Int(F.disc()).get_mpz_t(), q);
    if (kro != 0) {
        auto fs = factor_over(F, q);
        std::vector<PrimeOverQ> out;
        for (auto& x : fs) out.push_back(PrimeOverQ{x.prime, 1, x.f});
        return out;
    }
    // ramified: the unique prime is (q, w - r) for the double root r
    Int r;
    if (q == 2) {
        r = mod_reduce(F.nmw(), Int(2)); // x^2 - tr x + nm with tr even mod 2
        if (mod_reduce(F.trw(), Int(2)) == 1) fail(Err::Internal, "unexpected ramification at 2");
    } else {
        r = mod_reduce(F.trw() * invmod(Int(2), Int(q)), Int(q));
    }
    return {PrimeOverQ{prime_from_root(F, q, r), 2, 1}};
}

std::vector<std::pair<Ideal, long>> factor_ideal(const Ideal& a) {
    const ImagQuadField& F = a.field();
    // rational primes meeting numerator or denominator
    Int n = lcm(Int(a.gen().a.get_den()), Int(a.gen().b.get_den()));
    QuadRat xr = F.mul(a.gen(), QuadRat(Rat(n), Rat(0)));
    QuadInt x{Int(xr.a.get_num()), Int(xr.b.get_num())};
    Int nn = abs(F.norm(x) * n * n);
    std::vector<long> qs;
    Int m = nn;
    for (Int d = 2; d * d <= m; ++d)
        while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
            if (qs.empty() || qs.back() != d.get_si()) qs.push_back(d.get_si());
            m /= d;
        }
    if (m > 1) qs.push_back(m.get_si());
    std::vector<std::pair<Ideal, long>> out;
    for (long q : qs)
        for (const auto& pr : primes_over(F, q)) {
            long v = a.val_at(pr.prime);
            if (v != 0) out.push_back({pr.prime, v});
        }
    return out;
}

// ---------------------------------------------------------------------------

ResidueRing::ResidueRing(const ImagQuadField& F, const Ideal& m) : F_(&F), m_(m) {
    if (!m.is_integral()) fail(Err::IncompatibleStructures, "residue ring needs an integral modulus");
    h_ = m.hnf();
    if (hnf_index(h_) == 0) fail(Err::Internal, "degenerate modulus");
}

QuadInt ResidueRing::reduce(const QuadInt& x) const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.b.get_mpz_t(), h_.d.get_mpz_t());
    Int b = x.b - q * h_.d;
    Int a = x.a - q * h_.b;
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), h_.a.get_mpz_t());
    return {a, b};
}

QuadInt ResidueRing::reduce(const QuadRat& x) const {
    Int n = lcm(Int(x.a.get_den()), Int(x.b.get_den()));
    Ideal nI = Ideal::principal(*F_, QuadRat(Rat(n), Rat(0)));
    if (n != 1 && !nI.is_coprime(m_))
        fail(Err::NotCoprimeToConductor, "denominator shares a factor with the modulus");
    Int nv = invmod(mod_reduce(n, m_.norm_z()), m_.norm_z());
    QuadInt num{Int(Rat(x.a * n).get_num()), Int(Rat(x.b * n).get_num())};
    return reduce(QuadInt{num.a * nv, num.b * nv});
}

bool ResidueRing::is_coprime(const QuadInt& x) const {
    if (hnf_index(h_) == 1) return true; // trivial modulus
    if (x.a == 0 && x.b == 0) return false;
    return Ideal::principal(*F_, x).is_coprime(m_);
}

std::vector<QuadInt> ResidueRing::all_residues() const {
    std::vector<QuadInt> out;
    for (Int b = 0; b < h_.d; ++b)
        for (Int a = 0; a < h_.a; ++a) out.push_back(QuadInt{a, b});
    return out;
}

// ---------------------------------------------------------------------------

unsigned AbelianBasis::exponent() const {
    long e = 1;
    for (long o : orders) e = std::lcm(e, o);
    return static_cast<unsigned>(e);
}

AbelianBasis abelian_basis(long n, int id, const std::function<int(int, int)>& mul) {
    AbelianBasis B;
    std::map<int, std::vector<long>> hdlog; // subgroup element -> exponents
    hdlog[id] = {};
    auto in_h = [&](int x) { return hdlog.count(x) != 0; };
    auto quotient_order = [&](int x) {
        long k = 1;
        int y = x;
        while (!in_h(y)) {
            y = mul(y, x);
            ++k;
        }
        return k;
    };
    while (static_cast<long>(hdlog.size()) < n) {
        // candidate with maximal quotient order whose power-in-H is divisible
        long best_m = 0;
        int best_x = -1;
        std::vector<long> best_adj;
        for (int x = 0; x < n; ++x) {
            if (in_h(x)) continue;
            long m = quotient_order(x);
            if (m <= best_m) continue;
            // z = x^m in H; need all exponents divisible by m
            int z = id;
            for (long k = 0; k < m; ++k) z = mul(z, x);
            auto v = hdlog[z];
            bool ok = true;
            for (long e : v)
                if (e % m != 0) { ok = false; break; }
            if (ok) {
                best_m = m;
                best_x = x;
                best_adj = v;
            }
        }
        if (best_x < 0) fail(Err::Internal, "abelian basis: no clean generator found");
        // adjusted generator g = x * prod(g_i^{-v_i/m}) has exact order m
        int g = best_x;
        for (size_t i = 0; i < B.gens.size(); ++i) {
            long e = best_adj[i] / best_m;
            if (e == 0) continue;
            long inv_e = B.orders[i] - (e % B.orders[i]);
            for (long k = 0; k < inv_e % B.orders[i]; ++k) g = mul(g, B.gens[i]);
        }
        // extend the subgroup as a direct product
        std::map<int, std::vector<long>> next;
        int gp = id;
        for (long j = 0; j < best_m; ++j) {
            for (auto& [el, v] : hdlog) {
                int e2 = mul(el, gp);
                auto v2 = v;
                v2.push_back(j);
                next[e2] = v2;
            }
            gp = mul(gp, g);
        }
        if (static_cast<long>(next.size()) != static_cast<long>(hdlog.size()) * best_m)
            fail(Err::Internal, "abelian basis: generator not independent");
        hdlog = std::move(next);
        B.gens.push_back(g);
        B.orders.push_back(best_m);
        B.size *= best_m;
    }
    // pad earlier vectors (they are shorter) and store
    B.dlog.assign(n, {});
    for (auto& [el, v] : hdlog) {
        auto vv = v;
        vv.resize(B.orders.size(), 0);
        B.dlog[el] = vv;
    }
    if (B.size != n) fail(Err::Internal, "abelian basis: size mismatch");
    return B;
}

// ---------------------------------------------------------------------------

ResidueUnits::ResidueUnits(const ImagQuadField& F, const Ideal& m)
    : F_(&F), m_(m), ring_(F, m) {
    for (const QuadInt& r : ring_.all_residues())
        if (ring_.is_coprime(r)) {
            idx_.emplace(std::make_pair(r.a, r.b), static_cast<int>(elems_.size()));
            elems_.push_back(r);
        }
    auto mul = [this](int i, int j) {
        QuadInt p = ring_.reduce(F_->mul(elems_[i], elems_[j]));
        return idx_.at(std::make_pair(p.a, p.b));
    };
    int id = index_of(ring_.reduce(QuadInt{1, 0}));
    basis_ = abelian_basis(static_cast<long>(elems_.size()), id, mul);
}

int ResidueUnits::index_of(const QuadInt& reduced) const {
    auto it = idx_.find(std::make_pair(reduced.a, reduced.b));
    if (it == idx_.end()) fail(Err::NotCoprimeToConductor, "residue not coprime to the modulus");
    return it->second;
}

int ResidueUnits::mul_idx(int i, int j) const {
    QuadInt p = ring_.reduce(F_->mul(elems_[i], elems_[j]));
    return index_of(p);
}

std::vector<long> ResidueUnits::dlog(const QuadRat& x) const {
    QuadInt r = ring_.reduce(x);
    return basis_.dlog[index_of(r)];
}

// ---------------------------------------------------------------------------

RayClassData::RayClassData(const ImagQuadField& F, const Ideal& m, UnitsMode mode, const Ideal& f_for_units)
    : F_(&F), m_(m), units_(F, m) {
    if (!F.class_number_one())
        fail(Err::UnsupportedClassNumber,
             "ray class computation is restricted to class number one fields");
    // subgroup generated by the images of the chosen global units
    std::vector<int> gens;
    for (const QuadInt& u : F.units()) {
        if (mode == UnitsMode::OneUnitsModF) {
            if (f_for_units.gen().is_zero()) fail(Err::Internal, "one-units mode needs f");
            QuadInt um1{u.a - 1, u.b};
            if (!(um1.a == 0 && um1.b == 0)) {
                if (!f_for_units.divides(Ideal::principal(F, um1))) continue;
            }
        }
        gens.push_back(units_.index_of(units_.ring().reduce(u)));
    }
    std::vector<char> in_s(units_.size(), 0);
    std::vector<int> stack;
    int id = units_.index_of(units_.ring().reduce(QuadInt{1, 0}));
    in_s[id] = 1;
    stack.push_back(id);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int g : gens) {
            int y = units_.mul_idx(x, g);
            if (!in_s[y]) {
                in_s[y] = 1;
                stack.push_back(y);
            }
        }
    }
    // cosets
    unit_to_coset_.assign(units_.size(), -1);
    for (int i = 0; i < units_.size(); ++i) {
        if (unit_to_coset_[i] >= 0) continue;
        int c = static_cast<int>(coset_reps_.size());
        coset_reps_.push_back(i);
        for (int s = 0; s < units_.size(); ++s)
            if (in_s[s]) unit_to_coset_[units_.mul_idx(i, s)] = c;
    }
    auto mulc = [this](int i, int j) {
        return unit_to_coset_[units_.mul_idx(coset_reps_[i], coset_reps_[j])];
    };
    basis_ = abelian_basis(static_cast<long>(coset_reps_.size()), unit_to_coset_[id], mulc);
}

std::vector<Ideal> RayClassData::representatives(const Ideal& aux) const {
    std::vector<Ideal> out;
    const QuadRat mg = m_.gen();
    for (int c = 0; c < order(); ++c) {
        QuadInt r = units_.elements()[coset_reps_[c]];
        bool found = false;
        for (long k2 = 0; k2 <= 20 && !found; ++k2)
            for (long k1 = 0; k1 <= 20 && !found; ++k1) {
                QuadRat cand = F_->add(QuadRat(r),
                                       F_->mul(mg, QuadRat(Rat(k1), Rat(k2))));
                if (cand.is_zero()) continue;
                Ideal I = Ideal::principal(*F_, cand);
                if (!I.is_integral()) continue;
                if (!I.is_coprime(m_)) continue;
                if (!aux.gen().is_zero() && !I.is_coprime(aux)) continue;
                out.push_back(I);
                found = true;
            }
        if (!found) fail(Err::Internal, "no coprime representative found");
    }
    return out;
}

int RayClassData::class_of(const Ideal& a) const {
    QuadInt r = units_.ring().reduce(a.gen());
    return unit_to_coset_[units_.index_of(r)];
}

int RayClassData::mul_class(int i, int j) const {
    return unit_to_coset_[units_.mul_idx(coset_reps_[i], coset_reps_[j])];
}

} // namespace eiskron
