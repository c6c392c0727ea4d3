#include "padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace eiskron {

namespace {

std::mutex ctx_mutex;
std::map<std::pair<long, int>, PadicCtx> ctx_registry;

struct Fq {
    // tiny F_{p^2} arithmetic for context construction
    long p;
    long A, B; // x^2 = A x + B
    std::array<long, 2> mul(std::array<long, 2> a, std::array<long, 2> b) const {
        long c0 = (a[0] * b[0]) % p, c1 = (a[0] * b[1] + a[1] * b[0]) % p, c2 = (a[1] * b[1]) % p;
        return {(c0 + c2 * B) % p, (c1 + c2 * A) % p};
    }
    std::array<long, 2> pow(std::array<long, 2> a, Int e) const {
        std::array<long, 2> r{1, 0};
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

bool generator_of_fq2(long p, long A, long B) {
    Fq f{p, A, B};
    // x must have order exactly p^2 - 1
    Int n = Int(p) * p - 1;
    std::vector<Int> primes;
    Int m = n;
    for (Int d = 2; d * d <= m; ++d)
        while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
            if (primes.empty() || primes.back() != d) primes.push_back(d);
            m /= d;
        }
    if (m > 1) primes.push_back(m);
    for (const Int& q : primes) {
        auto r = f.pow({0, 1}, n / q);
        if (r[0] == 1 && r[1] == 0) return false;
    }
    return true;
}

bool irreducible_quadratic(long p, long A, long B) {
    // x^2 - A x - B irreducible over F_p iff A^2 + 4B is a non-residue
    Int disc = mod_reduce(Int(A) * A + 4 * Int(B), Int(p));
    if (disc == 0) return false;
    return powmod(disc, (Int(p) - 1) / 2, Int(p)) != 1;
}

Int pmod(const PadicCtx& c, long k) { return pow_int(Int(c.p), static_cast<unsigned long>(k)); }

std::array<Int, 2> mul_mod(const PadicCtx& c, const std::array<Int, 2>& a,
                           const std::array<Int, 2>& b, const Int& m) {
    if (c.deg == 1) return {mod_reduce(a[0] * b[0], m), Int(0)};
    Int c0 = a[0] * b[0], c1 = a[0] * b[1] + a[1] * b[0], c2 = a[1] * b[1];
    return {mod_reduce(c0 + c2 * c.B, m), mod_reduce(c1 + c2 * c.A, m)};
}

std::array<Int, 2> pow_mod(const PadicCtx& c, std::array<Int, 2> a, Int e, const Int& m) {
    std::array<Int, 2> r{Int(1), Int(0)};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul_mod(c, r, a, m);
        a = mul_mod(c, a, a, m);
        e >>= 1;
    }
    return r;
}

std::array<Int, 2> inv_mod(const PadicCtx& c, const std::array<Int, 2>& a, const Int& m) {
    if (c.deg == 1) return {invmod(a[0], m), Int(0)};
    // norm = a * frob(a) = a0^2 + A a0 a1 - B a1^2
    Int n = mod_reduce(a[0] * a[0] + c.A * a[0] * a[1] - c.B * a[1] * a[1], m);
    Int ninv = invmod(n, m);
    // frob(a) = (a0 + A a1) - a1 x
    return {mod_reduce((a[0] + c.A * a[1]) * ninv, m), mod_reduce(-a[1] * ninv, m)};
}

long coeff_val(const PadicCtx& c, const std::array<Int, 2>& a, long cap) {
    long v = cap;
    for (int i = 0; i < c.deg; ++i)
        if (a[i] != 0) v = std::min(v, val_p(a[i], Int(c.p)));
    return v;
}

} // namespace

const PadicCtx& padic_ctx(long p, int deg) {
    if (p < 2 || !is_prime(Int(p))) fail(Err::IncompatibleStructures, "p must be prime");
    if (deg != 1 && deg != 2) fail(Err::UnsupportedField, "only unramified degree 1 or 2");
    std::lock_guard<std::mutex> lock(ctx_mutex);
    auto key = std::make_pair(p, deg);
    auto it = ctx_registry.find(key);
    if (it != ctx_registry.end()) return it->second;
    PadicCtx c;
    c.p = p;
    c.deg = deg;
    if (deg == 2) {
        long g = smallest_primitive_root(p);
        // f = x^2 + c1 x + g, i.e. x^2 = -c1 x - g; scan c1 = 0, 1, ...
        bool found = false;
        for (long c1 = 0; c1 < p && !found; ++c1) {
            long A = (p - c1) % p; // A = -c1 mod p
            long B = (p - g % p) % p;
            if (!irreducible_quadratic(p, A, B)) continue;
            if (!generator_of_fq2(p, A, B)) continue;
            c.A = A;
            c.B = B;
            found = true;
        }
        if (!found) fail(Err::Internal, "no quadratic generator polynomial found");
    }
    return ctx_registry.emplace(key, std::move(c)).first->second;
}

Padic Padic::zero(const PadicCtx& c, long absprec) {
    Padic x;
    x.ctx_ = &c;
    x.absprec_ = absprec;
    x.zero_ = true;
    return x;
}

Padic Padic::from_int(const PadicCtx& c, const Int& n, long absprec) {
    Padic x;
    x.ctx_ = &c;
    x.absprec_ = absprec;
    x.zero_ = false;
    x.val_ = 0;
    x.u_ = {mod_reduce(n, pmod(c, absprec > 0 ? absprec : 1)), Int(0)};
    x.normalize();
    return x;
}

Padic Padic::from_rat(const PadicCtx& c, const Rat& r, long absprec) {
    if (r == 0) return zero(c, absprec);
    long vn = val_p(Int(r.get_num()), Int(c.p));
    long vd = val_p(Int(r.get_den()), Int(c.p));
    long v = vn - vd;
    Int num = Int(r.get_num()) / pow_int(Int(c.p), vn);
    Int den = Int(r.get_den()) / pow_int(Int(c.p), vd);
    long rel = absprec - v;
    if (rel <= 0) return zero(c, absprec);
    Int m = pmod(c, rel);
    Padic x;
    x.ctx_ = &c;
    x.absprec_ = absprec;
    x.zero_ = false;
    x.val_ = v;
    x.u_ = {mod_reduce(num * invmod(den, m), m), Int(0)};
    x.normalize();
    return x;
}

Padic Padic::from_unit_coeffs(const PadicCtx& c, std::array<Int, 2> u, long val, long absprec) {
    Padic x;
    x.ctx_ = &c;
    x.absprec_ = absprec;
    x.zero_ = false;
    x.val_ = val;
    long rel = absprec - val;
    if (rel <= 0) return zero(c, absprec);
    Int m = pmod(c, rel);
    x.u_ = {mod_reduce(u[0], m), mod_reduce(u[1], m)};
    x.normalize();
    return x;
}

void Padic::normalize() {
    if (zero_) return;
    long rel = absprec_ - val_;
    if (rel <= 0) {
        zero_ = true;
        u_ = {Int(0), Int(0)};
        return;
    }
    long v = coeff_val(*ctx_, u_, rel);
    if (v >= rel) {
        zero_ = true;
        u_ = {Int(0), Int(0)};
        return;
    }
    if (v > 0) {
        Int pv = pow_int(Int(ctx_->p), static_cast<unsigned long>(v));
        u_[0] /= pv;
        u_[1] /= pv;
        val_ += v;
        rel -= v;
        Int m = pmod(*ctx_, rel);
        u_[0] = mod_reduce(u_[0], m);
        u_[1] = mod_reduce(u_[1], m);
    }
}

long Padic::valuation() const {
    if (zero_)
        fail(Err::PrecisionInsufficient, "valuation of a value indistinguishable from 0 at O(p^" +
                                             std::to_string(absprec_) + ")");
    return val_;
}

void Padic::check_compat(const Padic& a, const Padic& b) {
    if (a.ctx_ == nullptr || b.ctx_ == nullptr) fail(Err::Internal, "uninitialized p-adic value");
    if (a.ctx_->p != b.ctx_->p || a.ctx_->deg != b.ctx_->deg)
        fail(Err::IncompatibleStructures, "p-adic operands from different fields");
}

Padic operator+(const Padic& a, const Padic& b) {
    Padic::check_compat(a, b);
    const PadicCtx& c = *a.ctx_;
    long absprec = std::min(a.absprec_, b.absprec_);
    if (a.zero_ && b.zero_) return Padic::zero(c, absprec);
    if (a.zero_) return b.with_abs_precision(absprec);
    if (b.zero_) return a.with_abs_precision(absprec);
    long v = std::min(a.val_, b.val_);
    long rel = absprec - v;
    if (rel <= 0) return Padic::zero(c, absprec);
    Int m = pmod(c, rel);
    Int pa = pow_int(Int(c.p), static_cast<unsigned long>(a.val_ - v));
    Int pb = pow_int(Int(c.p), static_cast<unsigned long>(b.val_ - v));
    std::array<Int, 2> u{mod_reduce(a.u_[0] * pa + b.u_[0] * pb, m),
                         mod_reduce(a.u_[1] * pa + b.u_[1] * pb, m)};
    return Padic::from_unit_coeffs(c, u, v, absprec);
}

Padic Padic::operator-() const {
    if (zero_) return *this;
    Padic x(*this);
    long rel = absprec_ - val_;
    Int m = pmod(*ctx_, rel);
    x.u_[0] = mod_reduce(-u_[0], m);
    x.u_[1] = mod_reduce(-u_[1], m);
    return x;
}

Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

Padic operator*(const Padic& a, const Padic& b) {
    Padic::check_compat(a, b);
    const PadicCtx& c = *a.ctx_;
    if (a.zero_ || b.zero_) {
        // 0-ball times x: value is 0 to precision absprec(0) + val(x)
        long ap;
        if (a.zero_ && b.zero_) ap = a.absprec_ + b.absprec_;
        else if (a.zero_) ap = a.absprec_ + b.val_;
        else ap = b.absprec_ + a.val_;
        return Padic::zero(c, ap);
    }
    long v = a.val_ + b.val_;
    long rel = std::min(a.rel_precision(), b.rel_precision());
    Int m = pmod(c, rel);
    return Padic::from_unit_coeffs(c, mul_mod(c, a.u_, b.u_, m), v, v + rel);
}

Padic Padic::inv() const {
    if (zero_)
        fail(Err::DivisionByZeroAtPrecision,
             "division by a value indistinguishable from 0 at O(p^" + std::to_string(absprec_) + ")");
    long rel = rel_precision();
    Int m = pmod(*ctx_, rel);
    return Padic::from_unit_coeffs(*ctx_, inv_mod(*ctx_, u_, m), -val_, -val_ + rel);
}

Padic operator/(const Padic& a, const Padic& b) { return a * b.inv(); }

Padic Padic::pow_ui(unsigned long e) const {
    if (zero_) {
        if (e == 0) return Padic::from_int(*ctx_, 1, absprec_);
        return *this;
    }
    Padic r = Padic::from_int(*ctx_, 1, absprec_ - val_ + val_ * static_cast<long>(e));
    Padic base(*this);
    unsigned long ee = e;
    while (ee > 0) {
        if (ee & 1UL) r = r * base;
        base = base * base;
        ee >>= 1UL;
    }
    // precision: relative precision is preserved under multiplication
    return r;
}

Padic Padic::pow_si(long e) const {
    if (e >= 0) return pow_ui(static_cast<unsigned long>(e));
    return inv().pow_ui(static_cast<unsigned long>(-e));
}

Padic Padic::frobenius() const {
    if (ctx_->deg == 1 || zero_) return *this;
    Padic x(*this);
    long rel = rel_precision();
    Int m = pmod(*ctx_, rel);
    x.u_ = {mod_reduce(u_[0] + ctx_->A * u_[1], m), mod_reduce(-u_[1], m)};
    return x;
}

bool Padic::eq_at_common_precision(const Padic& o) const {
    Padic d = *this - o;
    return d.zero_;
}

bool Padic::congruent_mod(const Padic& o, long k) const {
    Padic d = *this - o;
    if (d.zero_) return d.absprec_ >= k;
    return d.val_ >= k;
}

Padic Padic::with_abs_precision(long n) const {
    if (n >= absprec_) return *this;
    Padic x(*this);
    x.absprec_ = n;
    if (!x.zero_) {
        long rel = n - x.val_;
        if (rel <= 0) {
            x.zero_ = true;
            x.u_ = {Int(0), Int(0)};
        } else {
            Int m = pmod(*ctx_, rel);
            x.u_[0] = mod_reduce(x.u_[0], m);
            x.u_[1] = mod_reduce(x.u_[1], m);
        }
    }
    return x;
}

std::vector<std::array<long, 2>> Padic::unit_digits(long count) const {
    std::vector<std::array<long, 2>> out;
    Int a = u_[0], b = u_[1];
    for (long i = 0; i < count; ++i) {
        Int r0 = mod_reduce(a, Int(ctx_->p)), r1 = mod_reduce(b, Int(ctx_->p));
        out.push_back({r0.get_si(), r1.get_si()});
        a = (a - r0) / ctx_->p;
        b = (b - r1) / ctx_->p;
    }
    return out;
}

std::string Padic::str() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << ctx_->p << "^" << absprec_ << ")";
        return os.str();
    }
    long rel = rel_precision();
    if (val_ != 0) os << ctx_->p << "^" << val_ << " * ";
    os << "(";
    auto dig = unit_digits(std::min<long>(rel, 12));
    bool first = true;
    for (size_t i = 0; i < dig.size(); ++i) {
        if (dig[i][0] == 0 && dig[i][1] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (ctx_->deg == 1) os << dig[i][0];
        else os << "[" << dig[i][0] << "," << dig[i][1] << "]";
        if (i > 0) os << "*" << ctx_->p << "^" << i;
    }
    if (first) os << "0";
    if (rel > 12) os << " + ...";
    os << ") + O(" << ctx_->p << "^" << absprec_ << ")";
    return os.str();
}

Padic teichmuller(const Padic& x) {
    if (x.is_zero_at_precision() || x.valuation() != 0)
        fail(Err::NotAUnit, "teichmuller needs a unit");
    const PadicCtx& c = x.ctx();
    long N = x.abs_precision();
    Int m = pow_int(Int(c.p), static_cast<unsigned long>(N));
    std::array<Int, 2> y = x.unit_coeffs();
    Int q = c.q();
    for (long i = 0; i <= N + 2; ++i) {
        auto y2 = pow_mod(c, y, q, m);
        if (y2 == y) break;
        y = y2;
    }
    return Padic::from_unit_coeffs(c, y, 0, N);
}

namespace {

long ilog(long base, long n) {
    long e = 0, b = 1;
    while (b <= n / base) {
        b *= base;
        ++e;
    }
    return e;
}

} // namespace

Padic plog(const Padic& u0, bool one_unit) {
    if (u0.is_zero_at_precision() || u0.valuation() != 0)
        fail(Err::ConvergenceDomainViolated, "plog needs a unit");
    const PadicCtx& c = u0.ctx();
    long N = u0.abs_precision();
    Padic u = u0;
    if (!one_unit) {
        if (c.p == 2) {
            // project to 1 + 4 Z_2 by the sign
            auto d = u.unit_digits(2);
            if (d.size() >= 2 && d[1][0] == 1) u = -u;
        } else {
            u = u / teichmuller(u);
        }
    }
    Padic z = u - Padic::from_int(c, 1, N);
    if (z.is_zero_at_precision()) return Padic::zero(c, N);
    long vz = z.valuation();
    if (vz < 1 || (c.p == 2 && vz < 2))
        fail(Err::ConvergenceDomainViolated, "plog argument is not a one-unit");
    // k max with k*vz - log_p k < N
    long kmax = 1;
    while (kmax * vz - ilog(c.p, kmax) - 1 < N) ++kmax;
    long g = ilog(c.p, kmax) + 1;
    Int m = pow_int(Int(c.p), static_cast<unsigned long>(N + g));
    std::array<Int, 2> zi = z.unit_coeffs();
    // lift z to an exact representative mod p^(N+g)
    Int pv = pow_int(Int(c.p), static_cast<unsigned long>(vz));
    std::array<Int, 2> zrep{mod_reduce(zi[0] * pv, m), mod_reduce(zi[1] * pv, m)};
    std::array<Int, 2> zk{Int(1), Int(0)};
    std::array<Int, 2> acc{Int(0), Int(0)};
    for (long k = 1; k <= kmax; ++k) {
        zk = mul_mod(c, zk, zrep, m);
        long a = val_p(Int(k), Int(c.p));
        Int kk = Int(k) / pow_int(Int(c.p), static_cast<unsigned long>(a));
        Int pa = pow_int(Int(c.p), static_cast<unsigned long>(a));
        Int kinv = invmod(kk, m);
        std::array<Int, 2> term{mod_reduce((zk[0] / pa) * kinv, m), mod_reduce((zk[1] / pa) * kinv, m)};
        if (k % 2 == 0) {
            acc[0] = mod_reduce(acc[0] - term[0], m);
            acc[1] = mod_reduce(acc[1] - term[1], m);
        } else {
            acc[0] = mod_reduce(acc[0] + term[0], m);
            acc[1] = mod_reduce(acc[1] + term[1], m);
        }
    }
    return Padic::from_unit_coeffs(c, acc, 0, N);
}

Padic pexp(const Padic& v) {
    const PadicCtx& c = v.ctx();
    long N = v.abs_precision();
    if (v.is_zero_at_precision()) return Padic::from_int(c, 1, N);
    long vv = v.valuation();
    if ((c.p >= 3 && vv < 1) || (c.p == 2 && vv < 2))
        fail(Err::ConvergenceDomainViolated, "pexp argument outside the convergence domain");
    // term valuation k*vv - v_p(k!) with v_p(k!) <= (k-1)/(p-1)
    long kmax = 1;
    auto legendre = [&](long k) {
        long s = 0, pk = c.p;
        while (pk <= k) {
            s += k / pk;
            if (pk > k / c.p) break;
            pk *= c.p;
        }
        return s;
    };
    while (kmax * vv - legendre(kmax) - 1 < N) ++kmax;
    long g = legendre(kmax) + 1;
    Int m = pow_int(Int(c.p), static_cast<unsigned long>(N + g));
    Int pvv = pow_int(Int(c.p), static_cast<unsigned long>(vv));
    auto ui = v.unit_coeffs();
    std::array<Int, 2> vrep{mod_reduce(ui[0] * pvv, m), mod_reduce(ui[1] * pvv, m)};
    std::array<Int, 2> acc{Int(1), Int(0)};
    std::array<Int, 2> vk{Int(1), Int(0)};
    long e_fact = 0;   // v_p(k!)
    Int fact_unit = 1; // k! / p^e_fact mod m
    for (long k = 1; k <= kmax; ++k) {
        vk = mul_mod(c, vk, vrep, m);
        long a = val_p(Int(k), Int(c.p));
        e_fact += a;
        fact_unit = mod_reduce(fact_unit * (Int(k) / pow_int(Int(c.p), static_cast<unsigned long>(a))), m);
        Int pe = pow_int(Int(c.p), static_cast<unsigned long>(e_fact));
        Int finv = invmod(fact_unit, m);
        acc[0] = mod_reduce(acc[0] + (vk[0] / pe) * finv, m);
        acc[1] = mod_reduce(acc[1] + (vk[1] / pe) * finv, m);
    }
    return Padic::from_unit_coeffs(c, acc, 0, N);
}

std::vector<Padic> padic_quadratic_roots(const PadicCtx& c, const Int& t, const Int& n, long absprec) {
    // y^2 - t y + n over the residue field, then Newton
    long N = absprec;
    Int m = pow_int(Int(c.p), static_cast<unsigned long>(N));
    std::vector<std::array<Int, 2>> roots0;
    for (long y1 = 0; y1 < (c.deg == 2 ? c.p : 1); ++y1)
        for (long y0 = 0; y0 < c.p; ++y0) {
            std::array<Int, 2> y{Int(y0), Int(y1)};
            auto y2 = mul_mod(c, y, y, Int(c.p));
            Int r0 = mod_reduce(y2[0] - t * y0 + n, Int(c.p));
            Int r1 = mod_reduce(y2[1] - t * y1, Int(c.p));
            if (r0 == 0 && r1 == 0) roots0.push_back(y);
        }
    std::vector<Padic> out;
    for (auto y : roots0) {
        // f'(y) = 2y - t must be a unit (p unramified in the application)
        for (long prec = 1; prec < N;) {
            prec = std::min(2 * prec, N);
            Int mm = pow_int(Int(c.p), static_cast<unsigned long>(prec));
            auto y2 = mul_mod(c, y, y, mm);
            std::array<Int, 2> f{mod_reduce(y2[0] - t * y[0] + n, mm), mod_reduce(y2[1] - t * y[1], mm)};
            std::array<Int, 2> fp{mod_reduce(2 * y[0] - t, mm), mod_reduce(2 * y[1], mm)};
            auto fpi = inv_mod(c, fp, mm);
            auto corr = mul_mod(c, f, fpi, mm);
            y = {mod_reduce(y[0] - corr[0], mm), mod_reduce(y[1] - corr[1], mm)};
        }
        out.push_back(Padic::from_unit_coeffs(c, y, 0, N));
    }
    return out;
}

Padic padic_zeta(const PadicCtx& c, unsigned K, long absprec) {
    Int qm1 = c.q() - 1;
    if (K == 0 || !mpz_divisible_ui_p(qm1.get_mpz_t(), K))
        fail(Err::UnsupportedField,
             "root of unity of order " + std::to_string(K) + " is not in the unramified field (q-1 = " +
                 qm1.get_str() + ")");
    std::array<Int, 2> gen = c.deg == 1 ? std::array<Int, 2>{Int(smallest_primitive_root(c.p)), Int(0)}
                                        : std::array<Int, 2>{Int(0), Int(1)};
    Padic tau = teichmuller(Padic::from_unit_coeffs(c, gen, 0, absprec));
    Int e = qm1 / K;
    return tau.pow_ui(e.get_ui());
}

Padic padic_embed(const ZetaPoly& z, const PadicCtx& c, long absprec) {
    unsigned K = z.modulus();
    Padic zk = padic_zeta(c, K, absprec);
    Padic acc = Padic::zero(c, absprec);
    Padic pw = Padic::from_int(c, 1, absprec);
    const auto& co = z.coeffs();
    for (unsigned j = 0; j < K; ++j) {
        if (co[j] != 0) acc = acc + pw * Padic::from_rat(c, co[j], absprec);
        pw = pw * zk;
    }
    return acc;
}

} // namespace eiskron
