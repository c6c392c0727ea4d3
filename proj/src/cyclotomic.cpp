#include "cyclotomic.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace eiskron {

unsigned euler_phi(unsigned k) {
    unsigned r = k;
    for (unsigned p = 2; p * p <= k; ++p)
        if (k % p == 0) {
            while (k % p == 0) k /= p;
            r -= r / p;
        }
    if (k > 1) r -= r / k;
    return r;
}

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<Int> poly_divexact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (long i = static_cast<long>(num.size()) - 1; i >= static_cast<long>(den.size()) - 1; --i) {
        Int c = num[i] / den.back();
        q[i - (den.size() - 1)] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) num[i - (den.size() - 1) + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) fail(Err::Internal, "cyclotomic polynomial division not exact");
    return q;
}

std::vector<Int> cyclotomic_poly(unsigned k) {
    // x^k - 1 divided by Phi_d for all proper divisors d
    std::vector<Int> num(k + 1, Int(0));
    num[0] = -1;
    num[k] = 1;
    for (unsigned d = 1; d < k; ++d)
        if (k % d == 0) num = poly_divexact(std::move(num), cyclotomic_poly(d));
    return num;
}

std::map<unsigned, CycloFieldData>& field_registry() {
    static std::map<unsigned, CycloFieldData> reg;
    return reg;
}
std::mutex& field_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

const CycloFieldData& cyclo_field(unsigned k) {
    std::lock_guard<std::mutex> lock(field_mutex());
    auto& reg = field_registry();
    auto it = reg.find(k);
    if (it != reg.end()) return it->second;

    CycloFieldData d;
    d.k = k;
    d.phi = cyclotomic_poly(k);
    d.deg = static_cast<unsigned>(d.phi.size() - 1);
    // rows for zeta^j, deg <= j < k
    d.red.resize(k > d.deg ? k - d.deg : 0);
    std::vector<Int> cur(d.deg, Int(0)); // start with zeta^deg = -(lower part of Phi)
    for (unsigned i = 0; i < d.deg; ++i) cur[i] = -d.phi[i];
    for (unsigned j = d.deg; j < k; ++j) {
        d.red[j - d.deg] = cur;
        // multiply by zeta: shift, reduce the overflowing top coefficient
        Int top = cur[d.deg - 1];
        for (unsigned i = d.deg - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (unsigned i = 0; i < d.deg; ++i) cur[i] -= top * d.phi[i];
    }
    return reg.emplace(k, std::move(d)).first->second;
}

ZetaPoly ZetaPoly::from_q(const Rat& q, unsigned k) {
    ZetaPoly z(k);
    z.c_[0] = q;
    return z;
}

ZetaPoly ZetaPoly::zeta(unsigned k, long j) {
    ZetaPoly z(k);
    long r = j % static_cast<long>(k);
    if (r < 0) r += k;
    z.c_[r] = 1;
    return z;
}

ZetaPoly ZetaPoly::promoted(unsigned k2) const {
    if (k2 == k_) return *this;
    if (k2 % k_ != 0) fail(Err::IncompatibleStructures, "cyclotomic modulus is not a multiple");
    unsigned m = k2 / k_;
    ZetaPoly z(k2);
    for (unsigned j = 0; j < k_; ++j)
        if (c_[j] != 0) z.c_[j * m] = c_[j];
    return z;
}

unsigned ZetaPoly::common_modulus(const ZetaPoly& a, const ZetaPoly& b) {
    return static_cast<unsigned>(std::lcm(a.k_, b.k_));
}

ZetaPoly& ZetaPoly::operator+=(const ZetaPoly& o) {
    if (o.k_ != k_) {
        unsigned k = common_modulus(*this, o);
        *this = promoted(k);
        ZetaPoly p = o.promoted(k);
        for (unsigned j = 0; j < k_; ++j) c_[j] += p.c_[j];
        return *this;
    }
    for (unsigned j = 0; j < k_; ++j) c_[j] += o.c_[j];
    return *this;
}

ZetaPoly& ZetaPoly::operator-=(const ZetaPoly& o) {
    if (o.k_ != k_) {
        unsigned k = common_modulus(*this, o);
        *this = promoted(k);
        ZetaPoly p = o.promoted(k);
        for (unsigned j = 0; j < k_; ++j) c_[j] -= p.c_[j];
        return *this;
    }
    for (unsigned j = 0; j < k_; ++j) c_[j] -= o.c_[j];
    return *this;
}

ZetaPoly ZetaPoly::operator-() const {
    ZetaPoly z(*this);
    for (auto& q : z.c_) q = -q;
    return z;
}

void ZetaPoly::add_rotated(const ZetaPoly& x, long shift) {
    if (x.k_ != k_) fail(Err::IncompatibleStructures, "add_rotated: modulus mismatch");
    long r = shift % static_cast<long>(k_);
    if (r < 0) r += k_;
    for (unsigned j = 0; j < k_; ++j) {
        if (x.c_[j] == 0) continue;
        unsigned t = j + static_cast<unsigned>(r);
        if (t >= k_) t -= k_;
        c_[t] += x.c_[j];
    }
}

ZetaPoly& ZetaPoly::scale(const Rat& q) {
    for (auto& v : c_)
        if (v != 0) v *= q;
    return *this;
}

ZetaPoly operator*(const ZetaPoly& a0, const ZetaPoly& b0) {
    unsigned k = ZetaPoly::common_modulus(a0, b0);
    ZetaPoly a = a0.promoted(k), b = b0.promoted(k);
    ZetaPoly z(k);
    // cyclic convolution; iterate over the sparser factor
    const ZetaPoly& s = [&]() -> const ZetaPoly& {
        size_t na = 0, nb = 0;
        for (auto& q : a.coeffs()) na += (q != 0);
        for (auto& q : b.coeffs()) nb += (q != 0);
        return na <= nb ? a : b;
    }();
    const ZetaPoly& t = (&s == &a) ? b : a;
    for (unsigned j = 0; j < k; ++j) {
        const Rat& q = s.coeffs()[j];
        if (q == 0) continue;
        ZetaPoly tmp = t;
        tmp.scale(q);
        z.add_rotated(tmp, static_cast<long>(j));
    }
    return z;
}

std::vector<Rat> ZetaPoly::canonical() const {
    const auto& fd = cyclo_field(k_);
    std::vector<Rat> v(fd.deg, Rat(0));
    for (unsigned j = 0; j < k_; ++j) {
        if (c_[j] == 0) continue;
        if (j < fd.deg) {
            v[j] += c_[j];
        } else {
            const auto& row = fd.red[j - fd.deg];
            for (unsigned i = 0; i < fd.deg; ++i)
                if (row[i] != 0) v[i] += c_[j] * Rat(row[i]);
        }
    }
    return v;
}

ZetaPoly ZetaPoly::from_canonical(unsigned k, const std::vector<Rat>& v) {
    ZetaPoly z(k);
    for (size_t i = 0; i < v.size(); ++i) z.c_[i] = v[i];
    return z;
}

bool ZetaPoly::is_zero() const {
    bool plain = true;
    for (const auto& q : c_)
        if (q != 0) { plain = false; break; }
    if (plain) return true;
    auto v = canonical();
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

bool ZetaPoly::operator==(const ZetaPoly& o) const {
    ZetaPoly d = *this;
    d -= o;
    return d.is_zero();
}

bool ZetaPoly::is_rational() const {
    auto v = canonical();
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) return false;
    return true;
}

Rat ZetaPoly::to_rational() const {
    auto v = canonical();
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) fail(Err::Internal, "value is not rational");
    return v.empty() ? Rat(0) : v[0];
}

ZetaPoly ZetaPoly::galois(long j) const {
    long r = j % static_cast<long>(k_);
    if (r < 0) r += k_;
    if (std::gcd(static_cast<long>(k_), r) != 1)
        fail(Err::IncompatibleStructures, "galois exponent not coprime to modulus");
    ZetaPoly z(k_);
    for (unsigned i = 0; i < k_; ++i)
        if (c_[i] != 0) z.c_[(i * static_cast<unsigned long>(r)) % k_] += c_[i];
    return z;
}

namespace {

// extended gcd over Q[x] for b modulo the cyclotomic polynomial
std::vector<Rat> poly_modinv(const std::vector<Rat>& b, const std::vector<Int>& phi) {
    auto deg = [](const std::vector<Rat>& p) -> long {
        for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    std::vector<Rat> r0(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) r0[i] = Rat(phi[i]);
    std::vector<Rat> r1 = b;
    std::vector<Rat> t0{Rat(0)}, t1{Rat(1)};
    while (true) {
        long d1 = deg(r1);
        if (d1 < 0) fail(Err::DivisionByZeroAtPrecision, "cyclotomic inverse of zero");
        if (d1 == 0) break;
        long d0 = deg(r0);
        // r0 = q*r1 + r2
        std::vector<Rat> q(d0 - d1 + 1, Rat(0));
        std::vector<Rat> r2 = r0;
        for (long i = d0; i >= d1; --i) {
            if (r2[i] == 0) continue;
            Rat c = r2[i] / r1[d1];
            q[i - d1] = c;
            for (long k = 0; k <= d1; ++k) r2[i - d1 + k] -= c * r1[k];
        }
        // t2 = t0 - q*t1
        std::vector<Rat> t2(std::max(t0.size(), q.size() + t1.size()), Rat(0));
        for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t k = 0; k < t1.size(); ++k) t2[i + k] -= q[i] * t1[k];
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        r1.resize(std::max<long>(deg(r1) + 1, 1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Rat lead = r1[0];
    std::vector<Rat> out(t1.size());
    for (size_t i = 0; i < t1.size(); ++i) out[i] = t1[i] / lead;
    out.resize(phi.size() - 1, Rat(0));
    return out;
}

} // namespace

ZetaPoly ZetaPoly::inv() const {
    const auto& fd = cyclo_field(k_);
    auto v = canonical();
    bool z = true;
    for (auto& q : v)
        if (q != 0) { z = false; break; }
    if (z) fail(Err::DivisionByZeroAtPrecision, "cyclotomic inverse of zero");
    auto w = poly_modinv(v, fd.phi);
    return from_canonical(k_, w);
}

ZetaPoly reduced_root(unsigned E, long ex) {
    long r = ex % static_cast<long>(E);
    if (r < 0) r += E;
    if (r == 0) return ZetaPoly::from_q(Rat(1), 1);
    unsigned g = static_cast<unsigned>(std::gcd(static_cast<long>(E), r));
    return ZetaPoly::zeta(E / g, r / g);
}

CBall ZetaPoly::embed(mpfr_prec_t prec) const {
    CBall acc(prec);
    for (unsigned j = 0; j < k_; ++j) {
        if (c_[j] == 0) continue;
        CBall term = unit_root(Rat(static_cast<long>(j), static_cast<long>(k_)), prec);
        acc += term.scaled_q(c_[j]);
    }
    return acc;
}

} // namespace eiskron
