#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace eiskron {

using Int = mpz_class;
using Rat = mpq_class;

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(Err::DivisionByZeroAtPrecision, "element not invertible modulo " + m.get_str());
    return r;
}

// v_p(n); n must be nonzero.
inline long val_p(Int n, const Int& p) {
    if (n == 0) fail(Err::Internal, "val_p(0)");
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

// v_p of a rational (may be negative).
inline long val_p(const Rat& q, const Int& p) {
    if (q == 0) fail(Err::Internal, "val_p(0)");
    return val_p(Int(q.get_num()), p) - val_p(Int(q.get_den()), p);
}

inline unsigned long ord_mod(const Int& a, const Int& m, const Int& group_order) {
    // order of a in (Z/m)^*, given a multiple of it
    std::vector<Int> primes;
    Int n = group_order;
    for (Int d = 2; d * d <= n; ++d)
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            if (primes.empty() || primes.back() != d) primes.push_back(d);
            n /= d;
        }
    if (n > 1) primes.push_back(n);
    Int ord = group_order;
    for (const Int& q : primes)
        while (mpz_divisible_p(ord.get_mpz_t(), q.get_mpz_t()) && powmod(a, ord / q, m) == 1) ord /= q;
    return ord.get_ui();
}

inline bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

inline long smallest_primitive_root(long p) {
    Int P(p);
    for (long g = 2; g < p; ++g) {
        if (ord_mod(g, P, P - 1) == static_cast<unsigned long>(p - 1)) return g;
    }
    fail(Err::Internal, "no primitive root found");
}

// Column-style Hermite normal form of an integer 2 x n matrix (rows of
// length n given as two vectors). Returns the 2x2 upper-triangular basis
// [[a, b], [0, d]] of the column span, meaning columns (a,0) and (b,d).
struct Hnf2 {
    Int a, b, d; // columns (a,0),(b,d); zero module has a=d=0
};

inline Hnf2 hnf_2xn(std::vector<std::array<Int, 2>> cols) {
    // Eliminate the second row first via gcd of all second entries.
    Hnf2 h{0, 0, 0};
    // d = gcd of row-1 entries (index 1), achieved by a column combo
    std::array<Int, 2> carry{0, 0};
    for (auto& c : cols) {
        if (c[1] == 0) continue;
        if (carry[1] == 0) {
            carry = c;
            c = {Int(0), Int(0)};
            continue;
        }
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), carry[1].get_mpz_t(), c[1].get_mpz_t());
        Int u = carry[1] / g, v = c[1] / g;
        std::array<Int, 2> nw{s * carry[0] + t * c[0], g};
        // replacement column with zero second entry
        std::array<Int, 2> rep{v * carry[0] - u * c[0], 0};
        carry = nw;
        c = rep;
    }
    if (carry[1] != 0) {
        if (carry[1] < 0) { carry[0] = -carry[0]; carry[1] = -carry[1]; }
        h.b = carry[0];
        h.d = carry[1];
    }
    Int g = 0;
    for (auto& c : cols) {
        if (c[1] != 0) fail(Err::Internal, "hnf elimination failed");
        g = gcd(g, c[0]);
    }
    h.a = g < 0 ? Int(-g) : g;
    if (h.a != 0 && h.d != 0) h.b = mod_reduce(h.b, h.a);
    return h;
}

inline Int hnf_index(const Hnf2& h) { return h.a * h.d; } // 0 if not full rank

// Tonelli-Shanks square root modulo an odd prime; returns the smaller root.
inline Int sqrt_mod(Int a, const Int& q) {
    a = mod_reduce(a, q);
    if (q == 2) return a;
    if (a == 0) return 0;
    if (powmod(a, (q - 1) / 2, q) != 1) fail(Err::Internal, "sqrt_mod of a non-residue");
    Int r;
    if (mod_reduce(q, 4) == 3) {
        r = powmod(a, (q + 1) / 4, q);
    } else {
        Int Q = q - 1;
        unsigned long S = 0;
        while (mpz_even_p(Q.get_mpz_t())) {
            Q >>= 1;
            ++S;
        }
        Int z = 2;
        while (powmod(z, (q - 1) / 2, q) != q - 1) ++z;
        Int M(S), c = powmod(z, Q, q), t = powmod(a, Q, q);
        r = powmod(a, (Q + 1) / 2, q);
        while (t != 1) {
            Int tt = t;
            unsigned long i = 0;
            while (tt != 1) {
                tt = mod_reduce(tt * tt, q);
                ++i;
            }
            Int b = c;
            for (unsigned long j = 0; j + i + 1 < M.get_ui(); ++j) b = mod_reduce(b * b, q);
            M = static_cast<long>(i);
            c = mod_reduce(b * b, q);
            t = mod_reduce(t * c, q);
            r = mod_reduce(r * b, q);
        }
    }
    Int other = q - r;
    return r <= other ? r : other;
}

} // namespace eiskron
