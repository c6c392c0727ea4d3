#include "lll.hpp"

namespace eiskron {

namespace {

Rat dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return Rat(s);
}

Rat dotq(const std::vector<Rat>& a, const std::vector<Int>& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0) s += a[i] * Rat(b[i]);
    return s;
}

Rat dotqq(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

} // namespace

void lll_reduce(std::vector<std::vector<Int>>& b) {
    const size_t n = b.size();
    if (n == 0) return;
    const Rat delta(99, 100);
    std::vector<std::vector<Rat>> bstar(n, std::vector<Rat>(b[0].size()));
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));

    auto gso = [&]() {
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < b[i].size(); ++k) bstar[i][k] = Rat(b[i][k]);
            for (size_t j = 0; j < i; ++j) {
                mu[i][j] = B[j] == 0 ? Rat(0) : dotq(bstar[j], b[i]) / B[j];
                if (mu[i][j] != 0)
                    for (size_t k = 0; k < bstar[i].size(); ++k)
                        bstar[i][k] -= mu[i][j] * bstar[j][k];
            }
            B[i] = dotqq(bstar[i], bstar[i]);
        }
    };
    gso();

    auto size_reduce = [&](size_t i, size_t j) {
        Rat q = mu[i][j];
        Int m;
        Int num = q.get_num(), den = q.get_den();
        mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (q - Rat(m) > Rat(1, 2)) m += 1;
        if (m == 0) return;
        for (size_t k = 0; k < b[i].size(); ++k) b[i][k] -= m * b[j][k];
        for (size_t k = 0; k < j; ++k) mu[i][k] -= Rat(m) * mu[j][k];
        mu[i][j] -= Rat(m);
    };

    size_t k = 1;
    size_t guard = 0;
    while (k < n) {
        if (++guard > 100000) fail(Err::Internal, "lll did not terminate");
        for (size_t j = k; j-- > 0;) size_reduce(k, j);
        if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso();
            if (k > 1) --k;
        }
    }
}

} // namespace eiskron
