#include "twy/exact.hpp"

#include <doctest.h>

#include <random>

using namespace twy;

namespace {

using QS = TruncSeries<Q>;

QS poly(int K, std::initializer_list<std::pair<int, Q>> terms) {
    QS s(K, Q(0));
    for (const auto& [e, c] : terms) s.set(e, c);
    return s;
}

bool same(const QS& a, const QS& b) { return a.first_difference(b, std::max(a.K(), b.K())) > std::min(a.prec(), b.prec()); }

QMatrix random_matrix(std::mt19937& rng, size_t r, size_t c, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    QMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = qfrac(d(rng), 1 + std::abs(d(rng)));
    return m;
}

} // namespace

TEST_CASE("rationals stay in lowest terms") {
    Q a = qfrac(6, -4);
    CHECK(a.get_den() > 0);
    CHECK(a == Q(-3, 2));
    CHECK(qstr(a) == "-3/2");
    CHECK(qstr(Q(4)) == "4");
    CHECK(qparse("10/-4") == Q(-5, 2));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-50, 50);
    for (int k = 0; k < 200; ++k) {
        int p = d(rng), q = d(rng);
        if (q == 0) continue;
        Q x = qfrac(p, q);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        CHECK(g == 1);
        CHECK(x.get_den() > 0);
        CHECK(x * Q(q) == Q(p));
    }
}

TEST_CASE("series products") {
    // (1 + u^-1)(1 - u^-1) = 1 - u^-2
    QS a = poly(4, {{0, 1}, {1, 1}}), b = poly(4, {{0, 1}, {1, -1}});
    CHECK(same(a * b, poly(4, {{0, 1}, {2, -1}})));
    // u^2 u^-2 = 1
    CHECK(same(poly(4, {{-2, 1}}) * poly(4, {{2, 1}}), poly(4, {{0, 1}})));
    // R(u) R(-u) = 1 - u^2 for n = 1, where R(u) = u - 1
    QS R = poly(4, {{-1, 1}, {0, -1}});
    QS prod = R * R.negate_var();
    CHECK(prod[-2] == -1);
    CHECK(prod[0] == 1);
    CHECK(prod[-1] == 0);
}

TEST_CASE("multiplying by u^2 loses the top coefficients") {
    QS a = poly(4, {{0, 1}, {3, 5}});
    QS r = poly(4, {{-2, 1}}) * a;
    CHECK(r.prec() == 2);
    CHECK(r[1] == 5);
}

TEST_CASE("series inverse") {
    QS g = series_inv(poly(5, {{0, 1}, {1, -1}}));
    for (int e = 0; e <= 5; ++e) CHECK(g[e] == 1);
    CHECK(same(series_inv(poly(3, {{0, 1}})), poly(3, {{0, 1}})));
    Q m = qfrac(3, 7);
    QS h = series_inv(poly(2, {{0, 1}, {1, m}}));
    CHECK(h[1] == -m);
    CHECK(h[2] == m * m);
    // inverse property on random series
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int k = 0; k < 20; ++k) {
        QS s(6, Q(0));
        s.set(0, 1);
        for (int e = 1; e <= 6; ++e) s.set(e, qfrac(d(rng), 1 + std::abs(d(rng))));
        CHECK(same(s * series_inv(s), poly(6, {{0, 1}})));
    }
}

TEST_CASE("re-expansion around z") {
    Q z = qfrac(2, 5);
    QS r = poly(3, {{1, 1}}).reexpand(z);
    CHECK(r[1] == 1);
    CHECK(r[2] == z);
    CHECK(r[3] == z * z);
    QS a = poly(4, {{0, 2}, {1, 3}, {3, -1}});
    CHECK(same(a.reexpand(0), a));
    // (u - 2)^-2 = u^-2 + 4 u^-3 + ...; oracle: the square of (u - 2)^-1
    QS sq = poly(3, {{2, 1}}).reexpand(2);
    CHECK(sq[2] == 1);
    CHECK(sq[3] == 4);
    QS g = poly(3, {{1, 1}}).reexpand(2);
    CHECK(same(sq, g * g));
}

TEST_CASE("u -> -u") {
    QS a = poly(4, {{0, 1}, {1, 1}});
    CHECK(same(a.negate_var(), poly(4, {{0, 1}, {1, -1}})));
    QS b = poly(4, {{-2, 1}});
    CHECK(same(b.negate_var(), b));
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    QS s(5, Q(0));
    for (int e = -2; e <= 5; ++e) s.set(e, Q(d(rng)));
    CHECK(same(s.negate_var().negate_var(), s));
}

TEST_CASE("two-variable series clear u - v") {
    QS a = poly(3, {{0, 1}, {1, 2}}), b = poly(3, {{0, 1}, {2, 1}});
    auto ab = BiTruncSeries<Q>::outer(a, b);
    auto ba = BiTruncSeries<Q>::outer(b, a);
    CHECK(ab.get(1, 2) == 2);
    CHECK(ba.get(2, 1) == 2);
    auto cleared = ab.mul_poly({{1, 0, Q(1)}, {0, 1, Q(-1)}});
    CHECK(cleared.prec_u() == 2);
    CHECK(cleared.get(0, 2) == 2); // u * (2 u^-1 v^-2)
}

TEST_CASE("exact linear algebra") {
    std::mt19937 rng(5);
    for (int k = 0; k < 20; ++k) {
        size_t r = 3 + size_t(k % 4), c = 3 + size_t(k % 3);
        QMatrix m = random_matrix(rng, r, c, 4);
        // force a dependent row
        for (size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Q(2) - m(1, j);
        QMatrix N = nullspace(m);
        CHECK((m * N).is_zero());
        CHECK(rank(m) + N.cols() == c);
        CHECK(rank(m) < r);
        auto R = rref(m);
        CHECK(R.pivots.size() == rank(m));
        for (size_t i = 0; i < R.pivots.size(); ++i) CHECK(R.R(i, R.pivots[i]) == 1);
    }
    for (int k = 0; k < 10; ++k) {
        QMatrix m = random_matrix(rng, 4, 4, 6);
        if (rank(m) < 4) continue;
        CHECK(m * inverse(m) == QMatrix::identity(4));
    }
    QMatrix sing(2, 2);
    sing(0, 0) = 1;
    sing(0, 1) = 2;
    sing(1, 0) = 2;
    sing(1, 1) = 4;
    CHECK_THROWS_AS(inverse(sing), SingularError);
}

TEST_CASE("matrix serialization") {
    QMatrix m = QMatrix::identity(2);
    m(0, 1) = qfrac(-1, 3);
    CHECK(matrix_csv(m) == "1,-1/3\n0,1\n");
    CHECK(matrix_json(m).find("\"-1/3\"") != std::string::npos);
}
