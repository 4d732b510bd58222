#include "twy/modules.hpp"

#include <doctest.h>

using namespace twy;

namespace {

const CaseTag kCases[] = {CaseTag::SpSo, CaseTag::SoSp};

long binom(int a, int b) {
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

// monomials of degree d in n variables
long count_monomials(int n, int d) { return d < 0 ? 0 : binom(n + d - 1, d); }

QMatrix identity(size_t d) {
    QMatrix I(d, d);
    for (size_t i = 0; i < d; ++i) I(i, i) = Q(1);
    return I;
}

} // namespace

TEST_CASE("polynomial helpers") {
    auto ms = monomials_of_degree(2, 2);
    REQUIRE(ms.size() == 3);
    CHECK(ms[0] == std::vector<int>{2, 0});
    CHECK(ms[1] == std::vector<int>{1, 1});
    CHECK(ms[2] == std::vector<int>{0, 2});
    CHECK(monomials_of_degree(3, 4).size() == size_t(count_monomials(3, 4)));

    Poly p;
    poly_add(p, Poly{{{1, 0}, Q(2)}}, Q(1));
    poly_add(p, Poly{{{1, 0}, Q(1)}}, Q(-2));
    CHECK(poly_is_zero(p));
    CHECK(delta_plus(3) == DeltaSeq{1, 1, 1});
    std::vector<Q> lab{qfrac(1, 3), qfrac(-2, 7)};
    CHECK(labels_of_weight(weight_of_labels(lab)) == lab);
}

TEST_CASE("weights of coinvariant classes") {
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (c == CaseTag::SoSp && n == 1) continue;
            std::vector<Q> mu = generic_weight(c, 2, 3);
            FModuleParams p{c, 2, n, mu, delta_plus(2)};
            for (int a = 0; a <= 2; ++a)
                for (int b = 0; b <= 2; ++b) {
                    std::vector<int> nu{a, b};
                    auto lab = coinvariant_labels(p, nu);
                    for (size_t k = 0; k < 2; ++k) CHECK(lab[k] == mu[k] - qfrac(n, 2) - nu[k]);
                }
        }
}

TEST_CASE("coinvariant dimensions") {
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (c == CaseTag::SoSp && n == 1) continue;
            std::vector<Q> mu = generic_weight(c, 2, 5);
            FModuleParams p{c, 2, n, mu, delta_plus(2)};
            ModuleEngine eng = coinvariant_engine(p);
            ModuleEngine full = full_engine(p);
            for (int a = 0; a <= 2; ++a)
                for (int b = 0; b <= 2; ++b) {
                    std::vector<int> nu{a, b};
                    auto sp = coinvariant_space(eng, nu);
                    CHECK(long(sp.dim()) == count_monomials(n, a) * count_monomials(n, b));
                    if (a + b <= 3) {
                        CoinvariantRref r = n_coinvariants(full, p, nu);
                        CHECK(r.ok);
                        CHECK(r.space.quotient_basis.size() == sp.dim());
                    }
                }
            CHECK(coinvariant_space(eng, {-1, 1}).dim() == 0);
        }
    // m = 2, n = 2, nu = (1, 2) has dimension 2 * 3
    FModuleParams p{CaseTag::SpSo, 2, 2, generic_weight(CaseTag::SpSo, 2, 1), delta_plus(2)};
    CHECK(n_coinvariants(full_engine(p), p, {1, 2}).space.quotient_basis.size() == 6);
}

TEST_CASE("Yangian action on coinvariants") {
    for (CaseTag c : kCases) {
        int n = 2;
        FModuleParams p{c, 2, n, generic_weight(c, 2, 7), delta_plus(2)};
        ModuleEngine eng = coinvariant_engine(p);
        auto sp = coinvariant_space(eng, {1, 1});
        REQUIRE(sp.dim() == 4);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                QMatrix S0 = S_action_matrix(eng, i, j, 0, sp, 3);
                CHECK(S0 == (i == j ? identity(sp.dim()) : QMatrix(sp.dim(), sp.dim())));
            }
        // the Cartan part of f_m acts by the weight
        const Algebra& F = eng.f();
        for (int a = 1; a <= 2; ++a) {
            NCElement h = f_elem(F, c, -row_of_label(2, a), -row_of_label(2, a));
            QMatrix H = f_action_matrix(eng, h, sp);
            CHECK(H == identity(sp.dim()).scaled(coinvariant_labels(p, {1, 1})[size_t(a - 1)]));
        }
    }
}

TEST_CASE("tensor models") {
    for (CaseTag c : kCases) {
        TensorModel t = tensor_model(c, 2, {{qfrac(1, 3), 1}, {qfrac(2, 5), -1}}, 2);
        CHECK(t.dim == 2 * 2);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                CHECK(tensor_action_matrix(t, i, j, 0) == (i == j ? identity(t.dim) : QMatrix(t.dim, t.dim)));
        CHECK(check_dual_module(c, 2, qfrac(1, 3), 2, 3));
        CHECK(check_dual_module(c, 2, qfrac(-4, 7), 1, 3));
    }
}

TEST_CASE("Verma modules against tensor products") {
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (c == CaseTag::SoSp && n == 1) continue;
            for (unsigned seed = 1; seed <= 2; ++seed) {
                std::vector<Q> mu = generic_weight(c, 2, seed);
                for (std::vector<int> nu : {std::vector<int>{0, 0}, {1, 0}, {1, 2}}) {
                    VermaReport r = verma_check(c, n, mu, nu, 2, seed == 1);
                    CHECK(r.ok());
                    CHECK(r.intertwine.checked > 0);
                }
            }
        }
}

TEST_CASE("parabolic induction") {
    for (CaseTag c : kCases) {
        if (c == CaseTag::SoSp) continue; // needs even n
        std::vector<Q> lev{qfrac(5, 11)};
        InductionReport r0 = induction_check(c, 0, 1, 1, 2, 2, {}, lev);
        CHECK(r0.ok());
        CHECK(r0.spaces > 0);
        InductionReport r1 = induction_check(c, 1, 1, 1, 2, 2, generic_weight(c, 1, 1), lev);
        CHECK(r1.ok());
        InductionReport neg = induction_check(c, 1, 1, 1, 2, 2, generic_weight(c, 1, 1), lev, false);
        CHECK_FALSE(neg.ok());
    }
}

TEST_CASE("generic weights") {
    for (CaseTag c : kCases)
        for (int m = 1; m <= 3; ++m) {
            auto a = generic_weight(c, m, 4), b = generic_weight(c, m, 4), d = generic_weight(c, m, 5);
            CHECK(a == b);
            CHECK(a != d);
            REQUIRE(a.size() == size_t(m));
            for (const Q& x : a) CHECK(Q(2 * x).get_den() != 1);
        }
}
