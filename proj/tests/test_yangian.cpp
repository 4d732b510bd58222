#include "twy/yangian.hpp"

#include <doctest.h>

using namespace twy;

namespace {

bool same(const Series& a, const Series& b, int K) { return a.first_difference(b, K) > std::min({K, a.prec(), b.prec()}); }

bool same(const SeriesMatrix& a, const SeriesMatrix& b, int K) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (!same(a(i, j), b(i, j), K)) return false;
    return true;
}

const CaseTag kCases[] = {CaseTag::SpSo, CaseTag::SoSp};

} // namespace

TEST_CASE("RTT relation") {
    GlPresentation g = make_gl(2);
    SeriesMatrix T = eval_images(g.alg.get(), 2, 4);
    RelationReport r = check_rtt(T);
    CHECK(r.ok());
    CHECK(r.box == 4 - kRttPad);

    AlphaImage a = alpha_images(1, 2, 4);
    CHECK(check_rtt(a.T).ok());

    // negative control: flip the sign of one coefficient
    SeriesMatrix bad = a.T;
    bad(0, 1).set(2, -bad(0, 1)[2]);
    RelationReport rb = check_rtt(bad);
    CHECK_FALSE(rb.ok());
    REQUIRE_FALSE(rb.failures.empty());
    CHECK(rb.failures[0].idx.size() == 4);
    CHECK_FALSE(rb.failures[0].witness.empty());

    // T(u) -> T(-u)^{-1} is an automorphism
    CHECK(check_rtt(tin_images(eval_images(g.alg.get(), 2, 3))).ok());
    // so are shifts
    CHECK(check_rtt(tau_images(T, qfrac(2, 3))).ok());
}

TEST_CASE("alpha_l on first coefficients") {
    for (int l = 1; l <= 2; ++l) {
        int n = 2;
        AlphaImage a = alpha_images(l, n, 2);
        const Algebra& A = *a.alg;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                NCElement want = A.zero();
                for (int c = 1; c <= l; ++c) want += A.gen(gX(c, i)) * A.gen(gD(c, j));
                CHECK(a.T(size_t(i - 1), size_t(j - 1))[1] == want);
                CHECK(a.T(size_t(i - 1), size_t(j - 1))[0] == (i == j ? A.one() : A.zero()));
            }
        CHECK(check_alpha_commutant(a, 2).ok);
    }
}

TEST_CASE("reflection equation") {
    for (CaseTag c : kCases) {
        FormConventions form(c, 2);
        GlPresentation g = make_gl(2);
        SeriesMatrix P = pi_images(g.alg.get(), form, 4);
        RelationReport r = check_reflection(P, form);
        CHECK(r.ok());
        CHECK(r.box == 4 - kReflPad);
        CHECK(check_symmetry(P, form).ok());

        SeriesMatrix XY = xy_images(eval_images(g.alg.get(), 2, 4), form);
        CHECK(check_reflection(XY, form).ok());

        // omega is an involution
        SeriesMatrix P3 = pi_images(g.alg.get(), form, 3);
        CHECK(same(omega_images(omega_images(P3, 2), 2), P3, 3));

        BetaImage b = beta_images(c, 1, 2, 4);
        CHECK(check_reflection(b.S, form).ok());
        CHECK(check_beta_commutant(b, b.S, 3).ok);

        SeriesMatrix bad = b.S;
        bad(0, 0).set(2, bad(0, 0)[2] + b.alg->one());
        CHECK_FALSE(check_reflection(bad, form).ok());
    }
}

TEST_CASE("beta_m images") {
    for (CaseTag c : kCases)
        for (int m = 1; m <= 2; ++m) {
            int n = 2;
            BetaImage b = beta_images(c, m, n, 3);
            const Algebra& A = *b.alg;
            FormConventions form = b.form();
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    CHECK(b.S(size_t(i - 1), size_t(j - 1))[0] == (i == j ? A.one() : A.zero()));

            Series Wt = wtilde_series(b, 3);
            CHECK(Wt[0] == A.one());
            CHECK(Wt[1] == A.scalar(Q(m)));

            SeriesMatrix St = tilde_beta_images(b, 3);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    NCElement want = A.zero();
                    int ti = form.tilde(i), tj = form.tilde(j);
                    for (int r = 1; r <= m; ++r) {
                        want += A.gen(gX(r, i)) * A.gen(gD(r, j));
                        want -= (A.gen(gX(r, tj)) * A.gen(gD(r, ti))).scaled(Q(form.theta(i) * form.theta(j)));
                    }
                    CHECK(St(size_t(i - 1), size_t(j - 1))[1] == want);
                }
        }
}

TEST_CASE("the series O(u)") {
    for (CaseTag c : kCases) {
        int K = 4;
        FormConventions form(c, 2);
        GlPresentation g = make_gl(2);
        const Algebra* G = g.alg.get();
        Series one = Series::constant(K, G->one());
        CHECK(same(O_series_extract(xy_images(eval_images(G, 2, K), form), form), one, K - kReflPad));

        BetaImage b = beta_images(c, 1, 2, K);
        Series bone = Series::constant(K, b.alg->one());
        Series O = O_series_extract(b.S, form);
        CHECK_FALSE(same(O, bone, K - kReflPad));
        CHECK(same(O * O.negate_var(), bone, K - kReflPad));
        Series Ot = O_series_extract(tilde_beta_images(b, K), form);
        CHECK(same(Ot, bone, K - kReflPad));
        CHECK(check_symmetry(tilde_beta_images(b, K), form).ok());
    }
}

TEST_CASE("comultiplication and coaction") {
    int K = 3;
    AlgPtr A = make_algebra("gl1^2", {gl_block(1, 0), gl_block(1, 1)});
    SeriesMatrix D = comult_images(eval_images(A.get(), 1, K, 0), eval_images(A.get(), 1, K, 1));
    NCElement e0 = A->gen(gE(1, 1, 0)), e1 = A->gen(gE(1, 1, 1));
    CHECK(D(0, 0)[0] == A->one());
    CHECK(D(0, 0)[1] == e0 + e1);
    CHECK(D(0, 0)[2] == e0 * e1);
    CHECK(D(0, 0)[3].is_zero());

    AlgPtr G2 = make_algebra("gl2^2", {gl_block(2, 0), gl_block(2, 1)});
    CHECK(check_rtt(comult_images(eval_images(G2.get(), 2, K, 0), eval_images(G2.get(), 2, K, 1))).ok());
    for (CaseTag c : kCases) {
        FormConventions form(c, 2);
        int Kb = K + kReflPad;
        SeriesMatrix S = pi_images(G2.get(), form, Kb, 0);
        SeriesMatrix T = eval_images(G2.get(), 2, Kb, 1);
        RelationReport r = check_reflection(coaction_images(S, T, form), form, K);
        CHECK(r.ok());
        CHECK(r.box == K);
        CHECK(check_coassociativity(c, 2, 2).ok);
    }
}

TEST_CASE("Olshanski homomorphism") {
    CHECK(check_olshanski(CaseTag::SpSo, 1, 1, 2, 3).ok);
    CHECK(check_olshanski(CaseTag::SpSo, 1, 2, 1, 2).ok);
    CHECK(check_olshanski(CaseTag::SoSp, 1, 2, 2, 2).ok);
}
