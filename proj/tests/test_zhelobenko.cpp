#include "twy/zhelobenko.hpp"

#include <doctest.h>

using namespace twy;

namespace {

const CaseTag kCases[] = {CaseTag::SpSo, CaseTag::SoSp};

long factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

Poly mono(const PMono& e) { return Poly{{e, Q(1)}}; }

} // namespace

TEST_CASE("signed permutations") {
    for (int m = 1; m <= 3; ++m) {
        auto G = hyperoctahedral_group(m);
        CHECK(long(G.size()) == (1L << m) * factorial(m));
        for (int a = 1; a <= m; ++a) {
            SignedPerm s = SignedPerm::simple(m, a);
            CHECK((s * s).is_identity());
        }
        for (const auto& s : G) {
            CHECK((s * s.inverse()).is_identity());
            for (int c = 1; c <= m; ++c) CHECK(s(-c) == -s(c));
        }
    }
    SignedPerm s = SignedPerm::from_images({-2, 1});
    CHECK(s(1) == -2);
    CHECK(s.act(std::vector<int>{5, 7}) == std::vector<int>{7, -5});
    CHECK(SignedPerm::simple(2, 2).images() == std::vector<int>{1, -2});
}

TEST_CASE("reduced words and lengths") {
    for (CaseTag c : kCases)
        for (int m = 1; m <= 3; ++m) {
            auto roots = positive_roots(c, m);
            // sp: 2 eps_a are roots, so: they are not
            CHECK(roots.size() == size_t(c == CaseTag::SpSo ? m * m : m * (m - 1)));
            for (const auto& s : hyperoctahedral_group(m)) {
                BraidWord w = canonical_reduced_word(s, c);
                CHECK(evaluate_word(m, w) == s);
                CHECK(int(delta_sigma(s, c).size()) == ell(s, c));
                int letters = 0;
                for (int a : w)
                    if (c == CaseTag::SpSo || a < m) ++letters;
                CHECK(letters == ell(s, c));
                auto all = reduced_words(s, c);
                REQUIRE_FALSE(all.empty());
                CHECK(std::find(all.begin(), all.end(), w) != all.end());
                for (const auto& v : all) CHECK(evaluate_word(m, v) == s);
            }
        }
    CHECK(ell(SignedPerm(2), CaseTag::SpSo) == 0);
    // the longest element -1 of H_2
    CHECK(ell(SignedPerm::from_images({-1, -2}), CaseTag::SpSo) == 4);
    CHECK(ell(SignedPerm::from_images({-1, -2}), CaseTag::SoSp) == 2);
}

TEST_CASE("shifted action") {
    for (CaseTag c : kCases) {
        std::vector<Q> mu{qfrac(1, 3), qfrac(2, 7)};
        for (const auto& s : hyperoctahedral_group(2)) {
            auto t = shifted_action(s, c, mu);
            CHECK(shifted_action(s.inverse(), c, t) == mu);
        }
        CHECK(shifted_action(SignedPerm(2), c, mu) == mu);
    }
}

TEST_CASE("hypergeometric closed forms") {
    CHECK(hyp_product(2, Q(3), Q(5)) == qfrac(1, 5));
    CHECK(hyp_product(0, Q(3), Q(5)) == Q(1));
    for (int s = 0; s <= 5; ++s)
        for (Q v : {qfrac(1, 3), qfrac(-5, 2), Q(4)})
            for (Q w : {qfrac(7, 3), qfrac(9, 4)}) CHECK(hyp_sum(s, v, w) == hyp_product(s, v, w));
}

TEST_CASE("z_eta and predicted multipliers") {
    for (CaseTag c : kCases) {
        int m = 2;
        std::vector<Q> mu{qfrac(3, 7), qfrac(-2, 9)};
        std::vector<int> nu{1, 1};
        auto lam = extremal_lambda(mu, nu, 1);
        auto r = rho(c, m);
        Q ms0 = mu[0] + r[0], ms1 = mu[1] + r[1], ls0 = lam[0] + r[0], ls1 = lam[1] + r[1];
        CHECK(z_eta({1, -1}, c, mu, lam, nu) == (ms0 - ms1 - 1) / (ls0 - ls1 + 1));
        CHECK(z_eta({1, 1}, c, mu, lam, nu) == (ms0 + ms1 - 1) / (ls0 + ls1 + 1));
        CHECK(z_eta({2, 0}, c, mu, lam, nu) == Q(1)); // nu_b = 1, empty product
        CHECK(predict_multiplier(SignedPerm(2), c, 1, mu, nu) == Q(1));
        CHECK(lam[0] == mu[0] - qfrac(1, 2) - 1);
    }
}

TEST_CASE("extremal vectors: examples") {
    {
        Zhelobenko Z(CaseTag::SpSo, 1, 1);
        std::vector<Q> mu{qfrac(2, 7)};
        SignedPerm s = SignedPerm::simple(1, 1);
        ExtremalReport r = verify_extremal(Z, s, mu, {2});
        Q ms = mu[0] + rho(CaseTag::SpSo, 1)[0];
        Q ls = extremal_lambda(mu, {2}, 1)[0] + rho(CaseTag::SpSo, 1)[0];
        CHECK(r.ok);
        CHECK(r.nonzero);
        CHECK(r.multiplier == (ms - 1) / (ls + 1));
    }
    for (CaseTag c : kCases) {
        Zhelobenko Z(c, 2, 2);
        std::vector<Q> mu = generic_weight(c, 2, 11);
        SignedPerm s = SignedPerm::simple(2, 1);
        auto ds = delta_sigma(s, c);
        REQUIRE(ds.size() == 1);
        CHECK(ds[0] == Root{1, -1});
        ExtremalReport r = verify_extremal(Z, s, mu, {1, 1});
        CHECK(r.ok);
        CHECK(r.multiplier == z_eta(ds[0], c, mu, extremal_lambda(mu, {1, 1}, 2), {1, 1}));
    }
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (c == CaseTag::SoSp && n == 1) continue;
            Zhelobenko Z(c, 2, n);
            std::vector<Q> mu = generic_weight(c, 2, 3);
            for (const auto& s : hyperoctahedral_group(2)) {
                ExtremalReport r = verify_extremal(Z, s, mu, {1, 1});
                CHECK_MESSAGE(r.ok, r.witness);
                CHECK(r.nonzero);
                CHECK(r.multiplier == predict_multiplier(s, c, n, mu, {1, 1}));
            }
        }
}

TEST_CASE("operators on classes") {
    for (CaseTag c : kCases) {
        int n = 2;
        Zhelobenko Z(c, 2, n);
        std::vector<Q> mu = generic_weight(c, 2, 2);
        FModuleParams p{c, 2, n, mu, delta_plus(2)};
        auto space = coinvariant_space(Z.engine(p), {1, 2});
        for (const auto& key : space.basis) {
            Poly v = mono(key.second);
            FModuleParams out;
            CHECK(Z.xicheck_sigma(SignedPerm(2), p, v, &out) == v);
            CHECK(out.mu == p.mu);
            // the class of the canonical lift is the class itself
            CHECK(Z.cls(p, Z.lift(p, v)) == v);
        }
    }
}

TEST_CASE("xi-bar fixes elements commuting with F_a") {
    Zhelobenko Z(CaseTag::SpSo, 3, 1);
    std::vector<Q> mu = generic_weight(CaseTag::SpSo, 3, 1);
    FModuleParams p{CaseTag::SpSo, 3, 1, mu, delta_plus(3)};
    for (int a = 1; a <= 3; ++a) {
        FModuleParams t = Z.xi_target(a, p);
        for (const NCElement& Y : {Z.B().one(), Z.Fa(a), Z.Fa(a) * Z.Fa(a)}) {
            REQUIRE(commutator(Z.Fa(a), Y).is_zero());
            CHECK(Z.xi_bar(a, t, Y) == Z.cls(t, Y));
        }
    }
}

TEST_CASE("norm lemmas") {
    for (CaseTag c : kCases) {
        Zhelobenko Z(c, 2, 2);
        std::vector<Q> mu = generic_weight(c, 2, 9);
        for (int s = 0; s <= 3; ++s)
            for (int t = 0; t <= 3; ++t) {
                for (NormLemma l : {NormLemma::DD, NormLemma::XX, NormLemma::XD}) {
                    CheckReport r = check_norm_lemma(Z, l, 1, s, t, mu);
                    CHECK_MESSAGE(r.ok, lemma_name(l) << " " << r.witness);
                }
            }
    }
    for (int n = 1; n <= 2; ++n) {
        Zhelobenko Z(CaseTag::SpSo, 2, n);
        std::vector<Q> mu = generic_weight(CaseTag::SpSo, 2, 9);
        for (int s = 0; s <= 3; ++s) {
            CHECK(check_norm_lemma(Z, NormLemma::X, 2, s, 0, mu).ok);
            for (int t = 0; t <= 3; ++t)
                for (NormLemma l : {NormLemma::DD, NormLemma::XX, NormLemma::XD})
                    CHECK(check_norm_lemma(Z, l, 1, s, t, mu).ok);
        }
    }
}

TEST_CASE("braid automorphisms and relations") {
    for (CaseTag c : kCases) {
        Zhelobenko Z(c, 2, 2);
        for (int a = 1; a <= 2; ++a) CHECK(Z.check_braid_hom(a).ok);
        CHECK_FALSE(braid_relations(c, 2).empty());
        for (const auto& r : check_braid_relations(Z, generic_weight(c, 2, 1), 1)) CHECK_MESSAGE(r.ok, r.name);
    }
}

TEST_CASE("property suite, small") {
    for (CaseTag c : kCases) {
        Zhelobenko Z(c, 2, 2);
        PropertyOptions opt;
        opt.samples = 4;
        auto reps = property_suite(Z, generic_weight(c, 2, 1), opt);
        CHECK(reps.size() >= 10);
        for (const auto& r : reps) {
            CHECK_MESSAGE(r.ok, r.name << ": " << r.witness);
            CHECK(r.checked > 0);
        }
    }
}
