// Acceptance run: every criterion at its stated size, exact comparisons only.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include "twy/report.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace twy;

namespace {

const CaseTag kCases[] = {CaseTag::SpSo, CaseTag::SoSp};

// collects the first failure of a criterion
struct Tally {
    bool ok = true;
    size_t checks = 0;
    std::string first;
    void add(bool pass, const std::string& what) {
        ++checks;
        if (!pass && ok) first = what;
        ok = ok && pass;
    }
};

bool valid_n(CaseTag c, int n) { return c == CaseTag::SpSo || n % 2 == 0; }

bool same(const Series& a, const Series& b, int K) { return a.first_difference(b, K) > std::min({K, a.prec(), b.prec()}); }

std::string tag(CaseTag c, const std::string& rest) { return case_name(c) + " " + rest; }

Tally c1_alpha_rtt() {
    Tally t;
    for (int l = 1; l <= 2; ++l)
        for (int n = 1; n <= 2; ++n) {
            RelationReport r = check_rtt(alpha_images(l, n, 4).T);
            t.add(r.ok() && r.box == 4 - kRttPad, "alpha l=" + std::to_string(l) + " n=" + std::to_string(n));
        }
    return t;
}

Tally c2_beta_reflection() {
    Tally t;
    for (CaseTag c : kCases)
        for (int m = 1; m <= 2; ++m)
            for (int n = 1; n <= 2; ++n) {
                if (!valid_n(c, n)) continue;
                const BetaImage& b = beta_cached(c, m, n, 4);
                std::string w = tag(c, "m=" + std::to_string(m) + " n=" + std::to_string(n));
                t.add(check_reflection(b.S, b.form()).ok(), w + " reflection");
                t.add(check_beta_commutant(b, b.S, 3).ok, w + " commutant");
            }
    return t;
}

Tally c3_symmetry() {
    Tally t;
    const int K = 4;
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (!valid_n(c, n)) continue;
            const BetaImage& b = beta_cached(c, 1, n, K);
            FormConventions form = b.form();
            Series one = Series::constant(K, b.alg->one());
            SeriesMatrix St = tilde_beta_images(b, K);
            std::string w = tag(c, "n=" + std::to_string(n));
            t.add(same(O_series_extract(St, form), one, K - kReflPad), w + " O(u) = 1 for beta-tilde");
            t.add(check_symmetry(St, form).ok(), w + " symmetry relation for beta-tilde");
            Series O = O_series_extract(b.S, form);
            t.add(same(O * O.negate_var(), one, K - kReflPad), w + " O(u) O(-u) = 1 for beta");
        }
    return t;
}

Tally c4_harish_chandra() {
    Tally t;
    for (int l = 1; l <= 3; ++l) {
        IdentityReport r = verify_hc_Z(l, 6);
        t.add(r.ok, "Z l=" + std::to_string(l) + " " + r.witness);
    }
    for (CaseTag c : kCases)
        for (int m = 1; m <= 2; ++m) {
            IdentityReport r = verify_hc_W(c, m, 6);
            t.add(r.ok, tag(c, "W m=" + std::to_string(m) + " " + r.witness));
        }
    return t;
}

Tally c5_resolvent_identities() {
    Tally t;
    for (CaseTag c : kCases)
        for (int m = 1; m <= 2; ++m) {
            IdentityReport a = verify_transpose_resolvent(c, m, 5);
            IdentityReport b = verify_W_reflection(c, m, 5);
            t.add(a.ok, tag(c, "transpose resolvent m=" + std::to_string(m) + " " + a.witness));
            t.add(b.ok, tag(c, "W reflection m=" + std::to_string(m) + " " + b.witness));
        }
    return t;
}

Tally c6_coaction() {
    Tally t;
    const int K = 3;
    AlgPtr G = make_algebra("gl2^2", {gl_block(2, 0), gl_block(2, 1)});
    for (CaseTag c : kCases) {
        FormConventions form(c, 2);
        t.add(check_coassociativity(c, 2, K).ok, tag(c, "coassociativity"));
        int Kb = K + kReflPad;
        SeriesMatrix S = coaction_images(pi_images(G.get(), form, Kb, 0), eval_images(G.get(), 2, Kb, 1), form);
        RelationReport r = check_reflection(S, form, K);
        t.add(r.ok() && r.box == K, tag(c, "coaction reflection"));
    }
    return t;
}

Tally c7_verma() {
    Tally t;
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (!valid_n(c, n)) continue;
            for (unsigned seed = 1; seed <= 3; ++seed) {
                std::vector<Q> mu = generic_weight(c, 2, seed);
                for (int a = 0; a <= 2; ++a)
                    for (int b = 0; b <= 2; ++b) {
                        VermaReport r = verma_check(c, n, mu, {a, b}, 3, true);
                        std::ostringstream w;
                        w << case_name(c) << " n=" << n << " seed=" << seed << " nu=(" << a << "," << b << ")";
                        t.add(r.ok() && r.intertwine.checked > 0, w.str());
                    }
            }
        }
    return t;
}

Tally c8_parabolic_induction() {
    Tally t;
    const CaseTag c = CaseTag::SpSo; // n = 1 needs the symmetric form
    const int K = 3, cutoff = 3, l = 1, n = 1;
    std::vector<Q> lev{qfrac(6, 11)};
    for (int m = 0; m <= 1; ++m) {
        std::vector<Q> mu = m ? generic_weight(c, m, 1) : std::vector<Q>{};
        InductionReport r = induction_check(c, m, l, n, K, cutoff, mu, lev);
        t.add(r.ok() && r.spaces > 0, "shifted action at m=" + std::to_string(m));
        InductionReport neg = induction_check(c, m, l, n, K, cutoff, mu, lev, false);
        t.add(!neg.ok(), "negative control at m=" + std::to_string(m) + " did not fail");
    }
    return t;
}

Tally c9_properties() {
    Tally t;
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (!valid_n(c, n)) continue;
            Zhelobenko Z(c, 2, n);
            PropertyOptions opt;
            opt.samples = 20;
            for (const auto& r : property_suite(Z, generic_weight(c, 2, 1), opt))
                t.add(r.ok && r.checked >= 1, tag(c, "n=" + std::to_string(n) + " " + r.name + " " + r.witness));
        }
    return t;
}

Tally c10_braid() {
    Tally t;
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (!valid_n(c, n)) continue;
            Zhelobenko Z(c, 2, n);
            for (const auto& r : check_braid_relations(Z, generic_weight(c, 2, 1), 2))
                t.add(r.ok && r.checked > 0, tag(c, "n=" + std::to_string(n) + " " + r.name + " " + r.witness));
        }
    return t;
}

Tally c11_extremal() {
    Tally t;
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (!valid_n(c, n)) continue;
            Zhelobenko Z(c, 2, n);
            std::vector<Q> mu = generic_weight(c, 2, 1);
            for (const auto& s : hyperoctahedral_group(2))
                for (int a = 0; a <= 2; ++a)
                    for (int b = 0; b <= 2; ++b) {
                        ExtremalReport r = verify_extremal(Z, s, mu, {a, b});
                        bool pred = r.multiplier == predict_multiplier(s, c, n, mu, {a, b});
                        t.add(r.ok && r.nonzero && pred,
                              tag(c, "n=" + std::to_string(n) + " sigma=" + s.str() + " " + r.witness));
                    }
        }
    // the products of the closed forms only show up for n = 1
    for (CaseTag c : kCases)
        for (int n = 1; n <= 2; ++n) {
            if (!valid_n(c, n)) continue;
            Zhelobenko Z(c, 2, n);
            std::vector<Q> mu = generic_weight(c, 2, 2);
            std::string w = tag(c, "n=" + std::to_string(n) + " ");
            for (int s = 0; s <= 3; ++s)
                for (int u = 0; u <= 3; ++u)
                    for (NormLemma l : {NormLemma::DD, NormLemma::XX, NormLemma::XD}) {
                        CheckReport r = check_norm_lemma(Z, l, 1, s, u, mu);
                        t.add(r.ok, w + lemma_name(l) + " " + r.witness);
                    }
            if (c == CaseTag::SpSo)
                for (int s = 0; s <= 3; ++s) {
                    CheckReport r = check_norm_lemma(Z, NormLemma::X, 2, s, 0, mu);
                    t.add(r.ok, w + lemma_name(NormLemma::X) + " " + r.witness);
                }
        }
    return t;
}

Tally c12_olshanski() {
    Tally t;
    t.add(check_olshanski(CaseTag::SpSo, 1, 1, 2, 3).ok, "sp n=1 l=2");
    t.add(check_olshanski(CaseTag::SpSo, 1, 2, 1, 3).ok, "sp n=2 l=1");
    // the alternating form needs n and l even
    t.add(check_olshanski(CaseTag::SoSp, 1, 2, 2, 3).ok, "so n=2 l=2");
    return t;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        std::string what;
        std::function<Tally()> run;
    };
    const std::vector<Criterion> all{
        {1, "RTT for alpha_l, l,n <= 2, K=4", c1_alpha_rtt},
        {2, "reflection and commutant for beta_m, m,n <= 2, K=4", c2_beta_reflection},
        {3, "symmetry relation for beta-tilde, O(u)O(-u) = 1 for beta, K=4", c3_symmetry},
        {4, "Harish-Chandra images of Z(u), l <= 3, and W(u), m <= 2, K=6", c4_harish_chandra},
        {5, "transpose resolvent and W reflection, m <= 2, K=5", c5_resolvent_identities},
        {6, "coassociativity and reflection of the coaction, n=2, K=3", c6_coaction},
        {7, "Verma modules versus tensor products, m=2, nu <= (2,2), 3 weights, K=3", c7_verma},
        {8, "parabolic induction with negative control, K=3, cutoff 3", c8_parabolic_induction},
        {9, "Zhelobenko operator properties, 20 samples, m=2", c9_properties},
        {10, "braid relations of the operators, m=2, nu <= (2,2)", c10_braid},
        {11, "extremal vectors for all of H_2 and the norm formulas, s,t <= 3", c11_extremal},
        {12, "Olshanski homomorphism against the image formula, K=3", c12_olshanski},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Tally t;
        try {
            t = c.run();
        } catch (const std::exception& e) {
            t.ok = false;
            t.first = std::string("exception: ") + e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << c.id << ": " << (t.ok && t.checks > 0 ? "PASS" : "FAIL") << "  " << c.what << "  ["
                  << t.checks << " checks, " << dt << " s]";
        if (!t.ok) std::cout << "  first failure: " << t.first.substr(0, 400);
        std::cout << std::endl;
        if (!t.ok || t.checks == 0) ++failed;
    }
    std::cout << (failed ? "acceptance FAILED" : "acceptance passed") << " (" << all.size() - size_t(failed) << "/"
              << all.size() << ")" << std::endl;
    return failed ? 1 : 0;
}
