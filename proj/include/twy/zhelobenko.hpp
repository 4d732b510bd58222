#pragma once
// The hyperoctahedral group H_m, its braid action on B_m = U(f_m) (x) PD with
// the cross relations [X, Y] = [zeta_n(X), Y], and the Zhelobenko operators
// realized on coinvariant weight spaces of the modules F_delta(M_mu).
//
// A class in the coinvariants of F_delta(M_mu) is stored as a polynomial p
// standing for [1_mu (x) p].  An element Y of B_m defines the class of
// Y . (1_mu (x) 1), which is what ModuleEngine::act_cyclic computes.

#include "twy/modules.hpp"

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace twy {

// ---------------------------------------------------------------------------
// signed permutations

class SignedPerm {
public:
    explicit SignedPerm(int m = 0); // identity
    static SignedPerm from_images(std::vector<int> img);
    // sigma_a swaps a, a+1 for a < m; sigma_m negates m
    static SignedPerm simple(int m, int a);

    int m() const { return int(img_.size()); }
    int operator()(int c) const; // signed c, sigma(-c) = -sigma(c)
    const std::vector<int>& images() const { return img_; }
    SignedPerm operator*(const SignedPerm& o) const; // (s*t)(c) = s(t(c))
    SignedPerm inverse() const;
    bool is_identity() const;
    bool operator==(const SignedPerm& o) const { return img_ == o.img_; }
    bool operator<(const SignedPerm& o) const { return img_ < o.img_; }
    std::string str() const;

    // sigma acting on coordinates in the basis epsilon_1..epsilon_m
    template <class T>
    std::vector<T> act(const std::vector<T>& v) const {
        std::vector<T> r(v.size());
        for (size_t a = 0; a < v.size(); ++a) {
            int t = img_[a];
            r[size_t(std::abs(t) - 1)] = t > 0 ? v[a] : T(-v[a]);
        }
        return r;
    }

private:
    std::vector<int> img_; // img_[a-1] = sigma(a)
};

std::vector<SignedPerm> hyperoctahedral_group(int m);

using BraidWord = std::vector<int>; // letters a = 1..m, leftmost applied last
SignedPerm evaluate_word(int m, const BraidWord& w);
std::string word_str(const BraidWord& w);

// a decomposition of minimal length (sp) or with the minimal number of letters
// a < m (so), deterministic
BraidWord canonical_reduced_word(const SignedPerm& s, CaseTag c);
// all such decompositions, for decomposition independence checks
std::vector<BraidWord> reduced_words(const SignedPerm& s, CaseTag c);
int ell(const SignedPerm& s, CaseTag c);

// roots as coordinate vectors over epsilon_1..epsilon_m
using Root = std::vector<int>;
std::vector<Root> positive_roots(CaseTag c, int m);
bool is_positive_root(const Root& r, CaseTag c);
bool is_compact(const Root& r);
std::vector<Root> delta_sigma(const SignedPerm& s, CaseTag c);
std::string root_str(const Root& r);

std::vector<int> rho(CaseTag c, int m);
// sigma o mu = sigma(mu + rho) - rho on label sequences
std::vector<Q> shifted_action(const SignedPerm& s, CaseTag c, const std::vector<Q>& mu);

// ---------------------------------------------------------------------------
// the algebra B_m and its braid action

class Zhelobenko {
public:
    Zhelobenko(CaseTag c, int m, int n);

    CaseTag cs() const { return cs_; }
    int m() const { return m_; }
    int n() const { return n_; }
    const Algebra& B() const { return *B_; }
    const Algebra& PD() const { return *pd_; }

    NCElement F(int c, int d) const { return f_elem(*B_, cs_, c, d); }
    NCElement x(int r, int i) const { return B_->gen(gX(r, i)); }
    NCElement d(int r, int i) const { return B_->gen(gD(r, i)); }
    NCElement zeta(int c, int d) const; // zeta_n(F_cd) inside B

    // the sl_2 triple of the simple root eta_a
    NCElement E(int a) const { return E_[size_t(a - 1)]; }
    NCElement Fa(int a) const { return F_[size_t(a - 1)]; }
    NCElement H(int a) const { return H_[size_t(a - 1)]; }
    // value of H_a on a weight given by labels
    Q H_value(int a, const std::vector<Q>& labels) const;
    // eta_a(F_{-b bar,-b bar})
    std::vector<Q> simple_root(int a) const;

    // the braid generator sigma~_a as an automorphism of B
    NCElement braid(int a, const NCElement& Y) const;
    // sigma~_{w1} ... sigma~_{wr} (Y): rightmost letter first
    NCElement braid_word(const BraidWord& w, const NCElement& Y) const;
    // the reflection used by xi-check_a: sigma_a, or sigma'_m = sigma_m sigma_{m-1} sigma_m for so
    SignedPerm check_reflection(int a) const;
    NCElement check_braid(int a, const NCElement& Y) const;

    // automorphism property and zeta-equivariance of sigma~_a on generators
    CheckReport check_braid_hom(int a) const;

    // target parameters of xi-check_a and of the pure twist sigma~_m (so)
    FModuleParams xi_target(int a, const FModuleParams& p) const;
    FModuleParams twist_target(const FModuleParams& p) const;
    FModuleParams sigma_target(const SignedPerm& s, const FModuleParams& p) const;

    const ModuleEngine& engine(const FModuleParams& p) const;
    // the canonical representative in B of the class [1 (x) p]
    NCElement lift(const FModuleParams& p, const Poly& v) const;
    // class of Y in the coinvariants of p
    Poly cls(const FModuleParams& p, const NCElement& Y) const;
    // labels of the weight of the class [1 (x) monomial]
    std::vector<Q> labels(const FModuleParams& p, const PMono& e) const;
    // Cartan value of the cyclic vector
    std::vector<Q> cyclic_labels(const FModuleParams& p) const;

    // xi_a(Y) taken in the coinvariants of the target module `tgt`
    Poly xi_bar(int a, const FModuleParams& tgt, const NCElement& Y) const;
    // xi-check_a on an element of B (the composition xi-bar_a sigma~)
    Poly xi_check_elem(int a, const FModuleParams& tgt, const NCElement& Y) const;
    // xi-check_a on a class; returns the class in xi_target(a, p)
    Poly xi_check(int a, const FModuleParams& p, const Poly& v) const;
    // sigma~_m on a class (so case); returns the class in twist_target(p)
    Poly twist(const FModuleParams& p, const Poly& v) const;
    // the operator of a letter inside a word: xi-check_a, or sigma~_m for so
    Poly letter_op(int a, const FModuleParams& p, const Poly& v, FModuleParams* out) const;
    // xi-check_sigma along a word (rightmost letter first)
    Poly apply_word(const BraidWord& w, const FModuleParams& p, const Poly& v, FModuleParams* out = nullptr) const;
    Poly xicheck_sigma(const SignedPerm& s, const FModuleParams& p, const Poly& v,
                       FModuleParams* out = nullptr) const;

private:
    CaseTag cs_;
    int m_, n_;
    FormConventions form_;
    AlgPtr B_, pd_;
    std::vector<NCElement> E_, F_, H_;
    std::vector<std::unique_ptr<Hom>> braid_; // a = 1..m
    mutable std::map<std::string, std::unique_ptr<ModuleEngine>> engines_;

    int row_image(int a, int r) const; // sigma-bar_a on signed row indices
};

std::string params_str(const FModuleParams& p);

// ---------------------------------------------------------------------------
// closed forms

// F(-s, v, w; 1) as the finite product and as the terminating sum
Q hyp_product(int s, const Q& v, const Q& w);
Q hyp_sum(int s, const Q& v, const Q& w);

// nu_a = -n/2 + mu_a - lambda_a, so lambda_a = mu_a - n/2 - nu_a
std::vector<Q> extremal_lambda(const std::vector<Q>& mu, const std::vector<int>& nu, int n);
Q z_eta(const Root& eta, CaseTag c, const std::vector<Q>& mu, const std::vector<Q>& lambda,
        const std::vector<int>& nu);
Q predict_multiplier(const SignedPerm& s, CaseTag c, int n, const std::vector<Q>& mu, const std::vector<int>& nu);

struct ExtremalReport {
    std::string sigma;
    BraidWord word;
    std::vector<int> nu;
    Q multiplier;
    Poly computed, predicted;
    bool nonzero = false; // v_mu^lambda is a nonzero class
    bool weight_ok = false;
    bool ok = false;
    std::string witness;
};
ExtremalReport verify_extremal(const Zhelobenko& Z, const SignedPerm& s, const std::vector<Q>& mu, const std::vector<int>& nu);

// closed forms of xi-check_a on x^s x^t, d^s d^t, x^s d^t (a < m) and on x^s
// (sp, a = m); the column k follows the convention k != k~ when n > 1
enum class NormLemma { DD, XX, XD, X };
std::string lemma_name(NormLemma l);
CheckReport check_norm_lemma(const Zhelobenko& Z, NormLemma l, int a, int s, int t, const std::vector<Q>& mu);

// ---------------------------------------------------------------------------
// braid relations and properties

struct BraidRelation {
    std::string name;
    std::vector<std::string> lhs, rhs; // operator names, leftmost applied last
};
std::vector<BraidRelation> braid_relations(CaseTag c, int m);
// evaluate a named operator ("xi1", "xi2", "s2") on a class
Poly apply_named(const Zhelobenko& Z, const std::string& op, const FModuleParams& p, const Poly& v,
                 FModuleParams* out);
// every relation on every coinvariant space with row degrees <= nu_max
std::vector<CheckReport> check_braid_relations(const Zhelobenko& Z, const std::vector<Q>& mu, int nu_max);

struct PropertyOptions {
    int samples = 20;
    unsigned seed = 1;
    int kmax = 1;      // Yangian coefficients used by the intertwining check
    bool intertwining = true;
};
std::vector<CheckReport> property_suite(const Zhelobenko& Z, const std::vector<Q>& mu, const PropertyOptions& opt);

// the X(g_n) action commutes with xi-check_sigma on the coinvariant space nu
CheckReport check_intertwining(const Zhelobenko& Z, const SignedPerm& s, const std::vector<Q>& mu,
                               const std::vector<int>& nu, int kmax);

} // namespace twy
