#pragma once
// Images of Yangian and twisted Yangian generators, and the relation checks
// (RTT, reflection equation, symmetry relation) on those images.

#include "twy/liealg.hpp"

#include <string>
#include <vector>

namespace twy {

struct RelationFailure {
    std::vector<int> idx; // i, j, k, l
    int e = 0, f = 0;     // exponents of u^-1, v^-1
    std::string witness;
};

struct RelationReport {
    std::string relation;
    size_t checked = 0;  // number of coefficient identities compared
    int box = 0;         // certified exponent bound in each variable
    std::vector<RelationFailure> failures;
    bool ok() const { return failures.empty() && checked > 0; }
    std::string summary() const;
};

// The cleared relations multiply by polynomials in u, v, so an image known
// to order P determines the relation coefficients only on the box
// e, f <= P - pad.  That box (capped by `limit`) is what gets certified and it
// is recorded in the report.
constexpr int kRttPad = 1;
constexpr int kReflPad = 2;

// (u-v)[T_ij(u),T_kl(v)] = T_kj(u)T_il(v) - T_kj(v)T_il(u)
RelationReport check_rtt(const SeriesMatrix& T, int limit = 1 << 20);
// the cleared reflection relations for all i, j, k, l
RelationReport check_reflection(const SeriesMatrix& S, const FormConventions& form, int limit = 1 << 20);
// S'(u) = S(-u) +- (S(u) - S(-u))/(2u)
RelationReport check_symmetry(const SeriesMatrix& S, const FormConventions& form, int limit = 1 << 20);

// T'_ij = theta_i theta_j T_{j~ i~}
SeriesMatrix form_transpose(const SeriesMatrix& T, const FormConventions& form);
// T(u) -> T'(-u) T(u)
SeriesMatrix xy_images(const SeriesMatrix& T, const FormConventions& form);
// T(u) -> T(-u)^{-1}
SeriesMatrix tin_images(const SeriesMatrix& T);
// T(u) -> T(u - z)
SeriesMatrix tau_images(const SeriesMatrix& T, const Q& z);
// T(u) -> g(u) T(u) with g scalar
SeriesMatrix twist_images(const SeriesMatrix& T, const TruncSeries<Q>& g);
// S(u) -> S(-u - N/2)^{-1}
SeriesMatrix omega_images(const SeriesMatrix& S, int N);

// T_ij(u) -> delta_ij + E_ij u^-1 inside an algebra containing gl_n at `slot`
SeriesMatrix eval_images(const Algebra* A, int n, int K, int slot = 0);
// S_ij(u) -> delta_ij + (E_ij - theta_i theta_j E_{j~ i~}) / (u +- 1/2)
SeriesMatrix pi_images(const Algebra* A, const FormConventions& form, int K, int slot = 0);

// comultiplication of an image T over slots carried by T1, T2: sum_k T1_ik T2_kj
SeriesMatrix comult_images(const SeriesMatrix& T1, const SeriesMatrix& T2);
// coaction S_ij -> sum S_gh(u) theta_i theta_g T_{g~ i~}(-u) T_hj(u)
SeriesMatrix coaction_images(const SeriesMatrix& S, const SeriesMatrix& T, const FormConventions& form);

// O(u) from R'(0) S_1(u) R(2u) S_2(-u)^{-1} = (2u -+ 1) O(u) R'(0)
Series O_series_extract(const SeriesMatrix& S, const FormConventions& form);

// ---------------------------------------------------------------------------
// alpha_l : Y(gl_n) -> U(gl_l) (x) PD(C^l (x) C^n)

struct AlphaImage {
    int l, n;
    AlgPtr alg;
    SeriesMatrix T;
    // E_ab (x) 1 + sum_k 1 (x) x_ak d_bk
    NCElement embedded_E(int a, int b) const;
};
AlphaImage alpha_images(int l, int n, int K);

// ---------------------------------------------------------------------------
// beta_m : X(g_n) -> U(f_m) (x) PD(C^m (x) C^n)

struct BetaImage {
    CaseTag cs;
    int m, n;
    AlgPtr alg;
    SeriesMatrix S;
    // p_ci, q_ci for signed c
    NCElement p(int c, int i) const;
    NCElement q(int c, int i) const;
    NCElement F(int a, int b) const { return f_elem(*alg, cs, a, b); }
    // X (x) 1 + 1 (x) zeta_n(X)
    NCElement embedded_F(int a, int b) const;
    NCElement zeta(int a, int b) const;
    FormConventions form() const { return FormConventions(cs, n); }
};
BetaImage beta_images(CaseTag c, int m, int n, int K);

// p_ci, q_ci and zeta_n(F_cd) = delta_cd n/2 - sum_k q_ck p_dk inside any
// algebra holding the PD block at `slot`
NCElement pq_element(const Algebra& A, const FormConventions& form, int c, int i, bool is_p, int slot = 0);
NCElement zeta_element(const Algebra& A, const FormConventions& form, int c, int d, int slot = 0);

// zeta_n as a homomorphism from U(f_m) (given presentation) into PD(C^m (x) C^n)
struct ZetaMap {
    FPresentation f;
    AlgPtr pd;
    Hom hom;
};
ZetaMap zeta_map(CaseTag c, int m, int n);

// W-bar(u) defined by (1 -+ 1/(2u)) W-bar(u) = W(u +- 1/2 + m), over the
// algebra of `b` (coefficients central in the f-part)
Series wbar_series(const BetaImage& b, int K);
// canonical W-tilde(u) = (1 - W-bar(u))^{-1/2}; its logarithm is odd in u
Series wtilde_series(const BetaImage& b, int K);
// beta-tilde: the beta image times W-tilde(u)
SeriesMatrix tilde_beta_images(const BetaImage& b, int K);

struct CommutantReport {
    bool ok = true;
    size_t checked = 0;
    std::string witness;
};
// [S_ij^(k), X (x) 1 + 1 (x) zeta_n(X)] = 0 for every generator X and k <= kmax
CommutantReport check_beta_commutant(const BetaImage& b, const SeriesMatrix& S, int kmax);
// [T_ij^(k), E_ab (x) 1 + ...] = 0
CommutantReport check_alpha_commutant(const AlphaImage& a, int kmax);
// zeta_n([F_ab, F_cd]) = [zeta_n F_ab, zeta_n F_cd] on all generator pairs
CommutantReport check_zeta_hom(CaseTag c, int m, int n);

// ---------------------------------------------------------------------------
// coassociativity of the coaction on concrete images: U(gl_n)^{(x)3}

struct CoassocReport {
    bool ok = true;
    std::string witness;
};
CoassocReport check_coassociativity(CaseTag c, int n, int K);

// ---------------------------------------------------------------------------
// Olshanski homomorphism versus the image formula through zeta-bar_l

struct OlshanskiReport {
    bool ok = true;
    size_t checked = 0;
    std::string witness;
};
OlshanskiReport check_olshanski(CaseTag c, int m, int n, int l, int K);

} // namespace twy
