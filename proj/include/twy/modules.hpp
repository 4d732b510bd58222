#pragma once
// Verma modules of f_N tensored with P(C^N (x) C^n), coinvariants of a
// nilpotent subalgebra, action matrices of the twisted Yangian images, the
// tensor product model P_{z_m} (x) ... (x) P_{z_1}, and the comparisons
// between the two.
//
// A Verma module is free over U(n), so for any subalgebra q of n the
// q-coinvariants of (Verma) (x) P are spanned by classes of
// (kept PBW word) . 1 (x) p with no relations:  [y w (x) p] = -[w (x) y.p].
// The engines below compute directly in that basis; the exact linear algebra
// route (images of n and reduced columns) is kept as an independent check.

#include "twy/yangian.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace twy {

using DeltaSeq = std::vector<int>; // delta_a = +-1, a = 1..m
DeltaSeq delta_plus(int m);

// exponents of x_{ri}, row-major over rows 1..N and columns 1..n
using PMono = std::vector<int>;
using Poly = std::map<PMono, Q>;

std::string pmono_str(const PMono& e, int n);
std::string poly_str(const Poly& p, int n);
void poly_add(Poly& acc, const Poly& p, const Q& c);
bool poly_is_zero(const Poly& p);

// monomials of P(C^n) of total degree d, lexicographically decreasing
std::vector<std::vector<int>> monomials_of_degree(int n, int d);

struct ModuleSpec {
    CaseTag cs = CaseTag::SpSo;
    int N = 1;                 // rank of f_N
    int n = 1;                 // dimension of C^n
    std::vector<Q> hw;         // highest weight: values on F_cc, c = 1..N
    std::vector<bool> twisted; // rows 1..N pushed through the Fourier map
    // representatives F_ab (a > b) that are divided out; the remaining
    // lowering generators stay as PBW words of the Verma part
    std::function<bool(int, int)> in_q;
};

// how letters of a foreign algebra are read inside an engine
struct LetterMap {
    int e_offset = 0;                // E_ab -> F_{off+a, off+b}
    std::vector<int> pd_offset{0};   // PD letters of slot s -> rows + pd_offset[s]
};

class ModuleEngine {
public:
    explicit ModuleEngine(ModuleSpec s);

    using Key = std::pair<Word, PMono>; // kept PBW word, polynomial monomial
    using Vec = std::map<Key, Q>;

    const ModuleSpec& spec() const { return spec_; }
    const Algebra& f() const { return *f_; }
    const Algebra& pd() const { return *pd_; }
    int N() const { return spec_.N; }
    int n() const { return spec_.n; }
    bool all_divided() const { return kept_.empty(); }

    // weight (values on F_cc) of a basis vector, of a generator of f, of x_ri
    std::vector<Q> weight(const Key& k) const;
    std::vector<int> gen_weight(const GenId& g) const;
    // value of the highest weight on a Cartan representative
    Q hw_value(const GenId& h) const;
    // eigenvalue of the P-part action of F_aa on a monomial (a signed)
    Q p_eigen(int a, const PMono& e) const;

    // complete ordered basis of the weight space (a finite enumeration)
    std::vector<Key> weight_basis(const std::vector<Q>& wt) const;
    // kept = empty: the monomials with prescribed row degrees
    std::vector<Key> row_degree_basis(const std::vector<int>& rowdeg) const;

    // P-part: a PD element (letters of any slot mapped by lm) on a polynomial,
    // with the Fourier twist on twisted rows
    Poly apply_pd(const NCElement& e, const Poly& p, const LetterMap& lm = {}) const;
    Poly apply_pd_word(const Algebra& A, const Word& w, const Poly& p, const LetterMap& lm = {}) const;
    // zeta_n of an f-generator (representative) pushed through the twist
    Poly apply_zeta(const GenId& g, const Poly& p) const;

    // the f-action (diagonal on Verma (x) P) followed by the projection
    Vec act_f(const GenId& g, const Vec& v) const;
    Vec act_f_elem(const NCElement& x, const Vec& v) const; // x in f()
    // a tensor-presentation element: F (and E) letters act on the Verma part
    // only, PD letters on P only
    Vec act_tensor(const NCElement& b, const Vec& v, const LetterMap& lm = {}) const;
    // cross-relation presentation, applied to 1 (x) 1 and projected; only
    // for engines dividing out all of n
    Poly act_cyclic(const NCElement& b) const;

    std::vector<int> word_exponents(const Word& w) const;
    std::string key_str(const Key& k) const;

private:
    enum class Cls { Q, Kept, H, NP };
    ModuleSpec spec_;
    AlgPtr f_, pd_;
    FormConventions form_;
    std::vector<Cls> cls_;          // by f generator index
    std::vector<size_t> kept_;      // f indices of kept generators
    std::vector<NCElement> zeta_;   // by f generator index, in pd_
    mutable std::map<std::pair<std::string, Word>, NCElement> norm_cache_;

    void letter(const GenId& g, int row_off, Poly& p) const;
    const NCElement& normal_product(const std::vector<GenId>& pre, const Word& kw) const;
    void reduce_word(const Word& w, const Q& c, const Poly& p, Vec& out) const;
};

// ---------------------------------------------------------------------------
// F_delta(M_mu): labels mu_a = mu(F_{-a bar, -a bar}), row a bar = m - a + 1

struct FModuleParams {
    CaseTag cs = CaseTag::SpSo;
    int m = 1, n = 1;
    std::vector<Q> mu;   // labels a = 1..m
    DeltaSeq delta;      // a = 1..m
};

// q = n (coinvariants, fast route)
ModuleEngine coinvariant_engine(const FModuleParams& p);
// q = 0, whole module; needs delta = delta_plus for finite weight spaces
ModuleEngine full_engine(const FModuleParams& p);

inline int row_of_label(int m, int a) { return m - a + 1; }
std::vector<Q> labels_of_weight(const std::vector<Q>& wt);
std::vector<Q> weight_of_labels(const std::vector<Q>& labels);
// labels of the weight of 1_mu (x) (monomial with row degrees nu)
std::vector<Q> coinvariant_labels(const FModuleParams& p, const std::vector<int>& nu);

struct WeightSpaceBasis {
    std::vector<Q> weight;
    std::vector<ModuleEngine::Key> basis;
    std::map<ModuleEngine::Key, size_t> index;
    // linear algebra route only
    size_t image_rank = 0;
    QMatrix projection; // full weight space -> quotient coordinates
    std::vector<ModuleEngine::Key> quotient_basis;

    size_t dim() const { return basis.size(); }
    void set_basis(std::vector<ModuleEngine::Key> b);
    std::vector<Q> coords(const ModuleEngine::Vec& v) const; // throws on foreign keys
};

// the coinvariant weight space of F_delta(M_mu) whose row a bar has degree nu_a
WeightSpaceBasis coinvariant_space(const ModuleEngine& eng, const std::vector<int>& nu);
WeightSpaceBasis weight_space(const ModuleEngine& eng, const std::vector<Q>& wt);

// n-coinvariants by exact linear algebra inside the whole module: images of
// every lowering generator from the weight spaces wt + alpha, and a projection
// onto the classes of 1 (x) p.  `ok` reports that those classes form a basis.
struct CoinvariantRref {
    WeightSpaceBasis space;
    bool ok = false;
    std::string witness;
};
CoinvariantRref n_coinvariants(const ModuleEngine& full, const FModuleParams& p, const std::vector<int>& nu);

// beta_m images, memoized per (case, m, n, K)
const BetaImage& beta_cached(CaseTag c, int m, int n, int K);

// matrix of the coefficient S_ij^(k) of the given series on a weight space
QMatrix series_action_matrix(const ModuleEngine& eng, const SeriesMatrix& S, int i, int j, int k,
                             const WeightSpaceBasis& space, const LetterMap& lm = {});
QMatrix S_action_matrix(const ModuleEngine& eng, int i, int j, int k, const WeightSpaceBasis& space, int K);
// matrix of an f-element of eng.f() on a weight space (target = same space)
QMatrix f_action_matrix(const ModuleEngine& eng, const NCElement& x, const WeightSpaceBasis& space);

// ---------------------------------------------------------------------------
// tensor products of the polynomial modules P_z^N (N < 0: degree -N of P'_z)

struct TensorFactor {
    Q z;
    int N = 0;
};
using MatSeries = std::vector<QMatrix>; // coefficients of u^0 .. u^-K

struct TensorModel {
    int n = 1, K = 0;
    CaseTag cs = CaseTag::SpSo;
    std::vector<TensorFactor> factors;       // left to right
    std::vector<std::vector<PMono>> bases;   // per factor
    size_t dim = 1;
    std::vector<std::vector<MatSeries>> T;   // n x n, Y(gl_n) action
    std::vector<std::vector<MatSeries>> S;   // n x n, through T'(-u) T(u)
};
TensorModel tensor_model(CaseTag c, int n, const std::vector<TensorFactor>& factors, int K);
// the coefficient S_ij^(k)
QMatrix tensor_action_matrix(const TensorModel& t, int i, int j, int k);
// P'_z versus the Fourier pushforward of P_{-z-1} twisted by 1 + 1/(u+z)
bool check_dual_module(CaseTag c, int n, const Q& z, int N, int K, std::string* witness = nullptr);

TruncSeries<Q> verma_factor_series(CaseTag c, const std::vector<Q>& mu, int K);

struct CheckReport {
    std::string name;
    bool ok = true;
    size_t checked = 0;
    std::string witness;
    void fail(const std::string& w) {
        if (ok) witness = w;
        ok = false;
    }
};

struct VermaReport {
    CheckReport dims{"dimension", true, 0, ""}, intertwine{"intertwining", true, 0, ""}, cartan{"cartan", true, 0, ""},
        rref{"linear-algebra route", true, 0, ""};
    bool ok() const { return dims.ok && intertwine.ok && cartan.ok && rref.ok; }
};
// `rref` also runs the linear-algebra route and compares its matrices
VermaReport verma_check(CaseTag c, int n, const std::vector<Q>& mu, const std::vector<int>& nu, int K,
                        bool rref = true);

// ---------------------------------------------------------------------------
// parabolic induction

struct InductionReport {
    CheckReport yangian{"X(g_n) action", true, 0, ""}, levi{"f_m + gl_l action", true, 0, ""};
    size_t spaces = 0, dim_total = 0;
    bool ok() const { return yangian.ok && levi.ok; }
};
// mu: labels of the f_m Verma module; nu: gl_l weight (values on E_aa).
// shift_levi = false drops the n/2 shift of the gl_l action (negative control).
InductionReport induction_check(CaseTag c, int m, int l, int n, int K, int cutoff, const std::vector<Q>& mu,
                          const std::vector<Q>& nu, bool shift_levi = true);

// ---------------------------------------------------------------------------
// generic weights

// deterministic labels from a seed; rejects candidates failing genericity
std::vector<Q> generic_weight(CaseTag c, int m, unsigned seed, std::vector<std::string>* rejected = nullptr);
// mu_a +- mu_b not integral (a != b), and 2 mu_a not integral for sp
bool is_generic(CaseTag c, const std::vector<Q>& mu, std::string* why = nullptr);

} // namespace twy
