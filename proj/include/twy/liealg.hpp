#pragma once
// Index conventions, Lie algebra presentations (gl_N, f_m, Weyl algebra
// blocks), resolvents, central series and Harish-Chandra projections.

#include "twy/exact.hpp"
#include "twy/freealg.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace twy {

// SpSo: f_m = sp_2m, g_n = so_n, symmetric form on C^n, upper signs.
// SoSp: f_m = so_2m, g_n = sp_n, alternating form on C^n, lower signs.
enum class CaseTag { SpSo, SoSp };

std::string case_name(CaseTag c);
CaseTag parse_case(const std::string& s);

// the double sign: +1 for the upper (SpSo) choice, -1 for the lower
inline int pm(CaseTag c) { return c == CaseTag::SpSo ? 1 : -1; }

// tilde map and theta signs on 1..N for the form on C^N of the given case.
// With l > 0 the space is C^n + C^l and each summand carries its own form.
struct FormConventions {
    CaseTag cs;
    int N;
    int n1; // size of the first summand
    FormConventions(CaseTag c, int n, int l = 0);
    int tilde(int i) const;
    int theta(int i) const;
};

// epsilon_{ab} for the form on C^{2m}
int eps_f(CaseTag c, int a, int b);

inline int sgn_int(int a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

// c -> c-bar: m+1-c for c > 0 and -m-1-c for c < 0
inline int bar(int m, int c) { return c > 0 ? m + 1 - c : -m - 1 - c; }

// ---------------------------------------------------------------------------
// presentations assembled from blocks of generators

struct Block {
    std::vector<GenId> gens;
    BracketFn bracket; // used for pairs inside the block
};

// [E_ij, E_kl] = d_jk E_il - d_li E_kj; order lowering < Cartan < raising
Block gl_block(int N, int slot = 0);
// f_m with one representative per pair F_ab = -eps_ab F_{-b,-a};
// order n < h < n'
Block f_block(CaseTag c, int m, int slot = 0);
// x_{ai}, d_{ai} for a = 1..rows, i = 1..cols; all x before all d
Block pd_block(int rows, int cols, int slot = 0);

// blocks are concatenated in order; pairs from different blocks use `cross`
// (or commute if cross is empty)
AlgPtr make_algebra(const std::string& name, const std::vector<Block>& blocks, BracketFn cross = nullptr,
                    bool verify = true);

// representative of F_ab: value = sign * F_rep, or zero
struct FRep {
    bool zero = false;
    int a = 0, b = 0;
    int sign = 1;
};
FRep f_rep(CaseTag c, int a, int b);
// F_ab as an element of an algebra containing the f_m block of that slot
NCElement f_elem(const Algebra& alg, CaseTag c, int a, int b, int slot = 0);
LinG f_lin(CaseTag c, int a, int b, const Q& coef, int slot = 0);

// triangular pieces of f_m by representative index
enum class FPart { N, H, NP };
FPart f_part(int a, int b);
inline bool is_f_raising(const GenId& g) { return g.sort == Sort::F && g.i < g.j; }
inline bool is_f_lowering(const GenId& g) { return g.sort == Sort::F && g.i > g.j; }
inline bool is_f_cartan(const GenId& g) { return g.sort == Sort::F && g.i == g.j; }
inline bool is_gl_raising(const GenId& g) { return g.sort == Sort::E && g.i < g.j; }

// ---------------------------------------------------------------------------
// matrices of truncated series

using Series = TruncSeries<NCElement>;

class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(size_t n, int K, const Algebra* alg);
    static SeriesMatrix identity(size_t n, int K, const Algebra* alg);

    size_t size() const { return n_; }
    int K() const { return K_; }
    const Algebra* alg() const { return alg_; }
    Series& operator()(size_t i, size_t j) { return e_[i * n_ + j]; }
    const Series& operator()(size_t i, size_t j) const { return e_[i * n_ + j]; }

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
    SeriesMatrix scaled(const Q& s) const;
    // f(u) * M, f a series over the same ring
    SeriesMatrix left_mul(const Series& f) const;
    SeriesMatrix right_mul(const Series& f) const;
    SeriesMatrix negate_var() const;
    SeriesMatrix reexpand(const Q& z) const;
    SeriesMatrix shift_arg(const Q& w) const { return reexpand(-w); }
    SeriesMatrix map(const std::function<NCElement(const NCElement&)>& f, const Algebra* target) const;
    int prec() const;

private:
    size_t n_ = 0;
    int K_ = 0;
    const Algebra* alg_ = nullptr;
    std::vector<Series> e_;
};

// (u - M)^{-1} for a square matrix M over an algebra, M given row-major
SeriesMatrix resolvent(const std::vector<NCElement>& M, size_t n, int K, const Algebra* alg);
// inverse of a series matrix whose constant term is the identity
SeriesMatrix matrix_inverse_series(const SeriesMatrix& T);
// scalar series  (u - z)^{-1}  and its powers, over the given algebra
Series inv_linear(const Q& z, int K, const Algebra* alg);
Series scalar_series(const TruncSeries<Q>& s, const Algebra* alg);

// ---------------------------------------------------------------------------
// the algebras of this module

struct GlPresentation {
    int l;
    AlgPtr alg;
    NCElement E(int a, int b) const { return alg->gen(gE(a, b)); }
};
GlPresentation make_gl(int l);

struct FPresentation {
    CaseTag cs;
    int m;
    AlgPtr alg;
    NCElement F(int a, int b) const { return f_elem(*alg, cs, a, b); }
    // the 2m x 2m matrix F indexed -m..-1,1..m
    std::vector<NCElement> matrix() const;
};
FPresentation make_f(CaseTag c, int m);

// signed index <-> position 0..2m-1 (order -m..-1, 1..m)
inline size_t spos(int m, int a) { return a < 0 ? size_t(a + m) : size_t(a + m - 1); }
inline int sidx(int m, size_t p) { return int(p) < m ? int(p) - m : int(p) - m + 1; }

SeriesMatrix f_resolvent(const FPresentation& f, int K);
Series f_resolvent_entry(const FPresentation& f, int a, int b, int K);
Series W_series(const FPresentation& f, int K);
SeriesMatrix gl_resolvent(const GlPresentation& g, int K); // (u - E)^{-1}
Series Z_series(const GlPresentation& g, int K);

// Harish-Chandra projections; `invariant` reports whether the input was
// Cartan-invariant (only then is the result the homomorphism's value)
struct HcResult {
    NCElement value;
    bool invariant = true;
};
HcResult hc_phi(const NCElement& e);
HcResult hc_psi(const NCElement& e);
Series hc_series(const Series& s, bool f_algebra, bool* all_invariant = nullptr);

// identity checks
struct IdentityReport {
    std::string name;
    bool ok = true;
    std::string witness;
};
IdentityReport verify_hc_Z(int l, int K);
IdentityReport verify_hc_W(CaseTag c, int m, int K);
IdentityReport verify_transpose_resolvent(CaseTag c, int m, int K);
IdentityReport verify_W_reflection(CaseTag c, int m, int K);
IdentityReport verify_gl_transpose_resolvent(int l, int K);
IdentityReport verify_resolvent_commutators(CaseTag c, int m, int K);
IdentityReport verify_centrality_W(CaseTag c, int m, int K);
IdentityReport verify_centrality_Z(int l, int K);

// 2x2 block inverse of a (p+q) square series matrix
SeriesMatrix block_inverse(const SeriesMatrix& M, size_t p);

} // namespace twy
