#include "twy/yangian.hpp"

#include <map>
#include <sstream>
#include <tuple>

namespace twy {

std::string RelationReport::summary() const {
    std::ostringstream os;
    os << relation << ": " << (ok() ? "pass" : "fail") << " (" << checked << " coefficient identities, box " << box
       << ")";
    if (!failures.empty()) {
        const auto& f = failures.front();
        os << " first failure at indices";
        for (int x : f.idx) os << " " << x;
        os << " u^-" << f.e << " v^-" << f.f;
    }
    return os.str();
}

namespace {

constexpr size_t kMaxFailures = 8;

// coefficient products S_A[x] * S_B[y], memoized
class ProdCache {
public:
    explicit ProdCache(const SeriesMatrix& S) : S_(S), zero_(S.alg()->zero()) {}

    const NCElement& get(size_t A, int x, size_t B, int y) {
        if (x < 0 || y < 0) return zero_;
        auto key = std::make_tuple(A, x, B, y);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        size_t n = S_.size();
        const NCElement& a = S_(A / n, A % n)[x];
        const NCElement& b = S_(B / n, B % n)[y];
        NCElement p = (a.is_zero() || b.is_zero()) ? zero_ : a * b;
        return memo_.emplace(key, std::move(p)).first->second;
    }

private:
    const SeriesMatrix& S_;
    NCElement zero_;
    std::map<std::tuple<size_t, int, size_t, int>, NCElement> memo_;
};

void require_power_series(const SeriesMatrix& S) {
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = 0; j < S.size(); ++j)
            for (int e = -2; e < 0; ++e)
                if (!S(i, j)[e].is_zero()) throw ConfigError("image has positive powers of u");
}

std::string witness_of(const NCElement& d) {
    std::string s = d.dump();
    if (s.size() > 400) s = s.substr(0, 400) + " ...";
    return s;
}

} // namespace

RelationReport check_rtt(const SeriesMatrix& T, int K) {
    require_power_series(T);
    RelationReport rep;
    rep.relation = "rtt";
    size_t n = T.size();
    int box = std::min(K, T.prec() - kRttPad);
    rep.box = box;
    ProdCache P(T);
    auto id = [n](size_t i, size_t j) { return i * n + j; };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l)
                    for (int e = 0; e <= box; ++e)
                        for (int f = 0; f <= box; ++f) {
                            // commutator coefficient C(x,y) = T_ij[x] T_kl[y] - T_kl[y] T_ij[x]
                            auto C = [&](int x, int y) {
                                return P.get(id(i, j), x, id(k, l), y) - P.get(id(k, l), y, id(i, j), x);
                            };
                            NCElement lhs = C(e + 1, f) - C(e, f + 1);
                            NCElement rhs = P.get(id(k, j), e, id(i, l), f) - P.get(id(k, j), f, id(i, l), e);
                            NCElement d = lhs - rhs;
                            ++rep.checked;
                            if (!d.is_zero() && rep.failures.size() < kMaxFailures)
                                rep.failures.push_back({{int(i + 1), int(j + 1), int(k + 1), int(l + 1)}, e, f,
                                                        witness_of(d)});
                        }
    return rep;
}

RelationReport check_reflection(const SeriesMatrix& S, const FormConventions& form, int K) {
    require_power_series(S);
    if (int(S.size()) != form.N) throw ConfigError("matrix size does not match the form");
    RelationReport rep;
    rep.relation = "reflection";
    size_t n = S.size();
    int box = std::min(K, S.prec() - kReflPad);
    rep.box = box;
    const int s = pm(form.cs);
    ProdCache P(S);
    auto id = [n](int i, int j) { return size_t(i - 1) * n + size_t(j - 1); };
    auto th = [&](int i) { return form.theta(i); };
    auto tl = [&](int i) { return form.tilde(i); };
    const int N = int(n);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l) {
                    auto C = [&](int x, int y) {
                        return P.get(id(i, j), x, id(k, l), y) - P.get(id(k, l), y, id(i, j), x);
                    };
                    auto Y1 = [&](int x, int y) {
                        return P.get(id(k, j), x, id(i, l), y) - P.get(id(k, j), y, id(i, l), x);
                    };
                    auto Y2 = [&](int x, int y) {
                        return P.get(id(i, tl(k)), x, id(tl(j), l), y).scaled(Q(th(k) * th(j))) -
                               P.get(id(k, tl(i)), y, id(tl(l), j), x).scaled(Q(th(i) * th(l)));
                    };
                    auto Y3 = [&](int x, int y) {
                        return P.get(id(k, tl(i)), x, id(tl(j), l), y) - P.get(id(k, tl(i)), y, id(tl(j), l), x);
                    };
                    for (int e = -1; e <= box; ++e)
                        for (int f = -1; f <= box; ++f) {
                            NCElement lhs = C(e + 2, f) - C(e, f + 2);
                            NCElement rhs = Y1(e + 1, f) + Y1(e, f + 1);
                            rhs -= (Y2(e + 1, f) - Y2(e, f + 1)).scaled(Q(s));
                            rhs += Y3(e, f).scaled(Q(s * th(i) * th(j)));
                            NCElement d = lhs - rhs;
                            ++rep.checked;
                            if (!d.is_zero() && rep.failures.size() < kMaxFailures)
                                rep.failures.push_back({{i, j, k, l}, e, f, witness_of(d)});
                        }
                }
    return rep;
}

RelationReport check_symmetry(const SeriesMatrix& S, const FormConventions& form, int K) {
    require_power_series(S);
    RelationReport rep;
    rep.relation = "symmetry";
    int N = int(S.size());
    int box = std::min(K, S.prec());
    rep.box = box;
    const int s = pm(form.cs);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const Series& Sp = S(form.tilde(j) - 1, form.tilde(i) - 1);
            const Series& Sij = S(i - 1, j - 1);
            for (int e = 0; e <= box; ++e) {
                NCElement lhs = Sp[e].scaled(Q(form.theta(i) * form.theta(j)));
                NCElement rhs = Sij[e].scaled(Q(e % 2 == 0 ? 1 : -1));
                if (e >= 1 && (e - 1) % 2 != 0) rhs += Sij[e - 1].scaled(Q(s));
                NCElement d = lhs - rhs;
                ++rep.checked;
                if (!d.is_zero() && rep.failures.size() < kMaxFailures)
                    rep.failures.push_back({{i, j}, e, 0, witness_of(d)});
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------

SeriesMatrix form_transpose(const SeriesMatrix& T, const FormConventions& form) {
    size_t n = T.size();
    SeriesMatrix r(n, T.K(), T.alg());
    for (int i = 1; i <= int(n); ++i)
        for (int j = 1; j <= int(n); ++j)
            r(i - 1, j - 1) = T(form.tilde(j) - 1, form.tilde(i) - 1).scaled(Q(form.theta(i) * form.theta(j)));
    return r;
}

SeriesMatrix xy_images(const SeriesMatrix& T, const FormConventions& form) {
    return form_transpose(T, form).negate_var() * T;
}

SeriesMatrix tin_images(const SeriesMatrix& T) { return matrix_inverse_series(T.negate_var()); }

SeriesMatrix tau_images(const SeriesMatrix& T, const Q& z) { return T.shift_arg(-z); }

SeriesMatrix twist_images(const SeriesMatrix& T, const TruncSeries<Q>& g) {
    return T.left_mul(scalar_series(g, T.alg()));
}

SeriesMatrix omega_images(const SeriesMatrix& S, int N) {
    return matrix_inverse_series(S.negate_var().shift_arg(qfrac(N, 2)));
}

SeriesMatrix eval_images(const Algebra* A, int n, int K, int slot) {
    SeriesMatrix T = SeriesMatrix::identity(n, K, A);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) T(i - 1, j - 1).set(1, A->gen(gE(i, j, slot)));
    return T;
}

SeriesMatrix pi_images(const Algebra* A, const FormConventions& form, int K, int slot) {
    int n = form.N;
    SeriesMatrix S = SeriesMatrix::identity(n, K, A);
    Series g = inv_linear(qfrac(-pm(form.cs), 2), K, A);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            NCElement x = A->gen(gE(i, j, slot)) -
                          A->gen(gE(form.tilde(j), form.tilde(i), slot)).scaled(Q(form.theta(i) * form.theta(j)));
            Series c = Series::constant(K, x) * g;
            S(i - 1, j - 1) += c;
        }
    return S;
}

SeriesMatrix comult_images(const SeriesMatrix& T1, const SeriesMatrix& T2) { return T1 * T2; }

SeriesMatrix coaction_images(const SeriesMatrix& S, const SeriesMatrix& T, const FormConventions& form) {
    size_t n = S.size();
    SeriesMatrix Tp = form_transpose(T, form).negate_var();
    SeriesMatrix r(n, S.K(), S.alg());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Series acc(S.K(), S.alg()->zero());
            for (size_t g = 0; g < n; ++g)
                for (size_t h = 0; h < n; ++h) acc += S(g, h) * (Tp(i, g) * T(h, j));
            r(i, j) = acc;
        }
    return r;
}

Series O_series_extract(const SeriesMatrix& S, const FormConventions& form) {
    const Algebra* A = S.alg();
    int K = S.K();
    int n = int(S.size());
    SeriesMatrix Sinv = matrix_inverse_series(S.negate_var());
    int one_t = form.tilde(1);
    Series first(K, A->zero()), second(K, A->zero());
    for (int j = 1; j <= n; ++j)
        first += (S(j - 1, 0) * Sinv(form.tilde(j) - 1, one_t - 1)).scaled(Q(form.theta(j)));
    for (int p = 1; p <= n; ++p) second += S(one_t - 1, p - 1) * Sinv(p - 1, one_t - 1);
    Series twou = Series::monomial(K, -1, A->scalar(Q(2)));
    Series total = twou * first - second.scaled(Q(form.theta(one_t)));
    // 1/(2u -+ 1) = (1/2) (u -+ 1/2)^{-1}
    Series inv = inv_linear(qfrac(pm(form.cs), 2), K, A).scaled(qfrac(1, 2));
    Series O = inv * total;
    if (form.theta(1) < 0) O = O.scaled(Q(-1));
    if (O[0] != A->one()) throw SingularError("O(u) extraction degenerate: leading term is not 1");
    return O;
}

// ---------------------------------------------------------------------------

NCElement AlphaImage::embedded_E(int a, int b) const {
    NCElement r = alg->gen(gE(a, b));
    for (int k = 1; k <= n; ++k) r += alg->gen(gX(a, k)) * alg->gen(gD(b, k));
    return r;
}

AlphaImage alpha_images(int l, int n, int K) {
    if (l < 1 || n < 1) throw ConfigError("alpha_l needs l, n >= 1");
    AlgPtr A = make_algebra("A_" + std::to_string(l), {gl_block(l), pd_block(l, n)});
    // (u + E')^{-1} = (u - M)^{-1} with M_ab = -E_ba
    std::vector<NCElement> M;
    for (int a = 1; a <= l; ++a)
        for (int b = 1; b <= l; ++b) M.push_back(-A->gen(gE(b, a)));
    SeriesMatrix R = resolvent(M, l, K, A.get());
    SeriesMatrix T = SeriesMatrix::identity(n, K, A.get());
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int a = 1; a <= l; ++a)
                for (int b = 1; b <= l; ++b) {
                    NCElement xd = A->gen(gX(a, i)) * A->gen(gD(b, j));
                    T(i - 1, j - 1) += R(a - 1, b - 1) * Series::constant(K, xd);
                }
    return {l, n, A, T};
}

// ---------------------------------------------------------------------------

namespace {
// p_ci and q_ci inside an algebra holding x, d at the given slot
NCElement pq_elem(const Algebra& A, const FormConventions& form, int c, int i, bool is_p, int slot = 0) {
    if (c < 0) return is_p ? A.gen(gX(-c, i, slot)) : A.gen(gD(-c, i, slot));
    int ti = form.tilde(i), th = form.theta(i);
    if (is_p) return A.gen(gD(c, ti, slot)).scaled(Q(-th));
    return A.gen(gX(c, ti, slot)).scaled(Q(th));
}

// delta_cd N/2 - sum_{k in range} q_ck p_dk
NCElement zeta_elem(const Algebra& A, const FormConventions& form, int c, int d, int k0, int k1, int slot = 0) {
    NCElement r = A.scalar(c == d ? qfrac(k1 - k0 + 1, 2) : Q(0));
    for (int k = k0; k <= k1; ++k) r -= pq_elem(A, form, c, k, false, slot) * pq_elem(A, form, d, k, true, slot);
    return r;
}
} // namespace

NCElement pq_element(const Algebra& A, const FormConventions& form, int c, int i, bool is_p, int slot) {
    return pq_elem(A, form, c, i, is_p, slot);
}
NCElement zeta_element(const Algebra& A, const FormConventions& form, int c, int d, int slot) {
    return zeta_elem(A, form, c, d, 1, form.N, slot);
}

NCElement BetaImage::p(int c, int i) const { return pq_elem(*alg, form(), c, i, true); }
NCElement BetaImage::q(int c, int i) const { return pq_elem(*alg, form(), c, i, false); }
NCElement BetaImage::zeta(int a, int b) const { return zeta_elem(*alg, form(), a, b, 1, n); }
NCElement BetaImage::embedded_F(int a, int b) const { return F(a, b) + zeta(a, b); }

BetaImage beta_images(CaseTag c, int m, int n, int K) {
    FormConventions form(c, n);
    AlgPtr B = make_algebra("B_" + std::to_string(m), {f_block(c, m), pd_block(m, n)});
    BetaImage b{c, m, n, B, SeriesMatrix()};
    const Algebra* A = B.get();
    size_t N2 = 2 * size_t(m);
    Q w = Q(m) + qfrac(pm(c), 2);
    // F(u + w) = (u - (F - w))^{-1}
    std::vector<NCElement> M;
    for (size_t p = 0; p < N2; ++p)
        for (size_t q = 0; q < N2; ++q) {
            NCElement x = b.F(sidx(m, p), sidx(m, q));
            if (p == q) x -= A->scalar(w);
            M.push_back(x);
        }
    SeriesMatrix R = resolvent(M, N2, K, A);
    SeriesMatrix S = SeriesMatrix::identity(n, K, A);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (size_t p = 0; p < N2; ++p)
                for (size_t q = 0; q < N2; ++q) {
                    NCElement pq = b.p(sidx(m, p), i) * b.q(sidx(m, q), j);
                    if (pq.is_zero()) continue;
                    S(i - 1, j - 1) += R(p, q) * Series::constant(K, pq);
                }
    b.S = S;
    return b;
}

ZetaMap zeta_map(CaseTag c, int m, int n) {
    FPresentation f = make_f(c, m);
    AlgPtr pd = make_algebra("PD", {pd_block(m, n)});
    Hom h(f.alg.get(), pd.get());
    FormConventions form(c, n);
    for (size_t g = 0; g < f.alg->ngens(); ++g) {
        const GenId& id = f.alg->gen_id(g);
        h.set(id, zeta_elem(*pd, form, id.i, id.j, 1, n));
    }
    return {f, pd, h};
}

Series wbar_series(const BetaImage& b, int K) {
    const Algebra* A = b.alg.get();
    size_t N2 = 2 * size_t(b.m);
    Q w = Q(b.m) + qfrac(pm(b.cs), 2);
    std::vector<NCElement> M;
    for (size_t p = 0; p < N2; ++p)
        for (size_t q = 0; q < N2; ++q) {
            NCElement x = b.F(sidx(b.m, p), sidx(b.m, q));
            if (p == q) x -= A->scalar(w);
            M.push_back(x);
        }
    SeriesMatrix R = resolvent(M, N2, K, A);
    Series W = R(0, 0);
    for (size_t i = 1; i < N2; ++i) W += R(i, i);
    // (1 -+ 1/(2u))^{-1}
    Series one = Series::constant(K, A->one());
    Series pref = series_inv(one - Series::monomial(K, 1, A->scalar(qfrac(pm(b.cs), 2))), A->one());
    return pref * W;
}

Series wtilde_series(const BetaImage& b, int K) {
    const Algebra* A = b.alg.get();
    Series X = wbar_series(b, K);
    // (1 - X)^{-1/2} = sum_k binom(-1/2, k) (-X)^k,  X of valuation >= 1
    Series r = Series::constant(K, A->one());
    Series pw = Series::constant(K, A->one());
    Q binom = 1;
    for (int k = 1; k <= K; ++k) {
        pw = pw * X;
        binom = binom * (Q(-1, 2) - (k - 1)) / k;
        r += pw.scaled(binom * (k % 2 == 0 ? 1 : -1));
    }
    return r;
}

SeriesMatrix tilde_beta_images(const BetaImage& b, int K) {
    if (b.S.K() != K) throw ConfigError("truncation orders differ");
    return b.S.right_mul(wtilde_series(b, K));
}

CommutantReport check_beta_commutant(const BetaImage& b, const SeriesMatrix& S, int kmax) {
    CommutantReport rep;
    const Algebra* A = b.alg.get();
    for (size_t g = 0; g < A->ngens(); ++g) {
        const GenId& id = A->gen_id(g);
        if (id.sort != Sort::F) continue;
        NCElement X = b.embedded_F(id.i, id.j);
        for (size_t i = 0; i < S.size(); ++i)
            for (size_t j = 0; j < S.size(); ++j)
                for (int k = 1; k <= std::min(kmax, S.prec()); ++k) {
                    ++rep.checked;
                    NCElement c = commutator(S(i, j)[k], X);
                    if (!c.is_zero() && rep.ok) {
                        rep.ok = false;
                        rep.witness = "S_" + std::to_string(i + 1) + std::to_string(j + 1) + "^(" +
                                      std::to_string(k) + ") vs " + id.str() + ": " + witness_of(c);
                    }
                }
    }
    return rep;
}

CommutantReport check_alpha_commutant(const AlphaImage& a, int kmax) {
    CommutantReport rep;
    for (int x = 1; x <= a.l; ++x)
        for (int y = 1; y <= a.l; ++y) {
            NCElement X = a.embedded_E(x, y);
            for (size_t i = 0; i < a.T.size(); ++i)
                for (size_t j = 0; j < a.T.size(); ++j)
                    for (int k = 1; k <= std::min(kmax, a.T.prec()); ++k) {
                        ++rep.checked;
                        NCElement c = commutator(a.T(i, j)[k], X);
                        if (!c.is_zero() && rep.ok) {
                            rep.ok = false;
                            rep.witness = "E_" + std::to_string(x) + std::to_string(y) + ": " + witness_of(c);
                        }
                    }
        }
    return rep;
}

CommutantReport check_zeta_hom(CaseTag c, int m, int n) {
    CommutantReport rep;
    ZetaMap z = zeta_map(c, m, n);
    const Algebra* F = z.f.alg.get();
    for (size_t a = 0; a < F->ngens(); ++a)
        for (size_t b = 0; b < F->ngens(); ++b) {
            ++rep.checked;
            NCElement lhs = z.hom.apply(commutator(F->gen_at(a), F->gen_at(b)));
            NCElement rhs = commutator(z.hom.apply(F->gen_at(a)), z.hom.apply(F->gen_at(b)));
            if (lhs != rhs && rep.ok) {
                rep.ok = false;
                rep.witness = F->gen_id(a).str() + " " + F->gen_id(b).str();
            }
        }
    return rep;
}

CoassocReport check_coassociativity(CaseTag c, int n, int K) {
    FormConventions form(c, n);
    AlgPtr A = make_algebra("U(gl)^3", {gl_block(n, 0), gl_block(n, 1), gl_block(n, 2)});
    SeriesMatrix S = pi_images(A.get(), form, K, 0);
    SeriesMatrix T1 = eval_images(A.get(), n, K, 1);
    SeriesMatrix T2 = eval_images(A.get(), n, K, 2);
    SeriesMatrix one = coaction_images(coaction_images(S, T1, form), T2, form);
    SeriesMatrix two = coaction_images(S, comult_images(T1, T2), form);
    CoassocReport rep;
    for (size_t i = 0; i < size_t(n); ++i)
        for (size_t j = 0; j < size_t(n); ++j) {
            int e = one(i, j).first_difference(two(i, j), K);
            if (e <= K) {
                rep.ok = false;
                rep.witness = "entry " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " at u^-" +
                              std::to_string(e);
                return rep;
            }
        }
    return rep;
}

OlshanskiReport check_olshanski(CaseTag c, int m, int n, int l, int K) {
    if (l < 0) throw ConfigError("l must be nonnegative");
    FormConventions big(c, n, l);
    int N = n + l;
    int s = pm(c);
    AlgPtr P = make_algebra("PD(m x (n+l))", {pd_block(m, N)});
    const Algebra* A = P.get();
    // left side: ((Pi(u - l/2)^{-1})_{n x n})^{-1}
    Series g = inv_linear(qfrac(l - s, 2), K, A);
    SeriesMatrix Pi = SeriesMatrix::identity(N, K, A);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            NCElement x = A->zero();
            for (int cc = 1; cc <= m; ++cc) {
                x += A->gen(gX(cc, i)) * A->gen(gD(cc, j));
                x -= (A->gen(gX(cc, big.tilde(j))) * A->gen(gD(cc, big.tilde(i))))
                         .scaled(Q(big.theta(i) * big.theta(j)));
            }
            if (!x.is_zero()) Pi(i - 1, j - 1) += Series::constant(K, x) * g;
        }
    SeriesMatrix inv = matrix_inverse_series(Pi);
    SeriesMatrix top(n, K, A);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) top(i, j) = inv(i, j);
    SeriesMatrix lhs = matrix_inverse_series(top);

    // right side: f(u) (delta + sum zeta-bar(F_cd(u +- 1/2 + m)) p_ci q_dj)
    FPresentation f = make_f(c, m);
    Hom zb(f.alg.get(), A);
    for (size_t k = 0; k < f.alg->ngens(); ++k) {
        const GenId& id = f.alg->gen_id(k);
        zb.set(id, zeta_elem(*A, big, id.i, id.j, n + 1, N));
    }
    size_t N2 = 2 * size_t(m);
    Q w = Q(m) + qfrac(s, 2);
    std::vector<NCElement> M = f.matrix();
    for (size_t p = 0; p < N2; ++p) M[p * N2 + p] -= f.alg->scalar(w);
    SeriesMatrix R = resolvent(M, N2, K, f.alg.get());
    SeriesMatrix Rz = R.map([&](const NCElement& e) { return zb.apply(e); }, A);
    Series fu = Series::constant(K, A->one()) + inv_linear(qfrac(l - s, 2), K, A).scaled(Q(m));
    OlshanskiReport rep;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Series acc = Series::constant(K, i == j ? A->one() : A->zero());
            for (size_t p = 0; p < N2; ++p)
                for (size_t q = 0; q < N2; ++q) {
                    NCElement pq = pq_elem(*A, big, sidx(m, p), i, true) * pq_elem(*A, big, sidx(m, q), j, false);
                    if (!pq.is_zero()) acc += Rz(p, q) * Series::constant(K, pq);
                }
            Series rhs = fu * acc;
            ++rep.checked;
            int e = lhs(i - 1, j - 1).first_difference(rhs, K);
            if (e <= K) {
                rep.ok = false;
                rep.witness = "entry " + std::to_string(i) + "," + std::to_string(j) + " at u^-" + std::to_string(e) +
                              ": " + witness_of(lhs(i - 1, j - 1)[e] - rhs[e]);
                return rep;
            }
        }
    return rep;
}

} // namespace twy
