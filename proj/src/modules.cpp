#include "twy/modules.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace twy {

DeltaSeq delta_plus(int m) { return DeltaSeq(size_t(m), 1); }

std::string pmono_str(const PMono& e, int n) {
    std::ostringstream os;
    bool any = false;
    for (size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (any) os << "*";
        os << "x" << (k / size_t(n) + 1) << (k % size_t(n) + 1);
        if (e[k] > 1) os << "^" << e[k];
        any = true;
    }
    return any ? os.str() : "1";
}

std::string poly_str(const Poly& p, int n) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p) {
        if (!first) os << " + ";
        os << "(" << qstr(c) << ")" << pmono_str(e, n);
        first = false;
    }
    return os.str();
}

void poly_add(Poly& acc, const Poly& p, const Q& c) {
    if (sgn(c) == 0) return;
    for (const auto& [e, v] : p) {
        Q& slot = acc[e];
        slot += v * c;
        if (sgn(slot) == 0) acc.erase(e);
    }
}

bool poly_is_zero(const Poly& p) {
    for (const auto& kv : p)
        if (sgn(kv.second) != 0) return false;
    return true;
}

std::vector<std::vector<int>> monomials_of_degree(int n, int d) {
    std::vector<std::vector<int>> out;
    if (d < 0) return out;
    std::vector<int> e(size_t(n), 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == n - 1) {
            e[size_t(k)] = left;
            out.push_back(e);
            return;
        }
        for (int v = left; v >= 0; --v) {
            e[size_t(k)] = v;
            rec(k + 1, left - v);
        }
    };
    rec(0, d);
    return out;
}

namespace {

template <class T>
void vec_add(std::map<T, Q>& acc, const T& k, const Q& c) {
    if (sgn(c) == 0) return;
    Q& slot = acc[k];
    slot += c;
    if (sgn(slot) == 0) acc.erase(k);
}

} // namespace

// ---------------------------------------------------------------------------

ModuleEngine::ModuleEngine(ModuleSpec s) : spec_(std::move(s)), form_(spec_.cs, spec_.n) {
    const int N = spec_.N;
    if (spec_.hw.size() != size_t(N)) throw ConfigError("highest weight has the wrong length");
    if (spec_.twisted.empty()) spec_.twisted.assign(size_t(N), false);
    if (spec_.twisted.size() != size_t(N)) throw ConfigError("twist pattern has the wrong length");
    Block fb = f_block(spec_.cs, N);
    std::vector<GenId> buckets[4];
    for (const auto& g : fb.gens) {
        Cls c;
        if (g.i > g.j) c = (spec_.in_q && spec_.in_q(g.i, g.j)) ? Cls::Q : Cls::Kept;
        else if (g.i == g.j) c = Cls::H;
        else c = Cls::NP;
        buckets[int(c)].push_back(g);
    }
    std::vector<GenId> order;
    for (auto& b : buckets) order.insert(order.end(), b.begin(), b.end());
    f_ = std::make_shared<Algebra>("f_" + std::to_string(N) + "/module", order, fb.bracket, false);
    pd_ = make_algebra("PD", {pd_block(N, spec_.n)}, nullptr, false);
    cls_.resize(order.size());
    for (size_t k = 0; k < order.size(); ++k) {
        const auto& g = order[k];
        if (g.i > g.j) cls_[k] = (spec_.in_q && spec_.in_q(g.i, g.j)) ? Cls::Q : Cls::Kept;
        else cls_[k] = g.i == g.j ? Cls::H : Cls::NP;
        if (cls_[k] == Cls::Kept) kept_.push_back(k);
        zeta_.push_back(zeta_element(*pd_, form_, g.i, g.j));
    }
}

std::vector<int> ModuleEngine::gen_weight(const GenId& g) const {
    std::vector<int> w(size_t(N()), 0);
    auto add = [&](int a, int s) {
        if (a > 0) w[size_t(a - 1)] += s;
        else w[size_t(-a - 1)] -= s;
    };
    if (g.sort == Sort::F && g.i != g.j) {
        add(g.i, 1);
        add(g.j, -1);
    }
    return w;
}

Q ModuleEngine::hw_value(const GenId& h) const {
    return h.i > 0 ? spec_.hw[size_t(h.i - 1)] : -spec_.hw[size_t(-h.i - 1)];
}

Q ModuleEngine::p_eigen(int a, const PMono& e) const {
    int r = std::abs(a);
    int d = 0;
    for (int i = 0; i < n(); ++i) d += e[size_t((r - 1) * n() + i)];
    Q v = qfrac(n(), 2) + d;
    if (spec_.twisted[size_t(r - 1)]) v = -v;
    return a > 0 ? v : -v;
}

std::vector<Q> ModuleEngine::weight(const Key& k) const {
    std::vector<Q> w = spec_.hw;
    for (unsigned char ch : k.first) {
        auto gw = gen_weight(f_->gen_id(ch));
        for (int r = 0; r < N(); ++r) w[size_t(r)] += gw[size_t(r)];
    }
    for (int r = 1; r <= N(); ++r) w[size_t(r - 1)] += p_eigen(r, k.second);
    return w;
}

std::vector<int> ModuleEngine::word_exponents(const Word& w) const {
    std::vector<int> e(kept_.size(), 0);
    for (unsigned char ch : w) {
        auto it = std::find(kept_.begin(), kept_.end(), size_t(ch));
        if (it == kept_.end()) throw std::logic_error("word outside the kept generators");
        ++e[size_t(it - kept_.begin())];
    }
    return e;
}

std::string ModuleEngine::key_str(const Key& k) const {
    std::string s = k.first.empty() ? "1" : f_->word_str(k.first);
    return s + " (x) " + pmono_str(k.second, n());
}

std::vector<ModuleEngine::Key> ModuleEngine::row_degree_basis(const std::vector<int>& rowdeg) const {
    std::vector<Key> out;
    for (int d : rowdeg)
        if (d < 0) return out;
    std::vector<PMono> acc{PMono{}};
    for (int r = 0; r < N(); ++r) {
        std::vector<PMono> next;
        for (const auto& pre : acc)
            for (const auto& m : monomials_of_degree(n(), rowdeg[size_t(r)])) {
                PMono e = pre;
                e.insert(e.end(), m.begin(), m.end());
                next.push_back(std::move(e));
            }
        acc = std::move(next);
    }
    for (auto& e : acc) out.push_back({Word(), std::move(e)});
    return out;
}

std::vector<ModuleEngine::Key> ModuleEngine::weight_basis(const std::vector<Q>& wt) const {
    const int NN = N();
    const Q half = qfrac(n(), 2);
    if (kept_.empty()) {
        std::vector<int> deg(static_cast<size_t>(NN));
        for (int r = 0; r < NN; ++r) {
            Q v = wt[size_t(r)] - spec_.hw[size_t(r)];
            Q d = spec_.twisted[size_t(r)] ? Q(-v - half) : Q(v - half);
            if (d.get_den() != 1 || sgn(d) < 0) return {};
            deg[size_t(r)] = int(d.get_num().get_si());
        }
        return row_degree_basis(deg);
    }
    for (bool t : spec_.twisted)
        if (t) throw ConfigError("whole weight spaces need untwisted rows");
    std::vector<int> diff(static_cast<size_t>(NN));
    long budget = 0;
    for (int r = 0; r < NN; ++r) {
        Q d = wt[size_t(r)] - spec_.hw[size_t(r)] - half;
        if (d.get_den() != 1) return {};
        diff[size_t(r)] = int(d.get_num().get_si());
        budget += long(r + 1) * diff[size_t(r)];
    }
    if (budget < 0) return {};
    std::vector<std::vector<int>> gw;
    std::vector<long> cost;
    for (size_t k : kept_) {
        gw.push_back(gen_weight(f_->gen_id(k)));
        long c = 0;
        for (int r = 0; r < NN; ++r) c += long(r + 1) * gw.back()[size_t(r)];
        if (c <= 0) throw std::logic_error("kept generator with nonpositive cost");
        cost.push_back(c);
    }
    std::vector<Key> out;
    std::vector<int> ex(kept_.size(), 0);
    std::function<void(size_t, long, std::vector<int>&)> rec = [&](size_t t, long left, std::vector<int>& res) {
        if (t == kept_.size()) {
            for (int d : res)
                if (d < 0) return;
            Word w;
            for (size_t s = 0; s < kept_.size(); ++s) w.append(size_t(ex[s]), char(kept_[s]));
            for (auto& k : row_degree_basis(res)) out.push_back({w, std::move(k.second)});
            return;
        }
        for (int e = 0; long(e) * cost[t] <= left; ++e) {
            ex[t] = e;
            std::vector<int> r2 = res;
            for (int r = 0; r < NN; ++r) r2[size_t(r)] -= e * gw[t][size_t(r)];
            rec(t + 1, left - long(e) * cost[t], r2);
        }
        ex[t] = 0;
    };
    std::vector<int> res = diff;
    rec(0, budget, res);
    std::sort(out.begin(), out.end(), [&](const Key& a, const Key& b) {
        auto ea = word_exponents(a.first), eb = word_exponents(b.first);
        if (ea != eb) return ea > eb;
        return a.second > b.second;
    });
    return out;
}

void ModuleEngine::letter(const GenId& g, int row_off, Poly& p) const {
    const int r = g.i + row_off, col = g.j;
    if (r < 1 || r > N() || col < 1 || col > n()) throw ConfigError("polynomial letter outside the module");
    bool is_x = g.sort == Sort::X;
    Q coef = 1;
    int c = col;
    if (spec_.twisted[size_t(r - 1)]) {
        c = form_.tilde(col);
        coef = is_x ? Q(-form_.theta(col)) : Q(form_.theta(col));
        is_x = !is_x;
    }
    const size_t idx = size_t((r - 1) * n() + (c - 1));
    Poly out;
    for (const auto& [e, v] : p) {
        PMono e2 = e;
        Q w = v * coef;
        if (is_x) {
            ++e2[idx];
        } else {
            if (e2[idx] == 0) continue;
            w *= e2[idx];
            --e2[idx];
        }
        vec_add(out, e2, w);
    }
    p = std::move(out);
}

Poly ModuleEngine::apply_pd_word(const Algebra& A, const Word& w, const Poly& p, const LetterMap& lm) const {
    Poly r = p;
    for (auto it = w.rbegin(); it != w.rend() && !r.empty(); ++it) {
        const GenId& g = A.gen_id((unsigned char)*it);
        if (g.sort != Sort::X && g.sort != Sort::D) throw std::logic_error("not a polynomial letter");
        if (g.slot >= lm.pd_offset.size()) throw ConfigError("no row offset for this slot");
        letter(g, lm.pd_offset[g.slot], r);
    }
    return r;
}

Poly ModuleEngine::apply_pd(const NCElement& e, const Poly& p, const LetterMap& lm) const {
    Poly out;
    for (const auto& [w, c] : e.terms()) poly_add(out, apply_pd_word(*e.alg(), w, p, lm), c);
    return out;
}

Poly ModuleEngine::apply_zeta(const GenId& g, const Poly& p) const { return apply_pd(zeta_[f_->index(g)], p); }

const NCElement& ModuleEngine::normal_product(const std::vector<GenId>& pre, const Word& kw) const {
    std::string key;
    for (const auto& g : pre) key.push_back(char(f_->index(g)));
    auto ck = std::make_pair(key, kw);
    auto it = norm_cache_.find(ck);
    if (it != norm_cache_.end()) return it->second;
    std::vector<GenId> raw = pre;
    for (unsigned char ch : kw) raw.push_back(f_->gen_id(ch));
    return norm_cache_.emplace(ck, normalize({{raw, Q(1)}}, *f_)).first->second;
}

void ModuleEngine::reduce_word(const Word& w, const Q& c, const Poly& p, Vec& out) const {
    size_t i = 0;
    std::vector<GenId> qs;
    while (i < w.size() && cls_[(unsigned char)w[i]] == Cls::Q) qs.push_back(f_->gen_id((unsigned char)w[i++]));
    size_t k0 = i;
    while (i < w.size() && cls_[(unsigned char)w[i]] == Cls::Kept) ++i;
    Word kw = w.substr(k0, i - k0);
    Q s = c;
    for (; i < w.size(); ++i) {
        unsigned char ch = (unsigned char)w[i];
        if (cls_[ch] == Cls::NP) return;
        if (cls_[ch] != Cls::H) throw std::logic_error("word not in module order");
        s *= hw_value(f_->gen_id(ch));
        if (sgn(s) == 0) return;
    }
    Poly r = p;
    for (const auto& g : qs) r = apply_zeta(g, r);
    if (qs.size() % 2 == 1) s = -s;
    for (const auto& [e, v] : r) vec_add(out, Key{kw, e}, s * v);
}

ModuleEngine::Vec ModuleEngine::act_f(const GenId& g, const Vec& v) const {
    Vec out;
    for (const auto& [key, a] : v) {
        const NCElement& E = normal_product({g}, key.first);
        Poly one{{key.second, Q(1)}};
        for (const auto& [w2, c2] : E.terms()) reduce_word(w2, a * c2, one, out);
        Poly z = apply_zeta(g, one);
        for (const auto& [e, c] : z) vec_add(out, Key{key.first, e}, a * c);
    }
    return out;
}

ModuleEngine::Vec ModuleEngine::act_f_elem(const NCElement& x, const Vec& v) const {
    Vec out;
    for (const auto& [w, c] : x.terms()) {
        Vec cur = v;
        for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) {
            const GenId& g = x.alg()->gen_id((unsigned char)*it);
            FRep r = f_rep(spec_.cs, g.i, g.j);
            if (g.sort != Sort::F || r.zero) throw ConfigError("not an f letter");
            cur = act_f(gF(r.a, r.b), cur);
            if (r.sign < 0)
                for (auto& kv : cur) kv.second = -kv.second;
        }
        for (const auto& [k, a] : cur) vec_add(out, k, a * c);
    }
    return out;
}

ModuleEngine::Vec ModuleEngine::act_tensor(const NCElement& b, const Vec& v, const LetterMap& lm) const {
    Vec out;
    const Algebra& A = *b.alg();
    for (const auto& [w, c] : b.terms()) {
        std::vector<GenId> pre;
        Word pdw;
        int sign = 1;
        for (unsigned char ch : w) {
            const GenId& g = A.gen_id(ch);
            if (g.sort == Sort::X || g.sort == Sort::D) {
                pdw.push_back(char(ch));
                continue;
            }
            int a = g.i, bb = g.j;
            if (g.sort == Sort::E) {
                a += lm.e_offset;
                bb += lm.e_offset;
            } else if (g.sort != Sort::F) {
                throw ConfigError("unsupported letter in a tensor element");
            }
            FRep r = f_rep(spec_.cs, a, bb);
            if (r.zero) throw std::logic_error("zero representative inside a normal word");
            sign *= r.sign;
            pre.push_back(gF(r.a, r.b));
        }
        for (const auto& [key, a] : v) {
            Poly p1 = apply_pd_word(A, pdw, Poly{{key.second, Q(1)}}, lm);
            if (p1.empty()) continue;
            const NCElement& E = normal_product(pre, key.first);
            for (const auto& [w2, c2] : E.terms()) reduce_word(w2, c * a * c2 * sign, p1, out);
        }
    }
    return out;
}

Poly ModuleEngine::act_cyclic(const NCElement& b) const {
    if (!kept_.empty()) throw ConfigError("cyclic action needs all of n divided out");
    const Algebra& A = *b.alg();
    Poly out;
    PMono zero(size_t(N() * n()), 0);
    for (const auto& [w, c] : b.terms()) {
        std::vector<GenId> fl;
        Word pdw;
        bool dead = false;
        for (unsigned char ch : w) {
            const GenId& g = A.gen_id(ch);
            if (g.sort == Sort::X || g.sort == Sort::D) {
                pdw.push_back(char(ch));
            } else if (g.sort == Sort::F) {
                if (!pdw.empty()) throw std::logic_error("f letter after a polynomial letter");
                if (g.i > g.j) dead = true;
                fl.push_back(g);
            } else {
                throw ConfigError("unsupported letter in a cyclic element");
            }
        }
        if (dead) continue;
        Poly p = apply_pd_word(A, pdw, Poly{{zero, Q(1)}});
        for (auto it = fl.rbegin(); it != fl.rend() && !p.empty(); ++it) {
            if (it->i < it->j) {
                p = apply_zeta(*it, p);
            } else {
                Poly q;
                for (const auto& [e, v] : p) vec_add(q, e, v * (hw_value(*it) + p_eigen(it->i, e)));
                p = std::move(q);
            }
        }
        poly_add(out, p, c);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

ModuleSpec fmodule_spec(const FModuleParams& p) {
    if (p.mu.size() != size_t(p.m) || p.delta.size() != size_t(p.m)) throw ConfigError("label count differs from m");
    ModuleSpec s;
    s.cs = p.cs;
    s.N = p.m;
    s.n = p.n;
    s.hw.resize(size_t(p.m));
    s.twisted.resize(size_t(p.m));
    for (int a = 1; a <= p.m; ++a) {
        int r = row_of_label(p.m, a);
        s.hw[size_t(r - 1)] = -p.mu[size_t(a - 1)];
        if (p.delta[size_t(a - 1)] != 1 && p.delta[size_t(a - 1)] != -1) throw ConfigError("delta entries are +-1");
        s.twisted[size_t(r - 1)] = p.delta[size_t(a - 1)] == -1;
    }
    return s;
}

} // namespace

ModuleEngine coinvariant_engine(const FModuleParams& p) {
    ModuleSpec s = fmodule_spec(p);
    s.in_q = [](int, int) { return true; };
    return ModuleEngine(s);
}

ModuleEngine full_engine(const FModuleParams& p) {
    ModuleSpec s = fmodule_spec(p);
    for (bool t : s.twisted)
        if (t) throw ConfigError("the whole module route needs delta = (+,...,+)");
    s.in_q = [](int, int) { return false; };
    return ModuleEngine(s);
}

std::vector<Q> labels_of_weight(const std::vector<Q>& wt) {
    const int m = int(wt.size());
    std::vector<Q> l(wt.size());
    for (int a = 1; a <= m; ++a) l[size_t(a - 1)] = -wt[size_t(row_of_label(m, a) - 1)];
    return l;
}

std::vector<Q> weight_of_labels(const std::vector<Q>& labels) { return labels_of_weight(labels); }

std::vector<Q> coinvariant_labels(const FModuleParams& p, const std::vector<int>& nu) {
    std::vector<Q> l(static_cast<size_t>(p.m));
    for (int a = 0; a < p.m; ++a) l[size_t(a)] = p.mu[size_t(a)] - p.delta[size_t(a)] * (qfrac(p.n, 2) + nu[size_t(a)]);
    return l;
}

void WeightSpaceBasis::set_basis(std::vector<ModuleEngine::Key> b) {
    basis = std::move(b);
    index.clear();
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
}

std::vector<Q> WeightSpaceBasis::coords(const ModuleEngine::Vec& v) const {
    std::vector<Q> c(basis.size());
    for (const auto& [k, a] : v) {
        auto it = index.find(k);
        if (it == index.end()) throw std::logic_error("vector leaves the weight space");
        c[it->second] += a;
    }
    return c;
}

WeightSpaceBasis coinvariant_space(const ModuleEngine& eng, const std::vector<int>& nu) {
    const int m = eng.N();
    if (nu.size() != size_t(m)) throw ConfigError("nu has the wrong length");
    std::vector<int> rowdeg(static_cast<size_t>(m));
    for (int a = 1; a <= m; ++a) rowdeg[size_t(row_of_label(m, a) - 1)] = nu[size_t(a - 1)];
    WeightSpaceBasis W;
    W.set_basis(eng.row_degree_basis(rowdeg));
    W.weight.resize(size_t(m));
    for (int r = 1; r <= m; ++r) {
        Q v = qfrac(eng.n(), 2) + rowdeg[size_t(r - 1)];
        W.weight[size_t(r - 1)] = eng.spec().hw[size_t(r - 1)] + (eng.spec().twisted[size_t(r - 1)] ? -v : v);
    }
    return W;
}

WeightSpaceBasis weight_space(const ModuleEngine& eng, const std::vector<Q>& wt) {
    WeightSpaceBasis W;
    W.weight = wt;
    W.set_basis(eng.weight_basis(wt));
    return W;
}

CoinvariantRref n_coinvariants(const ModuleEngine& full, const FModuleParams& p, const std::vector<int>& nu) {
    CoinvariantRref R;
    ModuleEngine fast = coinvariant_engine(p);
    WeightSpaceBasis Wq = coinvariant_space(fast, nu);
    WeightSpaceBasis W = weight_space(full, Wq.weight);
    const size_t dim = W.dim();
    std::vector<std::vector<Q>> cols;
    for (size_t k = 0; k < full.f().ngens(); ++k) {
        const GenId& y = full.f().gen_id(k);
        if (!(y.i > y.j)) continue;
        auto gw = full.gen_weight(y);
        std::vector<Q> src = W.weight;
        for (size_t r = 0; r < src.size(); ++r) src[r] -= gw[r];
        for (const auto& key : full.weight_basis(src)) cols.push_back(W.coords(full.act_f(y, {{key, Q(1)}})));
    }
    QMatrix img(dim, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < dim; ++i) img(i, j) = cols[j][i];
    RrefResult rr = rref(img);
    R.space = W;
    R.space.image_rank = rr.pivots.size();
    if (rr.pivots.size() + Wq.dim() != dim) {
        R.witness = "rank " + std::to_string(rr.pivots.size()) + " + " + std::to_string(Wq.dim()) +
                    " != " + std::to_string(dim);
        return R;
    }
    QMatrix M(dim, dim);
    size_t c = 0;
    for (size_t pc : rr.pivots) {
        for (size_t i = 0; i < dim; ++i) M(i, c) = img(i, pc);
        ++c;
    }
    for (const auto& key : Wq.basis) {
        auto it = W.index.find(key);
        if (it == W.index.end()) {
            R.witness = "class of " + full.key_str(key) + " missing from the weight space";
            return R;
        }
        M(it->second, c++) = 1;
    }
    if (rank(M) != dim) {
        R.witness = "classes of 1 (x) p are dependent modulo the image";
        return R;
    }
    QMatrix inv = inverse(M);
    QMatrix P(Wq.dim(), dim);
    for (size_t i = 0; i < Wq.dim(); ++i)
        for (size_t j = 0; j < dim; ++j) P(i, j) = inv(rr.pivots.size() + i, j);
    R.space.projection = P;
    R.space.quotient_basis = Wq.basis;
    R.ok = true;
    return R;
}

const BetaImage& beta_cached(CaseTag c, int m, int n, int K) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::unique_ptr<BetaImage>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(int(c), m, n, K);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<BetaImage>(beta_images(c, m, n, K))).first;
    return *it->second;
}

QMatrix series_action_matrix(const ModuleEngine& eng, const SeriesMatrix& S, int i, int j, int k,
                             const WeightSpaceBasis& space, const LetterMap& lm) {
    const NCElement& e = S(size_t(i - 1), size_t(j - 1))[k];
    QMatrix M(space.dim(), space.dim());
    for (size_t col = 0; col < space.dim(); ++col) {
        auto c = space.coords(eng.act_tensor(e, {{space.basis[col], Q(1)}}, lm));
        for (size_t r = 0; r < space.dim(); ++r) M(r, col) = c[r];
    }
    return M;
}

QMatrix S_action_matrix(const ModuleEngine& eng, int i, int j, int k, const WeightSpaceBasis& space, int K) {
    const BetaImage& b = beta_cached(eng.spec().cs, eng.N(), eng.n(), K);
    return series_action_matrix(eng, b.S, i, j, k, space);
}

QMatrix f_action_matrix(const ModuleEngine& eng, const NCElement& x, const WeightSpaceBasis& space) {
    QMatrix M(space.dim(), space.dim());
    for (size_t col = 0; col < space.dim(); ++col) {
        auto c = space.coords(eng.act_f_elem(x, {{space.basis[col], Q(1)}}));
        for (size_t r = 0; r < space.dim(); ++r) M(r, col) = c[r];
    }
    return M;
}

// ---------------------------------------------------------------------------
// tensor model

namespace {

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

// matrix of x_i d_j (x_i then d_j applied in the given order) on monomials of P(C^n)
QMatrix op_matrix(const std::vector<PMono>& basis, int first_is_d, int i, int j) {
    std::map<PMono, size_t> idx;
    for (size_t k = 0; k < basis.size(); ++k) idx[basis[k]] = k;
    QMatrix M(basis.size(), basis.size());
    for (size_t col = 0; col < basis.size(); ++col) {
        PMono e = basis[col];
        Q c = 1;
        // operator x_i d_j, or d_i x_j when first_is_d
        if (first_is_d) {
            ++e[size_t(j - 1)];
            c *= e[size_t(i - 1)];
            if (e[size_t(i - 1)] == 0) continue;
            --e[size_t(i - 1)];
        } else {
            if (e[size_t(j - 1)] == 0) continue;
            c *= e[size_t(j - 1)];
            --e[size_t(j - 1)];
            ++e[size_t(i - 1)];
        }
        M(idx.at(e), col) += c;
    }
    return M;
}

MatSeries zero_series(size_t d, int K) { return MatSeries(size_t(K + 1), QMatrix(d, d)); }

} // namespace

TensorModel tensor_model(CaseTag c, int n, const std::vector<TensorFactor>& factors, int K) {
    FormConventions form(c, n);
    TensorModel t;
    t.n = n;
    t.K = K;
    t.cs = c;
    t.factors = factors;
    std::vector<std::vector<std::vector<MatSeries>>> per;
    for (const auto& fct : factors) {
        auto basis = monomials_of_degree(n, std::abs(fct.N));
        t.bases.push_back(basis);
        t.dim *= basis.size();
        const size_t d = basis.size();
        std::vector<std::vector<MatSeries>> T(size_t(n), std::vector<MatSeries>(size_t(n), zero_series(d, K)));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                QMatrix op;
                Q ratio;
                if (fct.N >= 0) {
                    op = op_matrix(basis, 0, i, j);
                    ratio = fct.z;
                } else {
                    int ti = form.tilde(i), tj = form.tilde(j);
                    op = op_matrix(basis, 0, tj, ti).scaled(Q(-form.theta(i) * form.theta(j)));
                    ratio = -fct.z;
                }
                auto& s = T[size_t(i - 1)][size_t(j - 1)];
                if (i == j) s[0] = QMatrix::identity(d);
                Q pw = 1;
                for (int e = 1; e <= K; ++e) {
                    s[size_t(e)] = op.scaled(pw);
                    pw *= ratio;
                }
            }
        per.push_back(std::move(T));
    }
    // embed and multiply left to right
    std::vector<size_t> dims;
    for (const auto& b : t.bases) dims.push_back(b.size());
    auto embed = [&](size_t f, const QMatrix& M) {
        size_t left = 1, right = 1;
        for (size_t g = 0; g < f; ++g) left *= dims[g];
        for (size_t g = f + 1; g < dims.size(); ++g) right *= dims[g];
        return kron(kron(QMatrix::identity(left), M), QMatrix::identity(right));
    };
    const size_t D = t.dim;
    t.T.assign(size_t(n), std::vector<MatSeries>(size_t(n), zero_series(D, K)));
    for (int i = 0; i < n; ++i) t.T[size_t(i)][size_t(i)][0] = QMatrix::identity(D);
    for (size_t f = 0; f < factors.size(); ++f) {
        std::vector<std::vector<MatSeries>> R(size_t(n), std::vector<MatSeries>(size_t(n), zero_series(D, K)));
        std::vector<std::vector<MatSeries>> Ef(static_cast<size_t>(n), std::vector<MatSeries>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int e = 0; e <= K; ++e) Ef[size_t(i)][size_t(j)].push_back(embed(f, per[f][size_t(i)][size_t(j)][size_t(e)]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int e1 = 0; e1 <= K; ++e1) {
                        const QMatrix& A = t.T[size_t(i)][size_t(k)][size_t(e1)];
                        if (A.is_zero()) continue;
                        for (int e2 = 0; e1 + e2 <= K; ++e2) {
                            const QMatrix& B = Ef[size_t(k)][size_t(j)][size_t(e2)];
                            if (B.is_zero()) continue;
                            auto& dst = R[size_t(i)][size_t(j)][size_t(e1 + e2)];
                            dst = dst + A * B;
                        }
                    }
        t.T = std::move(R);
    }
    // S_ij(u) = sum_k theta_i theta_k T_{k~ i~}(-u) T_kj(u)
    t.S.assign(size_t(n), std::vector<MatSeries>(size_t(n), zero_series(D, K)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                int sg = form.theta(i) * form.theta(k);
                const auto& A = t.T[size_t(form.tilde(k) - 1)][size_t(form.tilde(i) - 1)];
                const auto& B = t.T[size_t(k - 1)][size_t(j - 1)];
                auto& dst = t.S[size_t(i - 1)][size_t(j - 1)];
                for (int e1 = 0; e1 <= K; ++e1) {
                    if (A[size_t(e1)].is_zero()) continue;
                    QMatrix As = A[size_t(e1)].scaled(Q(e1 % 2 == 0 ? sg : -sg));
                    for (int e2 = 0; e1 + e2 <= K; ++e2) {
                        if (B[size_t(e2)].is_zero()) continue;
                        dst[size_t(e1 + e2)] = dst[size_t(e1 + e2)] + As * B[size_t(e2)];
                    }
                }
            }
    return t;
}

QMatrix tensor_action_matrix(const TensorModel& t, int i, int j, int k) {
    return t.S.at(size_t(i - 1)).at(size_t(j - 1)).at(size_t(k));
}

bool check_dual_module(CaseTag c, int n, const Q& z, int N, int K, std::string* witness) {
    FormConventions form(c, n);
    auto basis = monomials_of_degree(n, N);
    const size_t d = basis.size();
    // left: P'_z through the model; right: g(u) times the pushforward of P_{-z-1}
    TensorModel left = tensor_model(c, n, {{z, -N}}, K);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            // Fourier pushforward of x_i d_j: -theta_i d_{i~} theta_j x_{j~}
            QMatrix op = op_matrix(basis, 1, form.tilde(i), form.tilde(j)).scaled(Q(-form.theta(i) * form.theta(j)));
            MatSeries pushed = zero_series(d, K);
            if (i == j) pushed[0] = QMatrix::identity(d);
            // 1/(u - w), w = -z-1
            Q w = -z - 1, pw = 1;
            for (int e = 1; e <= K; ++e) {
                pushed[size_t(e)] = op.scaled(pw);
                pw *= w;
            }
            // g(u) = 1 + 1/(u+z)
            MatSeries right = pushed;
            Q gp = 1;
            for (int e1 = 1; e1 <= K; ++e1) {
                for (int e2 = 0; e1 + e2 <= K; ++e2)
                    right[size_t(e1 + e2)] = right[size_t(e1 + e2)] + pushed[size_t(e2)].scaled(gp);
                gp *= -z;
            }
            for (int e = 0; e <= K; ++e)
                if (!(right[size_t(e)] == left.T[size_t(i - 1)][size_t(j - 1)][size_t(e)])) {
                    if (witness)
                        *witness = "T_" + std::to_string(i) + std::to_string(j) + " at u^-" + std::to_string(e);
                    return false;
                }
        }
    return true;
}

TruncSeries<Q> verma_factor_series(CaseTag c, const std::vector<Q>& mu, int K) {
    const int m = int(mu.size());
    TruncSeries<Q> f = TruncSeries<Q>::constant(K, Q(1));
    for (int a = 1; a <= m; ++a) {
        Q w = qfrac(pm(c), 2) + m - a + 1 + mu[size_t(a - 1)];
        // 1 - 1/(u + w)
        TruncSeries<Q> g = TruncSeries<Q>::constant(K, Q(1));
        Q pw = 1;
        for (int e = 1; e <= K; ++e) {
            g.set(e, -pw);
            pw *= -w;
        }
        f = f * g;
    }
    return f;
}

// ---------------------------------------------------------------------------

namespace {

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string mat_tag(int i, int j, int k) {
    return "S_" + std::to_string(i) + std::to_string(j) + "^(" + std::to_string(k) + ")";
}

} // namespace

VermaReport verma_check(CaseTag c, int n, const std::vector<Q>& mu, const std::vector<int>& nu, int K, bool rref) {
    VermaReport R;
    const int m = int(mu.size());
    FModuleParams p{c, m, n, mu, delta_plus(m)};
    ModuleEngine eng = coinvariant_engine(p);
    WeightSpaceBasis W = coinvariant_space(eng, nu);

    long expect = 1;
    for (int v : nu) expect *= binom(v + n - 1, n - 1);
    R.dims.checked = 1;
    if (long(W.dim()) != expect)
        R.dims.fail("dimension " + std::to_string(W.dim()) + " != " + std::to_string(expect));

    // tensor factor t (from the left) carries the label a = m+1-t
    const Q z0 = qfrac(pm(c), 2);
    std::vector<TensorFactor> factors;
    for (int t = 1; t <= m; ++t) {
        int a = m + 1 - t;
        factors.push_back({mu[size_t(a - 1)] + z0 + m - a, nu[size_t(a - 1)]});
    }
    TensorModel tm = tensor_model(c, n, factors, K);
    // identification: row t of a coinvariant monomial is the factor-t monomial
    QMatrix P(W.dim(), tm.dim);
    {
        std::vector<size_t> ix(size_t(m), 0);
        for (size_t col = 0; col < tm.dim; ++col) {
            size_t rest = col;
            PMono e;
            for (int t = m; t >= 1; --t) {
                size_t d = tm.bases[size_t(t - 1)].size();
                ix[size_t(t - 1)] = rest % d;
                rest /= d;
            }
            for (int t = 1; t <= m; ++t) {
                const auto& mono = tm.bases[size_t(t - 1)][ix[size_t(t - 1)]];
                e.insert(e.end(), mono.begin(), mono.end());
            }
            P(W.index.at({Word(), e}), col) = 1;
        }
    }
    TruncSeries<Q> f = verma_factor_series(c, mu, K);
    std::map<std::tuple<int, int, int>, QMatrix> fast;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 0; k <= K; ++k) fast[{i, j, k}] = S_action_matrix(eng, i, j, k, W, K);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 0; k <= K; ++k) {
                // S^coinv(u) = f(u) S^tens(u) under the identification
                QMatrix rhs(W.dim(), tm.dim);
                for (int e = 0; e <= k; ++e)
                    if (sgn(f[e]) != 0) rhs = rhs + (P * tensor_action_matrix(tm, i, j, k - e)).scaled(f[e]);
                ++R.intertwine.checked;
                if (!(fast[{i, j, k}] * P == rhs)) R.intertwine.fail(mat_tag(i, j, k));
            }

    // F_{a bar, a bar} acts by n/2 + deg_a - mu_a
    for (int a = 1; a <= m; ++a) {
        int r = row_of_label(m, a);
        QMatrix A = f_action_matrix(eng, f_elem(eng.f(), c, r, r), W);
        QMatrix D(W.dim(), W.dim());
        for (size_t b = 0; b < W.dim(); ++b) {
            int deg = 0;
            for (int i = 0; i < n; ++i) deg += W.basis[b].second[size_t((r - 1) * n + i)];
            D(b, b) = qfrac(n, 2) + deg - mu[size_t(a - 1)];
        }
        ++R.cartan.checked;
        if (!(A == D)) R.cartan.fail("F_" + std::to_string(r) + std::to_string(r));
    }

    if (rref) {
        ModuleEngine full = full_engine(p);
        CoinvariantRref cr = n_coinvariants(full, p, nu);
        ++R.rref.checked;
        if (!cr.ok) {
            R.rref.fail(cr.witness);
        } else {
            const BetaImage& b = beta_cached(c, m, n, K);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = 0; k <= K; ++k) {
                        const NCElement& e = b.S(size_t(i - 1), size_t(j - 1))[k];
                        QMatrix M(W.dim(), W.dim());
                        for (size_t col = 0; col < W.dim(); ++col) {
                            auto v = cr.space.coords(full.act_tensor(e, {{W.basis[col], Q(1)}}));
                            for (size_t r = 0; r < W.dim(); ++r) {
                                Q acc = 0;
                                for (size_t t = 0; t < v.size(); ++t) acc += cr.space.projection(r, t) * v[t];
                                M(r, col) = acc;
                            }
                        }
                        ++R.rref.checked;
                        if (!(M == fast[{i, j, k}])) R.rref.fail(mat_tag(i, j, k));
                    }
        }
    }
    return R;
}

// ---------------------------------------------------------------------------
// parabolic induction

InductionReport induction_check(CaseTag c, int m, int l, int n, int K, int cutoff, const std::vector<Q>& mu,
                          const std::vector<Q>& nu, bool shift_levi) {
    InductionReport R;
    const int N = m + l;
    if (int(mu.size()) != m || int(nu.size()) != l) throw ConfigError("label counts differ from m, l");
    if (l < 1) throw ConfigError("l must be positive");
    ModuleSpec spec;
    spec.cs = c;
    spec.N = N;
    spec.n = n;
    spec.hw.resize(size_t(N));
    for (int r = 1; r <= m; ++r) spec.hw[size_t(r - 1)] = -mu[size_t(m - r)];
    for (int a = 1; a <= l; ++a) spec.hw[size_t(m + a - 1)] = nu[size_t(a - 1)];
    spec.twisted.assign(size_t(N), false);
    auto inq = [m, N](int a, int b) {
        return a >= m + 1 && a <= N && ((b >= -N && b <= -1) || (b >= 1 && b <= m));
    };
    spec.in_q = [inq](int a, int b) { return inq(a, b) || inq(-b, -a); };
    ModuleEngine eng(spec);

    // side A: beta_{m+l} on the induced module
    const BetaImage& bA = beta_cached(c, N, n, K);

    // side B: coaction of beta_m lifted with alpha_l shifted, in one algebra
    std::vector<Block> blocks;
    if (m > 0) {
        blocks.push_back(f_block(c, m));
        blocks.push_back(pd_block(m, n, 0));
    }
    blocks.push_back(gl_block(l));
    blocks.push_back(pd_block(l, n, 1));
    AlgPtr C = make_algebra("induced", blocks, nullptr, false);
    FormConventions form(c, n);
    AlphaImage al = alpha_images(l, n, K);
    Hom ha(al.alg.get(), C.get());
    for (size_t k = 0; k < al.alg->ngens(); ++k) {
        GenId g = al.alg->gen_id(k);
        GenId h = g;
        if (g.sort == Sort::X || g.sort == Sort::D) h.slot = 1;
        ha.set(g, C->gen(h));
    }
    SeriesMatrix SB = SeriesMatrix::identity(size_t(n), K, C.get());
    std::unique_ptr<Hom> hb;
    const BetaImage* bm = nullptr;
    if (m > 0) {
        bm = &beta_cached(c, m, n, K);
        hb = std::make_unique<Hom>(bm->alg.get(), C.get());
        for (size_t k = 0; k < bm->alg->ngens(); ++k) hb->set(bm->alg->gen_id(k), C->gen(bm->alg->gen_id(k)));
        SB = bm->S.map([&](const NCElement& e) { return hb->apply(e); }, C.get());
    }
    const Q z = Q(m) + qfrac(pm(c), 2);
    SeriesMatrix TA = al.T.map([&](const NCElement& e) { return ha.apply(e); }, C.get());
    SeriesMatrix co = coaction_images(SB, tau_images(TA, z), form);
    GlPresentation gl = make_gl(l);
    Hom hg(gl.alg.get(), C.get());
    for (size_t k = 0; k < gl.alg->ngens(); ++k) hg.set(gl.alg->gen_id(k), C->gen(gl.alg->gen_id(k)));
    Series Zs = Z_series(gl, K);
    TruncSeries<NCElement> Zc(K, C->zero());
    for (int e = -2; e <= K; ++e) Zc.set(e, hg.apply(Zs[e]));
    Zc.set_prec(Zs.prec());
    Series factor = Series::constant(K, C->one()) - Zc.shift_arg(z + l);
    SeriesMatrix SBfull = co.right_mul(factor);
    LetterMap lmB;
    lmB.e_offset = m;
    lmB.pd_offset = {0, m};

    // Lie algebra generators on both sides
    struct LiePair {
        std::string name;
        GenId g;
        int sign;
        NCElement side_b;
    };
    std::vector<LiePair> lie;
    if (m > 0)
        for (size_t k = 0; k < bm->alg->ngens(); ++k) {
            GenId g = bm->alg->gen_id(k);
            if (g.sort != Sort::F) continue;
            lie.push_back({"F_" + std::to_string(g.i) + "," + std::to_string(g.j), g, 1,
                           hb->apply(bm->embedded_F(g.i, g.j))});
        }
    for (int a = 1; a <= l; ++a)
        for (int b = 1; b <= l; ++b) {
            NCElement x = ha.apply(al.embedded_E(a, b));
            if (a == b && shift_levi) x += C->scalar(qfrac(n, 2));
            FRep r = f_rep(c, m + a, m + b);
            lie.push_back({"E_" + std::to_string(a) + std::to_string(b), gF(r.a, r.b), r.sign, x});
        }

    // weights of all keys of total degree <= cutoff
    std::set<std::vector<Q>> weights;
    {
        std::vector<size_t> kept;
        for (size_t k = 0; k < eng.f().ngens(); ++k) {
            const GenId& g = eng.f().gen_id(k);
            if (g.i > g.j && !spec.in_q(g.i, g.j)) kept.push_back(k);
        }
        std::function<void(size_t, int, std::vector<Q>)> rec = [&](size_t t, int left, std::vector<Q> wt) {
            if (t == kept.size()) {
                for (int d = 0; d <= left; ++d) {
                    // every distribution of d over the rows
                    std::function<void(int, int, std::vector<Q>&)> rows = [&](int r, int dl, std::vector<Q>& w) {
                        if (r == N) {
                            if (dl == 0) weights.insert(w);
                            return;
                        }
                        for (int x = 0; x <= dl; ++x) {
                            w[size_t(r)] += x;
                            rows(r + 1, dl - x, w);
                            w[size_t(r)] -= x;
                        }
                    };
                    std::vector<Q> w = wt;
                    rows(0, d, w);
                }
                return;
            }
            auto gw = eng.gen_weight(eng.f().gen_id(kept[t]));
            for (int e = 0; e <= left; ++e) {
                rec(t + 1, left - e, wt);
                for (int r = 0; r < N; ++r) wt[size_t(r)] += gw[size_t(r)];
            }
        };
        std::vector<Q> top = spec.hw;
        for (auto& v : top) v += qfrac(n, 2);
        rec(0, cutoff, top);
    }

    for (const auto& wt : weights) {
        WeightSpaceBasis W = weight_space(eng, wt);
        if (W.dim() == 0) continue;
        ++R.spaces;
        R.dim_total += W.dim();
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 0; k <= K; ++k) {
                    QMatrix A = series_action_matrix(eng, bA.S, i, j, k, W);
                    QMatrix B = series_action_matrix(eng, SBfull, i, j, k, W, lmB);
                    ++R.yangian.checked;
                    if (!(A == B)) {
                        std::ostringstream os;
                        os << mat_tag(i, j, k) << " on weight (";
                        for (size_t r = 0; r < wt.size(); ++r) os << (r ? "," : "") << qstr(wt[r]);
                        os << ")";
                        R.yangian.fail(os.str());
                    }
                }
        for (const auto& lp : lie) {
            auto gw = eng.gen_weight(lp.g);
            std::vector<Q> tw = wt;
            for (int r = 0; r < N; ++r) tw[size_t(r)] += gw[size_t(r)];
            WeightSpaceBasis T = weight_space(eng, tw);
            for (size_t col = 0; col < W.dim(); ++col) {
                ModuleEngine::Vec v{{W.basis[col], Q(1)}};
                ModuleEngine::Vec a = eng.act_f(lp.g, v);
                if (lp.sign < 0)
                    for (auto& kv : a) kv.second = -kv.second;
                ModuleEngine::Vec b = eng.act_tensor(lp.side_b, v, lmB);
                ++R.levi.checked;
                if (T.coords(a) != T.coords(b)) R.levi.fail(lp.name + " on " + eng.key_str(W.basis[col]));
            }
        }
    }
    return R;
}

// ---------------------------------------------------------------------------

bool is_generic(CaseTag c, const std::vector<Q>& mu, std::string* why) {
    auto integral = [](const Q& q) { return q.get_den() == 1; };
    for (size_t a = 0; a < mu.size(); ++a) {
        if (c == CaseTag::SpSo && integral(2 * mu[a])) {
            if (why) *why = "2 mu_" + std::to_string(a + 1) + " is an integer";
            return false;
        }
        for (size_t b = a + 1; b < mu.size(); ++b) {
            if (integral(mu[a] - mu[b]) || integral(mu[a] + mu[b])) {
                if (why) *why = "mu_" + std::to_string(a + 1) + " +- mu_" + std::to_string(b + 1) + " is an integer";
                return false;
            }
        }
    }
    return true;
}

std::vector<Q> generic_weight(CaseTag, int m, unsigned seed, std::vector<std::string>* rejected) {
    std::mt19937 rng(seed);
    static const int dens[] = {7, 11, 13, 17, 19, 23};
    std::uniform_int_distribution<int> pick(0, 5), num(-60, 60);
    for (;;) {
        std::vector<Q> mu;
        for (int a = 0; a < m; ++a) {
            int d = dens[pick(rng)], p;
            do p = num(rng);
            while (p % d == 0);
            mu.push_back(qfrac(p, d));
        }
        std::string why;
        // denominators are odd, so 2 mu_a is never integral; ask the same of
        // both cases to keep every H-eigenvalue away from zero
        if (is_generic(CaseTag::SpSo, mu, &why)) return mu;
        if (rejected) rejected->push_back(why);
    }
}

} // namespace twy
