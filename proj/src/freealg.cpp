#include "twy/freealg.hpp"

#include <algorithm>
#include <sstream>

namespace twy {

namespace {
constexpr size_t kMemoCap = 4'000'000;

const char* sort_name(Sort s) {
    switch (s) {
    case Sort::E: return "E";
    case Sort::F: return "F";
    case Sort::X: return "x";
    case Sort::D: return "d";
    case Sort::H: return "H";
    }
    return "?";
}
} // namespace

std::string GenId::str() const {
    std::ostringstream os;
    os << "(" << sort_name(sort) << " " << int(i) << " " << int(j);
    if (slot) os << " @" << int(slot);
    os << ")";
    return os.str();
}

bool LinG::is_zero() const {
    if (sgn(scalar) != 0) return false;
    for (const auto& t : terms)
        if (sgn(t.second) != 0) return false;
    return true;
}

Algebra::Algebra(std::string name, std::vector<GenId> gens, const BracketFn& bracket, bool verify)
    : name_(std::move(name)), gens_(std::move(gens)) {
    if (gens_.size() > 255) throw ConfigError("too many generators");
    for (size_t k = 0; k < gens_.size(); ++k) {
        if (!index_.emplace(gens_[k], k).second) throw ConfigError("duplicate generator " + gens_[k].str());
    }
    size_t n = gens_.size();
    br_.resize(n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            LinG l = bracket(gens_[a], gens_[b]);
            Lin& dst = br_[a * n + b];
            dst.scalar = l.scalar;
            std::map<uint8_t, Q> acc;
            for (const auto& [g, c] : l.terms) {
                auto it = index_.find(g);
                if (it == index_.end()) throw ConfigError("bracket produced unknown generator " + g.str());
                acc[uint8_t(it->second)] += c;
            }
            for (auto& [k, c] : acc)
                if (sgn(c) != 0) dst.terms.emplace_back(k, c);
        }
    if (verify) {
        JacobiReport r = jacobi_check(*this);
        if (!r.ok) throw ConfigError("rewriting system " + name_ + " violates Jacobi: " + r.witness);
    }
}

size_t Algebra::index(const GenId& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) throw ConfigError("unknown generator " + g.str() + " in " + name_);
    return it->second;
}

NCElement Algebra::gen(const GenId& g) const { return gen_at(index(g)); }

NCElement Algebra::gen_at(size_t idx) const {
    NCElement e(this);
    e.t_.emplace(Word(1, char(idx)), Q(1));
    return e;
}

NCElement Algebra::scalar(const Q& q) const {
    NCElement e(this);
    if (sgn(q) != 0) e.t_.emplace(Word(), q);
    return e;
}
NCElement Algebra::zero() const { return NCElement(this); }
NCElement Algebra::one() const { return scalar(Q(1)); }

const std::vector<std::pair<Word, Q>>& Algebra::rmul_gen(const Word& w, uint8_t g) const {
    std::string key = w;
    key.push_back(char(g));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (memo_.size() > kMemoCap) memo_.clear();

    std::unordered_map<Word, Q> acc;
    if (w.empty() || uint8_t(w.back()) <= g) {
        acc.emplace(key, Q(1));
    } else {
        uint8_t h = uint8_t(w.back());
        Word wp = w.substr(0, w.size() - 1);
        // w g = w' h g = (w' g) h + w' [h, g]
        std::vector<std::pair<Word, Q>> first = rmul_gen(wp, g);
        for (const auto& [t, c] : first) {
            std::vector<std::pair<Word, Q>> second = rmul_gen(t, h);
            for (const auto& [t2, c2] : second) acc[t2] += c * c2;
        }
        const Lin& b = bracket(h, g);
        if (sgn(b.scalar) != 0) acc[wp] += b.scalar;
        for (const auto& [k, c] : b.terms) {
            std::vector<std::pair<Word, Q>> third = rmul_gen(wp, k);
            for (const auto& [t3, c3] : third) acc[t3] += c * c3;
        }
    }
    std::vector<std::pair<Word, Q>> out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (sgn(c) != 0) out.emplace_back(k, std::move(c));
    return memo_.emplace(std::move(key), std::move(out)).first->second;
}

NCElement Algebra::normalize_word(const Word& w) const {
    NCElement cur = one();
    for (char ch : w) {
        NCElement next(this);
        for (const auto& [t, c] : cur.t_) {
            const auto& prod = rmul_gen(t, uint8_t(ch));
            for (const auto& [t2, c2] : prod) next.t_[t2] += c * c2;
        }
        for (auto it = next.t_.begin(); it != next.t_.end();)
            it = sgn(it->second) == 0 ? next.t_.erase(it) : std::next(it);
        cur = std::move(next);
    }
    return cur;
}

std::string Algebra::word_str(const Word& w) const {
    std::string s;
    for (char ch : w) {
        if (!s.empty()) s += " ";
        s += gens_[uint8_t(ch)].str();
    }
    return s;
}

// ---------------------------------------------------------------------------

bool NCElement::is_scalar() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Q NCElement::scalar_part() const { return coeff(Word()); }

Q NCElement::coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Q(0) : it->second;
}

void NCElement::add_term(const Word& w, const Q& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = t_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) t_.erase(it);
    }
}

void NCElement::add_scaled(const NCElement& o, const Q& c) {
    if (!alg_) alg_ = o.alg_;
    else if (o.alg_ && o.alg_ != alg_) throw ConfigError("algebra mismatch");
    if (sgn(c) == 0) return;
    for (const auto& [w, x] : o.t_) add_term(w, x * c);
}

NCElement& NCElement::operator+=(const NCElement& o) {
    if (!alg_) alg_ = o.alg_;
    else if (o.alg_ && o.alg_ != alg_) throw ConfigError("algebra mismatch");
    for (const auto& [w, x] : o.t_) add_term(w, x);
    return *this;
}

NCElement& NCElement::operator-=(const NCElement& o) {
    if (!alg_) alg_ = o.alg_;
    else if (o.alg_ && o.alg_ != alg_) throw ConfigError("algebra mismatch");
    for (const auto& [w, x] : o.t_) add_term(w, -x);
    return *this;
}

NCElement NCElement::scaled(const Q& s) const {
    NCElement r(alg_);
    if (sgn(s) == 0) return r;
    r.t_.reserve(t_.size());
    for (const auto& [w, x] : t_) r.t_.emplace(w, x * s);
    return r;
}

bool NCElement::operator==(const NCElement& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (const auto& [w, x] : t_) {
        auto it = o.t_.find(w);
        if (it == o.t_.end() || it->second != x) return false;
    }
    return true;
}

size_t NCElement::degree() const {
    size_t d = 0;
    for (const auto& kv : t_) d = std::max(d, kv.first.size());
    return d;
}

std::vector<std::pair<Word, Q>> NCElement::sorted_terms() const {
    std::vector<std::pair<Word, Q>> v(t_.begin(), t_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    return v;
}

std::string NCElement::dump() const {
    std::ostringstream os;
    os << "(sum";
    for (const auto& [w, c] : sorted_terms()) {
        os << " (term \"" << qstr(c) << "\"";
        if (alg_)
            for (char ch : w) os << " " << alg_->gen_id(uint8_t(ch)).str();
        os << ")";
    }
    os << ")";
    return os.str();
}

NCElement operator*(const NCElement& a, const NCElement& b) { return nc_mul(a, b); }

NCElement nc_mul(const NCElement& a, const NCElement& b) {
    const Algebra* alg = a.alg() ? a.alg() : b.alg();
    if (a.alg() && b.alg() && a.alg() != b.alg()) throw ConfigError("algebra mismatch in product");
    NCElement r(alg);
    if (a.is_zero() || b.is_zero()) return r;
    NCElement::Map acc;
    for (const auto& [wb, cb] : b.terms()) {
        for (const auto& [wa, ca] : a.terms()) {
            Q c = ca * cb;
            if (wb.empty()) {
                acc[wa] += c;
                continue;
            }
            if (wa.empty() || uint8_t(wa.back()) <= uint8_t(wb.front())) {
                acc[wa + wb] += c;
                continue;
            }
            // fold the letters of wb into wa one at a time
            std::vector<std::pair<Word, Q>> cur{{wa, c}};
            for (char ch : wb) {
                std::unordered_map<Word, Q> next;
                for (const auto& [t, x] : cur) {
                    const auto& prod = alg->rmul_gen(t, uint8_t(ch));
                    for (const auto& [t2, y] : prod) next[t2] += x * y;
                }
                cur.clear();
                for (auto& [t, x] : next)
                    if (sgn(x) != 0) cur.emplace_back(t, std::move(x));
            }
            for (auto& [t, x] : cur) acc[t] += x;
        }
    }
    for (auto& [w, c] : acc)
        if (sgn(c) != 0) r.add_term(w, c);
    return r;
}

NCElement commutator(const NCElement& a, const NCElement& b) { return nc_mul(a, b) - nc_mul(b, a); }

NCElement normalize(const std::vector<std::pair<std::vector<GenId>, Q>>& raw, const Algebra& alg) {
    NCElement r(&alg);
    for (const auto& [gens, c] : raw) {
        Word w;
        for (const auto& g : gens) w.push_back(char(alg.index(g)));
        r.add_scaled(alg.normalize_word(w), c);
    }
    return r;
}

// ---------------------------------------------------------------------------

void Hom::set(const GenId& g, const NCElement& image) {
    size_t k = src_->index(g);
    if (image.alg() && image.alg() != dst_) throw ConfigError("image lives in the wrong algebra");
    img_[k] = image;
    if (!img_[k].alg()) img_[k] = dst_->zero() + image;
    set_[k] = true;
}

const NCElement& Hom::image(const GenId& g) const {
    size_t k = src_->index(g);
    if (!set_[k]) throw ConfigError("missing image for generator " + g.str());
    return img_[k];
}

NCElement Hom::apply(const NCElement& e) const {
    NCElement r(dst_);
    std::unordered_map<Word, NCElement> prefix;
    prefix.emplace(Word(), dst_->one());
    std::function<const NCElement&(const Word&)> get = [&](const Word& w) -> const NCElement& {
        auto it = prefix.find(w);
        if (it != prefix.end()) return it->second;
        uint8_t last = uint8_t(w.back());
        if (!set_[last]) throw ConfigError("missing image for generator " + src_->gen_id(last).str());
        NCElement v = nc_mul(get(w.substr(0, w.size() - 1)), img_[last]);
        return prefix.emplace(w, std::move(v)).first->second;
    };
    for (const auto& [w, c] : e.terms()) r.add_scaled(get(w), c);
    return r;
}

// ---------------------------------------------------------------------------

namespace {
// [l, g] for a linear combination l and a generator index g, via the table
Algebra::Lin lin_bracket(const Algebra& alg, const Algebra::Lin& l, size_t g) {
    std::map<uint8_t, Q> acc;
    Q sc = 0;
    for (const auto& [k, c] : l.terms) {
        if (k == g) continue;
        const auto& b = alg.bracket(k, g);
        sc += c * b.scalar;
        for (const auto& [k2, c2] : b.terms) acc[k2] += c * c2;
    }
    Algebra::Lin r;
    r.scalar = sc;
    for (auto& [k, c] : acc)
        if (sgn(c) != 0) r.terms.emplace_back(k, c);
    return r;
}

void lin_add(std::map<uint8_t, Q>& acc, const Algebra::Lin& l) {
    for (const auto& [k, c] : l.terms) acc[k] += c;
}
} // namespace

JacobiReport jacobi_check(const Algebra& alg) {
    JacobiReport rep;
    size_t n = alg.ngens();
    // antisymmetry
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            const auto& x = alg.bracket(a, b);
            const auto& y = alg.bracket(b, a);
            std::map<uint8_t, Q> acc;
            lin_add(acc, x);
            lin_add(acc, y);
            bool ok = sgn(x.scalar + y.scalar) == 0;
            for (auto& kv : acc) ok = ok && sgn(kv.second) == 0;
            if (!ok) {
                rep.ok = false;
                rep.witness = "antisymmetry fails for " + alg.gen_id(a).str() + " " + alg.gen_id(b).str();
                return rep;
            }
        }
    auto single = [&](size_t a, size_t b) {
        Algebra::Lin l;
        if (a == b) return l;
        return alg.bracket(a, b);
    };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c) {
                std::map<uint8_t, Q> acc;
                Q sc = 0;
                for (const auto& l : {lin_bracket(alg, single(a, b), c), lin_bracket(alg, single(b, c), a),
                                      lin_bracket(alg, single(c, a), b)}) {
                    lin_add(acc, l);
                    sc += l.scalar;
                }
                bool ok = sgn(sc) == 0;
                for (auto& kv : acc) ok = ok && sgn(kv.second) == 0;
                if (!ok) {
                    rep.ok = false;
                    rep.witness = alg.gen_id(a).str() + " " + alg.gen_id(b).str() + " " + alg.gen_id(c).str();
                    return rep;
                }
            }
    return rep;
}

JacobiReport jacobi_check(const std::vector<GenId>& gens, const BracketFn& bracket) {
    try {
        Algebra a("candidate", gens, bracket, false);
        return jacobi_check(a);
    } catch (const ConfigError& e) {
        return {false, e.what()};
    }
}

bool in_left_ideal_suffix(const NCElement& e, const std::function<bool(const GenId&)>& in_G) {
    for (const auto& [w, c] : e.terms()) {
        if (w.empty()) return false;
        if (!in_G(e.alg()->gen_id(uint8_t(w.back())))) return false;
    }
    return true;
}

NCElement drop_suffix(const NCElement& e, const std::function<bool(const GenId&)>& in_G) {
    NCElement r(e.alg());
    for (const auto& [w, c] : e.terms()) {
        if (!w.empty() && in_G(e.alg()->gen_id(uint8_t(w.back())))) continue;
        r.add_term(w, c);
    }
    return r;
}

} // namespace twy
