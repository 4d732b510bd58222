#pragma once
// Sparse noncommutative polynomials over Q with a PBW-style rewriting system.
//
// Every algebra used here (enveloping algebras, the Weyl algebra, tensor
// products and the cross-relation algebra B_m) is presented by generators with
// a total order and a bracket of degree at most one for each pair:
//     g * h = h * g + [g, h]      whenever g comes after h.
// Normal words are the nondecreasing ones.

#include "twy/exact.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace twy {

enum class Sort : uint8_t { E = 0, F = 1, X = 2, D = 3, H = 4 };

struct GenId {
    Sort sort = Sort::E;
    int8_t i = 0;  // row / first index (signed for F)
    int8_t j = 0;  // column / second index
    uint8_t slot = 0; // tensor factor copy

    auto tie() const { return std::make_tuple(sort, i, j, slot); }
    bool operator==(const GenId& o) const { return tie() == o.tie(); }
    bool operator<(const GenId& o) const { return tie() < o.tie(); }
    std::string str() const;
};

inline GenId gE(int i, int j, int slot = 0) { return {Sort::E, int8_t(i), int8_t(j), uint8_t(slot)}; }
inline GenId gF(int a, int b, int slot = 0) { return {Sort::F, int8_t(a), int8_t(b), uint8_t(slot)}; }
inline GenId gX(int a, int i, int slot = 0) { return {Sort::X, int8_t(a), int8_t(i), uint8_t(slot)}; }
inline GenId gD(int a, int i, int slot = 0) { return {Sort::D, int8_t(a), int8_t(i), uint8_t(slot)}; }

// linear combination of generators plus a scalar; the value of a bracket
struct LinG {
    Q scalar = 0;
    std::vector<std::pair<GenId, Q>> terms;
    bool is_zero() const;
};

// bracket [a, b] of two generators; must be defined for every ordered pair
using BracketFn = std::function<LinG(const GenId&, const GenId&)>;

using Word = std::string; // generator indices as bytes

class NCElement;

class Algebra {
public:
    // gens in the chosen total order; bracket consulted for every pair
    Algebra(std::string name, std::vector<GenId> gens, const BracketFn& bracket, bool verify = true);

    const std::string& name() const { return name_; }
    size_t ngens() const { return gens_.size(); }
    const GenId& gen_id(size_t idx) const { return gens_[idx]; }
    bool has(const GenId& g) const { return index_.count(g) > 0; }
    size_t index(const GenId& g) const;

    NCElement gen(const GenId& g) const;
    NCElement gen_at(size_t idx) const;
    NCElement scalar(const Q& q) const;
    NCElement zero() const;
    NCElement one() const;

    // bracket of generators by index, as stored
    struct Lin {
        Q scalar = 0;
        std::vector<std::pair<uint8_t, Q>> terms;
    };
    const Lin& bracket(size_t a, size_t b) const { return br_[a * gens_.size() + b]; }

    // normal form of an arbitrary word
    NCElement normalize_word(const Word& w) const;

    // normal word times generator g (memoized)
    const std::vector<std::pair<Word, Q>>& rmul_gen(const Word& w, uint8_t g) const;

    std::string word_str(const Word& w) const;
    void clear_cache() const { memo_.clear(); }
    size_t cache_size() const { return memo_.size(); }

private:
    std::string name_;
    std::vector<GenId> gens_;
    std::map<GenId, size_t> index_;
    std::vector<Lin> br_;
    mutable std::unordered_map<std::string, std::vector<std::pair<Word, Q>>> memo_;
};

using AlgPtr = std::shared_ptr<const Algebra>;

class NCElement {
public:
    using Map = std::unordered_map<Word, Q>;

    NCElement() = default;
    explicit NCElement(const Algebra* a) : alg_(a) {}

    const Algebra* alg() const { return alg_; }
    const Map& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_scalar() const;
    Q scalar_part() const;
    Q coeff(const Word& w) const;

    // add c * w; w must already be normal
    void add_term(const Word& w, const Q& c);
    void add_scaled(const NCElement& o, const Q& c);

    NCElement& operator+=(const NCElement& o);
    NCElement& operator-=(const NCElement& o);
    friend NCElement operator+(NCElement a, const NCElement& b) { return a += b; }
    friend NCElement operator-(NCElement a, const NCElement& b) { return a -= b; }
    friend NCElement operator*(const NCElement& a, const NCElement& b);
    NCElement operator-() const { return scaled(Q(-1)); }
    NCElement scaled(const Q& s) const;
    bool operator==(const NCElement& o) const;
    bool operator!=(const NCElement& o) const { return !(*this == o); }

    // max word length
    size_t degree() const;
    // canonical s-expression with words sorted
    std::string dump() const;
    std::vector<std::pair<Word, Q>> sorted_terms() const;

private:
    const Algebra* alg_ = nullptr;
    Map t_;
    friend class Algebra;
};

template <>
struct RingTraits<NCElement> {
    static NCElement zero_like(const NCElement& a) { return NCElement(a.alg()); }
    static NCElement one_like(const NCElement& a) { return a.alg() ? a.alg()->one() : NCElement(); }
    static bool is_zero(const NCElement& a) { return a.is_zero(); }
    static NCElement scale(const NCElement& a, const Q& s) { return a.scaled(s); }
    static bool same_ring(const NCElement& a, const NCElement& b) {
        return !a.alg() || !b.alg() || a.alg() == b.alg();
    }
};

NCElement nc_mul(const NCElement& a, const NCElement& b);
NCElement commutator(const NCElement& a, const NCElement& b);
// normal form of an element given by arbitrary (possibly non-normal) words
NCElement normalize(const std::vector<std::pair<std::vector<GenId>, Q>>& raw, const Algebra& alg);

// multiplicative extension of generator images into a target algebra
class Hom {
public:
    Hom(const Algebra* src, const Algebra* dst) : src_(src), dst_(dst), img_(src->ngens()) , set_(src->ngens(), false) {}
    void set(const GenId& g, const NCElement& image);
    bool defined(const GenId& g) const { return set_[src_->index(g)]; }
    const NCElement& image(const GenId& g) const;
    NCElement apply(const NCElement& e) const;
    const Algebra* src() const { return src_; }
    const Algebra* dst() const { return dst_; }

private:
    const Algebra* src_;
    const Algebra* dst_;
    std::vector<NCElement> img_;
    std::vector<bool> set_;
};

struct JacobiReport {
    bool ok = true;
    std::string witness; // offending triple
};
// Jacobi identity for all generator triples and antisymmetry of the table
JacobiReport jacobi_check(const Algebra& alg);
JacobiReport jacobi_check(const std::vector<GenId>& gens, const BracketFn& bracket);

// left ideal generated by a set G closed under brackets with larger
// generators: membership iff every normal word ends in G
bool in_left_ideal_suffix(const NCElement& e, const std::function<bool(const GenId&)>& in_G);
// drop all words ending in G
NCElement drop_suffix(const NCElement& e, const std::function<bool(const GenId&)>& in_G);

} // namespace twy
