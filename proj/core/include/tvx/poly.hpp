#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvx/rational.hpp"

namespace tvx {

/*
 * Commuting formal symbols (A, A_1, Q_2, ...) used for matrix entries when
 * wall functions carry indeterminate gl coefficients.  Symbols are global to
 * a ring; polynomials refer to them by id.
 */
class SymbolTable {
public:
    int intern(const std::string& name) {
        for (int i = 0; i < (int)names_.size(); ++i)
            if (names_[i] == name) return i;
        names_.push_back(name);
        return (int)names_.size() - 1;
    }
    int lookup(const std::string& name) const {
        for (int i = 0; i < (int)names_.size(); ++i)
            if (names_[i] == name) return i;
        return -1;
    }
    const std::string& name(int id) const { return names_.at(id); }
    int size() const { return (int)names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    friend bool operator==(const SymbolTable&, const SymbolTable&) = default;

private:
    std::vector<std::string> names_;
};

/* Sorted (symbol id, exponent > 0) pairs; the empty monomial is 1. */
using Mono = std::vector<std::pair<int, int>>;

inline Mono mono_mul(const Mono& p, const Mono& q) {
    Mono r;
    r.reserve(p.size() + q.size());
    std::size_t i = 0, j = 0;
    while (i < p.size() && j < q.size()) {
        if (p[i].first < q[j].first) r.push_back(p[i++]);
        else if (p[i].first > q[j].first) r.push_back(q[j++]);
        else { r.emplace_back(p[i].first, p[i].second + q[j].second); ++i; ++j; }
    }
    while (i < p.size()) r.push_back(p[i++]);
    while (j < q.size()) r.push_back(q[j++]);
    return r;
}

/*
 * Sparse polynomial over Q in commuting symbols.  No truncation happens at
 * this level; nilpotency is a property of the surrounding ring's formal
 * variables, not of the gl coefficients (A^l terms for all l survive).
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rat& c) { if (c != 0) terms_[Mono{}] = c; }
    explicit Poly(long long c) { if (c != 0) terms_[Mono{}] = Rat(c); }

    static Poly symbol(int id, int exp = 1) {
        Poly p;
        if (exp > 0) p.terms_[Mono{{id, exp}}] = Rat(1);
        else p.terms_[Mono{}] = Rat(1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rat constant_value() const {
        auto it = terms_.find(Mono{});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend Poly operator*(const Rat& c, const Poly& p) {
        Poly r;
        if (c == 0) return r;
        for (const auto& [m, pc] : p.terms_) r.terms_[m] = c * pc;
        return r;
    }

    Poly pow(int e) const {
        Poly r{Rat(1)};
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    const std::map<Mono, Rat>& terms() const { return terms_; }

    /* Coefficient of an exact monomial. */
    Rat coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    std::string str(const SymbolTable& tab) const;

private:
    void add_term(const Mono& m, const Rat& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Mono, Rat> terms_;
};

inline std::string Poly::str(const SymbolTable& tab) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat ac = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono;
        for (const auto& [id, e] : m) {
            if (!mono.empty()) mono += "*";
            mono += tab.name(id);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += ac.str();
        } else {
            if (ac != 1) out += ac.str() + "*";
            out += mono;
        }
    }
    return out;
}

}  // namespace tvx
