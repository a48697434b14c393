#pragma once

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvx/lattice.hpp"
#include "tvx/poly.hpp"

namespace tvx {

/*
 * Formal multidegree of the coefficient ring:
 *
 *   R_N       = C[[t_1..t_n]] / (t_i^{N+1})          -- the t part
 *   Rtilde_N  = C[u_ij : i<=n, j<=N] / (u_ij^2)      -- the u part
 *
 * A degree is pure-t or pure-u depending on the ring mode; the two are
 * related by expand_t_to_u / collapse_u_to_t.  t entries are (var, exp) with
 * exp >= 1 sorted by var; u entries are (i, j) flags sorted lexicographically,
 * both 1-based to match the u_{i,j} notation.
 */
struct MultiDegree {
    std::vector<std::pair<int, int>> t;  // (var index 1..n, exponent)
    std::vector<std::pair<int, int>> u;  // (line 1..n, copy 1..N)

    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
    friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;

    bool empty() const { return t.empty() && u.empty(); }
    int total() const {
        int d = (int)u.size();
        for (auto& [v, e] : t) d += e;
        return d;
    }

    static MultiDegree t_power(int var, int exp) {
        MultiDegree d;
        if (exp > 0) d.t.push_back({var, exp});
        return d;
    }
    static MultiDegree u_flags(std::vector<std::pair<int, int>> flags) {
        MultiDegree d;
        std::sort(flags.begin(), flags.end());
        d.u = std::move(flags);
        return d;
    }
};

enum class RingMode { RN, RtildeN };

/*
 * Ambient ring data shared by all series/Lie elements of a computation:
 * number of formal lines n, per-variable order N, which of R_N / Rtilde_N the
 * degrees live in, the gl rank r carried by wall functions (r = 0 for the
 * classical torus-valued case), and the commuting symbol table for matrix
 * entries.  An optional total-degree cutoff truncates everything of higher
 * total order, which keeps intermediate products small when only low orders
 * are wanted.
 */
struct RingSpec {
    int n = 1;
    int N = 1;
    RingMode mode = RingMode::RN;
    int rank = 0;
    std::vector<std::string> t_names;  // size n; defaults t1..tn
    SymbolTable symbols;
    std::optional<int> total_cutoff;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;

    const std::string& t_name(int var) const { return t_names.at(var - 1); }
    int t_var(const std::string& name) const {
        for (int i = 0; i < (int)t_names.size(); ++i)
            if (t_names[i] == name) return i + 1;
        return -1;
    }

    /* Hard bound on the total formal degree of any nonzero element. */
    int nilpotency_bound() const {
        long long cap = (long long)n * N;
        if (total_cutoff) cap = std::min(cap, (long long)*total_cutoff);
        return (int)cap;
    }

    bool admits(const MultiDegree& d) const {
        if (total_cutoff && d.total() > *total_cutoff) return false;
        if (mode == RingMode::RN) {
            if (!d.u.empty()) return false;
            for (auto& [v, e] : d.t)
                if (v < 1 || v > n || e < 1 || e > N) return false;
        } else {
            if (!d.t.empty()) return false;
            for (std::size_t k = 0; k < d.u.size(); ++k) {
                auto [i, j] = d.u[k];
                if (i < 1 || i > n || j < 1 || j > N) return false;
                if (k && d.u[k] == d.u[k - 1]) return false;  // u^2 = 0
            }
        }
        return true;
    }

    /* Degree product; nullopt when the result is truncated away. */
    std::optional<MultiDegree> mul(const MultiDegree& x, const MultiDegree& y) const {
        MultiDegree r;
        // merge t parts, adding exponents
        std::size_t i = 0, j = 0;
        while (i < x.t.size() && j < y.t.size()) {
            if (x.t[i].first < y.t[j].first) r.t.push_back(x.t[i++]);
            else if (x.t[i].first > y.t[j].first) r.t.push_back(y.t[j++]);
            else { r.t.push_back({x.t[i].first, x.t[i].second + y.t[j].second}); ++i; ++j; }
        }
        while (i < x.t.size()) r.t.push_back(x.t[i++]);
        while (j < y.t.size()) r.t.push_back(y.t[j++]);
        // merge u flags; a collision kills the product
        r.u.resize(x.u.size() + y.u.size());
        std::merge(x.u.begin(), x.u.end(), y.u.begin(), y.u.end(), r.u.begin());
        for (std::size_t k = 1; k < r.u.size(); ++k)
            if (r.u[k] == r.u[k - 1]) return std::nullopt;
        if (!admits(r)) return std::nullopt;
        return r;
    }

    RingSpec with_mode(RingMode m) const {
        RingSpec s = *this;
        s.mode = m;
        return s;
    }
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline RingPtr make_ring(RingSpec spec) {
    if (spec.t_names.empty())
        for (int i = 1; i <= spec.n; ++i) spec.t_names.push_back("t" + std::to_string(i));
    if ((int)spec.t_names.size() != spec.n)
        throw std::invalid_argument("t_names size must equal n");
    return std::make_shared<const RingSpec>(std::move(spec));
}

/*
 * expand_t_to_u on a single degree:  t_i^j  |-->  sum_{|J|=j} j! u_{iJ},
 * multiplicatively over the variables.  Returns the list of (u-degree,
 * scalar) pairs; input must be pure-t.
 */
inline std::vector<std::pair<MultiDegree, Rat>> expand_mdeg(const MultiDegree& d, const RingSpec& ring) {
    if (!d.u.empty()) throw std::invalid_argument("expand_mdeg wants a pure-t degree");
    std::vector<std::pair<MultiDegree, Rat>> out = {{MultiDegree{}, Rat(1)}};
    for (auto& [var, exp] : d.t) {
        if (exp > ring.N) return {};  // t_i^{N+1} = 0
        // subsets J of {1..N} with |J| = exp
        std::vector<int> pick(exp);
        for (int k = 0; k < exp; ++k) pick[k] = k + 1;
        std::vector<std::vector<int>> subsets;
        while (true) {
            subsets.push_back(pick);
            int k = exp - 1;
            while (k >= 0 && pick[k] == ring.N - (exp - 1 - k)) --k;
            if (k < 0) break;
            ++pick[k];
            for (int l = k + 1; l < exp; ++l) pick[l] = pick[l - 1] + 1;
        }
        Rat fact = factorial(exp);
        std::vector<std::pair<MultiDegree, Rat>> next;
        for (const auto& [base, c] : out)
            for (const auto& J : subsets) {
                MultiDegree nd = base;
                for (int j : J) nd.u.push_back({var, j});
                std::sort(nd.u.begin(), nd.u.end());
                next.push_back({std::move(nd), c * fact});
            }
        out = std::move(next);
    }
    return out;
}

/*
 * collapse_u_to_t on a single degree: with B_i the set of copies of line i
 * present,  prod_i u_{iB_i}  |-->  prod_i t_i^{|B_i|} / (|B_i|! binom(N,|B_i|)).
 * This is the unique S_N-symmetric left inverse of expand_t_to_u.
 */
inline std::pair<MultiDegree, Rat> collapse_mdeg(const MultiDegree& d, const RingSpec& ring) {
    if (!d.t.empty()) throw std::invalid_argument("collapse_mdeg wants a pure-u degree");
    MultiDegree r;
    Rat c(1);
    std::size_t k = 0;
    while (k < d.u.size()) {
        int line = d.u[k].first;
        int b = 0;
        while (k < d.u.size() && d.u[k].first == line) { ++b; ++k; }
        r.t.push_back({line, b});
        c /= factorial(b) * binomial(ring.N, b);
    }
    return {r, c};
}

}  // namespace tvx
