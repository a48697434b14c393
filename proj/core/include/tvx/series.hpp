#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "tvx/lattice.hpp"
#include "tvx/matrix.hpp"
#include "tvx/ring.hpp"

namespace tvx {

/* One monomial slot of a series: z^m times a formal multidegree. */
struct TermKey {
    LatticeVector z;
    MultiDegree deg;

    friend bool operator==(const TermKey&, const TermKey&) = default;
    friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

namespace detail {
template <class C>
struct CoefOps;

template <>
struct CoefOps<Poly> {
    static Poly one(const RingSpec&) { return Poly{Rat(1)}; }
    static bool is_one(const Poly& p, const RingSpec&) { return p == Poly{Rat(1)}; }
};

template <>
struct CoefOps<Mat> {
    static Mat one(const RingSpec& r) { return Mat::identity(r.rank); }
    static bool is_one(const Mat& m, const RingSpec& r) { return m == Mat::identity(r.rank); }
};
}  // namespace detail

/*
 * Truncated series over the monomial algebra C[Lambda] tensor (R_N or
 * Rtilde_N), with coefficients either Poly (functions) or Mat (gl-valued
 * series).  All arithmetic silently drops terms the ring truncates away.
 */
template <class C>
class BasicSeries {
public:
    BasicSeries() = default;
    explicit BasicSeries(RingPtr ring) : ring_(std::move(ring)) {}

    static BasicSeries one(RingPtr ring) {
        BasicSeries s(ring);
        s.add({}, detail::CoefOps<C>::one(*ring));
        return s;
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<TermKey, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == TermKey{} &&
               detail::CoefOps<C>::is_one(terms_.begin()->second, *ring_);
    }

    C coeff(const TermKey& k) const {
        auto it = terms_.find(k);
        if (it != terms_.end()) return it->second;
        if constexpr (std::is_same_v<C, Poly>) return Poly{};
        else return Mat::zero(ring_->rank);
    }

    void add(const TermKey& k, const C& c) {
        if (!ring_->admits(k.deg)) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    BasicSeries& operator+=(const BasicSeries& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    BasicSeries& operator-=(const BasicSeries& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    friend BasicSeries operator+(BasicSeries a, const BasicSeries& b) { a += b; return a; }
    friend BasicSeries operator-(BasicSeries a, const BasicSeries& b) { a -= b; return a; }
    BasicSeries operator-() const {
        BasicSeries r(ring_);
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    friend BasicSeries operator*(const Rat& c, const BasicSeries& s) {
        BasicSeries r(s.ring_);
        if (c == 0) return r;
        for (const auto& [k, v] : s.terms_) r.terms_[k] = c * v;
        return r;
    }

    friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
        return a.terms_ == b.terms_;
    }

    RingPtr ring_;
    std::map<TermKey, C> terms_;

private:
    void check(const BasicSeries& o) const {
        if (!ring_ || !o.ring_ || *ring_ != *o.ring_)
            throw std::invalid_argument("series over different rings");
    }
};

using Series = BasicSeries<Poly>;
using MatSeries = BasicSeries<Mat>;

template <class C>
BasicSeries<C> series_mul(const BasicSeries<C>& a, const BasicSeries<C>& b) {
    if (!a.ring() || !b.ring() || *a.ring() != *b.ring())
        throw std::invalid_argument("series over different rings");
    BasicSeries<C> r(a.ring());
    const RingSpec& ring = *a.ring();
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            auto deg = ring.mul(ka.deg, kb.deg);
            if (!deg) continue;
            r.add(TermKey{ka.z + kb.z, *deg}, ca * cb);
        }
    return r;
}

template <class C>
BasicSeries<C> operator*(const BasicSeries<C>& a, const BasicSeries<C>& b) {
    return series_mul(a, b);
}

/*
 * log of a series with unit constant term.  Every other term must carry a
 * positive formal degree, which makes the expansion finite.
 */
template <class C>
BasicSeries<C> series_log(const BasicSeries<C>& f) {
    const RingSpec& ring = *f.ring();
    BasicSeries<C> u = f;
    auto it = u.terms_.find(TermKey{});
    if (it == u.terms_.end() || !detail::CoefOps<C>::is_one(it->second, ring))
        throw std::domain_error("series_log wants constant term 1");
    u.terms_.erase(TermKey{});
    for (const auto& [k, c] : u.terms())
        if (k.deg.empty())
            throw std::domain_error("series_log: term of formal degree 0 away from 1");
    BasicSeries<C> acc(f.ring());
    BasicSeries<C> pw = u;
    Rat sign(1);
    for (int k = 1; !pw.is_zero() && k <= ring.nilpotency_bound(); ++k) {
        acc += (sign / Rat(k)) * pw;
        pw = series_mul(pw, u);
        sign = -sign;
    }
    return acc;
}

/* exp of a series supported in positive formal degree. */
template <class C>
BasicSeries<C> series_exp(const BasicSeries<C>& a) {
    const RingSpec& ring = *a.ring();
    for (const auto& [k, c] : a.terms())
        if (k.deg.empty())
            throw std::domain_error("series_exp wants positive formal degree");
    BasicSeries<C> acc = BasicSeries<C>::one(a.ring());
    BasicSeries<C> pw = a;
    Rat inv_fact(1);
    for (int k = 1; !pw.is_zero() && k <= ring.nilpotency_bound(); ++k) {
        inv_fact /= Rat(k);  // 1/k!
        acc += inv_fact * pw;
        pw = series_mul(pw, a);
    }
    return acc;
}

/* R_N -> Rtilde_N:  t_i^j |--> sum_{|J| = j} j! u_{iJ}  term by term. */
template <class C>
BasicSeries<C> expand_t_to_u(const BasicSeries<C>& s, RingPtr target) {
    if (s.ring()->mode != RingMode::RN || target->mode != RingMode::RtildeN)
        throw std::invalid_argument("expand_t_to_u: need R_N source and Rtilde_N target");
    BasicSeries<C> r(target);
    for (const auto& [k, c] : s.terms())
        for (auto& [deg, f] : expand_mdeg(k.deg, *s.ring())) r.add(TermKey{k.z, deg}, f * c);
    return r;
}

/* Rtilde_N -> R_N:  u_{iB} |--> t_i^{|B|} / (|B|! binom(N,|B|)). */
template <class C>
BasicSeries<C> collapse_u_to_t(const BasicSeries<C>& s, RingPtr target) {
    if (s.ring()->mode != RingMode::RtildeN || target->mode != RingMode::RN)
        throw std::invalid_argument("collapse_u_to_t: need Rtilde_N source and R_N target");
    BasicSeries<C> r(target);
    for (const auto& [k, c] : s.terms()) {
        auto [deg, f] = collapse_mdeg(k.deg, *s.ring());
        r.add(TermKey{k.z, deg}, f * c);
    }
    return r;
}

std::string term_key_str(const TermKey& k, const RingSpec& ring);
std::string series_str(const Series& s);
TermKey parse_term_key(const std::string& head, const RingSpec& ring);
Series parse_series(const std::string& text, RingPtr ring);
Poly parse_poly(const std::string& text, const SymbolTable& symbols);

}  // namespace tvx
