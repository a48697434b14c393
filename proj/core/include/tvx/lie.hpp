#pragma once

#include <functional>
#include <map>
#include <vector>

#include "tvx/series.hpp"

namespace tvx {

/*
 * Coefficient of z^m (times a formal degree) in the extended Lie algebra
 *
 *    htilde = (gl_r oplus (Lambda tensor Q)) tensor C[Lambda] tensor m_t,
 *
 * i.e. a matrix part A and a derivation part d = (d1, d2), acting on monomials
 * by z^m' |--> <m', d> z^m'.  The subalgebra h of interest additionally has
 * <m, d> = 0 (the derivation direction is normal to its own monomial).
 */
struct LieCoef {
    Mat A;
    Poly d1, d2;

    bool is_zero() const { return A.is_zero() && d1.is_zero() && d2.is_zero(); }
    friend bool operator==(const LieCoef&, const LieCoef&) = default;
};

/* A single term (A, d) z^m deg, mostly useful for assembling test elements. */
struct LieTerm {
    TermKey key;
    LieCoef coef;
};

class LieElement {
public:
    LieElement() = default;
    explicit LieElement(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<TermKey, LieCoef>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const TermKey& k, LieCoef c) {
        if (!ring_->admits(k.deg)) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[k] = std::move(c);
        } else {
            it->second.A += c.A;
            it->second.d1 += c.d1;
            it->second.d2 += c.d2;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_term(const LieTerm& t) { add(t.key, t.coef); }

    LieElement& operator+=(const LieElement& o);
    LieElement& operator-=(const LieElement& o);
    friend LieElement operator+(LieElement a, const LieElement& b) { a += b; return a; }
    friend LieElement operator-(LieElement a, const LieElement& b) { a -= b; return a; }
    LieElement operator-() const;
    friend LieElement operator*(const Rat& c, const LieElement& e);

    friend bool operator==(const LieElement& a, const LieElement& b) {
        return a.terms_ == b.terms_;
    }

    /* Sub-element of exact total formal degree k. */
    LieElement homogeneous_part(int k) const;
    /* Smallest total formal degree present; -1 when zero. */
    int lowest_degree() const;

    /* Membership in h: every term satisfies <m, d> = 0. */
    bool is_wall_type() const;

    /* Derivation pairing <m, d> of one coefficient. */
    static Poly pair(LatticeVector m, const LieCoef& c) {
        return Rat(m.a) * c.d1 + Rat(m.b) * c.d2;
    }

private:
    RingPtr ring_;
    std::map<TermKey, LieCoef> terms_;
};

/*
 * [ (A1,d1) z^{m1}, (A2,d2) z^{m2} ]
 *   = ( [A1,A2] + <m2,d1> A2 - <m1,d2> A1,
 *       <m2,d1> d2 - <m1,d2> d1 ) z^{m1+m2}.
 * A nonzero result at z^0 leaves the algebra and throws std::domain_error.
 */
LieElement bracket(const LieElement& a, const LieElement& b);

/*
 * Baker-Campbell-Hausdorff: log(exp(a) exp(b)), summed over right-nested
 * Dynkin words of length <= max_len (the ring's nilpotency bound caps it).
 */
LieElement bch(const LieElement& a, const LieElement& b, int max_len = -1);

/* Degree maps applied term by term. */
LieElement expand_t_to_u(const LieElement& e, RingPtr target);
LieElement collapse_u_to_t(const LieElement& e, RingPtr target);

struct GroupElement {
    LieElement log;

    static GroupElement identity(RingPtr ring) { return {LieElement(std::move(ring))}; }
    bool is_identity() const { return log.is_zero(); }
};

GroupElement group_mul(const GroupElement& g, const GroupElement& h);
GroupElement group_inv(const GroupElement& g);

/* Derivation part acting on a scalar series: z^{m'} |--> <m', d> z^{m+m'}. */
Series derive(const LieElement& e, const Series& s);

/* Full action of (A, d) z^m on a C^r-valued series: A v z^m + D(v). */
std::vector<Series> apply_lie(const LieElement& e, const std::vector<Series>& v);

/* exp of the derivation action on a scalar series. */
Series act_on_series(const GroupElement& g, const Series& s);

/* exp of the full action on a vector of series. */
std::vector<Series> act_on_series(const GroupElement& g, const std::vector<Series>& v);

std::string lie_str(const LieElement& e);

}  // namespace tvx
