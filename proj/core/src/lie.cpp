#include "tvx/lie.hpp"

#include <stdexcept>

namespace tvx {

LieElement& LieElement::operator+=(const LieElement& o) {
    if (!ring_ || !o.ring_ || *ring_ != *o.ring_)
        throw std::invalid_argument("Lie elements over different rings");
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
    return *this += -o;
}

LieElement LieElement::operator-() const {
    LieElement r(ring_);
    for (const auto& [k, c] : terms_) r.terms_[k] = LieCoef{-c.A, -c.d1, -c.d2};
    return r;
}

LieElement operator*(const Rat& c, const LieElement& e) {
    LieElement r(e.ring_);
    if (c == 0) return r;
    for (const auto& [k, v] : e.terms_) r.terms_[k] = LieCoef{c * v.A, c * v.d1, c * v.d2};
    return r;
}

LieElement LieElement::homogeneous_part(int k) const {
    LieElement r(ring_);
    for (const auto& [key, c] : terms_)
        if (key.deg.total() == k) r.terms_[key] = c;
    return r;
}

int LieElement::lowest_degree() const {
    int lo = -1;
    for (const auto& [key, c] : terms_) {
        int d = key.deg.total();
        if (lo < 0 || d < lo) lo = d;
    }
    return lo;
}

bool LieElement::is_wall_type() const {
    for (const auto& [key, c] : terms_)
        if (!pair(key.z, c).is_zero()) return false;
    return true;
}

LieElement bracket(const LieElement& a, const LieElement& b) {
    if (!a.ring() || !b.ring() || *a.ring() != *b.ring())
        throw std::invalid_argument("Lie elements over different rings");
    const RingSpec& ring = *a.ring();
    LieElement r(a.ring());
    for (const auto& [k1, c1] : a.terms())
        for (const auto& [k2, c2] : b.terms()) {
            auto deg = ring.mul(k1.deg, k2.deg);
            if (!deg) continue;
            Poly p21 = LieElement::pair(k2.z, c1);  // <m2, d1>
            Poly p12 = LieElement::pair(k1.z, c2);  // <m1, d2>
            LieCoef c;
            c.A = commutator(c1.A, c2.A) + p21 * c2.A - p12 * c1.A;
            c.d1 = p21 * c2.d1 - p12 * c1.d1;
            c.d2 = p21 * c2.d2 - p12 * c1.d2;
            if (c.is_zero()) continue;
            LatticeVector z = k1.z + k2.z;
            if (z.is_zero())
                throw std::domain_error(
                    "bracket leaves the algebra: nonzero coefficient at z^0 from z^" +
                    to_string(k1.z) + " and z^" + to_string(k2.z));
            r.add(TermKey{z, *deg}, std::move(c));
        }
    return r;
}

namespace {

/*
 * Dynkin coefficient of one word w in {a=0, b=1}^L inside log(exp a exp b):
 * sum over factorizations of w into blocks a^p b^q of
 * (-1)^{n-1} / (n L prod p_i! q_i!).  Small DP over cut positions.
 */
Rat word_coeff(const std::vector<int>& w) {
    int L = (int)w.size();
    // seg_val[i][j] = 1/(p! q!) if w[i..j) = a^p b^q, else 0 (absent)
    std::vector<std::vector<Rat>> seg(L + 1, std::vector<Rat>(L + 1, Rat(0)));
    for (int i = 0; i < L; ++i) {
        int p = 0, q = 0;
        bool ok = true;
        for (int j = i; j < L; ++j) {
            if (w[j] == 0) {
                if (q > 0) ok = false;
                ++p;
            } else {
                ++q;
            }
            if (ok) seg[i][j + 1] = Rat(1) / (factorial(p) * factorial(q));
        }
    }
    // D[j][n] = sum over cuts of w[0..j) into n valid blocks of prod 1/(p!q!)
    std::vector<std::vector<Rat>> D(L + 1, std::vector<Rat>(L + 1, Rat(0)));
    D[0][0] = Rat(1);
    for (int j = 1; j <= L; ++j)
        for (int i = 0; i < j; ++i) {
            if (seg[i][j] == 0) continue;
            for (int n = 1; n <= i + 1; ++n)
                if (D[i][n - 1] != 0) D[j][n] += D[i][n - 1] * seg[i][j];
        }
    Rat total(0), sign(1);
    for (int n = 1; n <= L; ++n) {
        if (D[L][n] != 0) total += sign / Rat(n) * D[L][n];
        sign = -sign;
    }
    return total / Rat(L);
}

void bch_rec(const LieElement& a, const LieElement& b, const LieElement& value,
             std::vector<int>& word, int max_len, LieElement& out) {
    Rat c = word_coeff(word);
    if (c != 0) out += c * value;
    if ((int)word.size() >= max_len) return;
    for (int letter = 0; letter < 2; ++letter) {
        LieElement next = bracket(letter == 0 ? a : b, value);
        if (next.is_zero()) continue;
        word.insert(word.begin(), letter);
        bch_rec(a, b, next, word, max_len, out);
        word.erase(word.begin());
    }
}

}  // namespace

LieElement bch(const LieElement& a, const LieElement& b, int max_len) {
    if (!a.ring() || !b.ring() || *a.ring() != *b.ring())
        throw std::invalid_argument("Lie elements over different rings");
    const RingSpec& ring = *a.ring();
    for (const LieElement* e : {&a, &b})
        for (const auto& [k, c] : e->terms())
            if (k.deg.empty())
                throw std::domain_error("bch wants arguments of positive formal degree");
    int bound = ring.nilpotency_bound();
    if (max_len < 0 || max_len > bound) max_len = bound;
    LieElement out(a.ring());
    std::vector<int> word;
    for (int letter = 0; letter < 2; ++letter) {
        const LieElement& e = letter == 0 ? a : b;
        if (e.is_zero()) continue;
        word.assign(1, letter);
        bch_rec(a, b, e, word, max_len, out);
    }
    return out;
}

LieElement expand_t_to_u(const LieElement& e, RingPtr target) {
    if (e.ring()->mode != RingMode::RN || target->mode != RingMode::RtildeN)
        throw std::invalid_argument("expand_t_to_u: need R_N source and Rtilde_N target");
    LieElement r(target);
    for (const auto& [k, c] : e.terms())
        for (auto& [deg, f] : expand_mdeg(k.deg, *e.ring()))
            r.add(TermKey{k.z, deg}, LieCoef{f * c.A, f * c.d1, f * c.d2});
    return r;
}

LieElement collapse_u_to_t(const LieElement& e, RingPtr target) {
    if (e.ring()->mode != RingMode::RtildeN || target->mode != RingMode::RN)
        throw std::invalid_argument("collapse_u_to_t: need Rtilde_N source and R_N target");
    LieElement r(target);
    for (const auto& [k, c] : e.terms()) {
        auto [deg, f] = collapse_mdeg(k.deg, *e.ring());
        r.add(TermKey{k.z, deg}, LieCoef{f * c.A, f * c.d1, f * c.d2});
    }
    return r;
}

GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
    return {bch(g.log, h.log)};
}

GroupElement group_inv(const GroupElement& g) {
    return {-g.log};
}

Series derive(const LieElement& e, const Series& s) {
    const RingSpec& ring = *e.ring();
    Series r(s.ring());
    for (const auto& [ke, c] : e.terms())
        for (const auto& [ks, v] : s.terms()) {
            Poly w = LieElement::pair(ks.z, c);
            if (w.is_zero()) continue;
            auto deg = ring.mul(ke.deg, ks.deg);
            if (!deg) continue;
            r.add(TermKey{ke.z + ks.z, *deg}, w * v);
        }
    return r;
}

std::vector<Series> apply_lie(const LieElement& e, const std::vector<Series>& v) {
    const RingSpec& ring = *e.ring();
    int r = ring.rank;
    if ((int)v.size() != r) throw std::invalid_argument("vector size != ring rank");
    std::vector<Series> out(r, Series(v.empty() ? nullptr : v[0].ring()));
    for (int i = 0; i < r; ++i) out[i] = derive(e, v[i]);
    for (const auto& [ke, c] : e.terms()) {
        if (c.A.is_zero()) continue;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                const Poly& aij = c.A.at(i, j);
                if (aij.is_zero()) continue;
                for (const auto& [ks, val] : v[j].terms()) {
                    auto deg = ring.mul(ke.deg, ks.deg);
                    if (!deg) continue;
                    out[i].add(TermKey{ke.z + ks.z, *deg}, aij * val);
                }
            }
    }
    return out;
}

Series act_on_series(const GroupElement& g, const Series& s) {
    const RingSpec& ring = *g.log.ring();
    Series acc = s, cur = s;
    Rat inv_fact(1);
    for (int k = 1; k <= ring.nilpotency_bound(); ++k) {
        cur = derive(g.log, cur);
        if (cur.is_zero()) break;
        inv_fact /= Rat(k);
        acc += inv_fact * cur;
    }
    return acc;
}

std::vector<Series> act_on_series(const GroupElement& g, const std::vector<Series>& v) {
    const RingSpec& ring = *g.log.ring();
    std::vector<Series> acc = v, cur = v;
    Rat inv_fact(1);
    for (int k = 1; k <= ring.nilpotency_bound(); ++k) {
        cur = apply_lie(g.log, cur);
        bool zero = true;
        for (const auto& s : cur) zero = zero && s.is_zero();
        if (zero) break;
        inv_fact /= Rat(k);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += inv_fact * cur[i];
    }
    return acc;
}

std::string lie_str(const LieElement& e) {
    if (e.is_zero()) return "0\n";
    const RingSpec& ring = *e.ring();
    std::string out;
    for (const auto& [k, c] : e.terms()) {
        out += term_key_str(k, ring) + " : ";
        if (ring.rank > 0) out += "M=" + c.A.str(ring.symbols) + " ";
        out += "d=(" + c.d1.str(ring.symbols) + "," + c.d2.str(ring.symbols) + ")\n";
    }
    return out;
}

}  // namespace tvx
