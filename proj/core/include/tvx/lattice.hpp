#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tvx/rational.hpp"

namespace tvx {

/*
 * A point of the rank-2 lattice M ≅ Z^2.  Monomials are written z^m; the two
 * coordinates are the exponents of x = z^(1,0) and y = z^(0,1).  The pairing
 * <.,.> is the standard dot product and n(m) = rot90(m) spans m^perp, so that
 * <v, rot90(w)> = det(w, v).
 */
struct LatticeVector {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend LatticeVector operator+(LatticeVector u, LatticeVector v) { return {u.a + v.a, u.b + v.b}; }
    friend LatticeVector operator-(LatticeVector u, LatticeVector v) { return {u.a - v.a, u.b - v.b}; }
    friend LatticeVector operator*(std::int64_t k, LatticeVector v) { return {k * v.a, k * v.b}; }
    LatticeVector operator-() const { return {-a, -b}; }
    friend bool operator==(LatticeVector, LatticeVector) = default;
    friend auto operator<=>(LatticeVector, LatticeVector) = default;

    bool is_zero() const { return a == 0 && b == 0; }
};

inline std::int64_t dot(LatticeVector u, LatticeVector v) { return u.a * v.a + u.b * v.b; }

/* det(u, v) = u_1 v_2 - u_2 v_1; |wedge(u,v)| is the index of Zu + Zv. */
inline std::int64_t wedge(LatticeVector u, LatticeVector v) { return u.a * v.b - u.b * v.a; }

/* Positively oriented normal: <m', rot90(m)> = det(m, m'). */
inline LatticeVector rot90(LatticeVector v) { return {-v.b, v.a}; }

/* Divisibility index of a nonzero vector: m = index * primitive. */
inline std::int64_t index_of(LatticeVector v) {
    if (v.is_zero()) throw std::domain_error("index of zero vector");
    return std::gcd(std::abs(v.a), std::abs(v.b));
}

inline LatticeVector primitive_part(LatticeVector v) {
    std::int64_t g = index_of(v);
    return {v.a / g, v.b / g};
}

inline std::string to_string(LatticeVector v) {
    return "(" + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
}

/* An exact point of M_R = R^2, used for wall base points and curve vertices. */
struct QPoint {
    Rat x{0};
    Rat y{0};

    friend QPoint operator+(const QPoint& p, const QPoint& q) { return {p.x + q.x, p.y + q.y}; }
    friend QPoint operator-(const QPoint& p, const QPoint& q) { return {p.x - q.x, p.y - q.y}; }
    friend bool operator==(const QPoint&, const QPoint&) = default;
    friend bool operator<(const QPoint& p, const QPoint& q) {
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    }
};

inline QPoint scale(const Rat& c, LatticeVector v) { return {c * v.a, c * v.b}; }
inline Rat qdot(const QPoint& p, LatticeVector v) { return p.x * v.a + p.y * v.b; }
inline Rat qwedge(const QPoint& p, const QPoint& q) { return p.x * q.y - p.y * q.x; }

inline std::string to_string(const QPoint& p) { return "(" + p.x.str() + "," + p.y.str() + ")"; }

}  // namespace tvx
