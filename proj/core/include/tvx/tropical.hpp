#pragma once

#include "tvx/perturbation.hpp"

namespace tvx {

/*
 * Degree data of a rational tropical curve in R^2: unbounded ends with weight
 * vectors w_r = l_r m_r (m_r primitive, incoming direction -m_r), each
 * constrained to lie on a generic translate of R m_r.  The out direction is
 * determined by balancing: w_out = sum_r w_r.
 */
struct CurveType {
    std::vector<LatticeVector> ends;
    LatticeVector out() const {
        LatticeVector s{0, 0};
        for (auto w : ends) s = s + w;
        return s;
    }
};

/*
 * A realized trivalent rational curve: internal vertices with positions, and
 * edges carrying weight vectors.  Bounded edges point v0 -> v1; unbounded
 * edges have v1 = -1 and point out of v0.
 */
struct TropicalCurve {
    struct Edge {
        int v0 = -1, v1 = -1;
        LatticeVector wvec;  // weight * primitive direction along v0 -> v1
    };
    std::vector<QPoint> vertices;
    std::vector<Edge> edges;
};

/*
 * Mult(h) = product over trivalent vertices of |w1 wedge w2| for two of the
 * incident weight vectors.  Checks balancing and trivalence along the way.
 */
Rat multiplicity(const TropicalCurve& h);

/*
 * Reads off the curve dual to a ray of a completed perturbed diagram: the
 * genealogy of the ray gives the vertices (base points of ancestor rays),
 * the ancestor rays give the edges, and the leaf factor lines the ends.
 */
TropicalCurve curve_from_ray(const PerturbedDiagram& pd, std::size_t ray_index);

struct TropicalCount {
    Rat total{0};
    std::vector<TropicalCurve> curves;
    PerturbedDiagram diagram;
};

/*
 * N^trop_w via the scattering correspondence: one u-line per end, complete
 * the perturbed diagram, and sum Mult over the rays whose index set is full.
 * Cross-checks each ray multiplicity against the scalar wall coefficient.
 */
TropicalCount count_tropical(const CurveType& type, unsigned seed = 1);

/*
 * Independent oracle: enumerates the (2s-3)!! combinatorial merge trees on
 * the ends, realizes each one bottom-up from generic offsets, and keeps the
 * realizable ones.  Only intended for small s.
 */
std::vector<TropicalCurve> oracle_enumerate(const CurveType& type, unsigned seed = 1);

}  // namespace tvx
