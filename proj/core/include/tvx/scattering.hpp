#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tvx/lie.hpp"

namespace tvx {

enum class WallKind { Line, Ray };

/*
 * A wall (d, theta): support is base + R*dir (line) or base + R>=0*dir (ray)
 * with dir the primitive monomial direction m0, and log theta a wall-type Lie
 * element supported on z^{l m0}, l >= 1, with derivation direction along
 * n0 = rot90(m0).  index_set / round / parents carry the bookkeeping of the
 * inductive perturbed construction and stay empty for plain diagrams.
 */
struct Wall {
    WallKind kind = WallKind::Line;
    QPoint base;
    LatticeVector dir;
    LieElement log;

    std::set<std::pair<int, int>> index_set;
    int round = 0;
    std::optional<std::pair<std::size_t, std::size_t>> parents;

    LatticeVector normal() const { return rot90(dir); }
    bool contains(const QPoint& p) const;
};

/* Throws unless the support/function constraints above hold. */
void validate_wall(const Wall& w);

/* Builds log theta from the function pair (P, f), both with constant term 1. */
LieElement wall_log(LatticeVector dir, const MatSeries& P, const Series& f);
/* Scalar-only wall, P = 1. */
LieElement wall_log(LatticeVector dir, const Series& f);

/* Recovers the function pair from a wall-type log. */
struct WallFunctions {
    MatSeries P;
    Series f;
};
WallFunctions wall_functions(const Wall& w);

struct ScatteringDiagram {
    RingPtr ring;
    std::vector<Wall> walls;

    explicit ScatteringDiagram(RingPtr r = nullptr) : ring(std::move(r)) {}
    void add(Wall w) {
        validate_wall(w);
        walls.push_back(std::move(w));
    }
};

/*
 * Composition convention for the path-ordered product.  Both appear in the
 * wall-crossing literature; they differ in whether the automorphism of a
 * later crossing composes on the left or on the right of the accumulated
 * product, and the consistent completion of a seed depends on the choice.
 */
enum class LoopOrder { LaterOnLeft, LaterOnRight };

/*
 * Path-ordered product around a small anticlockwise loop centred at p,
 * starting just below the positive x-direction.  Each wall through p is
 * crossed once per ray it emits from p; a crossing along direction v
 * contributes theta if <v, m0> > 0 and theta^{-1} otherwise.  With
 * LaterOnLeft the result acts as (last crossing) o ... o (first).
 */
GroupElement path_ordered_product(const ScatteringDiagram& d, const QPoint& p,
                                  LoopOrder order = LoopOrder::LaterOnLeft);

struct ConsistencyReport {
    bool consistent = true;
    std::vector<std::pair<QPoint, LieElement>> defects;  // joints with log != 0
};

/* Checks log Theta = 0 at every joint (wall intersections and ray bases). */
ConsistencyReport check_consistency(const ScatteringDiagram& d,
                                    LoopOrder order = LoopOrder::LaterOnLeft);

/*
 * Kontsevich-Soibelman completion of a diagram whose walls all pass through
 * the origin: repeatedly absorb the lowest-degree part of the loop defect
 * into new outgoing rays, one per primitive monomial direction.  Returns the
 * consistent diagram; initial walls keep their positions in `walls`.
 */
ScatteringDiagram complete_ks(const ScatteringDiagram& d,
                              LoopOrder order = LoopOrder::LaterOnLeft);

/* Angle order of nonzero directions along the loop (strict weak ordering). */
bool angle_less(LatticeVector v, LatticeVector w);

}  // namespace tvx
