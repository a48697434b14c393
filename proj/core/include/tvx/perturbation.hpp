#pragma once

#include "tvx/scattering.hpp"

namespace tvx {

/*
 * Initial data: n lines through the origin, line i with primitive direction
 * m_i and log theta_i over R_N involving only t_i and monomials z^{l m_i}.
 */
struct StandardDiagram {
    RingPtr ring;  // mode RN, ring->n == lines.size()
    std::vector<Wall> lines;
};

/* Seed line (1 + A t_i z^m, 1 + a t_i z^m) for the i-th slot (1-based). */
Wall seed_line(const RingPtr& ring, int i, LatticeVector m, const Mat& A, const Rat& a);
/* Scalar-only seed line (1, 1 + a t_i z^m). */
Wall seed_line(const RingPtr& ring, int i, LatticeVector m, const Rat& a);

/* Raised when a drawn perturbation is non-generic (concurrent walls). */
struct GenericityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PerturbedDiagram {
    RingPtr ring;     // mode RtildeN
    RingPtr rn_ring;  // the R_N ring of the seed, kept for collapsing back
    std::vector<Wall> walls;
    unsigned seed = 0;
    int rounds = 0;

    std::vector<const Wall*> rays_of_round(int r) const {
        std::vector<const Wall*> out;
        for (const Wall& w : walls)
            if (w.kind == WallKind::Ray && w.round == r) out.push_back(&w);
        return out;
    }
};

/*
 * Splits each line into factor lines over Rtilde_N: the term of log theta_i
 * at t_i^j z^{l m_i} spawns one line per j-element subset J of {1..N}, with
 * log = j! u_{iJ} times that coefficient, translated to a pseudo-random
 * rational offset drawn from `seed`.  Throws GenericityViolation if the drawn
 * offsets collide (caller retries with another seed).
 */
PerturbedDiagram deform(const StandardDiagram& d, unsigned seed);

/*
 * Scattering of two transversal walls carrying one log term each: returns
 * the outgoing ray at the intersection point, or nullopt when the walls
 * commute.  The ray's log is minus the loop defect around the intersection.
 */
std::optional<Wall> local_scatter(const Wall& a, const Wall& b,
                                  std::size_t ia = (std::size_t)-1,
                                  std::size_t ib = (std::size_t)-1);

/* Same output computed from the closed product formula, for cross-checking. */
std::optional<Wall> local_scatter_closed_form(const Wall& a, const Wall& b);

/*
 * The inductive construction: deform with the given seed, then scatter fresh
 * pairs with disjoint index sets round by round until nothing new appears.
 * Non-generic draws are retried with derived seeds (bounded).
 */
PerturbedDiagram complete_perturbed(const StandardDiagram& d, unsigned seed = 1,
                                    int max_attempts = 16);

/*
 * Asymptotic diagram: every wall translated to the origin, factor lines
 * regrouped by seed line and rays by direction, u collapsed back to t.
 * Requires (and checks) that merged logs commute.
 */
ScatteringDiagram asymptotic(const PerturbedDiagram& pd);

}  // namespace tvx
