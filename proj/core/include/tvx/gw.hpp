#pragma once

#include <functional>
#include <map>

#include "tvx/tropical.hpp"

namespace tvx {

/*
 * Tangency profile P over the n seed lines: P_j >= 0 is the contact order
 * along the direction m_j of line j.  The weight vector sum_j P_j m_j is
 * required nonzero and determines the outgoing direction l_P m_P.
 */
struct TangencyProfile {
    std::vector<int> P;

    friend bool operator==(const TangencyProfile&, const TangencyProfile&) = default;
    friend auto operator<=>(const TangencyProfile&, const TangencyProfile&) = default;

    LatticeVector weight(const std::vector<LatticeVector>& dirs) const {
        LatticeVector s{0, 0};
        for (std::size_t j = 0; j < P.size(); ++j) s = s + (std::int64_t)P[j] * dirs[j];
        return s;
    }
    int total() const {
        int t = 0;
        for (int p : P) t += p;
        return t;
    }
};

/*
 * k |- P: one integer partition per line, stored as multiplicities
 * k[j][l-1] = #(parts of size l of P_j).  w(k) is the multiset of weight
 * vectors {l m_j with multiplicity k_{jl}}.
 */
struct Partition {
    std::vector<std::vector<int>> k;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

    int s() const {
        int c = 0;
        for (auto& kj : k)
            for (int m : kj) c += m;
        return c;
    }
    /* Canonically sorted weight multiset. */
    std::vector<LatticeVector> w(const std::vector<LatticeVector>& dirs) const;
};

/* R_l = (-1)^{l-1} / l^2. */
inline Rat R_l(int l) { return Rat((l % 2) ? 1 : -1, (long long)l * l); }

/* All k |- P, canonically ordered. */
std::vector<Partition> enumerate_partitions(const TangencyProfile& P);

/* Canonical key for a weight multiset (sorted). */
using WeightVector = std::vector<LatticeVector>;

struct InvariantTable {
    std::map<std::vector<int>, Rat> by_profile;  // P -> N_{0,P}
    std::map<WeightVector, Rat> by_weight;       // w -> N_{0,w}
    std::vector<WeightVector> undetermined;      // classes the wall does not pin down
};

/* N_{0,w(k)} = N^trop_{w(k)} / prod_{j,l} l^{k_{jl}}. */
Rat trop_to_relative(const Rat& ntrop, const Partition& k);

/* prod_j prod_l (l^{k_jl} / k_jl!) R_l^{k_jl}, the degeneration weight of k. */
Rat degeneration_coefficient(const Partition& k);

/* N_{0,P} = sum_{k |- P} N_{0,w(k)} * degeneration_coefficient(k). */
Rat degenerate(const std::map<WeightVector, Rat>& relative, const TangencyProfile& P,
               const std::vector<LatticeVector>& dirs);

/*
 * The seed of the extraction theorems: line j carries
 * (1 + A_j t_j z^{m_j}, 1 + t_j z^{m_j}) with commuting 1x1 matrix symbols.
 * Lines 1..l1 have direction m1 and symbols A1.., lines l1+1..l1+l2 have
 * direction m2 and symbols Q1.. (with t-variables t1.. and s1..).
 */
struct GwSeed {
    RingPtr ring;
    std::vector<LatticeVector> dirs;
    std::vector<int> symbols;  // A_j symbol ids, aligned with lines

    StandardDiagram diagram() const;
};

GwSeed make_gw_seed(int l1, int l2, LatticeVector m1, LatticeVector m2, int N,
                    std::optional<int> total_cutoff = std::nullopt);

/*
 * The monomial vector system at a fixed target l_d m_d: for every profile P
 * with weight l_d m_d and every k |- P the vector e_k, aggregated per weight
 * class; rank, explicit dependency relations, pivot certificates, and the
 * designated extraction monomials where they apply.
 */
struct MonomialVectorSystem {
    SymbolTable symbols;  // A_i, Q_j, t_i, s_j as commuting generators
    std::vector<WeightVector> classes;
    std::vector<Poly> E;           // sum of e_k over the class
    std::vector<Poly> V;           // sum of lambda_k e_k over the class
    std::vector<int> class_sizes;  // number of k in each class
    int rank = 0;
    std::vector<std::pair<int, Mono>> pivots;        // class -> certifying monomial
    std::vector<std::map<int, Rat>> relations;       // sum_i c_i E_i = 0
    std::vector<std::pair<int, Mono>> designated;    // class -> extraction monomial
};

MonomialVectorSystem analyze_basis(int l1, int l2, LatticeVector target,
                                   LatticeVector m1 = {0, 1}, LatticeVector m2 = {1, 0});

/* Checks sum c_i E_i = 0 exactly (for verifying printed dependency claims). */
bool relation_holds(const MonomialVectorSystem& sys, const std::map<int, Rat>& combo);

/*
 * Reads an invariant table off the wall of a consistent symbol-mode diagram
 * in direction ray_dir: N_{0,P} from the scalar log, N_{0,w} by solving the
 * matrix log against the V_w system (solvable classes only; the rest are
 * reported as undetermined).
 */
InvariantTable extract_from_wall(const ScatteringDiagram& asym, const GwSeed& seed,
                                 LatticeVector ray_dir);

/*
 * The generating-series identity: the wall log of direction m_d assembled
 * purely from tropical counts.  Used to compare against the perturbation
 * pipeline output term by term.
 */
LieElement assemble_trop_log(const GwSeed& seed, LatticeVector m_d,
                             const std::function<Rat(const WeightVector&)>& ntrop);

/* assemble_trop_log with counts supplied by count_tropical (cached). */
LieElement assemble_trop_log(const GwSeed& seed, LatticeVector m_d, unsigned trop_seed = 1);

}  // namespace tvx
