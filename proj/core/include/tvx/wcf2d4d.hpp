#pragma once

// Wall-crossing in the 2d-4d setting: a groupoid algebra C[G][[t]] acted on by
// S- and K-type automorphisms, the Lie ring generated by their logarithms, and
// the translation map into the extended tropical vertex algebra.  The charge
// lattice Gamma is identified with the rank-2 lattice of lattice.hpp; morphism
// spaces Gamma_ij are Gamma-torsors trivialised by declared base points e_ij.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tvx/lattice.hpp"
#include "tvx/lie.hpp"
#include "tvx/rational.hpp"
#include "tvx/ring.hpp"

namespace tvx {

// Address of a basis element X_a of the groupoid algebra.  Central elements
// (the copy of Gamma) use i = j = -1 and store gamma in m; a morphism in
// Gamma_ij stores the torsor coordinate m(gamma_ij) = gamma_ij - e_ij.
// Object indices run over 0..V-1, with the extra base object o stored as
// index V (so Gamma_i = Gamma_{i,o}).
struct GAddress {
    int i = -1;
    int j = -1;
    LatticeVector m{0, 0};

    bool central() const { return i < 0; }

    friend bool operator==(const GAddress&, const GAddress&) = default;
    friend auto operator<=>(const GAddress&, const GAddress&) = default;
};

GAddress central_address(LatticeVector gamma);
GAddress morphism_address(int i, int j, LatticeVector m);
std::string to_string(const GAddress& a);

// Static data of a BPS groupoid configuration.
struct GroupoidData {
    int num_objects = 0;  // vacua 0..num_objects-1; base object o = num_objects

    // Dirac pairing <x,y>_D = dirac_coef * wedge(x,y) (every antisymmetric
    // integer pairing on the rank-2 lattice has this form).
    std::int64_t dirac_coef = 1;

    // Omega: Gamma -> Z homomorphism, Omega(g) = omega_hom.a*g.a + omega_hom.b*g.b.
    LatticeVector omega_hom{0, 0};

    // Torsor base points e_ij (default 0, e_ii forced to 0).
    std::map<std::pair<int, int>, LatticeVector> base_points;

    // Soliton degeneracies mu(gamma_ij), looked up by address (default 0).
    std::map<GAddress, long long> mu;

    // Optional central charge phases, used only for presentation ordering.
    std::map<GAddress, Rat> angles;

    // Optional user extension of the twist off Gamma x Gamma (must return
    // +-1).  The default extends the central twist bilinearly through the
    // torsor values, which satisfies the cocycle and symmetry conditions.
    std::function<int(const GAddress&, const GAddress&)> custom_twist;

    // Optional override of omega.  Setting this abandons the homomorphism
    // hypothesis, so upsilon() refuses to translate.
    std::function<long long(LatticeVector, const GAddress&)> custom_omega;

    int object_o() const { return num_objects; }
    LatticeVector e(int i, int j) const;
    // Lattice value of an address: gamma itself if central, e_ij + m otherwise.
    LatticeVector value(const GAddress& a) const;
    long long Omega(LatticeVector gamma) const;
    // omega(gamma, a) = Omega(gamma) * <value(a), n_gamma>.
    long long omega(LatticeVector gamma, const GAddress& a) const;
    long long mu_of(const GAddress& a) const;
};

// Groupoid composition a + b (sum of charges where defined).  Central elements
// compose with everything; morphisms compose when the inner objects match.
// Base-point discrepancies e_ij + e_jl - e_il are folded into the torsor
// coordinate so that values add on the nose.
std::optional<GAddress> compose(const GroupoidData& gd, const GAddress& a, const GAddress& b);

// Twist sigma(a,b) in {+1,-1}; throws std::domain_error when a+b is undefined.
int twist(const GroupoidData& gd, const GAddress& a, const GAddress& b);

// Checks the cocycle condition sigma(a,b+c)sigma(b,c) = sigma(a,b)sigma(a+b,c)
// and the symmetry condition on all triples/pairs from `sample` whose sums are
// defined.  Returns false (with an explanation in *why) on the first failure.
bool check_twist_cocycle(const GroupoidData& gd, const std::vector<GAddress>& sample,
                         std::string* why = nullptr);

// True when the declared base points satisfy e_ij + e_jl = e_il for all
// objects, i.e. when m(.) is additive under composition.
bool additive_base_points(const GroupoidData& gd);

// Element of C[G][[t]] / t^{order+1}: finite sum of c * t^p * X_a.
struct GroupoidElement {
    int order = 0;
    std::map<std::pair<GAddress, int>, Rat> terms;  // (address, t-power) -> coefficient

    static GroupoidElement zero(int order);
    static GroupoidElement one(int order);
    static GroupoidElement var(const GAddress& a, int order, int tpow = 0, const Rat& c = Rat(1));

    bool is_zero() const { return terms.empty(); }
    void add(const GAddress& a, int tpow, const Rat& c);

    GroupoidElement& operator+=(const GroupoidElement& other);
    GroupoidElement& operator-=(const GroupoidElement& other);
    friend GroupoidElement operator+(GroupoidElement a, const GroupoidElement& b) { return a += b; }
    friend GroupoidElement operator-(GroupoidElement a, const GroupoidElement& b) { return a -= b; }
    friend GroupoidElement operator*(const Rat& c, GroupoidElement a);
    friend bool operator==(const GroupoidElement&, const GroupoidElement&) = default;
};

// Twisted product radically truncated at the common order.
GroupoidElement ge_mul(const GroupoidData& gd, const GroupoidElement& a, const GroupoidElement& b);
std::string ge_str(const GroupoidElement& x);

// S-type automorphism: X |-> (1 - mu t^w X_gij) X (1 + mu t^w X_gij).
GroupoidElement apply_S(const GroupoidData& gd, const GAddress& gij, long long mu,
                        const GroupoidElement& x, int tweight = 1);
GroupoidElement apply_S(const GroupoidData& gd, const GAddress& gij, const GroupoidElement& x);

// K-type automorphism: X_a |-> (1 - t^w X_gamma)^{-omega(gamma,a)} X_a.
GroupoidElement apply_K(const GroupoidData& gd, LatticeVector gamma, const GroupoidElement& x,
                        int tweight = 1);

// Element of the Lie ring L_Gamma: finite sum c * t^p * X_g * d_a, where d_a is
// ad_{X_a} for a morphism address and omega(gamma,.)X_gamma for a central one.
struct LieRingElement {
    int order = 0;
    // (coefficient charge gamma, t-power, generator address) -> c
    std::map<std::tuple<LatticeVector, int, GAddress>, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    void add(LatticeVector gamma, int tpow, const GAddress& d, const Rat& c);

    LieRingElement& operator+=(const LieRingElement& other);
    LieRingElement& operator-=(const LieRingElement& other);
    friend LieRingElement operator+(LieRingElement a, const LieRingElement& b) { return a += b; }
    friend LieRingElement operator-(LieRingElement a, const LieRingElement& b) { return a -= b; }
    friend LieRingElement operator*(const Rat& c, LieRingElement a);
    friend bool operator==(const LieRingElement&, const LieRingElement&) = default;
};

std::string lr_str(const LieRingElement& x);

// Logarithm generators: s_{gij} = -mu(gij) t^w d_{gij} and
// k_gamma = sum_{l>=1} (1/l) t^{lw} X_{(l-1)gamma} d_gamma.
LieRingElement generator_S(const GroupoidData& gd, const GAddress& gij, long long mu, int order,
                           int tweight = 1);
LieRingElement generator_K(const GroupoidData& gd, LatticeVector gamma, int order, int tweight = 1);

// Derivation action of a Lie ring element on the groupoid algebra, and its
// exponential (well-defined because every term carries a positive t-power).
GroupoidElement lr_apply(const GroupoidData& gd, const LieRingElement& e, const GroupoidElement& x);
GroupoidElement lr_exp_apply(const GroupoidData& gd, const LieRingElement& e,
                             const GroupoidElement& x);

// Closed-form bracket on L_Gamma (module coefficients twisted by sigma; terms
// whose generator lands in the centre are dropped since ad there vanishes).
LieRingElement lr_bracket(const GroupoidData& gd, const LieRingElement& a, const LieRingElement& b);

// Ring of the matrix-extended vertex algebra matching a groupoid truncation:
// one deformation variable t of nilpotency `order`, matrix rank |V|+1.
RingPtr make_wcf_ring(const GroupoidData& gd, int order);

// Translation into the extended tropical vertex Lie algebra:
//   X_g d_{gij}   |-> w^g (E_ij w^{m(gij)}, 0)
//   X_g d_gamma   |-> w^g (0, Omega(gamma) w^gamma d_{n_gamma})
// Throws std::invalid_argument if custom_omega is set (hypothesis broken) or
// the ring rank cannot host the object indices.
LieElement upsilon(const GroupoidData& gd, const LieRingElement& e, const RingPtr& ring);

// One factor of a wall-crossing word.
struct WcfFactor {
    enum class Kind { S, K } kind = Kind::S;
    GAddress a;           // S: morphism address; K: central charge address
    long long mu = 0;     // S only
    int tweight = 1;      // t-exponent carried by this factor's variable

    friend bool operator==(const WcfFactor&, const WcfFactor&) = default;
};

WcfFactor s_factor(const GAddress& gij, long long mu, int tweight = 1);
WcfFactor k_factor(LatticeVector gamma, int tweight = 1);

// Applies a word as a composition, rightmost factor acting first.
GroupoidElement apply_word(const GroupoidData& gd, const std::vector<WcfFactor>& word,
                           const GroupoidElement& x);

struct WcfReport {
    bool equal = true;
    int first_diff_order = -1;     // lowest t-power of any defect, -1 if equal
    std::string detail;            // human-readable defect / round-trip notes
    bool scattering_checked = false;
    bool scattering_consistent = false;
};

// Verifies lhs = rhs as automorphisms of C[G][[t]]/t^{order+1} by comparing
// actions on a generating family (central basis, torsor generators, and every
// address appearing in the words).  When the lhs factors embed in the rhs, it
// also re-derives the rhs-only factors through upsilon + scattering completion
// and records the outcome in scattering_checked/scattering_consistent.
WcfReport verify_wcf(const GroupoidData& gd, const std::vector<WcfFactor>& lhs,
                     const std::vector<WcfFactor>& rhs, int order);

}  // namespace tvx
