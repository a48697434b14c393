#include "tvx/tropical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <random>

namespace tvx {

Rat multiplicity(const TropicalCurve& h) {
    Rat mult(1);
    for (int v = 0; v < (int)h.vertices.size(); ++v) {
        std::vector<LatticeVector> out;
        for (const auto& e : h.edges) {
            if (e.v0 == v) out.push_back(e.wvec);
            if (e.v1 == v) out.push_back(-e.wvec);
        }
        if (out.size() != 3) throw std::invalid_argument("curve has a non-trivalent vertex");
        if (!(out[0] + out[1] + out[2]).is_zero())
            throw std::invalid_argument("curve is not balanced");
        std::int64_t w = wedge(out[0], out[1]);
        mult *= Rat(w < 0 ? -w : w);
    }
    return mult;
}

TropicalCurve curve_from_ray(const PerturbedDiagram& pd, std::size_t ray_index) {
    const Wall& root = pd.walls.at(ray_index);
    if (root.kind != WallKind::Ray || !root.parents)
        throw std::invalid_argument("curve_from_ray wants a scattered ray");
    TropicalCurve h;
    std::map<std::size_t, int> vertex_of;  // ray wall index -> vertex id

    // vertices: bases of the ray and its ray ancestors
    std::vector<std::size_t> stack = {ray_index};
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        const Wall& w = pd.walls[i];
        if (w.kind != WallKind::Ray) continue;
        if (vertex_of.count(i)) throw std::invalid_argument("genealogy is not a tree");
        vertex_of[i] = (int)h.vertices.size();
        h.vertices.push_back(w.base);
        if (!w.parents) throw std::invalid_argument("ancestor ray without parents");
        stack.push_back(w.parents->first);
        stack.push_back(w.parents->second);
    }

    auto weight_vec = [&pd](std::size_t i) { return pd.walls[i].log.terms().begin()->first.z; };

    // the unbounded out-edge of the root
    h.edges.push_back({vertex_of[ray_index], -1, weight_vec(ray_index)});
    // one edge per ancestor: rays give bounded edges into their child's
    // vertex, leaf lines give unbounded ends in direction -m
    for (auto& [i, v] : vertex_of) {
        const Wall& w = pd.walls[i];
        for (std::size_t p : {w.parents->first, w.parents->second}) {
            if (pd.walls[p].kind == WallKind::Ray)
                h.edges.push_back({vertex_of.at(p), v, weight_vec(p)});
            else
                h.edges.push_back({v, -1, -weight_vec(p)});
        }
    }
    return h;
}

TropicalCount count_tropical(const CurveType& type, unsigned seed) {
    int s = (int)type.ends.size();
    if (s < 2) throw std::invalid_argument("need at least two ends");
    if (type.out().is_zero()) throw std::invalid_argument("ends sum to zero");
    RingSpec spec;
    spec.n = s;
    spec.N = 1;
    spec.mode = RingMode::RN;
    spec.rank = 0;
    RingPtr ring = make_ring(spec);
    StandardDiagram sd{ring, {}};
    for (int r = 1; r <= s; ++r) {
        // the line of end r: function 1 + t_r z^{w_r} (t_r^2 = 0 in R_1)
        Wall w;
        w.kind = WallKind::Line;
        w.dir = primitive_part(type.ends[r - 1]);
        LatticeVector n0 = rot90(w.dir);
        LieElement lg(ring);
        lg.add(TermKey{type.ends[r - 1], MultiDegree::t_power(r, 1)},
               LieCoef{Mat::zero(0), Poly{Rat(n0.a)}, Poly{Rat(n0.b)}});
        w.log = std::move(lg);
        sd.lines.push_back(std::move(w));
    }
    TropicalCount out;
    out.diagram = complete_perturbed(sd, seed);
    const PerturbedDiagram& pd = out.diagram;
    std::set<std::pair<int, int>> full;
    for (int r = 1; r <= s; ++r) full.insert({r, 1});
    for (std::size_t i = 0; i < pd.walls.size(); ++i) {
        const Wall& w = pd.walls[i];
        if (w.kind != WallKind::Ray || w.index_set != full) continue;
        TropicalCurve h = curve_from_ray(pd, i);
        Rat mult = multiplicity(h);
        // cross-check against the scalar coefficient of the wall function:
        // c_d = l_d Mult(h) prod_r (1/l_r)
        const auto& [key, coef] = *w.log.terms().begin();
        LatticeVector n_out = rot90(primitive_part(key.z));
        Poly cpoly = n_out.a != 0 ? (Rat(1) / Rat(n_out.a)) * coef.d1 : (Rat(1) / Rat(n_out.b)) * coef.d2;
        Rat check = cpoly.constant_value() / Rat(index_of(key.z));
        for (auto wr : type.ends) check *= Rat(index_of(wr));
        if (check != mult)
            throw std::runtime_error("wall coefficient disagrees with curve multiplicity");
        out.total += mult;
        out.curves.push_back(std::move(h));
    }
    return out;
}

namespace {

struct OracleNode {
    QPoint anchor;
    LatticeVector W{0, 0};
    bool has_vertex = false;
    int vertex = -1;
    Rat mult{1};
};

struct TreeBuilder {
    const std::vector<LatticeVector>& ends;
    const std::vector<QPoint>& offsets;
    TropicalCurve curve;
    bool ok = true;

    OracleNode eval_leaf(int r) {
        OracleNode n;
        n.anchor = offsets[r];
        n.W = ends[r];
        return n;
    }

    OracleNode merge(const OracleNode& c1, const OracleNode& c2) {
        OracleNode n;
        std::int64_t det = wedge(c1.W, c2.W);
        if (det == 0) { ok = false; return n; }
        QPoint rel = c2.anchor - c1.anchor;
        Rat s = (rel.x * c2.W.b - rel.y * c2.W.a) / Rat(det);
        QPoint v{c1.anchor.x + s * c1.W.a, c1.anchor.y + s * c1.W.b};
        // a bounded edge must run forward from the child vertex to v
        for (const OracleNode* c : {&c1, &c2})
            if (c->has_vertex && qdot(v - c->anchor, c->W) <= 0) { ok = false; return n; }
        n.W = c1.W + c2.W;
        if (n.W.is_zero()) { ok = false; return n; }
        n.anchor = v;
        n.has_vertex = true;
        n.vertex = (int)curve.vertices.size();
        curve.vertices.push_back(v);
        for (const OracleNode* c : {&c1, &c2}) {
            if (c->has_vertex) curve.edges.push_back({c->vertex, n.vertex, c->W});
            else curve.edges.push_back({n.vertex, -1, -c->W});
        }
        std::int64_t w = wedge(c1.W, c2.W);
        n.mult = c1.mult * c2.mult * Rat(w < 0 ? -w : w);
        return n;
    }
};

/* Unordered binary merge trees on {0..s-1}: lowest leaf stays in the first part. */
struct Tree {
    int leaf = -1;
    std::unique_ptr<Tree> l, r;
};

void enumerate_trees(std::vector<int> leaves, std::vector<std::unique_ptr<Tree>>& out) {
    if (leaves.size() == 1) {
        auto t = std::make_unique<Tree>();
        t->leaf = leaves[0];
        out.push_back(std::move(t));
        return;
    }
    int low = leaves[0];
    std::vector<int> rest(leaves.begin() + 1, leaves.end());
    int m = (int)rest.size();
    for (int mask = 0; mask < (1 << m) - 1; ++mask) {
        std::vector<int> s1 = {low}, s2;
        for (int b = 0; b < m; ++b) (mask >> b & 1 ? s1 : s2).push_back(rest[b]);
        std::vector<std::unique_ptr<Tree>> left, right;
        enumerate_trees(s1, left);
        enumerate_trees(s2, right);
        // trees are tiny; deep-copy when a factor is reused
        std::function<std::unique_ptr<Tree>(const Tree&)> clone = [&clone](const Tree& src) {
            auto c = std::make_unique<Tree>();
            c->leaf = src.leaf;
            if (src.l) c->l = clone(*src.l);
            if (src.r) c->r = clone(*src.r);
            return c;
        };
        for (auto& tl : left)
            for (auto& tr : right) {
                auto t = std::make_unique<Tree>();
                t->l = clone(*tl);
                t->r = clone(*tr);
                out.push_back(std::move(t));
            }
    }
}

OracleNode eval_tree(const Tree& t, TreeBuilder& b) {
    if (t.leaf >= 0) return b.eval_leaf(t.leaf);
    OracleNode c1 = eval_tree(*t.l, b);
    if (!b.ok) return c1;
    OracleNode c2 = eval_tree(*t.r, b);
    if (!b.ok) return c2;
    return b.merge(c1, c2);
}

}  // namespace

std::vector<TropicalCurve> oracle_enumerate(const CurveType& type, unsigned seed) {
    int s = (int)type.ends.size();
    if (s < 2 || s > 6) throw std::invalid_argument("oracle handles 2 <= s <= 6 ends");
    if (type.out().is_zero()) throw std::invalid_argument("ends sum to zero");
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        long long k = (long long)(rng() % 2000003ull) - 1000001;
        return Rat(k, 1000003);
    };
    std::vector<QPoint> offsets;
    for (auto w : type.ends) {
        LatticeVector n0 = rot90(primitive_part(w));
        offsets.push_back(scale(draw() / Rat(dot(n0, n0)), n0));
    }
    std::vector<int> leaves(s);
    for (int i = 0; i < s; ++i) leaves[i] = i;
    std::vector<std::unique_ptr<Tree>> trees;
    enumerate_trees(leaves, trees);

    std::vector<TropicalCurve> out;
    for (const auto& t : trees) {
        TreeBuilder b{type.ends, offsets, {}, true};
        OracleNode root = eval_tree(*t, b);
        if (!b.ok) continue;
        b.curve.edges.push_back({root.vertex, -1, root.W});
        out.push_back(std::move(b.curve));
    }
    return out;
}

}  // namespace tvx
