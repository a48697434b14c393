#include "tvx/gw.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tvx {

namespace {

/* Integer partitions of p as multiplicity vectors, trailing zeros trimmed. */
std::vector<std::vector<int>> partitions_of(int p) {
    std::vector<std::vector<int>> out;
    if (p == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> mult(p, 0);
    std::function<void(int, int)> rec = [&](int r, int maxp) {
        if (r == 0) {
            auto k = mult;
            while (!k.empty() && k.back() == 0) k.pop_back();
            out.push_back(std::move(k));
            return;
        }
        for (int l = std::min(r, maxp); l >= 1; --l) {
            ++mult[l - 1];
            rec(r - l, l);
            --mult[l - 1];
        }
    };
    rec(p, p);
    return out;
}

Rat rat_pow(const Rat& base, int e) {
    Rat r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

/* prod_{j,l} ((-1)^{l-1}/l)^{k_jl} / k_jl!, the relative-invariant weight. */
Rat lambda_rel(const Partition& k) {
    Rat lambda(1);
    for (const auto& kj : k.k)
        for (std::size_t l = 1; l <= kj.size(); ++l) {
            int e = kj[l - 1];
            if (!e) continue;
            lambda *= rat_pow(Rat((l % 2) ? 1 : -1, (long long)l), e) / factorial(e);
        }
    return lambda;
}

/* prod_{j,l} ((-1)^{l-1}/l^2)^{k_jl} / k_jl!, the tropical-count weight. */
Rat mu_trop(const Partition& k) {
    Rat mu(1);
    for (const auto& kj : k.k)
        for (std::size_t l = 1; l <= kj.size(); ++l) {
            int e = kj[l - 1];
            if (!e) continue;
            mu *= rat_pow(Rat((l % 2) ? 1 : -1, (long long)(l * l)), e) / factorial(e);
        }
    return mu;
}

/* A-polynomial sum_{j,l} l k_jl X_j^l of a partition, over the given symbols. */
Poly a_poly(const Partition& k, const std::vector<int>& symbols) {
    Poly p;
    for (std::size_t j = 0; j < k.k.size(); ++j)
        for (std::size_t l = 1; l <= k.k[j].size(); ++l) {
            int e = k.k[j][l - 1];
            if (!e) continue;
            p += Rat((long long)l * e) * Poly::symbol(symbols[j], (int)l);
        }
    return p;
}

void compositions_rec(int total, int parts, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if ((int)cur.size() == parts - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions_rec(total - v, parts, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur;
    compositions_rec(total, parts, cur, out);
    return out;
}

}  // namespace

std::vector<LatticeVector> Partition::w(const std::vector<LatticeVector>& dirs) const {
    std::vector<LatticeVector> out;
    for (std::size_t j = 0; j < k.size(); ++j)
        for (std::size_t l = 1; l <= k[j].size(); ++l)
            for (int c = 0; c < k[j][l - 1]; ++c) out.push_back((std::int64_t)l * dirs.at(j));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Partition> enumerate_partitions(const TangencyProfile& P) {
    std::vector<std::vector<std::vector<int>>> per_line;
    for (int p : P.P) {
        if (p < 0) throw std::invalid_argument("enumerate_partitions: negative tangency");
        per_line.push_back(partitions_of(p));
    }
    std::vector<Partition> out;
    std::vector<std::size_t> idx(P.P.size(), 0);
    while (true) {
        Partition k;
        for (std::size_t j = 0; j < per_line.size(); ++j) k.k.push_back(per_line[j][idx[j]]);
        out.push_back(std::move(k));
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == per_line[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rat trop_to_relative(const Rat& ntrop, const Partition& k) {
    Rat den(1);
    for (const auto& kj : k.k)
        for (std::size_t l = 1; l <= kj.size(); ++l)
            den *= rat_pow(Rat((long long)l), kj[l - 1]);
    return ntrop / den;
}

Rat degeneration_coefficient(const Partition& k) {
    Rat c(1);
    for (const auto& kj : k.k)
        for (std::size_t l = 1; l <= kj.size(); ++l) {
            int e = kj[l - 1];
            if (!e) continue;
            c *= rat_pow(Rat((long long)l), e) / factorial(e) * rat_pow(R_l((int)l), e);
        }
    return c;
}

Rat degenerate(const std::map<WeightVector, Rat>& relative, const TangencyProfile& P,
               const std::vector<LatticeVector>& dirs) {
    Rat total(0);
    for (const Partition& k : enumerate_partitions(P)) {
        auto w = k.w(dirs);
        auto it = relative.find(w);
        if (it == relative.end()) {
            std::ostringstream os;
            os << "degenerate: missing relative invariant for weight class (";
            for (auto v : w) os << " " << to_string(v);
            os << " )";
            throw std::invalid_argument(os.str());
        }
        total += it->second * degeneration_coefficient(k);
    }
    return total;
}

StandardDiagram GwSeed::diagram() const {
    StandardDiagram d{ring, {}};
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        Mat A = Mat::elementary(1, 0, 0, Poly::symbol(symbols.at(j)));
        d.lines.push_back(seed_line(ring, (int)j + 1, dirs[j], A, Rat(1)));
    }
    return d;
}

GwSeed make_gw_seed(int l1, int l2, LatticeVector m1, LatticeVector m2, int N,
                    std::optional<int> total_cutoff) {
    if (l1 < 1 || l2 < 0 || N < 1) throw std::invalid_argument("make_gw_seed: bad sizes");
    if (m1.is_zero() || index_of(m1) != 1)
        throw std::invalid_argument("make_gw_seed: m1 must be primitive");
    if (l2 > 0) {
        if (m2.is_zero() || index_of(m2) != 1)
            throw std::invalid_argument("make_gw_seed: m2 must be primitive");
        if (wedge(m1, m2) == 0)
            throw std::invalid_argument("make_gw_seed: directions must be independent");
    }
    RingSpec rs;
    rs.n = l1 + l2;
    rs.N = N;
    rs.mode = RingMode::RN;
    rs.rank = 1;
    rs.total_cutoff = total_cutoff;
    GwSeed seed;
    for (int i = 1; i <= l1; ++i) {
        rs.t_names.push_back("t" + std::to_string(i));
        seed.symbols.push_back(rs.symbols.intern("A" + std::to_string(i)));
        seed.dirs.push_back(m1);
    }
    for (int j = 1; j <= l2; ++j) {
        rs.t_names.push_back("s" + std::to_string(j));
        seed.symbols.push_back(rs.symbols.intern("Q" + std::to_string(j)));
        seed.dirs.push_back(m2);
    }
    seed.ring = make_ring(std::move(rs));
    return seed;
}

MonomialVectorSystem analyze_basis(int l1, int l2, LatticeVector target, LatticeVector m1,
                                   LatticeVector m2) {
    if (l1 < 0 || l2 < 0 || l1 + l2 == 0) throw std::invalid_argument("analyze_basis: bad sizes");
    std::int64_t W = wedge(m1, m2);
    if (W == 0) throw std::invalid_argument("analyze_basis: directions must be independent");
    std::int64_t num1 = wedge(target, m2), num2 = wedge(m1, target);
    if (num1 % W || num2 % W)
        throw std::invalid_argument("analyze_basis: target outside the span lattice");
    std::int64_t d1 = num1 / W, d2 = num2 / W;
    if (d1 < 0 || d2 < 0 || d1 + d2 == 0)
        throw std::invalid_argument("analyze_basis: target must be a nonzero nonnegative combination");
    if ((d1 > 0 && l1 == 0) || (d2 > 0 && l2 == 0))
        throw std::invalid_argument("analyze_basis: no lines available for the target");

    MonomialVectorSystem sys;
    std::vector<int> Asym, tsym;
    for (int i = 1; i <= l1; ++i) Asym.push_back(sys.symbols.intern("A" + std::to_string(i)));
    for (int j = 1; j <= l2; ++j) Asym.push_back(sys.symbols.intern("Q" + std::to_string(j)));
    for (int i = 1; i <= l1; ++i) tsym.push_back(sys.symbols.intern("t" + std::to_string(i)));
    for (int j = 1; j <= l2; ++j) tsym.push_back(sys.symbols.intern("s" + std::to_string(j)));

    std::vector<LatticeVector> dirs;
    for (int i = 0; i < l1; ++i) dirs.push_back(m1);
    for (int j = 0; j < l2; ++j) dirs.push_back(m2);

    std::map<WeightVector, std::tuple<Poly, Poly, int>> classes;
    for (const auto& c1 : compositions((int)d1, l1))
        for (const auto& c2 : compositions((int)d2, l2)) {
            TangencyProfile P;
            P.P = c1;
            P.P.insert(P.P.end(), c2.begin(), c2.end());
            Poly tmono{Rat(1)};
            for (std::size_t j = 0; j < P.P.size(); ++j)
                if (P.P[j]) tmono *= Poly::symbol(tsym[j], P.P[j]);
            for (const Partition& k : enumerate_partitions(P)) {
                Poly ek = a_poly(k, Asym) * tmono;
                auto& slot = classes[k.w(dirs)];
                std::get<0>(slot) += ek;
                Poly vk = ek;
                std::get<1>(slot) += lambda_rel(k) * vk;
                ++std::get<2>(slot);
            }
        }
    for (auto& [w, s] : classes) {
        sys.classes.push_back(w);
        sys.E.push_back(std::get<0>(s));
        sys.V.push_back(std::get<1>(s));
        sys.class_sizes.push_back(std::get<2>(s));
    }

    // exact row reduction of {E_i} with combination tracking
    std::size_t R = sys.E.size();
    std::vector<std::map<Mono, Rat>> rows(R);
    for (std::size_t i = 0; i < R; ++i)
        for (const auto& [m, c] : sys.E[i].terms()) rows[i][m] = c;
    std::vector<std::map<int, Rat>> comb(R);
    std::vector<std::pair<Mono, std::size_t>> done;  // (pivot mono, row)
    for (std::size_t i = 0; i < R; ++i) {
        comb[i][(int)i] = Rat(1);
        for (const auto& [pm, pr] : done) {
            auto it = rows[i].find(pm);
            if (it == rows[i].end()) continue;
            Rat f = it->second;
            for (const auto& [m, c] : rows[pr]) {
                auto jt = rows[i].find(m);
                Rat nv = (jt == rows[i].end() ? Rat(0) : jt->second) - f * c;
                if (nv == 0) {
                    if (jt != rows[i].end()) rows[i].erase(jt);
                } else {
                    rows[i][m] = nv;
                }
            }
            for (const auto& [ci, cc] : comb[pr]) {
                Rat nv = (comb[i].count(ci) ? comb[i][ci] : Rat(0)) - f * cc;
                if (nv == 0) comb[i].erase(ci);
                else comb[i][ci] = nv;
            }
        }
        if (rows[i].empty()) {
            sys.relations.push_back(comb[i]);
            continue;
        }
        Mono pm = rows[i].begin()->first;
        Rat pv = rows[i].begin()->second;
        for (auto& [m, c] : rows[i]) c /= pv;
        for (auto& [ci, cc] : comb[i]) cc /= pv;
        done.push_back({pm, i});
        sys.pivots.push_back({(int)i, pm});
    }
    sys.rank = (int)done.size();

    // designated extraction monomials (available when the target is the
    // all-ones tangency total per group)
    if (d1 == l1 && d2 == l2 && l1 >= 1) {
        auto add_designated = [&](const WeightVector& w, Mono mono) {
            std::sort(mono.begin(), mono.end());
            auto it = std::find(sys.classes.begin(), sys.classes.end(), w);
            if (it == sys.classes.end()) throw std::logic_error("designated class missing");
            int ci = (int)(it - sys.classes.begin());
            if (sys.E[ci].coeff(mono) == 0)
                throw std::logic_error("designated monomial vanishes on its class");
            for (std::size_t j = 0; j < R; ++j)
                if ((int)j != ci && sys.E[j].coeff(mono) != 0)
                    throw std::logic_error("designated monomial not exclusive");
            sys.designated.push_back({ci, std::move(mono)});
        };
        {
            WeightVector w;
            for (int i = 0; i < l1; ++i) w.push_back(m1);
            for (int j = 0; j < l2; ++j) w.push_back(m2);
            std::sort(w.begin(), w.end());
            Mono mono{{Asym[0], 1}};
            for (int i = 0; i < l1 + l2; ++i) mono.push_back({tsym[i], 1});
            add_designated(w, mono);
        }
        for (int j = 2; j <= l1; ++j) {
            WeightVector w{(std::int64_t)j * m1};
            for (int i = 0; i < l1 - j; ++i) w.push_back(m1);
            for (int i = 0; i < l2; ++i) w.push_back(m2);
            std::sort(w.begin(), w.end());
            Mono mono{{Asym[0], j}, {tsym[0], j}};
            for (int i = 1; i <= l1 - j; ++i) mono.push_back({tsym[i], 1});
            for (int i = 0; i < l2; ++i) mono.push_back({tsym[l1 + i], 1});
            add_designated(w, mono);
        }
        for (int j = 2; j <= l2; ++j) {
            WeightVector w{(std::int64_t)j * m2};
            for (int i = 0; i < l2 - j; ++i) w.push_back(m2);
            for (int i = 0; i < l1; ++i) w.push_back(m1);
            std::sort(w.begin(), w.end());
            Mono mono{{Asym[l1], j}, {tsym[l1], j}};
            for (int i = 1; i <= l2 - j; ++i) mono.push_back({tsym[l1 + i], 1});
            for (int i = 0; i < l1; ++i) mono.push_back({tsym[i], 1});
            add_designated(w, mono);
        }
    }
    return sys;
}

bool relation_holds(const MonomialVectorSystem& sys, const std::map<int, Rat>& combo) {
    Poly acc;
    for (const auto& [i, c] : combo) acc += c * sys.E.at((std::size_t)i);
    return acc.is_zero();
}

InvariantTable extract_from_wall(const ScatteringDiagram& asym, const GwSeed& seed,
                                 LatticeVector ray_dir) {
    if (!asym.ring || asym.ring->rank != 1)
        throw std::invalid_argument("extract_from_wall: diagram must carry 1x1 symbol matrices");
    if (ray_dir.is_zero()) throw std::invalid_argument("extract_from_wall: zero direction");
    LatticeVector m0 = primitive_part(ray_dir);
    for (auto m : seed.dirs)
        if (wedge(m, m0) == 0)
            throw std::invalid_argument("extract_from_wall: direction parallel to a seed line");

    const Wall* wall = nullptr;
    for (const Wall& w : asym.walls)
        if (w.dir == m0 && w.kind == WallKind::Ray) {
            if (wall) throw std::invalid_argument("extract_from_wall: several rays share the direction");
            wall = &w;
        }
    InvariantTable table;
    if (!wall) return table;

    LatticeVector n0 = rot90(m0);
    std::map<LatticeVector, std::vector<const std::pair<const TermKey, LieCoef>*>> by_z;
    for (const auto& kv : wall->log.terms()) by_z[kv.first.z].push_back(&kv);

    for (const auto& [z, group] : by_z) {
        std::int64_t l = index_of(z);

        // scalar part: N_{0,P} = (coefficient of t^P z^{l m0} in log f) / l
        for (const auto* kv : group) {
            std::vector<int> P((std::size_t)seed.ring->n, 0);
            for (const auto& [var, e] : kv->first.deg.t) P.at((std::size_t)var - 1) = e;
            Poly c = (n0.a != 0) ? (Rat(1) / Rat(n0.a)) * kv->second.d1
                                 : (Rat(1) / Rat(n0.b)) * kv->second.d2;
            if (!c.is_constant())
                throw std::runtime_error("extract_from_wall: scalar log carries symbols");
            table.by_profile[P] = c.constant_value() / Rat(l);
        }

        // matrix part: solve the V_w system over the classes of this order
        std::vector<WeightVector> cls;
        std::map<WeightVector, std::size_t> cls_idx;
        std::map<std::pair<MultiDegree, Mono>, std::pair<std::map<std::size_t, Rat>, Rat>> eqs;
        for (const auto* kv : group) {
            std::vector<int> P((std::size_t)seed.ring->n, 0);
            for (const auto& [var, e] : kv->first.deg.t) P.at((std::size_t)var - 1) = e;
            for (const Partition& k : enumerate_partitions(TangencyProfile{P})) {
                Rat lambda = lambda_rel(k);
                WeightVector w = k.w(seed.dirs);
                auto [it, fresh] = cls_idx.try_emplace(w, cls.size());
                if (fresh) cls.push_back(w);
                std::size_t ci = it->second;
                for (std::size_t j = 0; j < k.k.size(); ++j)
                    for (std::size_t lsz = 1; lsz <= k.k[j].size(); ++lsz) {
                        int e = k.k[j][lsz - 1];
                        if (!e) continue;
                        Mono alpha{{seed.symbols[j], (int)lsz}};
                        eqs[{kv->first.deg, alpha}].first[ci] += lambda * Rat((long long)lsz * e);
                    }
            }
            if (kv->second.A.rank() >= 1)
                for (const auto& [mono, c] : kv->second.A.at(0, 0).terms())
                    eqs[{kv->first.deg, mono}].second = c;
        }

        std::size_t C = cls.size();
        std::vector<std::map<std::size_t, Rat>> lhs;
        std::vector<Rat> rhs;
        for (auto& [key, eq] : eqs) {
            lhs.push_back(std::move(eq.first));
            rhs.push_back(eq.second);
        }
        std::vector<std::size_t> pivot_row(C, (std::size_t)-1);
        std::size_t rr = 0;
        for (std::size_t c = 0; c < C && rr < lhs.size(); ++c) {
            std::size_t pr = (std::size_t)-1;
            for (std::size_t r = rr; r < lhs.size(); ++r) {
                auto it = lhs[r].find(c);
                if (it != lhs[r].end() && it->second != 0) {
                    pr = r;
                    break;
                }
            }
            if (pr == (std::size_t)-1) continue;
            std::swap(lhs[pr], lhs[rr]);
            std::swap(rhs[pr], rhs[rr]);
            Rat pv = lhs[rr].at(c);
            for (auto& [cc, vv] : lhs[rr]) vv /= pv;
            rhs[rr] /= pv;
            for (std::size_t r = 0; r < lhs.size(); ++r) {
                if (r == rr) continue;
                auto it = lhs[r].find(c);
                if (it == lhs[r].end() || it->second == 0) continue;
                Rat f = it->second;
                for (const auto& [cc, vv] : lhs[rr]) {
                    Rat nv = (lhs[r].count(cc) ? lhs[r][cc] : Rat(0)) - f * vv;
                    if (nv == 0) lhs[r].erase(cc);
                    else lhs[r][cc] = nv;
                }
                rhs[r] -= f * rhs[rr];
            }
            pivot_row[c] = rr;
            ++rr;
        }
        for (std::size_t r = rr; r < lhs.size(); ++r)
            if (rhs[r] != 0)
                throw std::runtime_error("extract_from_wall: matrix log outside the invariant span");
        for (std::size_t c = 0; c < C; ++c) {
            if (pivot_row[c] != (std::size_t)-1 && lhs[pivot_row[c]].size() == 1)
                table.by_weight[cls[c]] = rhs[pivot_row[c]];
            else
                table.undetermined.push_back(cls[c]);
        }
    }
    return table;
}

LieElement assemble_trop_log(const GwSeed& seed, LatticeVector m_d,
                             const std::function<Rat(const WeightVector&)>& ntrop) {
    if (m_d.is_zero()) throw std::invalid_argument("assemble_trop_log: zero direction");
    if (!seed.ring || seed.ring->rank != 1)
        throw std::invalid_argument("assemble_trop_log: seed must carry 1x1 symbol matrices");
    LatticeVector m0 = primitive_part(m_d);
    for (auto m : seed.dirs)
        if (wedge(m, m0) == 0)
            throw std::invalid_argument("assemble_trop_log: direction parallel to a seed line");
    const RingSpec& ring = *seed.ring;
    LatticeVector n0 = rot90(m0);
    LieElement out(seed.ring);
    int n = ring.n;
    std::vector<int> P((std::size_t)n, 0);
    std::function<void(int)> rec = [&](int j) {
        if (j < n) {
            for (int v = 0; v <= ring.N; ++v) {
                P[(std::size_t)j] = v;
                rec(j + 1);
            }
            P[(std::size_t)j] = 0;
            return;
        }
        LatticeVector z{0, 0};
        int tot = 0;
        for (int i = 0; i < n; ++i) {
            z = z + (std::int64_t)P[(std::size_t)i] * seed.dirs[(std::size_t)i];
            tot += P[(std::size_t)i];
        }
        if (tot == 0) return;
        if (ring.total_cutoff && tot > *ring.total_cutoff) return;
        if (wedge(z, m0) != 0) return;
        std::int64_t l = (m0.a != 0) ? z.a / m0.a : z.b / m0.b;
        if (l < 1 || !(l * m0 == z)) return;
        MultiDegree deg;
        for (int i = 0; i < n; ++i)
            if (P[(std::size_t)i]) deg.t.push_back({i + 1, P[(std::size_t)i]});
        LieCoef c;
        c.A = Mat(1);
        Rat scalar(0);
        for (const Partition& k : enumerate_partitions(TangencyProfile{P})) {
            Rat nt = ntrop(k.w(seed.dirs));
            if (nt == 0) continue;
            Rat mu = mu_trop(k);
            c.A.at(0, 0) += (nt * mu) * a_poly(k, seed.symbols);
            scalar += nt * mu * Rat(l);
        }
        c.d1 = Poly{scalar * Rat(n0.a)};
        c.d2 = Poly{scalar * Rat(n0.b)};
        out.add(TermKey{z, deg}, std::move(c));
    };
    rec(0);
    return out;
}

LieElement assemble_trop_log(const GwSeed& seed, LatticeVector m_d, unsigned trop_seed) {
    std::map<WeightVector, Rat> cache;
    return assemble_trop_log(seed, m_d, [&cache, trop_seed](const WeightVector& w) -> Rat {
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, count_tropical(CurveType{w}, trop_seed).total).first;
        return it->second;
    });
}

}  // namespace tvx
