#include "tvx/diagram_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "tvx/series.hpp"

namespace tvx {

ParseError::ParseError(int line, int col, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                         msg),
      line(line),
      col(col) {}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

bool blank(const std::string& s) {
    std::string t = trim(s);
    return t.empty() || t[0] == '#';
}

/* Line-oriented cursor over a document; line numbers are 1-based. */
struct Cursor {
    std::vector<std::string> lines;
    std::size_t i = 0;

    explicit Cursor(const std::string& text) : lines(split_lines(text)) {}

    bool next() {
        while (i < lines.size() && blank(lines[i])) ++i;
        return i < lines.size();
    }
    int lineno() const { return (int)i + 1; }
    int colno() const {
        std::size_t a = i < lines.size() ? lines[i].find_first_not_of(" \t") : 0;
        return a == std::string::npos ? 1 : (int)a + 1;
    }
    std::string take() { return trim(lines[i++]); }
};

[[noreturn]] void fail(const Cursor& c, const std::string& msg) {
    throw ParseError(c.lineno(), c.colno(), msg);
}

/* Splits "key = value" at the last " = " so keys may contain '=' in tags. */
bool key_value(const std::string& s, std::string& key, std::string& value) {
    std::size_t p = s.rfind(" = ");
    if (p == std::string::npos) return false;
    key = trim(s.substr(0, p));
    value = trim(s.substr(p + 3));
    return !key.empty();
}

long long parse_ll(const Cursor& c, const std::string& s) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(trim(s), &used);
        if (used != trim(s).size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(c.lineno(), c.colno(), "expected an integer, got '" + trim(s) + "'");
    }
}

Rat parse_rat(const Cursor& c, const std::string& s) {
    try {
        return Rat(trim(s));
    } catch (...) {
        throw ParseError(c.lineno(), c.colno(), "expected a rational, got '" + trim(s) + "'");
    }
}

/* "(a,b)" with integer entries. */
LatticeVector parse_vec(const Cursor& c, const std::string& s) {
    std::string t = trim(s);
    std::size_t open = t.find('(');
    std::size_t comma = t.find(',');
    std::size_t close = t.rfind(')');
    if (open != 0 || comma == std::string::npos || close != t.size() - 1 || comma > close)
        throw ParseError(c.lineno(), c.colno(), "expected '(a,b)', got '" + t + "'");
    LatticeVector v;
    v.a = parse_ll(c, t.substr(1, comma - 1));
    v.b = parse_ll(c, t.substr(comma + 1, close - comma - 1));
    return v;
}

QPoint parse_qpoint(const Cursor& c, const std::string& s) {
    std::string t = trim(s);
    std::size_t comma = t.find(',');
    if (t.empty() || t.front() != '(' || t.back() != ')' || comma == std::string::npos)
        throw ParseError(c.lineno(), c.colno(), "expected '(x,y)', got '" + t + "'");
    return QPoint{parse_rat(c, t.substr(1, comma - 1)),
                  parse_rat(c, t.substr(comma + 1, t.size() - comma - 2))};
}

/* Splits the inside of a bracketed list at top-level commas. */
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

/* "[[p,p],[q,q]]" with polynomial entries. */
Mat parse_mat(const Cursor& c, const std::string& s, const SymbolTable& tab) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError(c.lineno(), c.colno(), "expected a bracketed matrix, got '" + t + "'");
    std::string inner = t.substr(1, t.size() - 2);
    std::vector<std::string> rows = split_top(inner);
    if (rows.size() == 1 && rows[0].empty()) rows.clear();
    int r = (int)rows.size();
    Mat m(r);
    for (int i = 0; i < r; ++i) {
        std::string row = rows[i];
        if (row.size() < 2 || row.front() != '[' || row.back() != ']')
            throw ParseError(c.lineno(), c.colno(), "bad matrix row '" + row + "'");
        std::vector<std::string> cells = split_top(row.substr(1, row.size() - 2));
        if ((int)cells.size() != r)
            throw ParseError(c.lineno(), c.colno(), "matrix is not square");
        for (int j = 0; j < r; ++j) {
            try {
                m.at(i, j) = parse_poly(cells[j], tab);
            } catch (const std::exception& ex) {
                throw ParseError(c.lineno(), c.colno(), ex.what());
            }
        }
    }
    return m;
}

/* One canonical Lie term line: "<term key> : M=[[...]] d=(p,p)". */
void parse_lie_line(const Cursor& c, const std::string& line, const RingPtr& ring,
                    LieElement& out) {
    std::size_t colon = line.find(" : ");
    if (colon == std::string::npos) fail(c, "term line without ' : '");
    TermKey key;
    try {
        key = parse_term_key(line.substr(0, colon), *ring);
    } catch (const std::exception& ex) {
        throw ParseError(c.lineno(), c.colno(), ex.what());
    }
    std::string tail = trim(line.substr(colon + 3));
    LieCoef coef{Mat(ring->rank), Poly(), Poly()};
    while (!tail.empty()) {
        if (tail.rfind("M=", 0) == 0) {
            int depth = 0;
            std::size_t end = 2;
            for (; end < tail.size(); ++end) {
                if (tail[end] == '[') ++depth;
                if (tail[end] == ']' && --depth == 0) break;
            }
            if (depth != 0) fail(c, "unbalanced matrix brackets");
            coef.A = parse_mat(c, tail.substr(2, end - 1), ring->symbols);
            tail = trim(tail.substr(end + 1));
        } else if (tail.rfind("d=(", 0) == 0) {
            std::size_t end = tail.find(')', 3);
            if (end == std::string::npos) fail(c, "unbalanced derivation parens");
            std::vector<std::string> parts = split_top(tail.substr(3, end - 3));
            if (parts.size() != 2) fail(c, "derivation needs two components");
            try {
                coef.d1 = parse_poly(parts[0], ring->symbols);
                coef.d2 = parse_poly(parts[1], ring->symbols);
            } catch (const std::exception& ex) {
                throw ParseError(c.lineno(), c.colno(), ex.what());
            }
            tail = trim(tail.substr(end + 1));
        } else {
            fail(c, "unexpected token '" + tail + "' after ':'");
        }
    }
    if (coef.A.rank() != ring->rank) fail(c, "matrix rank does not match the ring");
    try {
        out.add(key, coef);
    } catch (const std::exception& ex) {
        throw ParseError(c.lineno(), c.colno(), ex.what());
    }
}

RingPtr parse_ring_block(Cursor& c) {
    RingSpec spec;
    spec.rank = 0;
    bool saw_t = false;
    std::vector<std::string> symbols;
    while (c.next()) {
        std::string line = c.take();
        if (line == "}") {
            if (!saw_t) spec.t_names.clear();
            for (const auto& s : symbols) spec.symbols.intern(s);
            return make_ring(spec);
        }
        std::string key, value;
        if (!key_value(line, key, value)) {
            --c.i;
            fail(c, "expected 'key = value' inside ring block");
        }
        --c.i;  // keep position for error reporting
        if (key == "n")
            spec.n = (int)parse_ll(c, value);
        else if (key == "N")
            spec.N = (int)parse_ll(c, value);
        else if (key == "mode") {
            if (value == "RN")
                spec.mode = RingMode::RN;
            else if (value == "RtildeN")
                spec.mode = RingMode::RtildeN;
            else
                fail(c, "mode must be RN or RtildeN");
        } else if (key == "rank")
            spec.rank = (int)parse_ll(c, value);
        else if (key == "t") {
            std::istringstream in(value);
            spec.t_names.clear();
            std::string tok;
            while (in >> tok) spec.t_names.push_back(tok);
            saw_t = true;
        } else if (key == "symbols") {
            std::istringstream in(value);
            std::string tok;
            while (in >> tok) symbols.push_back(tok);
        } else if (key == "cutoff")
            spec.total_cutoff = (int)parse_ll(c, value);
        else
            fail(c, "unknown ring key '" + key + "'");
        ++c.i;
    }
    fail(c, "unterminated ring block");
}

Wall parse_wall_block(Cursor& c, const RingPtr& ring) {
    Wall w;
    w.log = LieElement(ring);
    bool saw_dir = false;
    while (c.next()) {
        std::string line = c.take();
        if (line == "}") {
            if (!saw_dir) {
                --c.i;
                fail(c, "wall block without dir");
            }
            return w;
        }
        if (line == "log {") {
            while (c.next()) {
                std::string term = c.take();
                if (term == "}") break;
                if (term == "0") continue;
                --c.i;
                parse_lie_line(c, term, ring, w.log);
                ++c.i;
            }
            continue;
        }
        std::string key, value;
        if (!key_value(line, key, value)) {
            --c.i;
            fail(c, "expected 'key = value' inside wall block");
        }
        --c.i;
        if (key == "kind") {
            if (value == "line")
                w.kind = WallKind::Line;
            else if (value == "ray")
                w.kind = WallKind::Ray;
            else
                fail(c, "kind must be line or ray");
        } else if (key == "base")
            w.base = parse_qpoint(c, value);
        else if (key == "dir") {
            w.dir = parse_vec(c, value);
            saw_dir = true;
        } else
            fail(c, "unknown wall key '" + key + "'");
        ++c.i;
    }
    fail(c, "unterminated wall block");
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v + 0.0);  // normalise -0
    return buf;
}

LatticeVector slope_class(LatticeVector dir) {
    LatticeVector s = primitive_part(dir);
    if (s.a < 0 || (s.a == 0 && s.b < 0)) s = std::int64_t{-1} * s;
    return s;
}

const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
                          "#f781bf", "#1b9e77", "#d95f02", "#7570b3", "#66a61e", "#e7298a"};

}  // namespace

ScatteringDiagram parse_diagram(const std::string& document) {
    Cursor c(document);
    RingPtr ring;
    ScatteringDiagram d;
    int line_index = 0;
    while (c.next()) {
        int at = c.lineno();
        std::string header = c.take();
        if (header == "ring {") {
            if (ring) {
                --c.i;
                fail(c, "duplicate ring block");
            }
            ring = parse_ring_block(c);
            d = ScatteringDiagram(ring);
        } else if (header == "wall {") {
            if (!ring) {
                --c.i;
                fail(c, "wall block before ring block");
            }
            Wall w = parse_wall_block(c, ring);
            if (w.kind == WallKind::Line) w.index_set = {{++line_index, 0}};
            try {
                d.add(std::move(w));
            } catch (const std::exception& ex) {
                throw ParseError(at, 1, ex.what());
            }
        } else {
            --c.i;
            fail(c, "expected 'ring {' or 'wall {'");
        }
    }
    if (!ring) throw ParseError(1, 1, "document has no ring block");
    return d;
}

std::string emit_diagram(const ScatteringDiagram& d) {
    const RingSpec& r = *d.ring;
    std::string out = "ring {\n";
    out += "  n = " + std::to_string(r.n) + "\n";
    out += "  N = " + std::to_string(r.N) + "\n";
    out += "  mode = " + std::string(r.mode == RingMode::RN ? "RN" : "RtildeN") + "\n";
    out += "  rank = " + std::to_string(r.rank) + "\n";
    out += "  t =";
    for (const auto& nm : r.t_names) out += " " + nm;
    out += "\n";
    if (r.symbols.size() > 0) {
        out += "  symbols =";
        for (const auto& nm : r.symbols.names()) out += " " + nm;
        out += "\n";
    }
    if (r.total_cutoff) out += "  cutoff = " + std::to_string(*r.total_cutoff) + "\n";
    out += "}\n";
    for (const Wall& w : d.walls) {
        out += "wall {\n";
        out += std::string("  kind = ") + (w.kind == WallKind::Line ? "line" : "ray") + "\n";
        out += "  base = (" + w.base.x.str() + "," + w.base.y.str() + ")\n";
        out += "  dir = " + to_string(w.dir) + "\n";
        out += "  log {\n";
        if (!w.log.is_zero()) {
            std::istringstream in(lie_str(w.log));
            std::string line;
            while (std::getline(in, line)) out += "    " + line + "\n";
        }
        out += "  }\n";
        out += "}\n";
    }
    return out;
}

LieElement parse_lie(const std::string& text, RingPtr ring) {
    Cursor c(text);
    LieElement out(ring);
    while (c.next()) {
        std::string line = c.take();
        if (line == "0") continue;
        --c.i;
        parse_lie_line(c, line, ring, out);
        ++c.i;
    }
    return out;
}

namespace {

int parse_object(const Cursor& c, const GroupoidData& gd, const std::string& tok) {
    std::string t = trim(tok);
    if (t == "o") return gd.object_o();
    long long v = parse_ll(c, t);
    if (v < 0 || v > gd.num_objects)
        throw ParseError(c.lineno(), c.colno(), "object index out of range: '" + t + "'");
    return (int)v;
}

/* "i->j, m=(a,b)" or "(a,b)" (central). */
GAddress parse_address(const Cursor& c, const GroupoidData& gd, const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '(') return central_address(parse_vec(c, t));
    std::vector<std::string> parts = split_top(t);
    if (parts.empty()) fail(c, "empty address");
    std::size_t arrow = parts[0].find("->");
    if (arrow == std::string::npos) fail(c, "address must be 'i->j, ...' or '(a,b)'");
    int i = parse_object(c, gd, parts[0].substr(0, arrow));
    int j = parse_object(c, gd, parts[0].substr(arrow + 2));
    LatticeVector m{0, 0};
    for (std::size_t k = 1; k < parts.size(); ++k) {
        if (parts[k].rfind("m=", 0) == 0)
            m = parse_vec(c, parts[k].substr(2));
        else
            fail(c, "unknown address field '" + parts[k] + "'");
    }
    return morphism_address(i, j, m);
}

/* Word of factors: S(i->j, m=(a,b), mu=v[, w=k])  K((a,b)[, w=k]). */
std::vector<WcfFactor> parse_word(const Cursor& c, const GroupoidData& gd,
                                  const std::string& text) {
    std::vector<WcfFactor> word;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace((unsigned char)text[pos])) {
            ++pos;
            continue;
        }
        char kind = text[pos];
        if (kind != 'S' && kind != 'K') fail(c, "factor must start with S or K");
        std::size_t open = text.find('(', pos);
        if (open == std::string::npos) fail(c, "factor without '('");
        int depth = 0;
        std::size_t end = open;
        for (; end < text.size(); ++end) {
            if (text[end] == '(') ++depth;
            if (text[end] == ')' && --depth == 0) break;
        }
        if (depth != 0) fail(c, "unbalanced parens in factor");
        std::string inner = text.substr(open + 1, end - open - 1);
        std::vector<std::string> parts = split_top(inner);
        int tweight = 1;
        if (kind == 'K') {
            if (parts.empty()) fail(c, "K factor needs a charge");
            LatticeVector gamma = parse_vec(c, parts[0]);
            for (std::size_t k = 1; k < parts.size(); ++k) {
                if (parts[k].rfind("w=", 0) == 0)
                    tweight = (int)parse_ll(c, parts[k].substr(2));
                else
                    fail(c, "unknown K field '" + parts[k] + "'");
            }
            word.push_back(k_factor(gamma, tweight));
        } else {
            std::string addr_text = parts.empty() ? "" : parts[0];
            long long mu = 0;
            bool saw_mu = false;
            LatticeVector m{0, 0};
            bool saw_m = false;
            for (std::size_t k = 1; k < parts.size(); ++k) {
                if (parts[k].rfind("m=", 0) == 0) {
                    m = parse_vec(c, parts[k].substr(2));
                    saw_m = true;
                } else if (parts[k].rfind("mu=", 0) == 0) {
                    mu = parse_ll(c, parts[k].substr(3));
                    saw_mu = true;
                } else if (parts[k].rfind("w=", 0) == 0) {
                    tweight = (int)parse_ll(c, parts[k].substr(2));
                } else {
                    fail(c, "unknown S field '" + parts[k] + "'");
                }
            }
            std::size_t arrow = addr_text.find("->");
            if (arrow == std::string::npos) fail(c, "S factor needs 'i->j'");
            int i = parse_object(c, gd, addr_text.substr(0, arrow));
            int j = parse_object(c, gd, addr_text.substr(arrow + 2));
            GAddress a = morphism_address(i, j, saw_m ? m : LatticeVector{0, 0});
            if (!saw_mu) mu = gd.mu_of(a);
            word.push_back(s_factor(a, mu, tweight));
        }
        pos = end + 1;
    }
    return word;
}

}  // namespace

WcfProblem parse_groupoid_document(const std::string& document) {
    Cursor c(document);
    WcfProblem problem;
    bool saw_groupoid = false;
    while (c.next()) {
        std::string header = c.take();
        if (header == "groupoid {") {
            saw_groupoid = true;
            while (c.next()) {
                std::string line = c.take();
                if (line == "}") break;
                std::string key, value;
                if (!key_value(line, key, value)) {
                    --c.i;
                    fail(c, "expected 'key = value' inside groupoid block");
                }
                --c.i;
                if (key == "objects")
                    problem.gd.num_objects = (int)parse_ll(c, value);
                else if (key == "dirac") {
                    SymbolTable empty;
                    Mat m = parse_mat(c, value, empty);
                    if (m.rank() != 2 || !m.at(0, 0).is_zero() || !m.at(1, 1).is_zero() ||
                        !(m.at(0, 1) + m.at(1, 0)).is_zero() || !m.at(0, 1).is_constant())
                        fail(c, "dirac must be a 2x2 antisymmetric integer matrix");
                    Rat v = m.at(0, 1).constant_value();
                    if (boost::multiprecision::denominator(v) != 1)
                        fail(c, "dirac entries must be integers");
                    problem.gd.dirac_coef =
                        boost::multiprecision::numerator(v).convert_to<std::int64_t>();
                } else if (key == "omega")
                    problem.gd.omega_hom = parse_vec(c, value);
                else if (key.rfind("e(", 0) == 0 && key.back() == ')') {
                    std::vector<std::string> parts = split_top(key.substr(2, key.size() - 3));
                    if (parts.size() != 2) fail(c, "base point key must be e(i,j)");
                    int i = parse_object(c, problem.gd, parts[0]);
                    int j = parse_object(c, problem.gd, parts[1]);
                    problem.gd.base_points[{i, j}] = parse_vec(c, value);
                } else if (key.rfind("mu(", 0) == 0 && key.back() == ')') {
                    GAddress a = parse_address(c, problem.gd, key.substr(3, key.size() - 4));
                    problem.gd.mu[a] = parse_ll(c, value);
                } else if (key.rfind("angle(", 0) == 0 && key.back() == ')') {
                    GAddress a = parse_address(c, problem.gd, key.substr(6, key.size() - 7));
                    problem.gd.angles[a] = parse_rat(c, value);
                } else
                    fail(c, "unknown groupoid key '" + key + "'");
                ++c.i;
            }
        } else if (header == "identity {") {
            if (!saw_groupoid) {
                --c.i;
                fail(c, "identity block before groupoid block");
            }
            while (c.next()) {
                std::string line = c.take();
                if (line == "}") break;
                std::string key, value;
                if (!key_value(line, key, value)) {
                    --c.i;
                    fail(c, "expected 'lhs = ...' or 'rhs = ...'");
                }
                --c.i;
                if (key == "lhs")
                    problem.lhs = parse_word(c, problem.gd, value);
                else if (key == "rhs")
                    problem.rhs = parse_word(c, problem.gd, value);
                else
                    fail(c, "unknown identity key '" + key + "'");
                ++c.i;
            }
        } else {
            --c.i;
            fail(c, "expected 'groupoid {' or 'identity {'");
        }
    }
    if (!saw_groupoid) throw ParseError(1, 1, "document has no groupoid block");
    return problem;
}

CurveType parse_tropical_document(const std::string& document) {
    Cursor c(document);
    CurveType type;
    bool saw = false;
    while (c.next()) {
        std::string header = c.take();
        if (header != "tropical {") {
            --c.i;
            fail(c, "expected 'tropical {'");
        }
        saw = true;
        while (c.next()) {
            std::string line = c.take();
            if (line == "}") break;
            std::string key, value;
            if (!key_value(line, key, value)) {
                --c.i;
                fail(c, "expected 'ends = (a,b) (c,d) ...'");
            }
            --c.i;
            if (key == "ends") {
                std::size_t pos = 0;
                while (pos < value.size()) {
                    if (std::isspace((unsigned char)value[pos])) {
                        ++pos;
                        continue;
                    }
                    std::size_t close = value.find(')', pos);
                    if (value[pos] != '(' || close == std::string::npos)
                        fail(c, "ends must be a list of '(a,b)'");
                    type.ends.push_back(parse_vec(c, value.substr(pos, close - pos + 1)));
                    pos = close + 1;
                }
            } else
                fail(c, "unknown tropical key '" + key + "'");
            ++c.i;
        }
    }
    if (!saw) throw ParseError(1, 1, "document has no tropical block");
    return type;
}

GwJob parse_gw_document(const std::string& document) {
    Cursor c(document);
    GwJob job;
    bool saw = false;
    while (c.next()) {
        std::string header = c.take();
        if (header != "gw {") {
            --c.i;
            fail(c, "expected 'gw {'");
        }
        saw = true;
        while (c.next()) {
            std::string line = c.take();
            if (line == "}") break;
            std::string key, value;
            if (!key_value(line, key, value)) {
                --c.i;
                fail(c, "expected 'key = value' inside gw block");
            }
            --c.i;
            if (key == "l1")
                job.l1 = (int)parse_ll(c, value);
            else if (key == "l2")
                job.l2 = (int)parse_ll(c, value);
            else if (key == "m1")
                job.m1 = parse_vec(c, value);
            else if (key == "m2")
                job.m2 = parse_vec(c, value);
            else if (key == "ray")
                job.ray = parse_vec(c, value);
            else
                fail(c, "unknown gw key '" + key + "'");
            ++c.i;
        }
    }
    if (!saw) throw ParseError(1, 1, "document has no gw block");
    return job;
}

std::string render_svg(const ScatteringDiagram& d) {
    std::vector<LatticeVector> slopes;
    for (const Wall& w : d.walls) {
        LatticeVector s = slope_class(w.dir);
        if (std::find(slopes.begin(), slopes.end(), s) == slopes.end()) slopes.push_back(s);
    }
    std::sort(slopes.begin(), slopes.end());
    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-110 -110 220 220\" "
        "width=\"440\" height=\"440\">\n";
    out += "<line x1=\"-108\" y1=\"0\" x2=\"108\" y2=\"0\" stroke=\"#dddddd\" "
           "stroke-width=\"0.5\"/>\n";
    out += "<line x1=\"0\" y1=\"-108\" x2=\"0\" y2=\"108\" stroke=\"#dddddd\" "
           "stroke-width=\"0.5\"/>\n";
    for (const Wall& w : d.walls) {
        LatticeVector s = slope_class(w.dir);
        std::size_t idx =
            std::find(slopes.begin(), slopes.end(), s) - slopes.begin();
        const char* color = kPalette[idx % (sizeof kPalette / sizeof *kPalette)];
        double bx = to_double(w.base.x), by = to_double(w.base.y);
        double nx = (double)w.dir.a, ny = (double)w.dir.b;
        double len = std::hypot(nx, ny);
        nx /= len;
        ny /= len;
        double L = 105.0;
        double x1 = w.kind == WallKind::Line ? bx - L * nx : bx;
        double y1 = w.kind == WallKind::Line ? by - L * ny : by;
        double x2 = bx + L * nx, y2 = by + L * ny;
        out += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(-y1) + "\" x2=\"" + fmt(x2) +
               "\" y2=\"" + fmt(-y2) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\">";
        out += "<title>" + std::string(w.kind == WallKind::Line ? "line" : "ray") +
               " dir=" + to_string(w.dir) + " base=(" + w.base.x.str() + "," + w.base.y.str() +
               ")</title></line>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string curve_svg(const TropicalCurve& h) {
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    bool first = true;
    for (const QPoint& p : h.vertices) {
        double x = to_double(p.x), y = to_double(p.y);
        if (first) {
            minx = maxx = x;
            miny = maxy = y;
            first = false;
        }
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
    double margin = 40.0;
    double w = (maxx - minx) + 2 * margin, hh = (maxy - miny) + 2 * margin;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" +
                      fmt(minx - margin) + " " + fmt(-(maxy + margin)) + " " + fmt(w) + " " +
                      fmt(hh) + "\" width=\"440\" height=\"440\">\n";
    for (const auto& e : h.edges) {
        double x1 = to_double(h.vertices[e.v0].x), y1 = to_double(h.vertices[e.v0].y);
        double x2, y2;
        if (e.v1 >= 0) {
            x2 = to_double(h.vertices[e.v1].x);
            y2 = to_double(h.vertices[e.v1].y);
        } else {
            double nx = (double)e.wvec.a, ny = (double)e.wvec.b;
            double len = std::hypot(nx, ny);
            x2 = x1 + 30.0 * nx / len;
            y2 = y1 + 30.0 * ny / len;
        }
        out += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(-y1) + "\" x2=\"" + fmt(x2) +
               "\" y2=\"" + fmt(-y2) + "\" stroke=\"#377eb8\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + fmt((x1 + x2) / 2) + "\" y=\"" + fmt(-(y1 + y2) / 2) +
               "\" font-size=\"4\">" + to_string(e.wvec) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string curve_text(const TropicalCurve& h) {
    std::string out;
    for (std::size_t i = 0; i < h.vertices.size(); ++i)
        out += "vertex " + std::to_string(i) + " (" + h.vertices[i].x.str() + "," +
               h.vertices[i].y.str() + ")\n";
    for (const auto& e : h.edges) {
        if (e.v1 >= 0)
            out += "edge " + std::to_string(e.v0) + " " + std::to_string(e.v1) +
                   " w=" + to_string(e.wvec) + "\n";
        else
            out += "end " + std::to_string(e.v0) + " w=" + to_string(e.wvec) + "\n";
    }
    return out;
}

}  // namespace tvx
