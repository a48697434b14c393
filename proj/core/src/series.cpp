#include "tvx/series.hpp"

#include <cctype>
#include <sstream>

namespace tvx {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    const SymbolTable& tab;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { ++i; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw std::runtime_error(std::string("expected '") + c + "' in '" + s + "'");
    }

    long long integer() {
        skip();
        bool neg = eat('-');
        if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
            throw std::runtime_error("expected integer in '" + s + "'");
        long long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    }

    Rat rational() {
        Int num(integer());
        if (eat('/')) return Rat(num) / Rat(Int(integer()));
        return Rat(num);
    }

    std::string ident() {
        skip();
        std::string id;
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) id += s[i++];
        if (id.empty()) throw std::runtime_error("expected identifier in '" + s + "'");
        return id;
    }

    Poly expr() {
        Poly acc = term();
        while (true) {
            if (eat('+')) acc += term();
            else if (peek() == '-') { ++i; acc -= term(); }
            else return acc;
        }
    }
    Poly term() {
        Poly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }
    Poly factor() {
        char c = peek();
        Poly base;
        if (c == '(') {
            ++i;
            base = expr();
            expect(')');
        } else if (c == '-') {
            ++i;
            return -factor();
        } else if (std::isdigit((unsigned char)c)) {
            base = Poly{rational()};
        } else {
            std::string name = ident();
            int id = tab.lookup(name);
            if (id < 0) throw std::runtime_error("unknown symbol '" + name + "'");
            base = Poly::symbol(id);
        }
        if (eat('^')) base = base.pow((int)integer());
        return base;
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const SymbolTable& symbols) {
    Lexer lx{text, 0, symbols};
    Poly p = lx.expr();
    lx.skip();
    if (lx.i != text.size()) throw std::runtime_error("trailing input in '" + text + "'");
    return p;
}

std::string term_key_str(const TermKey& k, const RingSpec& ring) {
    std::string out = "z^(" + std::to_string(k.z.a) + "," + std::to_string(k.z.b) + ")";
    for (auto& [var, exp] : k.deg.t) {
        out += " " + ring.t_name(var);
        if (exp >= 2) out += "^" + std::to_string(exp);
    }
    for (auto& [i, j] : k.deg.u)
        out += " u_{" + std::to_string(i) + "," + std::to_string(j) + "}";
    return out;
}

std::string series_str(const Series& s) {
    if (s.is_zero()) return "0\n";
    std::string out;
    for (const auto& [k, c] : s.terms())
        out += term_key_str(k, *s.ring()) + " : " + c.str(s.ring()->symbols) + "\n";
    return out;
}

TermKey parse_term_key(const std::string& head, const RingSpec& ring) {
    TermKey key;
    std::istringstream in(head);
    std::string tok;
    while (in >> tok) {
        if (tok == "1") continue;
        if (tok.rfind("z^(", 0) == 0) {
            std::size_t comma = tok.find(',');
            std::size_t close = tok.find(')');
            if (comma == std::string::npos || close == std::string::npos)
                throw std::runtime_error("bad monomial '" + tok + "'");
            key.z.a = std::stoll(tok.substr(3, comma - 3));
            key.z.b = std::stoll(tok.substr(comma + 1, close - comma - 1));
        } else if (tok.rfind("u_{", 0) == 0) {
            std::size_t comma = tok.find(',');
            std::size_t close = tok.find('}');
            if (comma == std::string::npos || close == std::string::npos)
                throw std::runtime_error("bad u flag '" + tok + "'");
            int i = std::stoi(tok.substr(3, comma - 3));
            int j = std::stoi(tok.substr(comma + 1, close - comma - 1));
            key.deg.u.push_back({i, j});
        } else {
            std::string name = tok;
            int exp = 1;
            if (auto caret = tok.find('^'); caret != std::string::npos) {
                name = tok.substr(0, caret);
                exp = std::stoi(tok.substr(caret + 1));
            }
            int var = ring.t_var(name);
            if (var < 1) throw std::runtime_error("unknown variable '" + name + "'");
            bool merged = false;
            for (auto& [v, e] : key.deg.t)
                if (v == var) { e += exp; merged = true; break; }
            if (!merged) key.deg.t.push_back({var, exp});
        }
    }
    std::sort(key.deg.t.begin(), key.deg.t.end());
    std::sort(key.deg.u.begin(), key.deg.u.end());
    if (!ring.admits(key.deg))
        throw std::runtime_error("degree not admitted by ring: '" + head + "'");
    return key;
}

Series parse_series(const std::string& text, RingPtr ring) {
    Series s(ring);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') continue;
        if (line.substr(begin) == "0") continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("series line without ':': '" + line + "'");
        TermKey key = parse_term_key(line.substr(0, colon), *ring);
        Poly c = parse_poly(line.substr(colon + 1), ring->symbols);
        s.add(key, c);
    }
    return s;
}

}  // namespace tvx
