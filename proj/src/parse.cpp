#include "fsig/parse.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace fsig {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        return s[i++];
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse_poly: " + msg + " at position " + std::to_string(i));
    }
};

std::int64_t parse_integer(Cursor& c) {
    std::uint64_t v = 0;
    bool any = false;
    c.skip_ws();
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        v = v * 10 + std::uint64_t(c.s[c.i] - '0');
        if (v > std::uint64_t(INT64_MAX)) c.fail("integer literal overflow");
        ++c.i;
        any = true;
    }
    if (!any) c.fail("expected integer");
    return static_cast<std::int64_t>(v);
}

std::string parse_identifier(Cursor& c) {
    c.skip_ws();
    std::string name;
    while (c.i < c.s.size()) {
        char ch = c.s[c.i];
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' ||
            (!name.empty() && std::isdigit(static_cast<unsigned char>(ch)))) {
            name += ch;
            ++c.i;
        } else {
            break;
        }
    }
    return name;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, Cursor& c) {
    __int128 r = __int128(a) * b;
    if (r > INT64_MAX || r < INT64_MIN) c.fail("coefficient overflow");
    return static_cast<std::int64_t>(r);
}

// term = factor { "*" factor }; accumulates one monomial with its coefficient.
void parse_term(Cursor& c, const Ambient& amb, std::int64_t sign, PolyZ& out) {
    std::int64_t coeff = sign;
    Monomial mono(amb.nvars(), 0);
    bool first = true;
    for (;;) {
        char ch = c.peek();
        if (ch == '(' || ch == ')')
            c.fail("parentheses are not allowed (flat products only)");
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::int64_t v = parse_integer(c);
            if (c.peek() == '^') c.fail("exponent is only allowed after a variable");
            coeff = checked_mul(coeff, v, c);
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string name = parse_identifier(c);
            std::size_t vi = amb.index_of(name);
            if (vi == Ambient::npos) c.fail("unknown variable '" + name + "'");
            std::uint64_t exp = 1;
            if (c.peek() == '^') {
                c.take();
                char nx = c.peek();
                if (!std::isdigit(static_cast<unsigned char>(nx)))
                    c.fail("malformed exponent after '" + name + "^'");
                std::int64_t e = parse_integer(c);
                exp = static_cast<std::uint64_t>(e);
            }
            std::uint64_t total = std::uint64_t(mono[vi]) + exp;
            if (total > 0xffffffffull) c.fail("exponent exceeds 32-bit per-variable bound");
            mono[vi] = static_cast<std::uint32_t>(total);
        } else if (first) {
            c.fail("expected integer or variable");
        } else {
            c.fail("expected factor after '*'");
        }
        first = false;
        if (c.peek() == '*') {
            c.take();
            continue;
        }
        break;
    }
    out.add_term(mono, coeff);
}

} // namespace

PolyZ parse_poly(const std::string& text, AmbientPtr ambient) {
    Cursor c{text};
    if (c.done()) throw std::invalid_argument("parse_poly: empty input");
    PolyZ out;
    out.amb = ambient;

    std::int64_t sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
        c.take();
        sign = (ch == '-') ? -1 : 1;
    }
    for (;;) {
        parse_term(c, *ambient, sign, out);
        if (c.done()) break;
        char op = c.take();
        if (op == '+') sign = 1;
        else if (op == '-') sign = -1;
        else c.fail(std::string("unexpected character '") + op + "'");
        if (c.done()) c.fail("dangling sign");
    }
    return out;
}

namespace {

void print_monomial(const std::vector<std::string>& vars, const Monomial& m, std::uint64_t abscoef,
                    std::string& out) {
    bool any_var = std::any_of(m.begin(), m.end(), [](std::uint32_t e) { return e != 0; });
    bool coef_shown = (abscoef != 1) || !any_var;
    if (coef_shown) out += std::to_string(abscoef);
    bool first = !coef_shown;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        if (!first) out += "*";
        out += vars[v];
        if (m[v] != 1) {
            out += "^";
            out += std::to_string(m[v]);
        }
        first = false;
    }
}

} // namespace

std::string print_poly(const PolyZ& f) {
    if (f.is_zero()) return "0";
    const auto& w = f.amb->weights();
    // Descending canonical order: leading term first.
    std::vector<const std::pair<const Monomial, std::int64_t>*> terms;
    for (const auto& t : f.terms) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
        return canonical_less(std::span<const std::uint32_t>(b->first),
                              std::span<const std::uint32_t>(a->first), w);
    });
    std::string out;
    bool first = true;
    for (auto* t : terms) {
        std::int64_t c = t->second;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        print_monomial(f.amb->vars(), t->first, std::uint64_t(c < 0 ? -c : c), out);
    }
    return out;
}

std::string print_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    // Terms are stored ascending; print descending so the leading term comes
    // first. Residues are printed as-is (already canonical in [0, p)).
    for (std::size_t k = f.term_count(); k-- > 0;) {
        if (!out.empty()) out += " + ";
        auto e = f.exponents(k);
        print_monomial(f.ambient().vars(), Monomial(e.begin(), e.end()), f.coeff(k), out);
    }
    return out;
}

} // namespace fsig
