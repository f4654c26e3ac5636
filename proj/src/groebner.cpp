#include "fsig/groebner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace fsig {

int MonomialOrder::compare(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                           const WeightVector& w) const {
    auto total = [](std::span<const std::uint32_t> m, std::size_t lo, std::size_t hi) {
        std::uint64_t d = 0;
        for (std::size_t i = lo; i < hi; ++i) d += m[i];
        return d;
    };
    auto revlex_tie = [](std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                         std::size_t lo, std::size_t hi) {
        for (std::size_t i = hi; i-- > lo;) {
            if (x[i] != y[i]) return x[i] < y[i] ? +1 : -1; // smaller last exponent wins
        }
        return 0;
    };
    auto grevlex_block = [&](std::size_t lo, std::size_t hi) {
        std::uint64_t da = total(a, lo, hi), db = total(b, lo, hi);
        if (da != db) return da > db ? +1 : -1;
        return revlex_tie(a, b, lo, hi);
    };

    switch (kind) {
    case OrderKind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? +1 : -1;
        return 0;
    case OrderKind::GrevLex:
        return grevlex_block(0, a.size());
    case OrderKind::WGrevLex: {
        std::uint64_t da = weighted_degree(a, w), db = weighted_degree(b, w);
        if (da != db) return da > db ? +1 : -1;
        return revlex_tie(a, b, 0, a.size());
    }
    case OrderKind::ElimBlock: {
        int c = grevlex_block(0, std::min(block, a.size()));
        if (c != 0) return c;
        return grevlex_block(std::min(block, a.size()), a.size());
    }
    }
    return 0;
}

namespace {

// Internal dense-ordered form: terms keyed descending by the active order,
// so begin() is the leading term.
struct OrderCmp {
    MonomialOrder ord;
    const WeightVector* w;
    bool operator()(const Monomial& a, const Monomial& b) const {
        return ord.compare(a, b, *w) > 0;
    }
};
using OrderedTerms = std::map<Monomial, std::uint64_t, OrderCmp>;

struct Engine {
    AmbientPtr amb;
    PrimeField fp;
    MonomialOrder ord;
    OrderCmp cmp;

    Engine(AmbientPtr a, PrimeField f, MonomialOrder o)
        : amb(std::move(a)), fp(f), ord(o), cmp{o, &amb->weights()} {}

    OrderedTerms to_ordered(const Poly& p) const {
        OrderedTerms t(cmp);
        for (std::size_t i = 0; i < p.term_count(); ++i) {
            auto e = p.exponents(i);
            t.emplace(Monomial(e.begin(), e.end()), p.coeff(i));
        }
        return t;
    }

    Poly to_poly(const OrderedTerms& t) const {
        std::vector<std::uint32_t> exps;
        std::vector<std::uint64_t> coeffs;
        for (const auto& [m, c] : t) {
            exps.insert(exps.end(), m.begin(), m.end());
            coeffs.push_back(c);
        }
        return finish_terms(amb, fp, std::move(exps), std::move(coeffs));
    }

    static bool divides(const Monomial& d, const Monomial& m) {
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] > m[i]) return false;
        return true;
    }

    static Monomial quotient(const Monomial& m, const Monomial& d) {
        Monomial q(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) q[i] = m[i] - d[i];
        return q;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial l(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
        return l;
    }

    // dst -= c * x^shift * src
    void submul(OrderedTerms& dst, std::uint64_t c, const Monomial& shift,
                const OrderedTerms& src) const {
        for (const auto& [m, v] : src) {
            Monomial mm(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint64_t s = std::uint64_t(m[i]) + shift[i];
                if (s > 0xffffffffull) throw std::overflow_error("groebner: exponent overflow");
                mm[i] = static_cast<std::uint32_t>(s);
            }
            auto it = dst.find(mm);
            std::uint64_t sub = fp.mul(c, v);
            if (it == dst.end()) {
                if (sub != 0) dst.emplace(std::move(mm), fp.neg(sub));
            } else {
                it->second = fp.sub(it->second, sub);
                if (it->second == 0) dst.erase(it);
            }
        }
    }

    void make_monic(OrderedTerms& f) const {
        if (f.empty()) return;
        std::uint64_t inv = fp.inv(f.begin()->second);
        if (inv == 1) return;
        for (auto& [m, c] : f) c = fp.mul(c, inv);
    }

    /// Full normal form against `basis` (every term reduced). The reducer is
    /// always the first basis element whose leading term divides, so the
    /// result is deterministic.
    OrderedTerms reduce(OrderedTerms f, const std::vector<OrderedTerms>& basis) const {
        OrderedTerms rem(cmp);
        while (!f.empty()) {
            const auto lt = *f.begin();
            bool reduced = false;
            for (const auto& g : basis) {
                if (g.empty()) continue;
                const auto& glt = *g.begin();
                if (divides(glt.first, lt.first)) {
                    std::uint64_t c = fp.div(lt.second, glt.second);
                    submul(f, c, quotient(lt.first, glt.first), g);
                    reduced = true;
                    break;
                }
            }
            if (!reduced) {
                rem.insert(lt);
                f.erase(f.begin());
            }
        }
        return rem;
    }
};

std::uint64_t monomial_total_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

} // namespace

std::vector<Poly> buchberger(const std::vector<Poly>& gens, const MonomialOrder& ord,
                             const GroebnerOptions& opts) {
    std::vector<Poly> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) throw std::invalid_argument("buchberger: no nonzero generators");
    for (std::size_t i = 1; i < nonzero.size(); ++i)
        if (!(nonzero[i].ambient() == nonzero[0].ambient()) ||
            nonzero[i].field().modulus() != nonzero[0].field().modulus())
            throw std::invalid_argument("buchberger: generator ambient mismatch");

    Engine eng(nonzero[0].ambient_ptr(), nonzero[0].field(), ord);

    std::vector<OrderedTerms> basis;
    // Deterministic start: generators sorted by leading term, monic, deduped.
    {
        std::vector<OrderedTerms> start;
        for (const auto& g : nonzero) {
            auto t = eng.to_ordered(g);
            eng.make_monic(t);
            start.push_back(std::move(t));
        }
        std::sort(start.begin(), start.end(), [&](const OrderedTerms& a, const OrderedTerms& b) {
            return ord.compare(a.begin()->first, b.begin()->first, eng.amb->weights()) < 0;
        });
        for (auto& t : start) {
            // Interreduce duplicates eagerly: reduce against what we have.
            auto r = eng.reduce(std::move(t), basis);
            if (!r.empty()) {
                eng.make_monic(r);
                basis.push_back(std::move(r));
            }
        }
    }

    struct Pair {
        std::uint64_t deg;
        std::size_t i, j;
        bool operator>(const Pair& o) const {
            return std::tie(deg, i, j) > std::tie(o.deg, o.i, o.j);
        }
    };
    std::priority_queue<Pair, std::vector<Pair>, std::greater<Pair>> queue;
    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            auto l = Engine::lcm(basis[i].begin()->first, basis[j].begin()->first);
            queue.push({monomial_total_degree(l), i, j});
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_for(j);

    std::uint64_t processed = 0;
    while (!queue.empty()) {
        auto [deg, i, j] = queue.top();
        queue.pop();
        if (++processed > opts.pair_budget) throw PairBudgetExceeded(opts.pair_budget);

        const Monomial& lti = basis[i].begin()->first;
        const Monomial& ltj = basis[j].begin()->first;
        Monomial l = Engine::lcm(lti, ltj);

        // Buchberger's product criterion.
        if (monomial_total_degree(l) == monomial_total_degree(lti) + monomial_total_degree(ltj))
            continue;
        // Chain criterion, strict-divisor form (acyclic, hence sound): skip
        // when some other leading term divides the lcm and both sub-lcms are
        // proper divisors.
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == i || k == j) continue;
            const Monomial& ltk = basis[k].begin()->first;
            if (!Engine::divides(ltk, l)) continue;
            if (Engine::lcm(lti, ltk) != l && Engine::lcm(ltj, ltk) != l) chained = true;
        }
        if (chained) continue;

        // S-polynomial: (l / lt_i) f_i - (l / lt_j) f_j (both monic).
        OrderedTerms s(eng.cmp);
        eng.submul(s, eng.fp.neg(1), Engine::quotient(l, lti), basis[i]);
        eng.submul(s, 1, Engine::quotient(l, ltj), basis[j]);

        auto r = eng.reduce(std::move(s), basis);
        if (r.empty()) continue;
        eng.make_monic(r);
        basis.push_back(std::move(r));
        push_pairs_for(basis.size() - 1);
    }

    // Minimalize: drop elements whose leading term is divisible by another's.
    std::vector<OrderedTerms> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (Engine::divides(basis[j].begin()->first, basis[i].begin()->first)) {
                if (basis[j].begin()->first == basis[i].begin()->first) redundant = j < i;
                else redundant = true;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Reduce tails against the final leading terms.
    std::vector<OrderedTerms> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        auto others = minimal;
        others.erase(others.begin() + std::ptrdiff_t(i));
        auto r = eng.reduce(minimal[i], others);
        eng.make_monic(r);
        reduced.push_back(std::move(r));
    }
    // Present the basis leading-term descending.
    std::sort(reduced.begin(), reduced.end(), [&](const OrderedTerms& a, const OrderedTerms& b) {
        return ord.compare(a.begin()->first, b.begin()->first, eng.amb->weights()) > 0;
    });

    std::vector<Poly> out;
    out.reserve(reduced.size());
    for (const auto& t : reduced) out.push_back(eng.to_poly(t));
    return out;
}

const std::vector<Poly>& groebner_basis(const IdealBasis& ideal, const MonomialOrder& ord,
                                        const GroebnerOptions& opts) {
    if (ideal.cache && ideal.cache->first == ord) return ideal.cache->second;
    ideal.cache = {ord, buchberger(ideal.generators, ord, opts)};
    return ideal.cache->second;
}

Poly normal_form(const Poly& f, const std::vector<Poly>& gb, const MonomialOrder& ord) {
    if (gb.empty()) throw std::invalid_argument("normal_form: empty basis");
    Engine eng(f.ambient_ptr(), f.field(), ord);
    std::vector<OrderedTerms> basis;
    for (const auto& g : gb) basis.push_back(eng.to_ordered(g));
    return eng.to_poly(eng.reduce(eng.to_ordered(f), basis));
}

bool ideal_contains(const IdealBasis& ideal, const Poly& f, const MonomialOrder& ord,
                    const GroebnerOptions& opts) {
    return normal_form(f, groebner_basis(ideal, ord, opts), ord).is_zero();
}

std::optional<Poly> exact_division(const Poly& f, const Poly& h, const MonomialOrder& ord) {
    if (h.is_zero()) throw std::invalid_argument("exact_division: zero divisor");
    Engine eng(f.ambient_ptr(), f.field(), ord);
    OrderedTerms work = eng.to_ordered(f);
    OrderedTerms divisor = eng.to_ordered(h);
    OrderedTerms quot(eng.cmp);
    const auto& hlt = *divisor.begin();
    while (!work.empty()) {
        const auto lt = *work.begin();
        if (!Engine::divides(hlt.first, lt.first)) return std::nullopt;
        Monomial qm = Engine::quotient(lt.first, hlt.first);
        std::uint64_t qc = eng.fp.div(lt.second, hlt.second);
        quot.emplace(qm, qc);
        eng.submul(work, qc, qm, divisor);
    }
    return eng.to_poly(quot);
}

namespace {

/// Lift a polynomial into the ambient with a tag variable prepended,
/// multiplying by t^tag_power.
Poly lift_with_tag(const Poly& f, const AmbientPtr& ext, std::uint32_t tag_power,
                   const PrimeField& fp) {
    const std::size_t n = f.ambient().nvars();
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    exps.reserve(f.term_count() * (n + 1));
    for (std::size_t i = 0; i < f.term_count(); ++i) {
        exps.push_back(tag_power);
        auto e = f.exponents(i);
        exps.insert(exps.end(), e.begin(), e.end());
        coeffs.push_back(f.coeff(i));
    }
    return finish_terms(ext, fp, std::move(exps), std::move(coeffs));
}

/// Drop a leading tag exponent column (all entries must be zero).
Poly drop_tag(const Poly& f, const AmbientPtr& orig, const PrimeField& fp) {
    const std::size_t n = orig->nvars();
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    for (std::size_t i = 0; i < f.term_count(); ++i) {
        auto e = f.exponents(i);
        exps.insert(exps.end(), e.begin() + 1, e.begin() + 1 + std::ptrdiff_t(n));
        coeffs.push_back(f.coeff(i));
    }
    return finish_terms(orig, fp, std::move(exps), std::move(coeffs));
}

} // namespace

IdealBasis colon_ideal(const IdealBasis& I, const Poly& h, const MonomialOrder& ord,
                       const GroebnerOptions& opts) {
    if (h.is_zero()) throw std::invalid_argument("colon_ideal: h must be nonzero");
    if (I.generators.empty()) throw std::invalid_argument("colon_ideal: empty ideal");
    const AmbientPtr amb = I.generators[0].ambient_ptr();
    const PrimeField fp = I.generators[0].field();

    // Unit h: (I : unit) = I.
    if (h.term_count() == 1 && weighted_degree(h.exponents(0), amb->weights()) == 0)
        return IdealBasis(I.generators);

    // Extended ring k[t, x...] with a fresh tag name.
    std::string tag = "t_";
    while (amb->index_of(tag) != Ambient::npos) tag += "_";
    std::vector<std::string> vars;
    vars.push_back(tag);
    for (const auto& v : amb->vars()) vars.push_back(v);
    WeightVector w;
    w.push_back(1);
    for (auto x : amb->weights()) w.push_back(x);
    AmbientPtr ext = make_ambient(std::move(vars), std::move(w));

    std::vector<Poly> gens;
    for (const auto& f : I.generators) {
        if (f.is_zero()) continue;
        gens.push_back(lift_with_tag(f, ext, 1, fp)); // t * f
    }
    // (1 - t) * h
    gens.push_back(sub(lift_with_tag(h, ext, 0, fp), lift_with_tag(h, ext, 1, fp)));

    auto gb = buchberger(gens, MonomialOrder::elim(1), opts);

    std::vector<Poly> quotients;
    for (const auto& g : gb) {
        bool t_free = true;
        for (std::size_t i = 0; i < g.term_count() && t_free; ++i)
            if (g.exponents(i)[0] != 0) t_free = false;
        if (!t_free) continue;
        Poly member = drop_tag(g, amb, fp); // lies in I meet (h)
        auto c = exact_division(member, h, ord);
        if (!c)
            throw std::logic_error("colon_ideal: elimination produced a non-multiple of h");
        if (!c->is_zero()) quotients.push_back(*c);
    }
    if (quotients.empty())
        throw std::logic_error("colon_ideal: empty elimination result");
    return IdealBasis(std::move(quotients));
}

std::optional<std::uint64_t> colength(const IdealBasis& I, const MonomialOrder& ord,
                                      const GroebnerOptions& opts) {
    const auto& gb = groebner_basis(I, ord, opts);
    const std::size_t n = gb[0].ambient().nvars();
    const WeightVector& w = gb[0].ambient().weights();

    // Leading monomials of the reduced basis.
    std::vector<Monomial> lts;
    for (const auto& g : gb) {
        std::span<const std::uint32_t> best = g.exponents(0);
        for (std::size_t i = 1; i < g.term_count(); ++i)
            if (ord.compare(g.exponents(i), best, w) > 0) best = g.exponents(i);
        lts.emplace_back(best.begin(), best.end());
    }

    // The unit ideal has no standard monomials at all.
    for (const auto& m : lts)
        if (std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; })) return 0;

    // Finite iff every variable has a pure power among the leading terms.
    std::vector<std::uint64_t> box(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint64_t best = 0;
        for (const auto& m : lts) {
            bool pure = m[v] > 0;
            for (std::size_t u = 0; u < n && pure; ++u)
                if (u != v && m[u] != 0) pure = false;
            if (pure && (best == 0 || m[v] < best)) best = m[v];
        }
        if (best == 0) return std::nullopt; // +infinity
        box[v] = best;
    }

    std::uint64_t cells = 1;
    for (auto b : box) {
        if (b != 0 && cells > (std::uint64_t(1) << 40) / b)
            throw std::length_error("colength: staircase box too large");
        cells *= b;
    }

    std::uint64_t count = 0;
    Monomial m(n, 0);
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
        std::uint64_t r = idx;
        for (std::size_t v = 0; v < n; ++v) {
            m[v] = static_cast<std::uint32_t>(r % box[v]);
            r /= box[v];
        }
        bool standard = true;
        for (const auto& lt : lts)
            if (Engine::divides(lt, m)) {
                standard = false;
                break;
            }
        if (standard) ++count;
    }
    return count;
}

} // namespace fsig
