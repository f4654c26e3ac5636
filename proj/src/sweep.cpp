#include "fsig/sweep.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "fsig/parse.hpp"
#include "fsig/version.hpp"

namespace fsig {

namespace {

SweepRow run_task(const RingSpec& spec, std::uint64_t p, std::uint32_t e,
                  const SweepOptions& opts) {
    SweepRow row;
    row.p = p;
    row.e = e;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (opts.hook) opts.hook(p, e);
        RingPresentation ring = spec.presentation(p);
        row.q = ring.q_for(e);
        ProfileOptions popts;
        popts.parallel = false; // rows are the parallel unit here
        popts.use_wiedemann = opts.use_wiedemann;
        popts.seed = opts.seed;
        FrobeniusProfile prof = splitting_profile(ring, e, popts);

        for (std::size_t i = 0; i < spec.designated_elements.size(); ++i) {
            const auto& el = spec.designated_elements[i];
            Poly f = reduce_mod_p(parse_poly(el.expr, ring.amb), p);
            std::int64_t nu = nu_e(f, ring, e);
            row.elements.push_back({el.name, nu, nu + 1});
            if (i == 0) {
                prof.nu_f = nu;
                prof.mu_f = nu + 1;
            }
        }
        prof.check_invariants();

        if (spec.run_bound_checks && row.q <= spec.bound_check_max_q && prof.m_e)
            row.bounds = bound_check(prof, ring);

        row.profile = std::move(prof);
    } catch (const std::exception& ex) {
        row.status = ex.what();
        if (row.q == 0) {
            // q may not have been computed; best effort for the report.
            std::uint64_t q = 1;
            for (std::uint32_t i = 0; i < e && q < kMaxBracketQ; ++i) q *= p;
            row.q = q;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return row;
}

} // namespace

SweepReport run_sweep(const RingSpec& spec, unsigned jobs) {
    SweepOptions opts;
    opts.jobs = jobs;
    return run_sweep(spec, opts);
}

SweepReport run_sweep(const RingSpec& spec, const SweepOptions& opts) {
    spec.validate();
    SweepReport report;
    report.spec = spec;
    report.tool_version = kToolVersion;

    std::vector<std::pair<std::uint64_t, std::uint32_t>> tasks;
    for (std::uint64_t p : spec.primes)
        for (std::uint32_t e = 1; e <= spec.e_max; ++e) tasks.emplace_back(p, e);
    std::sort(tasks.begin(), tasks.end());
    report.rows.resize(tasks.size());

    unsigned jobs = opts.jobs < 1 ? 1 : opts.jobs;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            report.rows[i] = run_task(spec, tasks[i].first, tasks[i].second, opts);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Per-prime summaries: deepest successful e wins; element brackets are
    // the usual max-lower / min-upper over levels.
    for (std::uint64_t p : spec.primes) {
        PerPrimeSummary s;
        s.p = p;
        const SweepRow* deepest = nullptr;
        std::vector<std::optional<ElementBracket>> acc(spec.designated_elements.size());
        for (const auto& row : report.rows) {
            if (row.p != p || !row.ok()) continue;
            if (!deepest || row.e > deepest->e) deepest = &row;
            for (std::size_t i = 0; i < row.elements.size(); ++i) {
                Rational lo(row.elements[i].nu, std::int64_t(row.q));
                Rational hi(row.elements[i].mu, std::int64_t(row.q));
                if (!acc[i]) {
                    acc[i] = ElementBracket{row.elements[i].name, lo, hi, row.e};
                } else {
                    if (lo > acc[i]->lower) acc[i]->lower = lo;
                    if (hi < acc[i]->upper) acc[i]->upper = hi;
                    acc[i]->e_used = std::max(acc[i]->e_used, row.e);
                }
            }
        }
        if (deepest) {
            s.s_estimate = deepest->profile->s_e;
            s.s_uncertainty = Rational(1, std::int64_t(deepest->q));
            if (deepest->profile->alpha_e) s.alpha_estimate = *deepest->profile->alpha_e;
        }
        for (auto& b : acc)
            if (b) s.brackets.push_back(*b);
        report.per_prime.push_back(std::move(s));
    }

    // Aggregates are pure functions of the rows.
    for (const auto& s : report.per_prime) {
        if (s.s_estimate && (!report.aggregate.s_min || *s.s_estimate < *report.aggregate.s_min))
            report.aggregate.s_min = s.s_estimate;
        if (s.alpha_estimate &&
            (!report.aggregate.alpha_min || *s.alpha_estimate < *report.aggregate.alpha_min))
            report.aggregate.alpha_min = s.alpha_estimate;
    }
    for (std::size_t i = 0; i < spec.designated_elements.size(); ++i) {
        std::optional<Aggregate::Intersection> ix;
        for (const auto& s : report.per_prime) {
            if (i >= s.brackets.size()) continue;
            const auto& b = s.brackets[i];
            if (!ix) {
                ix = Aggregate::Intersection{b.name, b.lower, b.upper, true};
            } else {
                if (b.lower > ix->lower) ix->lower = b.lower;
                if (b.upper < ix->upper) ix->upper = b.upper;
            }
        }
        if (ix) {
            ix->nonempty = ix->lower < ix->upper;
            report.aggregate.element_brackets.push_back(*ix);
        }
    }
    if (spec.toric_rays) {
        ToricCone cone = make_cone(*spec.toric_rays);
        Rational sig = toric_fsignature(cone);
        report.aggregate.toric_signature = sig;
        for (const auto& row : report.rows) {
            if (!row.ok()) continue;
            Rational err = (row.profile->s_e - sig).abs();
            if (err > Rational(1, std::int64_t(row.q))) {
                report.aggregate.toric_cross_check_ok = false;
                break;
            }
        }
    }
    return report;
}

MultiplicityEstimate multiplicity_estimate(const RingSpec& spec, std::uint64_t p,
                                           std::uint32_t n_max) {
    if (n_max < 3) throw std::invalid_argument("multiplicity_estimate: n_max must be >= 3");
    RingPresentation ring = spec.presentation(p);
    MultiplicityEstimate out;

    if (ring.ambient_regular()) {
        out.exact = 1;
    } else if (ring.is_standard_graded) {
        auto ord = weighted_order(ring.relation_mod_p);
        out.exact = *ord; // e(R) = ord(g) for a standard-graded hypersurface
    }

    const MonomialOrder gord = MonomialOrder::grevlex();
    std::uint64_t dfact = 1;
    for (std::size_t i = 2; i <= ring.dim(); ++i) dfact *= i;

    for (std::uint32_t n = n_max >= 2 ? n_max - 2 : 1; n <= n_max; ++n) {
        std::vector<Poly> gens = maximal_ideal_power_gens(ring.amb, ring.fp, n);
        if (!ring.ambient_regular()) gens.push_back(ring.relation_mod_p);
        IdealBasis ideal(std::move(gens));
        auto len = colength(ideal, gord);
        if (!len) throw std::logic_error("multiplicity_estimate: infinite colength");
        std::uint64_t nd = 1;
        for (std::size_t i = 0; i < ring.dim(); ++i) nd *= n;
        Rational fit(std::int64_t(dfact * *len), std::int64_t(nd));
        out.fit_points.emplace_back(n, fit);
    }
    out.fitted = out.fit_points.back().second;
    return out;
}

} // namespace fsig
