#include "fsig/toric.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace fsig {

namespace {

using Vec = std::vector<BigRat>;
using Mat = std::vector<Vec>;

/// Solve A x = b exactly; nullopt when A is singular.
std::optional<Vec> solve(Mat a, Vec b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t r = c; r < n; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == SIZE_MAX) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            BigRat f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

std::size_t rational_rank(Mat a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t r = rk; r < rows; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == SIZE_MAX) continue;
        std::swap(a[rk], a[piv]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            BigRat f = a[r][c] / a[rk][c];
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rk][j];
        }
        ++rk;
    }
    return rk;
}

BigRat det(Mat a) {
    const std::size_t n = a.size();
    BigRat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t r = c; r < n; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == SIZE_MAX) return 0;
        if (piv != c) {
            std::swap(a[c], a[piv]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            BigRat f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return d;
}

std::int64_t gcd_vec(const std::vector<std::int64_t>& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

BigRat dot(const std::vector<std::int64_t>& a, const Vec& u) {
    BigRat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += BigRat(a[i]) * u[i];
    return s;
}

/// Enumerate k-subsets of [0, m).
void subsets(std::size_t m, std::size_t k, std::vector<std::size_t>& cur,
             const std::function<void(const std::vector<std::size_t>&)>& fn, std::size_t from) {
    if (cur.size() == k) {
        fn(cur);
        return;
    }
    for (std::size_t i = from; i < m; ++i) {
        cur.push_back(i);
        subsets(m, k, cur, fn, i + 1);
        cur.pop_back();
    }
}

/// Affine dimension of a point set.
std::size_t affine_dim(const std::vector<Vec>& pts) {
    if (pts.size() <= 1) return 0;
    Mat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Vec d(pts[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(d));
    }
    return rational_rank(std::move(diffs));
}

} // namespace

void RationalPolytope::add_halfspace(std::vector<std::int64_t> a, BigRat b) {
    if (dim == 0) dim = a.size();
    if (a.size() != dim) throw std::invalid_argument("RationalPolytope: dimension mismatch");
    normals.push_back(std::move(a));
    offsets.push_back(std::move(b));
}

std::vector<std::vector<BigRat>> polytope_vertices(const RationalPolytope& P) {
    const std::size_t d = P.dim, m = P.normals.size();
    if (d == 0 || d > 4) throw std::invalid_argument("polytope_vertices: dim must be 1..4");
    if (m < d) return {};

    std::vector<Vec> verts;
    std::vector<std::size_t> cur;
    subsets(m, d, cur, [&](const std::vector<std::size_t>& s) {
        Mat a;
        Vec b;
        for (auto i : s) {
            Vec row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = BigRat(P.normals[i][j]);
            a.push_back(std::move(row));
            b.push_back(P.offsets[i]);
        }
        auto x = solve(std::move(a), std::move(b));
        if (!x) return;
        for (std::size_t i = 0; i < m; ++i)
            if (dot(P.normals[i], *x) > P.offsets[i]) return;
        if (std::find(verts.begin(), verts.end(), *x) == verts.end()) verts.push_back(*x);
    }, 0);
    return verts;
}

namespace {

/// Recursive fan triangulation of a face given by its vertex set. The face
/// has dimension `fdim`; sub-faces are cut out by the remaining halfspaces.
/// Emits index tuples (into `verts`) of fdim-simplices.
void triangulate_face(const RationalPolytope& P, const std::vector<Vec>& verts,
                      std::vector<std::size_t> face, std::size_t fdim,
                      std::vector<std::vector<std::size_t>>& out) {
    std::sort(face.begin(), face.end());
    if (fdim == 0) {
        out.push_back(face);
        return;
    }
    if (face.size() == fdim + 1) { // already a simplex
        out.push_back(face);
        return;
    }
    const std::size_t apex = face[0];
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t h = 0; h < P.normals.size(); ++h) {
        std::vector<std::size_t> sub;
        for (auto vi : face)
            if (dot(P.normals[h], verts[vi]) == P.offsets[h]) sub.push_back(vi);
        if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
        if (sub.size() < fdim) continue;
        std::vector<Vec> pts;
        for (auto vi : sub) pts.push_back(verts[vi]);
        if (affine_dim(pts) != fdim - 1) continue;
        if (!seen.insert(sub).second) continue; // same facet via another halfspace
        std::vector<std::vector<std::size_t>> sub_simplices;
        triangulate_face(P, verts, sub, fdim - 1, sub_simplices);
        for (auto& s : sub_simplices) {
            s.push_back(apex);
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
    }
}

/// Any nonzero u with A u <= 0 certifies unboundedness. A pointed recession
/// cone that is nontrivial has an extreme ray on d-1 independent facets, so
/// enumerating (d-1)-subsets with a 1-dimensional kernel is complete.
bool has_recession_ray(const RationalPolytope& P) {
    const std::size_t d = P.dim, m = P.normals.size();
    Mat all;
    for (const auto& n : P.normals) {
        Vec row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = BigRat(n[j]);
        all.push_back(std::move(row));
    }
    if (rational_rank(all) < d) return true; // recession cone contains a line

    if (d == 1) {
        // Ray +1 or -1 must be blocked by some normal.
        bool plus_blocked = false, minus_blocked = false;
        for (const auto& n : P.normals) {
            if (n[0] > 0) plus_blocked = true;
            if (n[0] < 0) minus_blocked = true;
        }
        return !(plus_blocked && minus_blocked);
    }

    bool found = false;
    std::vector<std::size_t> cur;
    subsets(m, d - 1, cur, [&](const std::vector<std::size_t>& s) {
        if (found) return;
        Mat a;
        for (auto i : s) {
            Vec row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = BigRat(P.normals[i][j]);
            a.push_back(std::move(row));
        }
        if (rational_rank(a) != d - 1) return;
        // One-dimensional kernel: solve with an appended normalization row.
        for (std::size_t free_c = 0; free_c < d && !found; ++free_c) {
            Mat aa = a;
            Vec b(d, BigRat(0));
            Vec row(d, BigRat(0));
            row[free_c] = 1;
            aa.push_back(row);
            b[d - 1] = 1;
            auto x = solve(std::move(aa), std::move(b));
            if (!x) continue;
            for (int sign = 0; sign < 2 && !found; ++sign) {
                bool ok = true;
                for (const auto& n : P.normals) {
                    BigRat v = dot(n, *x);
                    if (sign) v = -v;
                    if (v > 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) found = true;
            }
        }
    }, 0);
    return found;
}

} // namespace

BigRat polytope_volume(const RationalPolytope& P) {
    const std::size_t d = P.dim;
    if (d == 0 || d > 4) throw std::invalid_argument("polytope_volume: dim must be 1..4");

    auto verts = polytope_vertices(P);
    if (verts.empty()) {
        if (has_recession_ray(P)) {
            // Distinguish "empty" from "unbounded": emptiness of the whole
            // system with a nontrivial recession cone still means no volume,
            // but a full-rank system with no vertex is genuinely unbounded
            // only when feasible. Feasibility without vertices can only
            // happen at rank < d, which has_recession_ray already flags.
            throw std::invalid_argument("polytope_volume: unbounded polytope");
        }
        return 0;
    }
    if (has_recession_ray(P)) throw std::invalid_argument("polytope_volume: unbounded polytope");
    if (verts.size() < d + 1) return 0; // lower-dimensional

    std::vector<Vec> pts(verts.begin(), verts.end());
    if (affine_dim(pts) < d) return 0;

    std::vector<std::size_t> all(verts.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<std::size_t>> simplices;
    triangulate_face(P, verts, all, d, simplices);

    BigRat vol = 0;
    for (const auto& s : simplices) {
        Mat diff;
        for (std::size_t i = 1; i < s.size(); ++i) {
            Vec row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = verts[s[i]][j] - verts[s[0]][j];
            diff.push_back(std::move(row));
        }
        BigRat v = det(std::move(diff));
        if (v < 0) v = -v;
        vol += v;
    }
    std::int64_t dfact = 1;
    for (std::size_t i = 2; i <= d; ++i) dfact *= std::int64_t(i);
    return vol / dfact;
}

ToricCone make_cone(std::vector<std::vector<std::int64_t>> rays) {
    if (rays.empty()) throw std::invalid_argument("make_cone: no rays");
    const std::size_t d = rays[0].size();
    if (d == 0 || d > 4) throw std::invalid_argument("make_cone: dim must be 1..4");
    for (auto& r : rays) {
        if (r.size() != d) throw std::invalid_argument("make_cone: ray dimension mismatch");
        std::int64_t g = gcd_vec(r);
        if (g == 0) throw std::invalid_argument("make_cone: zero ray");
        if (g > 1)
            for (auto& x : r) x /= g;
    }

    // Full-dimensional: the normals must span R^d (bounded slab).
    Mat m;
    for (const auto& r : rays) {
        Vec row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = BigRat(r[j]);
        m.push_back(std::move(row));
    }
    if (rational_rank(m) != d)
        throw std::invalid_argument("make_cone: rays do not span (cone not full-dimensional)");

    // Strong convexity: the cone on the rays is pointed iff 0 is not a
    // convex combination of them (Caratheodory: subsets of size <= d+1).
    const std::size_t n = rays.size();
    for (std::size_t k = 2; k <= std::min(n, d + 1); ++k) {
        std::vector<std::size_t> cur;
        bool bad = false;
        subsets(n, k, cur, [&](const std::vector<std::size_t>& s) {
            if (bad) return;
            // Solve sum lambda_i ray_i = 0, sum lambda_i = 1, lambda >= 0.
            Mat a(d + 1, Vec(k, BigRat(0)));
            Vec b(d + 1, BigRat(0));
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t rr = 0; rr < d; ++rr) a[rr][c] = BigRat(rays[s[c]][rr]);
            for (std::size_t c = 0; c < k; ++c) a[d][c] = 1;
            b[d] = 1;
            // Least-structure exact solve: square it by dropping dependent
            // rows via rank-revealing elimination on the augmented system.
            Mat aug = a;
            for (std::size_t rr = 0; rr < d + 1; ++rr) aug[rr].push_back(b[rr]);
            std::size_t rk_a = rational_rank(a), rk_aug = rational_rank(aug);
            if (rk_a != rk_aug) return; // inconsistent, no combination
            if (rk_a < k) return;       // underdetermined subsets are covered at smaller k
            // Unique solution: solve the first k independent rows.
            Mat sq;
            Vec sb;
            std::size_t got = 0;
            for (std::size_t rr = 0; rr < d + 1 && got < k; ++rr) {
                Mat test = sq;
                test.push_back(a[rr]);
                if (rational_rank(test) > sq.size()) {
                    sq.push_back(a[rr]);
                    sb.push_back(b[rr]);
                    ++got;
                }
            }
            auto x = solve(std::move(sq), std::move(sb));
            if (!x) return;
            for (std::size_t rr = 0; rr < d + 1; ++rr) {
                BigRat acc = 0;
                for (std::size_t c = 0; c < k; ++c) acc += a[rr][c] * (*x)[c];
                if (acc != b[rr]) return;
            }
            for (const auto& l : *x)
                if (l < 0) return;
            bad = true;
        }, 0);
        if (bad)
            throw std::invalid_argument("make_cone: cone is not strongly convex");
    }

    ToricCone c;
    c.dim = d;
    c.rays = std::move(rays);
    return c;
}

BigRat toric_fsignature_exact(const ToricCone& cone) {
    RationalPolytope P;
    for (const auto& v : cone.rays) {
        P.add_halfspace(v, 1); // <u, v> <= 1
        std::vector<std::int64_t> neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        P.add_halfspace(std::move(neg), 0); // <u, v> >= 0
    }
    BigRat vol = polytope_volume(P);
    if (vol <= 0) throw std::logic_error("toric_fsignature: slab volume not positive");
    return vol;
}

Rational toric_fsignature(const ToricCone& cone) {
    BigRat v = toric_fsignature_exact(cone);
    auto num = boost::multiprecision::numerator(v);
    auto den = boost::multiprecision::denominator(v);
    if (num > INT64_MAX || den > INT64_MAX)
        throw std::overflow_error("toric_fsignature: value does not fit 64-bit rational");
    return Rational(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
}

namespace {

/// Unimodular column operations bringing the row vector g to (gcd, 0, .., 0);
/// returns the d x d transform U with g * U = (gcd, 0, ..., 0).
std::vector<std::vector<std::int64_t>> row_gcd_transform(std::vector<std::int64_t> g) {
    const std::size_t d = g.size();
    std::vector<std::vector<std::int64_t>> u(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
    auto colop = [&](std::size_t a, std::size_t b, std::int64_t f) {
        // col_a -= f * col_b
        g[a] -= f * g[b];
        for (std::size_t r = 0; r < d; ++r) u[r][a] -= f * u[r][b];
    };
    auto colswap = [&](std::size_t a, std::size_t b) {
        std::swap(g[a], g[b]);
        for (std::size_t r = 0; r < d; ++r) std::swap(u[r][a], u[r][b]);
    };
    // Euclid across the columns.
    for (;;) {
        std::size_t nz = 0, first = SIZE_MAX;
        for (std::size_t i = 0; i < d; ++i)
            if (g[i] != 0) {
                ++nz;
                if (first == SIZE_MAX) first = i;
            }
        if (nz == 0) throw std::invalid_argument("veronese_cone: zero grading functional");
        if (first != 0) colswap(0, first);
        if (nz == 1) break;
        // Reduce all others modulo g[0]; the smallest survivor rotates in.
        std::size_t best = 0;
        for (std::size_t i = 1; i < d; ++i) {
            if (g[i] == 0) continue;
            std::int64_t f = g[i] / g[0];
            colop(i, 0, f);
            if (g[i] != 0 && (best == 0 || std::abs(g[i]) < std::abs(g[best]))) best = i;
        }
        if (best != 0) colswap(0, best);
    }
    if (g[0] < 0) {
        for (std::size_t r = 0; r < d; ++r) u[r][0] = -u[r][0];
        g[0] = -g[0];
    }
    if (g[0] != 1)
        throw std::invalid_argument("veronese_cone: grading functional must be primitive");
    return u;
}

} // namespace

ToricCone veronese_cone(const ToricCone& cone, std::uint64_t n) {
    return veronese_cone(cone, n, std::vector<std::int64_t>(cone.dim, 1));
}

ToricCone veronese_cone(const ToricCone& cone, std::uint64_t n,
                        const std::vector<std::int64_t>& grading) {
    if (n < 1) throw std::invalid_argument("veronese_cone: n must be >= 1");
    if (n == 1) return cone;
    if (grading.size() != cone.dim)
        throw std::invalid_argument("veronese_cone: grading dimension mismatch");
    const std::size_t d = cone.dim;

    // Basis of the sublattice { u : <grading, u> == 0 mod n }: with U from
    // the gcd transform, columns are (n * U e_1, U e_2, ..., U e_d).
    auto u = row_gcd_transform(grading);
    std::vector<std::vector<std::int64_t>> basis(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            basis[r][c] = u[r][c] * (c == 0 ? std::int64_t(n) : 1);

    // Normals transform contravariantly: v' = B^T v; re-primitivize.
    std::vector<std::vector<std::int64_t>> new_rays;
    for (const auto& v : cone.rays) {
        std::vector<std::int64_t> nv(d, 0);
        for (std::size_t c = 0; c < d; ++c)
            for (std::size_t r = 0; r < d; ++r) nv[c] += basis[r][c] * v[r];
        new_rays.push_back(std::move(nv));
    }
    return make_cone(std::move(new_rays));
}

} // namespace fsig
