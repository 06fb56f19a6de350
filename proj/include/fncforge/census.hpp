// Plane projective point counts, the classical bounds, arc checking, and
// censuses of nonclassical cyclic covers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fncforge/bipoly.hpp"
#include "fncforge/errors.hpp"
#include "fncforge/field.hpp"
#include "fncforge/mvsp.hpp"
#include "fncforge/sepcurves.hpp"
#include "fncforge/superelliptic.hpp"
#include "fncforge/unipoly.hpp"

namespace fncforge {

// Desk-scale cap on |PG(2, q)| scans.  FNC_FORGE_CAP overrides when set.
inline uint64_t default_plane_cap() {
    if (const char* env = std::getenv("FNC_FORGE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return uint64_t(v);
    }
    return uint64_t(1) << 22;
}

// A point of PG(2, q); the first nonzero coordinate is scaled to 1, so equal
// triples mean equal points.
struct ProjPoint {
    uint32_t x = 0, y = 0, z = 0;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

inline ProjPoint normalize_point(const Field* F, uint32_t x, uint32_t y, uint32_t z) {
    uint32_t lead = x != 0 ? x : y != 0 ? y : z;
    if (lead == 0) throw Error("(0 : 0 : 0) is not a projective point");
    const uint32_t s = F->inv(lead);
    return {F->mul(x, s), F->mul(y, s), F->mul(z, s)};
}

// Scan order (1 : y : z), (0 : 1 : z), (0 : 0 : 1); q^2 + q + 1 points.
inline std::vector<ProjPoint> pg2_points(const Field* F, uint64_t cap = default_plane_cap()) {
    const uint64_t q = F->size();
    if (q * q + q + 1 > cap)
        throw TooLarge("projective plane larger than the cap " + std::to_string(cap));
    const uint32_t one = F->from_int(1);
    std::vector<ProjPoint> pts;
    pts.reserve(size_t(q * q + q + 1));
    for (uint64_t y = 0; y < q; ++y)
        for (uint64_t z = 0; z < q; ++z) pts.push_back({one, uint32_t(y), uint32_t(z)});
    for (uint64_t z = 0; z < q; ++z) pts.push_back({0, one, uint32_t(z)});
    pts.push_back({0, 0, one});
    return pts;
}

inline int total_degree(const BiPoly& C) {
    int d = UniPoly::kNegInfDeg;
    for (const auto& [k, c] : C.terms()) d = std::max(d, k.first + k.second);
    return d;
}

// Value of the degree-d homogenization z^d C(x/z, y/z) at a projective point.
inline uint32_t eval_homogeneous(const BiPoly& C, int d, const ProjPoint& pt) {
    const Field* F = C.field();
    std::vector<uint32_t> xs(size_t(d) + 1), ys(size_t(d) + 1), zs(size_t(d) + 1);
    xs[0] = ys[0] = zs[0] = F->from_int(1);
    for (int i = 1; i <= d; ++i) {
        xs[size_t(i)] = F->mul(xs[size_t(i) - 1], pt.x);
        ys[size_t(i)] = F->mul(ys[size_t(i) - 1], pt.y);
        zs[size_t(i)] = F->mul(zs[size_t(i) - 1], pt.z);
    }
    uint32_t acc = 0;
    for (const auto& [k, c] : C.terms()) {
        const int j = k.first, i = k.second;
        acc = F->add(acc, F->mul(c, F->mul(xs[size_t(i)],
                                           F->mul(ys[size_t(j)], zs[size_t(d - i - j)]))));
    }
    return acc;
}

// Points of the plane projective closure, in scan order.
inline std::vector<ProjPoint> projective_zeros(const BiPoly& C, uint64_t cap = default_plane_cap()) {
    const int d = total_degree(C);
    if (d < 1) throw ConstantInput("the closure of a constant is not a curve");
    std::vector<ProjPoint> zeros;
    for (const ProjPoint& pt : pg2_points(C.field(), cap))
        if (eval_homogeneous(C, d, pt) == 0) zeros.push_back(pt);
    return zeros;
}

// Affine solutions C(x, y) = 0 over the field itself.
inline uint64_t count_points_affine(const BiPoly& C) {
    const Field* F = C.field();
    uint64_t count = 0;
    for (uint64_t x = 0; x < F->size(); ++x)
        for (uint64_t y = 0; y < F->size(); ++y)
            if (C.eval(uint32_t(x), uint32_t(y)) == 0) ++count;
    return count;
}

// Zeros of the top-degree form on the line z = 0, scanned as (1 : t : 0)
// and (0 : 1 : 0).  Independent of the full projective scan.
inline uint64_t count_points_at_infinity(const BiPoly& C) {
    const int d = total_degree(C);
    if (d < 1) throw ConstantInput("the closure of a constant is not a curve");
    const Field* F = C.field();
    std::vector<uint32_t> co(size_t(d) + 1, 0);
    for (int j = 0; j <= d; ++j) co[size_t(j)] = C.coeff(d - j, j);
    UniPoly slice(F, std::move(co));  // top form at (1, t)
    uint64_t count = 0;
    for (uint64_t t = 0; t < F->size(); ++t)
        if (slice.eval(uint32_t(t)) == 0) ++count;
    if (C.coeff(0, d) == 0) ++count;
    return count;
}

struct CurveStats {
    uint64_t N = 0;
    int d = 0;
    int64_t hv_value = 0;  // d (q - d + 2)
    std::optional<uint64_t> genus;
    std::optional<uint64_t> nu;
    std::optional<int64_t> sv_bound_value;
    std::optional<bool> smooth_plane;
};

inline CurveStats count_points_projective(const BiPoly& C, uint64_t cap = default_plane_cap()) {
    CurveStats s;
    s.N = projective_zeros(C, cap).size();
    s.d = total_degree(C);
    const int64_t q = int64_t(C.field()->size());
    s.hv_value = int64_t(s.d) * (q - int64_t(s.d) + 2);
    return s;
}

// y^n - f(x) as a bivariate polynomial.
inline BiPoly curve_poly(const SuperCurve& c) {
    const Field* K = c.field();
    return BiPoly::from_y(UniPoly::monomial(K, K->from_int(1), c.n)) - BiPoly::from_x(c.f);
}

inline CurveStats count_points_projective(const SuperCurve& c, uint64_t cap = default_plane_cap()) {
    CurveStats s = count_points_projective(curve_poly(c), cap);
    try {
        GenusReport g = kummer_genus(c);
        s.genus = g.genus;
        s.smooth_plane = g.smooth_plane;
    } catch (const Error&) {
        // wild exponent or a split cover: no genus to report
    }
    return s;
}

inline CurveStats count_points_projective(const SepCurve& c, uint64_t cap = default_plane_cap()) {
    return count_points_projective(c.difference(), cap);
}

namespace detail {

inline uint64_t least_prime_factor(uint64_t m) {
    for (uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return d;
    return m;
}

}  // namespace detail

// floor((nu (2g - 2) + (q + 2) d) / 2); nu must be 1 or a power of the
// characteristic of F_q.
inline int64_t sv_bound(int d, uint64_t genus, uint64_t q, uint64_t nu) {
    if (q < 2) throw BadNu("q must be a prime power");
    if (nu == 0) throw BadNu("nu must be 1 or a power of the characteristic");
    if (nu != 1) {
        const uint64_t p = detail::least_prime_factor(q);
        uint64_t m = nu;
        while (m % p == 0) m /= p;
        if (m != 1)
            throw BadNu("nu = " + std::to_string(nu) + " is not a power of " + std::to_string(p));
    }
    const int64_t num =
        int64_t(nu) * (2 * int64_t(genus) - 2) + int64_t(q + 2) * int64_t(d);
    return num >= 0 ? num / 2 : -((1 - num) / 2);
}

// Attach the bound for a chosen nu; the stats must carry a genus.
inline CurveStats with_sv_bound(CurveStats s, uint64_t q, uint64_t nu) {
    if (!s.genus) throw PreconditionFailed("the bound needs a genus");
    s.nu = nu;
    s.sv_bound_value = sv_bound(s.d, *s.genus, q, nu);
    return s;
}

struct HvhReport {
    uint64_t N = 0;
    int64_t cover_count = 0;  // n (q - n + 2)
    bool smooth_plane = false;
    bool bound_holds = false;
    bool equality = false;
    bool equality_iff_smooth = false;
};

// Count law for absolutely irreducible nonclassical covers: at least
// n(q - n + 2) points, with equality exactly at smooth plane models.
inline HvhReport hvh_check(const SuperCurve& c, uint64_t cap = default_plane_cap()) {
    if (!garcia_test(c))
        throw PreconditionFailed("the count law needs a nonclassical cover");
    if (kummer_irreducible(c) != Irreducibility::kAbsolutelyIrreducible)
        throw PreconditionFailed("the count law needs an absolutely irreducible cover");
    const int64_t q = int64_t(c.field()->size());
    HvhReport rep;
    rep.N = count_points_projective(curve_poly(c), cap).N;
    rep.cover_count = int64_t(c.n) * (q - int64_t(c.n) + 2);
    rep.smooth_plane = kummer_genus(c).smooth_plane;
    rep.bound_holds = int64_t(rep.N) >= rep.cover_count;
    rep.equality = int64_t(rep.N) == rep.cover_count;
    rep.equality_iff_smooth = rep.equality == rep.smooth_plane;
    return rep;
}

// Lines of PG(2, q) are dual triples [a : b : c]; incidence ax + by + cz = 0.
inline bool on_line(const Field* F, const ProjPoint& line, const ProjPoint& pt) {
    return F->add(F->mul(line.x, pt.x),
                  F->add(F->mul(line.y, pt.y), F->mul(line.z, pt.z))) == 0;
}

struct ArcReport {
    std::vector<ProjPoint> points;
    int d = 0;
    bool is_arc = false;       // every line holds <= d of the points, some line exactly d
    bool is_complete = false;  // no outside point can join without breaking the cap
    std::optional<ProjPoint> witness;  // an addable point when not complete
};

inline ArcReport arc_completeness(const Field* F, std::vector<ProjPoint> points, int d,
                                  uint64_t cap = default_plane_cap()) {
    if (d < 1) throw Error("the line cap must be positive");
    const uint64_t q = F->size();
    const uint32_t one = F->from_int(1);
    std::set<ProjPoint> members(points.begin(), points.end());
    if (members.size() != points.size()) throw Error("arc points must be distinct");
    for (const ProjPoint& pt : points) {
        const bool canonical =
            pt.x == one || (pt.x == 0 && (pt.y == one || (pt.y == 0 && pt.z == one)));
        if (!canonical || pt.x >= q || pt.y >= q || pt.z >= q)
            throw Error("arc points must be canonical representatives of PG(2, q)");
    }

    const std::vector<ProjPoint> plane = pg2_points(F, cap);
    std::vector<int> on(plane.size(), 0);
    int max_on_line = 0;
    for (size_t li = 0; li < plane.size(); ++li) {
        for (const ProjPoint& pt : points)
            if (on_line(F, plane[li], pt)) ++on[li];
        max_on_line = std::max(max_on_line, on[li]);
    }

    ArcReport rep{std::move(points), d, max_on_line == d, true, std::nullopt};
    for (const ProjPoint& cand : plane) {
        if (members.count(cand)) continue;
        bool addable = true;
        for (size_t li = 0; li < plane.size() && addable; ++li)
            if (on[li] >= d && on_line(F, plane[li], cand)) addable = false;
        if (addable) {
            rep.is_complete = false;
            rep.witness = cand;
            break;
        }
    }
    return rep;
}

enum class CensusMode { kExhaustive, kConstructive };

struct CensusLimits {
    uint64_t exhaustive_max_q = 7;  // the search space is q^(n+1) for each divisor n
    int vf1_max_power = 2;          // (x^q - x)^m factors, m up to this
    int vf1_max_cofactor_degree = 1;  // p-th-power cofactors a(x)^p, deg a up to this
    uint64_t subset_max_q = 20;     // subset-indexed families need 2^q masks
};

struct CensusRecord {
    uint32_t n;
    UniPoly f;
    CurveStats stats;
    CorollaryReport corollary;
    Irreducibility irreducibility;
};

namespace detail {

inline std::vector<uint32_t> sorted_divisors(uint64_t m) {
    std::vector<uint32_t> out;
    for (uint64_t n = 1; n <= m; ++n)
        if (m % n == 0) out.push_back(uint32_t(n));
    return out;
}

inline void census_try(uint32_t n, const UniPoly& f, uint64_t cap,
                       std::vector<CensusRecord>& out) {
    if (f.is_constant()) return;
    try {
        SuperCurve c(n, f);
        if (!garcia_test(c)) return;
        out.push_back({n, f, count_points_projective(c, cap), corollary_checks(c),
                       kummer_irreducible(c)});
    } catch (const InvalidCurve&) {
    }
}

// Candidates assembled from the known minimal-value-set families.
inline std::vector<UniPoly> constructive_candidates(const Field* K, const CensusLimits& lim) {
    const uint64_t q = K->size();
    const uint64_t p = K->characteristic();
    std::vector<UniPoly> cands;

    // Full-value-set families over every proper subfield whose canonical
    // tower tops out at this very field object.
    const int s = K->degree_over_prime();
    for (int t = 1; t < s; ++t) {
        if (s % t != 0) continue;
        FieldTower tw = build_tower(p, t, s / t);
        if (tw.top.get() != K) continue;  // relative extension, different encoding
        for (UniPoly& f : w_enumerate(tw)) cands.push_back(std::move(f));
    }

    if (q <= lim.subset_max_q) {
        // Two-valued images of every nonempty proper subset, plus the
        // mirrored second-derivative-free family.
        for (uint64_t mask = 1; mask + 1 < (uint64_t(1) << q); ++mask) {
            std::vector<uint32_t> S;
            for (uint64_t a = 0; a < q; ++a)
                if (mask >> a & 1) S.push_back(uint32_t(a));
            cands.push_back(two_value_split(K, S));
        }
        for (const UniPoly& f : typeA_enumerate(K)) {
            cands.push_back(f);
            cands.push_back(UniPoly::one(K) - f);
        }
    }

    // One-valued forms (x^q - x)^m a(x)^p + shift.
    UniPoly van = field_vanishing_poly(K);
    UniPoly power = UniPoly::one(K);
    for (int m = 1; m <= lim.vf1_max_power; ++m) {
        power = power * van;
        std::vector<uint32_t> co(size_t(lim.vf1_max_cofactor_degree) + 1, 0);
        for (;;) {
            size_t i = 0;
            for (; i < co.size(); ++i) {
                co[i] = uint32_t((co[i] + 1) % q);
                if (co[i] != 0) break;
            }
            if (i == co.size()) break;
            UniPoly body = power * UniPoly(K, co).pow(p);
            for (uint64_t shift = 0; shift < q; ++shift)
                cands.push_back(body + UniPoly::constant(K, uint32_t(shift)));
        }
    }

    std::sort(cands.begin(), cands.end(), [](const UniPoly& a, const UniPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.coeffs() < b.coeffs();
    });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

}  // namespace detail

// Every y^n = f over the field that satisfies the closed-form nonclassicality
// criterion, n running over the divisors of q - 1.  Exhaustive mode scans all
// f with deg f <= n; constructive mode filters the assembled family
// candidates.  Records come back in a fixed canonical order.  only_n
// restricts to a single divisor so callers can partition work externally;
// concatenating the slices in divisor order reproduces the full run.
inline std::vector<CensusRecord> census_superelliptic(const Field* K, CensusMode mode,
                                                      const CensusLimits& limits = {},
                                                      uint64_t cap = default_plane_cap(),
                                                      std::optional<uint32_t> only_n = std::nullopt) {
    const uint64_t q = K->size();
    std::vector<CensusRecord> out;

    if (mode == CensusMode::kExhaustive) {
        if (q > limits.exhaustive_max_q)
            throw TooLarge("exhaustive census stops at q = " +
                           std::to_string(limits.exhaustive_max_q));
        for (uint32_t n : detail::sorted_divisors(q - 1)) {
            if (only_n && n != *only_n) continue;
            std::vector<uint32_t> co(size_t(n) + 1, 0);
            for (;;) {
                size_t i = 0;
                for (; i < co.size(); ++i) {
                    co[i] = uint32_t((co[i] + 1) % q);
                    if (co[i] != 0) break;
                }
                if (i == co.size()) break;
                detail::census_try(n, UniPoly(K, co), cap, out);
            }
        }
    } else {
        const std::vector<UniPoly> cands = detail::constructive_candidates(K, limits);
        for (uint32_t n : detail::sorted_divisors(q - 1)) {
            if (only_n && n != *only_n) continue;
            for (const UniPoly& f : cands) detail::census_try(n, f, cap, out);
        }
    }

    std::sort(out.begin(), out.end(), [](const CensusRecord& a, const CensusRecord& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.f.deg() != b.f.deg()) return a.f.deg() < b.f.deg();
        return a.f.coeffs() < b.f.coeffs();
    });
    return out;
}

}  // namespace fncforge
