#pragma once
// Cyclic covers y^n = f(x): the closed-form nonclassicality criterion, degree
// reduction by a projective coordinate swap, a six-part property battery,
// tame-cover genus from a characteristic-p squarefree split, and
// irreducibility certificates.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "fncforge/field.hpp"
#include "fncforge/roots.hpp"
#include "fncforge/unipoly.hpp"

namespace fncforge {

struct SuperCurve {
    uint32_t n;
    UniPoly f;

    SuperCurve(uint32_t n_in, UniPoly f_in) : n(n_in), f(std::move(f_in)) {
        if (n == 0) throw InvalidCurve("exponent must be positive");
        if (f.is_constant()) throw ConstantInput("right side must be nonconstant");
        if (n % f.field()->characteristic() == 0 && f.derivative().is_zero())
            throw InvalidCurve("y^n - f(x) must not be a p-th power up to scalars");
    }

    const Field* field() const { return f.field(); }
};

// n f (f^{(q-1)/n} - 1) = (x^q - x) f', checked exactly, with a degree
// comparison short-circuiting hopeless inputs before the big product.
inline bool garcia_test(const SuperCurve& c) {
    const Field* K = c.field();
    const uint64_t q = K->size();
    if ((q - 1) % c.n != 0) return false;
    const uint64_t e = (q - 1) / c.n;
    UniPoly fp = c.f.derivative();
    if (fp.is_zero()) return false;  // left side cannot vanish: p does not divide n
    if (uint64_t(c.f.deg()) * (e + 1) != q + uint64_t(fp.deg())) return false;
    UniPoly lhs = (c.f * (c.f.pow(e) - UniPoly::one(K))).scaled(K->from_int(int64_t(c.n)));
    return lhs == field_vanishing_poly(K) * fp;
}

// Moves x0 to the origin, homogenizes y^n - f to degree n, swaps x with the
// homogenizing variable and dehomogenizes: an F_q-projective change of
// coordinates, so it preserves the verdict of garcia_test and the projective
// point count.  The new right side has degree n - mult_{x0}(f).
inline SuperCurve reduce_degree(const SuperCurve& c, uint32_t x0) {
    const Field* K = c.field();
    if (uint64_t(x0) >= K->size()) throw NotARootProfile("translation point outside the field");
    const int d = c.f.deg(), n = int(c.n);
    if (d > n) throw DegreeTooHigh("degree reduction needs deg f <= n");
    UniPoly h = compose(c.f, UniPoly(K, {x0, K->from_int(1)}));
    std::vector<uint32_t> g(size_t(n) + 1, 0);
    for (int i = 0; i <= d; ++i) g[size_t(n - i)] = h.coeff(size_t(i));
    return {c.n, UniPoly(K, std::move(g))};
}

namespace detail {

inline void squarefree_rec(const UniPoly& f, uint32_t stride,
                           std::vector<std::pair<uint32_t, UniPoly>>& out) {
    const Field* K = f.field();
    const uint32_t p = uint32_t(K->characteristic());
    UniPoly fp = f.derivative();
    if (fp.is_zero()) {
        auto h = pth_power_root(f);
        if (!h) throw Error("monic polynomial in F[x^p] lost its p-th root");
        squarefree_rec(h->monic(), stride * p, out);
        return;
    }
    UniPoly c = poly_gcd(f, fp);
    UniPoly w = UniPoly::divrem(f, c).first.monic();
    uint32_t i = 1;
    while (!w.is_constant()) {
        UniPoly y = poly_gcd(w, c);
        UniPoly z = UniPoly::divrem(w, y).first;
        if (!z.is_constant()) out.emplace_back(stride * i, z.monic());
        w = y;
        c = UniPoly::divrem(c, y).first;
        ++i;
    }
    if (!c.is_constant()) {
        auto h = pth_power_root(c.monic());
        if (!h) throw Error("monic polynomial in F[x^p] lost its p-th root");
        squarefree_rec(h->monic(), stride * p, out);
    }
}

// f = lc * prod factor^multiplicity with the factors monic, squarefree and
// pairwise coprime; multiplicities are distinct.  Works across p-th power
// layers, so the multiplicities are the true closure ones.
inline std::vector<std::pair<uint32_t, UniPoly>> squarefree_decomposition(const UniPoly& f) {
    if (f.is_zero() || f.is_constant()) throw ConstantInput("nothing to split");
    std::vector<std::pair<uint32_t, UniPoly>> out;
    squarefree_rec(f.monic(), 1, out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.first < b.first;
    });
    return out;
}

}  // namespace detail

struct CorollaryReport {
    bool tame_exponent_and_derivative;     // p does not divide n, and f' != 0
    bool degree_window;                    // nq/(n+q-1) <= deg f <= n, attainment laws included
    bool root_field_matches_multiplicity;  // root in F_q iff p does not divide its multiplicity
    bool rational_root_and_simple_rule;    // an F_q-root exists; a simple root forces n = 1 mod p
    bool second_derivative_rule;           // n = 1 mod p iff f'' = 0
    bool interior_multiplicity_bounds;     // 0 < k < deg f: k|V_f| <= n-1 and k = n mod p

    bool all_pass() const {
        return tame_exponent_and_derivative && degree_window && root_field_matches_multiplicity &&
               rational_root_and_simple_rule && second_derivative_rule &&
               interior_multiplicity_bounds;
    }
};

// Necessary conditions carried by every passing curve; a failing flag on a
// passing curve means a bug, not a property of the curve.
inline CorollaryReport corollary_checks(const SuperCurve& c) {
    if (!garcia_test(c)) throw PreconditionFailed("property battery needs a passing curve");
    const Field* K = c.field();
    const uint64_t p = K->characteristic(), q = K->size(), n = c.n;
    const uint64_t d = uint64_t(c.f.deg());
    UniPoly fp = c.f.derivative();

    CorollaryReport r{};
    r.tame_exponent_and_derivative = n % p != 0 && !fp.is_zero();

    const bool window = n * q <= d * (n + q - 1) && d <= n;
    const bool upper_iff = (d == n) == (d % p != 0);
    const bool lower_iff = (d * (n + q - 1) == n * q) == (fp.deg() == 0);
    r.degree_window = window && upper_iff && lower_iff;

    UniPoly residual = c.f.monic();
    std::vector<std::pair<uint32_t, uint32_t>> rational;  // (root, multiplicity)
    for (uint64_t a = 0; a < q; ++a)
        if (residual.eval(uint32_t(a)) == 0)
            rational.emplace_back(uint32_t(a),
                                  uint32_t(detail::strip_root(residual, uint32_t(a))));
    bool mult_ok = true;
    for (const auto& [root, k] : rational) {
        (void)root;
        if (k % p == 0) mult_ok = false;
    }
    r.root_field_matches_multiplicity =
        mult_ok && (residual.is_constant() || pth_power_root(residual).has_value());

    UniPoly repeated = fp.is_zero() ? c.f.monic() : poly_gcd(c.f, fp);
    UniPoly radical = UniPoly::divrem(c.f, repeated).first;
    bool has_simple = !radical.is_constant() &&
                      UniPoly::divrem(radical, poly_gcd(radical, repeated)).first.deg() >= 1;
    r.rational_root_and_simple_rule = !rational.empty() && (!has_simple || n % p == 1);

    r.second_derivative_rule = (n % p == 1) == fp.derivative().is_zero();

    const uint64_t vsize = value_set(c.f).size;
    bool interior_ok = true;
    for (const auto& [root, k] : rational) {
        (void)root;
        if (k == 0 || uint64_t(k) >= d) continue;
        if (uint64_t(k) * vsize > n - 1 || k % p != n % p) interior_ok = false;
    }
    r.interior_multiplicity_bounds = interior_ok;
    return r;
}

// Distinct roots sharing a multiplicity, bundled as the squarefree polynomial
// that vanishes exactly on them.
struct RamificationClass {
    UniPoly locus;
    uint32_t multiplicity;
    uint64_t gcd_with_n;
};

struct GenusReport {
    uint64_t genus = 0;
    std::vector<RamificationClass> affine;
    uint64_t infinite_valuation = 0;  // -deg f reduced mod n
    uint64_t infinite_gcd = 0;
    bool smooth_plane = false;
};

// Tame cyclic cover genus: g = 1 - n + (1/2) sum over places of (n - gcd(n, v)),
// the places being the distinct roots of f (v = multiplicity) and the point
// at infinity (v = -deg f mod n).
inline GenusReport kummer_genus(const SuperCurve& c) {
    const Field* K = c.field();
    const uint64_t n = c.n;
    if (n % K->characteristic() == 0)
        throw CharDividesN("genus formula needs the exponent prime to the characteristic");

    GenusReport rep;
    uint64_t S = 0;
    for (const auto& [m, z] : detail::squarefree_decomposition(c.f)) {
        const uint64_t g = std::gcd(n, uint64_t(m));
        rep.affine.push_back({z, m, g});
        S += uint64_t(z.deg()) * (n - g);
    }
    const uint64_t d = uint64_t(c.f.deg());
    rep.infinite_valuation = (n - d % n) % n;
    rep.infinite_gcd = std::gcd(n, rep.infinite_valuation);
    S += n - rep.infinite_gcd;
    if (S % 2 != 0) throw Error("odd ramification sum in a tame cover");
    const int64_t g2 = int64_t(S / 2) + 1 - int64_t(n);
    if (g2 < 0) throw Error("negative genus: the cover splits");
    rep.genus = uint64_t(g2);

    UniPoly fp = c.f.derivative();
    const bool separable = !fp.is_zero() && poly_gcd(c.f, fp).is_constant();
    rep.smooth_plane = separable && (d == n || d + 1 == n);
    return rep;
}

enum class Irreducibility { kAbsolutelyIrreducible, kRationalFactors, kUnknown };

// gcd(n, all root multiplicities) = 1 certifies absolute irreducibility of
// y^n - f.  Failing that, an affine solution with y != 0 certifies that every
// F_q-factor is absolutely irreducible.  Anything else stays unknown.
inline Irreducibility kummer_irreducible(const SuperCurve& c) {
    const Field* K = c.field();
    const uint64_t q = K->size();
    if ((q - 1) % c.n != 0) throw PreconditionFailed("exponent must divide q - 1");

    uint64_t g = c.n;
    for (const auto& [m, z] : detail::squarefree_decomposition(c.f)) {
        (void)z;
        g = std::gcd(g, uint64_t(m));
    }
    if (g == 1) return Irreducibility::kAbsolutelyIrreducible;

    const uint64_t e = (q - 1) / c.n;
    for (uint64_t a = 0; a < q; ++a) {
        const uint32_t v = c.f.eval(uint32_t(a));
        if (v != 0 && K->pow(v, e) == K->from_int(1)) return Irreducibility::kRationalFactors;
    }
    return Irreducibility::kUnknown;
}

}  // namespace fncforge
