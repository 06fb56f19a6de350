#pragma once
// Minimal value set polynomials: the multiplicative certificate T(f) =
// theta (x^q - x) f', the (v, m, k) structure decomposition, the family with
// full subfield value set over a tower, and the |V| <= 2 constructions.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fncforge/field.hpp"
#include "fncforge/roots.hpp"
#include "fncforge/unipoly.hpp"

namespace fncforge {

// |V_f| meets floor((q-1)/deg f) + 1.
inline bool is_mvsp(const UniPoly& f) {
    if (f.is_constant()) throw ConstantInput("value set bound needs a nonconstant polynomial");
    return *value_set(f).is_mvsp;
}

struct MillsCertificate {
    UniPoly T;                      // monic, vanishing exactly on the value set
    std::optional<uint32_t> theta;  // packed nonzero scalar, set iff holds
    bool holds = false;
};

// Decide whether T(f) = theta (x^q - x) f' for T = prod_{v in V_f}(x - v).
// theta is forced by the leading coefficients, so a single identity check
// settles it.
inline MillsCertificate mills_criterion(const UniPoly& f) {
    if (f.is_constant()) throw ConstantInput("certificate needs a nonconstant polynomial");
    const Field* F = f.field();
    MillsCertificate out{UniPoly::from_roots(F, value_set(f).values), std::nullopt, false};
    UniPoly fp = f.derivative();
    if (fp.is_zero()) return out;
    UniPoly lhs = compose(out.T, f);
    UniPoly rhs = field_vanishing_poly(F) * fp;
    if (lhs.deg() != rhs.deg()) return out;
    uint32_t theta = F->div(lhs.lc(), rhs.lc());
    if (lhs == rhs.scaled(theta)) {
        out.theta = theta;
        out.holds = true;
    }
    return out;
}

namespace detail {

// l-fold p-th root, i.e. the p^l-th root when it exists.
inline std::optional<UniPoly> iterated_p_root(UniPoly u, int l) {
    for (int i = 0; i < l; ++i) {
        auto r = pth_power_root(u);
        if (!r) return std::nullopt;
        u = std::move(*r);
    }
    return u;
}

}  // namespace detail

struct MillsStructure {
    static constexpr unsigned kA = 1u, kB = 2u, kC = 4u, kD = 8u, kAll = 15u;

    explicit MillsStructure(const Field* f) : Npoly(UniPoly::zero(f)) {}

    std::vector<uint32_t> gamma;  // gamma[0] minimizes (deg L_i, packed value)
    std::vector<UniPoly> L;       // L[i] = gcd(f - gamma[i], x^q - x)
    std::vector<int> l;           // degrees of the L[i]
    uint64_t v = 0;
    int m = 0;
    int kk = 0;
    UniPoly Npoly;
    std::vector<uint32_t> omega;  // omega[0] nonzero, omega[m] == 1
    unsigned verified = 0;        // bits kA..kD, one per condition below
};

// Decompose f - gamma[0] as L[0]^v * Npoly^{p^{m kk}} and verify:
//   (A) v | p^kk - 1,  1 + v r = p^{m kk},  L[0] does not divide Npoly,
//       and L[0]' is a p^{m kk}-th power;
//   (B) the displayed decomposition itself;
//   (C) prod_{i>=1}(x - (gamma[i]-gamma[0])) has support exactly on the
//       exponents (p^{kk i}-1)/v with coefficients omega[i];
//   (D) sum_i omega[i] L[0]^{p^{kk i}} Npoly^{p^{m kk}(p^{kk i}-1)/v}
//         = -omega[0] (x^q - x) L[0]'.
// The (v, m, kk) search runs mk = m*kk upward; candidates must satisfy
// v * deg L[0] <= deg f, which caps mk at degree_over_prime * ceil
// log_p(1 + (q-1) r).  First fully verified candidate wins; otherwise the
// best partial one is returned.
inline MillsStructure mills_structure(const UniPoly& f) {
    if (!is_mvsp(f)) throw NotMVSP("structure decomposition needs a minimal value set polynomial");
    const Field* F = f.field();
    auto vs = value_set(f);
    const int r = int(vs.size) - 1;
    if (r <= 1) throw TooFewValues("structure decomposition needs at least three values");
    const uint64_t p = F->characteristic();
    const uint64_t q = F->size();

    MillsStructure st(F);
    UniPoly van = field_vanishing_poly(F);
    struct Item {
        uint32_t g;
        UniPoly L;
        int l;
    };
    std::vector<Item> items;
    for (uint32_t g : vs.values) {
        UniPoly L = poly_gcd(f - UniPoly::constant(F, g), van);
        items.push_back({g, L, L.deg()});
    }
    size_t at = 0;
    for (size_t i = 1; i < items.size(); ++i)
        if (items[i].l < items[at].l || (items[i].l == items[at].l && items[i].g < items[at].g))
            at = i;
    std::swap(items[0], items[at]);
    std::sort(items.begin() + 1, items.end(), [](const Item& a, const Item& b) { return a.g < b.g; });
    for (auto& it : items) {
        st.gamma.push_back(it.g);
        st.L.push_back(it.L);
        st.l.push_back(it.l);
    }

    const UniPoly& L0 = st.L[0];
    const int l0 = st.l[0];
    const int d = f.deg();
    UniPoly F0 = f - UniPoly::constant(F, st.gamma[0]);
    UniPoly L0p = L0.derivative();
    std::vector<uint32_t> shifted;
    for (int i = 1; i <= r; ++i) shifted.push_back(F->sub(st.gamma[size_t(i)], st.gamma[0]));
    UniPoly prodC = UniPoly::from_roots(F, shifted);

    int clog = 0;
    for (uint64_t t = 1; t < 1 + (q - 1) * uint64_t(r); t *= p) ++clog;
    const int mk_max = F->degree_over_prime() * clog;

    std::optional<MillsStructure> partial;
    uint64_t P = 1;
    for (int mk = 1; mk <= mk_max; ++mk) {
        if (P > (uint64_t(1) << 60) / p) break;
        P *= p;
        if ((P - 1) % uint64_t(r) != 0) continue;
        const uint64_t v = (P - 1) / uint64_t(r);
        if (v * uint64_t(l0) > uint64_t(d)) continue;
        auto [qt, rm] = UniPoly::divrem(F0, L0.pow(v));
        if (!rm.is_zero()) continue;
        auto N = detail::iterated_p_root(qt, mk);
        if (!N) continue;
        const bool deriv_ok = detail::iterated_p_root(L0p, mk).has_value();
        for (int kk = 1; kk <= mk; ++kk) {
            if (mk % kk != 0) continue;
            uint64_t pkk = 1;
            for (int i = 0; i < kk; ++i) pkk *= p;
            if ((pkk - 1) % v != 0) continue;

            MillsStructure cand = st;
            cand.v = v;
            cand.m = mk / kk;
            cand.kk = kk;
            cand.Npoly = *N;
            cand.verified |= MillsStructure::kB;
            if (!UniPoly::divrem(*N, L0).second.is_zero() && deriv_ok)
                cand.verified |= MillsStructure::kA;

            std::vector<uint64_t> expo(size_t(cand.m) + 1);
            uint64_t pki = 1;
            for (int i = 0; i <= cand.m; ++i, pki *= pkk) expo[size_t(i)] = (pki - 1) / v;
            cand.omega.resize(size_t(cand.m) + 1);
            bool c_ok = true;
            for (int i = 0; i <= cand.m; ++i) cand.omega[size_t(i)] = prodC.coeff(expo[size_t(i)]);
            for (uint64_t e = 0; e <= uint64_t(r); ++e)
                if (prodC.coeff(e) != 0 &&
                    std::find(expo.begin(), expo.end(), e) == expo.end())
                    c_ok = false;
            if (cand.omega[0] == 0 || cand.omega.back() != F->from_int(1)) c_ok = false;
            if (c_ok) cand.verified |= MillsStructure::kC;

            UniPoly lhsD = UniPoly::zero(F);
            pki = 1;
            for (int i = 0; i <= cand.m; ++i, pki *= pkk)
                lhsD = lhsD +
                       (L0.pow(pki) * cand.Npoly.pow(P * expo[size_t(i)])).scaled(cand.omega[size_t(i)]);
            if (lhsD == (van * L0p).scaled(F->neg(cand.omega[0])))
                cand.verified |= MillsStructure::kD;

            if (cand.verified == MillsStructure::kAll) return cand;
            if (!partial || std::popcount(cand.verified) > std::popcount(partial->verified))
                partial = cand;
        }
    }
    if (partial) return *partial;
    throw NoDecomposition("no (v, m, k) decomposition within the exponent bound");
}

// ---------------------------------------------------------------------------
// Multiplicity facts that follow from a holding certificate.

struct LemmaValueDetail {
    uint32_t gamma = 0;
    std::vector<std::pair<uint32_t, int>> rational_mults;  // (root, multiplicity)
    bool residual_is_pth_power = true;  // non-rational part is a p-th power
};

struct LemmaReport {
    uint32_t theta = 0;
    bool nonrational_p_divides = true;    // every non-rational multiplicity is 0 mod p
    bool rational_matches_tprime = true;  // T'(gamma) == -theta * mult at rational roots
    bool rational_not_div_p = true;
    bool theta_witness = false;          // some value with T'(gamma) == -theta
    bool second_derivative_iff = true;   // |V| > 1: f'' == 0 iff T' is constant
    bool nonminimal_one_mod_p = true;    // |V| > 2: mults away from the minimizer are 1 mod p
    bool theta_from_nonminimal = true;   // |V| > 2: theta == -T'(gamma) off the minimizer
    std::vector<LemmaValueDetail> details;

    bool all_ok() const {
        return nonrational_p_divides && rational_matches_tprime && rational_not_div_p &&
               theta_witness && second_derivative_iff && nonminimal_one_mod_p &&
               theta_from_nonminimal;
    }
};

inline LemmaReport lemma_multiplicity_report(const UniPoly& f) {
    MillsCertificate cert = mills_criterion(f);
    if (!cert.holds) throw PreconditionFailed("multiplicity report needs a holding certificate");
    const Field* F = f.field();
    const uint64_t p = F->characteristic();
    LemmaReport rep;
    rep.theta = *cert.theta;
    const uint32_t neg_theta = F->neg(rep.theta);
    UniPoly Tp = cert.T.derivative();
    auto vs = value_set(f);
    UniPoly van = field_vanishing_poly(F);

    // minimizer of (deg gcd(f - gamma, x^q - x), packed gamma)
    std::pair<int, uint32_t> mini{INT32_MAX, 0};
    for (uint32_t g : vs.values) {
        int lg = poly_gcd(f - UniPoly::constant(F, g), van).deg();
        mini = std::min(mini, {lg, g});
    }

    for (uint32_t g : vs.values) {
        LemmaValueDetail det;
        det.gamma = g;
        UniPoly rest = f - UniPoly::constant(F, g);
        uint32_t tp_here = Tp.eval(g);
        for (uint64_t a = 0; a < F->size(); ++a) {
            if (rest.eval(uint32_t(a)) != 0) continue;
            int k = detail::strip_root(rest, uint32_t(a));
            det.rational_mults.emplace_back(uint32_t(a), k);
            if (tp_here != F->mul(neg_theta, F->from_int(int64_t(k))))
                rep.rational_matches_tprime = false;
            if (uint64_t(k) % p == 0) rep.rational_not_div_p = false;
            if (vs.size > 2 && g != mini.second && uint64_t(k) % p != 1)
                rep.nonminimal_one_mod_p = false;
        }
        if (!rest.is_constant() && !pth_power_root(rest).has_value()) {
            det.residual_is_pth_power = false;
            rep.nonrational_p_divides = false;
        }
        if (tp_here == neg_theta) rep.theta_witness = true;
        if (vs.size > 2 && g != mini.second && tp_here != neg_theta)
            rep.theta_from_nonminimal = false;
        rep.details.push_back(std::move(det));
    }
    if (vs.size > 1)
        rep.second_derivative_iff =
            f.derivative().derivative().is_zero() == Tp.is_constant();
    return rep;
}

// ---------------------------------------------------------------------------
// Polynomials over the tower top whose value set is the whole base subfield.

namespace detail {

// Exponent of x^N reduced mod (x^Q - x) on nonconstant monomials.
inline uint64_t reduce_exponent(uint64_t N, uint64_t Q) {
    if (N == 0 || N < Q) return N;
    return (N - 1) % (Q - 1) + 1;
}

}  // namespace detail

// sum_{i<k} (c x^e)^{q^i} reduced mod (x^Q - x).
inline UniPoly trace_image(const FieldTower& tw, uint32_t c, uint64_t e) {
    const Field* top = tw.top.get();
    std::map<uint64_t, uint32_t> acc;
    uint64_t qi = 1;
    for (int i = 0; i < tw.k; ++i, qi *= tw.q) {
        uint32_t ci = top->pow(c, qi);
        uint64_t ei = detail::reduce_exponent(e * qi, tw.Q);
        acc[ei] = top->add(acc.count(ei) ? acc[ei] : 0, ci);
    }
    std::vector<uint32_t> coeffs;
    for (auto& [ei, ci] : acc) {
        if (coeffs.size() <= ei) coeffs.resize(size_t(ei) + 1, 0);
        coeffs[size_t(ei)] = ci;
    }
    return {top, std::move(coeffs)};
}

// Basis of the span of all trace images of c x^e with e a sum of distinct
// powers q^0..q^{k-1} and c running over a base-subfield basis of the top.
// The span has dimension 2^k over the base subfield and contains the
// constants; the returned basis is adjusted so no member is constant (a
// constant pivot gets a nonconstant member added to it), which keeps every
// member's value set equal to the full base subfield.
inline std::vector<UniPoly> w_basis(const FieldTower& tw) {
    const Field* base = tw.base.get();
    const uint64_t maxdeg = (tw.Q - 1) / (tw.q - 1);
    const size_t veclen = size_t(maxdeg + 1) * size_t(tw.k);

    // digits of a top-packed coefficient are its base-subfield coordinates
    auto digitize = [&](const UniPoly& f) {
        std::vector<uint32_t> v(veclen, 0);
        for (size_t i = 0; i < f.coeffs().size(); ++i) {
            uint64_t rem = f.coeff(i);
            for (int j = 0; j < tw.k; ++j) {
                v[i * size_t(tw.k) + size_t(j)] = uint32_t(rem % tw.q);
                rem /= tw.q;
            }
        }
        return v;
    };

    struct Row {
        std::vector<uint32_t> vec;
        UniPoly poly;
        size_t pivot;
    };
    std::vector<Row> rows;
    auto insert = [&](UniPoly f) {
        std::vector<uint32_t> vec = digitize(f);
        for (const Row& row : rows) {
            uint32_t c = vec[row.pivot];
            if (c == 0) continue;
            // vec -= c * row (row is pivot-normalized)
            for (size_t i = 0; i < veclen; ++i)
                vec[i] = base->sub(vec[i], base->mul(c, row.vec[i]));
            f = f - row.poly.scaled(uint32_t(c));  // base scalar = packed constant in the top
        }
        size_t pv = veclen;
        for (size_t i = 0; i < veclen; ++i)
            if (vec[i] != 0) {
                pv = i;
                break;
            }
        if (pv == veclen) return;
        uint32_t inv = base->inv(vec[pv]);
        for (size_t i = 0; i < veclen; ++i) vec[i] = base->mul(vec[i], inv);
        rows.push_back({std::move(vec), f.scaled(uint32_t(inv)), pv});
    };

    for (uint64_t mask = 0; mask < (uint64_t(1) << tw.k); ++mask) {
        uint64_t e = 0, qj = 1;
        for (int j = 0; j < tw.k; ++j, qj *= tw.q)
            if (mask >> j & 1) e += qj;
        uint64_t cb = 1;  // basis of the top over the base: powers of the adjoined root
        for (int j = 0; j < tw.k; ++j, cb *= tw.q) insert(trace_image(tw, uint32_t(cb), e));
    }
    if (rows.size() != (size_t(1) << tw.k))
        throw Error("full-value-set span has unexpected dimension");

    std::vector<UniPoly> basis;
    for (auto& row : rows) basis.push_back(std::move(row.poly));
    auto constant = std::find_if(basis.begin(), basis.end(),
                                 [](const UniPoly& b) { return b.is_constant(); });
    if (constant != basis.end()) {
        auto other = std::find_if(basis.begin(), basis.end(),
                                  [](const UniPoly& b) { return !b.is_constant(); });
        *constant = *constant + *other;
    }
    std::sort(basis.begin(), basis.end(), [](const UniPoly& a, const UniPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.coeffs() < b.coeffs();
    });
    return basis;
}

// All base-subfield combinations of w_basis; q^{2^k} - q nonconstant members
// unless constants are requested too.
inline std::vector<UniPoly> w_enumerate(const FieldTower& tw, bool include_constants = false) {
    std::vector<UniPoly> basis = w_basis(tw);
    uint64_t total = 1;
    for (size_t i = 0; i < basis.size(); ++i) {
        total *= tw.q;
        if (total > (uint64_t(1) << 20)) throw CapExceeded("full-value-set family too large");
    }
    const Field* top = tw.top.get();
    std::vector<UniPoly> out;
    for (uint64_t t = 0; t < total; ++t) {
        UniPoly f = UniPoly::zero(top);
        uint64_t rem = t;
        for (const UniPoly& b : basis) {
            uint32_t c = uint32_t(rem % tw.q);  // base scalar, packed identically in the top
            rem /= tw.q;
            if (c != 0) f = f + b.scaled(c);
        }
        if (include_constants || !f.is_constant()) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const UniPoly& a, const UniPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

// Degree at most (Q-1)/(q-1), every value inside the base subfield, and all
// of it attained.
inline bool w_membership(const FieldTower& tw, const UniPoly& F) {
    if (F.field() != tw.top.get()) throw LevelMismatch("membership is relative to the tower top");
    if (F.is_constant()) throw ConstantInput("membership needs a nonconstant polynomial");
    if (uint64_t(F.deg()) > (tw.Q - 1) / (tw.q - 1)) return false;
    std::set<uint32_t> vals;
    for (uint64_t a = 0; a < tw.Q; ++a) {
        uint32_t v = F.eval(uint32_t(a));
        if (!tw.in_base_subfield(tw.top_elem(v))) return false;
        vals.insert(v);
    }
    return vals.size() == tw.q;
}

// ---------------------------------------------------------------------------
// Two-value and one-value families.

// For g = prod_{a in S}(x - a) and h = (x^q - x)/g, the polynomial -g'h
// takes the value 1 exactly on S and 0 elsewhere.
inline UniPoly two_value_split(const Field* F, const std::vector<uint32_t>& S) {
    if (S.empty()) throw BadSubset("subset must be nonempty");
    std::set<uint32_t> dedup(S.begin(), S.end());
    if (dedup.size() != S.size()) throw BadSubset("subset has repeated elements");
    if (uint64_t(S.size()) >= F->size()) throw BadSubset("subset must be proper");
    for (uint32_t a : S)
        if (uint64_t(a) >= F->size()) throw BadSubset("element outside the field");
    UniPoly g = UniPoly::from_roots(F, S);
    auto [h, rm] = UniPoly::divrem(field_vanishing_poly(F), g);
    // g splits over the field, so the division is exact
    (void)rm;
    return (g.derivative() * h).scaled(F->neg(F->from_int(1)));
}

namespace detail {

constexpr int kMaxSubsetFieldBits = 25;

inline void check_subset_scale(const Field* F) {
    if (F->size() > (uint64_t(1) << kMaxSubsetFieldBits))
        throw CapExceeded("subset enumeration over this field is too large");
}

}  // namespace detail

// Members of { (g'/g)(x - x^q) : g monic proper divisor of x^q - x, g'' = 0 }.
// Such g split over the field, so they are indexed by nonempty proper subsets.
inline std::vector<UniPoly> typeA_enumerate(const Field* F) {
    detail::check_subset_scale(F);
    const uint64_t q = F->size();
    std::vector<UniPoly> out;
    for (uint64_t mask = 1; mask + 1 < (uint64_t(1) << q); ++mask) {
        std::vector<uint32_t> S;
        for (uint64_t a = 0; a < q; ++a)
            if (mask >> a & 1) S.push_back(uint32_t(a));
        UniPoly g = UniPoly::from_roots(F, S);
        if (!g.derivative().derivative().is_zero()) continue;
        out.push_back(two_value_split(F, S));
    }
    std::sort(out.begin(), out.end(), [](const UniPoly& a, const UniPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

// Witness g with f = (g'/g)(x - x^q) and g'' = 0, if any.
inline std::optional<UniPoly> is_typeA(const UniPoly& f) {
    const Field* F = f.field();
    detail::check_subset_scale(F);
    const uint64_t q = F->size();
    for (uint64_t mask = 1; mask + 1 < (uint64_t(1) << q); ++mask) {
        std::vector<uint32_t> S;
        for (uint64_t a = 0; a < q; ++a)
            if (mask >> a & 1) S.push_back(uint32_t(a));
        UniPoly g = UniPoly::from_roots(F, S);
        if (!g.derivative().derivative().is_zero()) continue;
        if (two_value_split(F, S) == f) return g;
    }
    return std::nullopt;
}

inline std::optional<UniPoly> is_typeB(const UniPoly& f) {
    return is_typeA(UniPoly::one(f.field()) - f);
}

// For V_f = {0, 1}: sign theta with f(f-1) = theta (x^q - x) f', if any.
// +1 goes with the first family above, -1 with its 1-f mirror.
inline std::optional<int> theta_of_type(const UniPoly& f) {
    if (f.is_constant()) throw ConstantInput("type test needs a nonconstant polynomial");
    const Field* F = f.field();
    auto vs = value_set(f);
    if (vs.values != std::vector<uint32_t>{0, F->from_int(1)})
        throw BadValueSet("type test needs value set {0, 1}");
    UniPoly lhs = f * (f - UniPoly::one(F));
    UniPoly rhs = field_vanishing_poly(F) * f.derivative();
    if (lhs == rhs) return 1;
    if (lhs == rhs.scaled(F->neg(F->from_int(1)))) return -1;
    return std::nullopt;
}

// For |V_f| = 1 with value alpha: maximal n and a with
// f - alpha = (x^q - x)^n a(x)^p, if the residual is a p-th power.
inline std::optional<std::pair<int, UniPoly>> vf1_decompose(const UniPoly& f) {
    if (f.is_constant()) throw ConstantInput("decomposition needs a nonconstant polynomial");
    const Field* F = f.field();
    auto vs = value_set(f);
    if (vs.size != 1) throw BadValueSet("decomposition needs a single value");
    UniPoly rest = f - UniPoly::constant(F, vs.values[0]);
    UniPoly van = field_vanishing_poly(F);
    int n = 0;
    for (;;) {
        auto [qt, rm] = UniPoly::divrem(rest, van);
        if (!rm.is_zero()) break;
        rest = std::move(qt);
        ++n;
    }
    auto a = pth_power_root(rest);
    if (!a) return std::nullopt;
    return std::make_pair(n, std::move(*a));
}

// First (a, b) in ascending packed order with g = f(ax + b), a nonzero.
inline std::optional<std::pair<uint32_t, uint32_t>> affine_equivalent(const UniPoly& f,
                                                                      const UniPoly& g) {
    if (f.field() != g.field()) throw LevelMismatch("affine comparison needs one field");
    const Field* F = f.field();
    for (uint64_t a = 1; a < F->size(); ++a)
        for (uint64_t b = 0; b < F->size(); ++b)
            if (compose(f, UniPoly(F, {uint32_t(b), uint32_t(a)})) == g)
                return std::make_pair(uint32_t(a), uint32_t(b));
    return std::nullopt;
}

}  // namespace fncforge
