// Root extraction over bounded extensions of the coefficient field.
//
// Roots are found by exhaustive evaluation in F_{Q^m} for m = 1..cap and
// repeated synthetic division for multiplicities.  Every root appears as its
// own entry at its minimal extension degree; conjugates are separate entries.
// The default cap 4 covers every reference curve in the verification suite;
// deeper roots raise CapExceeded.
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "unipoly.hpp"

namespace fncforge {

struct RootEntry {
    int ext_degree = 1;      // minimal m with root in F_{Q^m}; 1 = rational
    uint32_t root = 0;       // packed in the degree-m extension
    int multiplicity = 0;
    bool rational = false;   // ext_degree == 1
};

struct RootProfile {
    std::vector<RootEntry> entries;  // sorted by (ext_degree, root)
    uint32_t constant = 0;           // leading coefficient, packed in the base
    // fields[m-1] is the degree-m extension actually used (fields[0] is the
    // coefficient field itself); kept so callers can interpret packed roots.
    std::vector<FieldPtr> fields;
};

namespace detail {

// Synthetic division by (x - a); returns multiplicity of a and divides it out.
inline int strip_root(UniPoly& f, uint32_t a) {
    int mult = 0;
    const Field* F = f.field();
    for (;;) {
        if (f.eval(a) != 0) return mult;
        // quotient of f / (x - a) via Horner
        std::vector<uint32_t> q(size_t(f.deg()), 0);
        uint32_t carry = 0;
        for (size_t i = f.coeffs().size(); i-- > 1;) {
            carry = F->add(f.coeff(i), F->mul(carry, a));
            q[i - 1] = carry;
        }
        f = UniPoly(F, std::move(q));
        ++mult;
        if (f.is_zero()) return mult;
    }
}

}  // namespace detail

inline RootProfile root_multiplicities(const UniPoly& f, int cap = 4) {
    if (f.is_zero()) throw Error("root profile of the zero polynomial");
    const Field* base = f.field();
    RootProfile rp;
    rp.constant = f.lc();
    int remaining = f.deg() < 0 ? 0 : f.deg();
    FieldPtr base_ptr;  // shared_ptr view of the working field for extension()
    for (int m = 1; m <= cap && remaining > 0; ++m) {
        FieldPtr Em;
        if (m == 1) {
            rp.fields.push_back(nullptr);  // slot for the coefficient field itself
        } else {
            if (!base_ptr) base_ptr = factory_handle(base);
            Em = Field::extension(base_ptr, m);
            rp.fields.push_back(Em);
        }
        const Field* E = (m == 1) ? base : Em.get();
        UniPoly fe = (m == 1) ? f : f.lifted(E);
        const uint64_t S = base->size();
        for (uint64_t a = 0; a < E->size(); ++a) {
            // minimal degree check: skip elements of proper subextensions
            if (m > 1) {
                bool lower = false;
                for (int j = 1; j < m; ++j) {
                    if (m % j != 0) continue;
                    uint64_t e = 1;
                    for (int i = 0; i < j; ++i) e *= S;
                    if (E->pow(uint32_t(a), e) == uint32_t(a)) { lower = true; break; }
                }
                if (lower) continue;
            }
            if (fe.eval(uint32_t(a)) != 0) continue;
            UniPoly tmp = fe;
            int mult = detail::strip_root(tmp, uint32_t(a));
            rp.entries.push_back({m, uint32_t(a), mult, m == 1});
            remaining -= mult;
        }
    }
    if (remaining > 0)
        throw CapExceeded("roots beyond extension degree " + std::to_string(cap));
    return rp;
}

// Frobenius-orbit reconstruction: multiplies the minimal polynomials of all
// root orbits (with multiplicities) back together and compares with f.
// This is the profile's integrity oracle.
inline bool verify_root_profile(const UniPoly& f, const RootProfile& rp) {
    const Field* base = f.field();
    UniPoly prod = UniPoly::constant(base, rp.constant);
    std::set<std::pair<int, uint32_t>> seen;
    for (const auto& e : rp.entries) {
        if (seen.count({e.ext_degree, e.root})) continue;
        const Field* E = e.ext_degree == 1 ? base : rp.fields[size_t(e.ext_degree) - 1].get();
        // orbit of the root under x -> x^|base|
        std::vector<uint32_t> orbit;
        uint32_t cur = e.root;
        do {
            orbit.push_back(cur);
            cur = E->pow(cur, base->size());
        } while (cur != e.root);
        if (int(orbit.size()) != e.ext_degree) return false;
        UniPoly minpoly = UniPoly::one(E);
        for (uint32_t r : orbit) {
            if (!seen.insert({e.ext_degree, r}).second) return false;
            minpoly = minpoly * UniPoly(E, {E->neg(r), E->from_int(1)});
        }
        // conjugates must appear with the same multiplicity
        for (uint32_t r : orbit) {
            bool found = false;
            for (const auto& o : rp.entries)
                if (o.ext_degree == e.ext_degree && o.root == r && o.multiplicity == e.multiplicity)
                    found = true;
            if (!found) return false;
        }
        // orbit product has coefficients in the base field
        std::vector<uint32_t> down(minpoly.coeffs().size());
        for (size_t i = 0; i < down.size(); ++i) {
            if (uint64_t(minpoly.coeff(i)) >= base->size()) return false;
            down[i] = minpoly.coeff(i);
        }
        prod = prod * UniPoly(base, down).pow(uint64_t(e.multiplicity));
    }
    return prod == f;
}

// f = c * h^ell with h monic, i.e. f is a perfect ell-th power up to the
// leading coefficient also being one.  Succeeds iff ell divides every root
// multiplicity and lc(f) is an ell-th power in the coefficient field.
inline std::optional<std::pair<uint32_t, UniPoly>> lth_power_test(const UniPoly& f, int ell,
                                                                  int cap = 4) {
    if (ell < 2) throw Error("lth_power_test needs ell >= 2");
    if (f.is_zero()) return std::nullopt;
    const Field* base = f.field();
    const uint64_t q1 = base->size() - 1;
    const uint64_t g = std::gcd(uint64_t(ell), q1);
    if (base->pow(f.lc(), q1 / g) != base->from_int(1)) return std::nullopt;
    if (f.is_constant()) return std::make_pair(f.lc(), UniPoly::one(base));
    RootProfile rp = root_multiplicities(f, cap);
    for (const auto& e : rp.entries)
        if (e.multiplicity % ell != 0) return std::nullopt;
    // assemble h from orbit minimal polynomials to the reduced powers
    UniPoly h = UniPoly::one(base);
    std::set<std::pair<int, uint32_t>> seen;
    for (const auto& e : rp.entries) {
        if (seen.count({e.ext_degree, e.root})) continue;
        const Field* E = e.ext_degree == 1 ? base : rp.fields[size_t(e.ext_degree) - 1].get();
        std::vector<uint32_t> orbit;
        uint32_t cur = e.root;
        do {
            orbit.push_back(cur);
            seen.insert({e.ext_degree, cur});
            cur = E->pow(cur, base->size());
        } while (cur != e.root);
        UniPoly minpoly = UniPoly::one(E);
        for (uint32_t r : orbit) minpoly = minpoly * UniPoly(E, {E->neg(r), E->from_int(1)});
        std::vector<uint32_t> down(minpoly.coeffs().size());
        for (size_t i = 0; i < down.size(); ++i) {
            if (uint64_t(minpoly.coeff(i)) >= base->size())
                throw Error("orbit polynomial escaped the base field");  // cannot happen
            down[i] = minpoly.coeff(i);
        }
        h = h * UniPoly(base, down).pow(uint64_t(e.multiplicity / ell));
    }
    return std::make_pair(f.lc(), h);
}

}  // namespace fncforge
