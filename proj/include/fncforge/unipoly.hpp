// Dense univariate polynomials over any Field, with the operations the value
// set machinery needs: ring arithmetic, derivative, composition, gcd, value
// sets, p-th roots.
//
// Coefficients are packed field elements, index = exponent, no trailing
// zeros.  The zero polynomial has an empty vector and a NEG_INF degree
// sentinel so divrem contracts stay total (never -1 arithmetic).
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "field.hpp"

namespace fncforge {

class UniPoly {
public:
    static constexpr int kNegInfDeg = std::numeric_limits<int>::min();

    explicit UniPoly(const Field* f) : f_(f) {}
    UniPoly(const Field* f, std::vector<uint32_t> coeffs) : f_(f), c_(std::move(coeffs)) {
        trim();
    }

    static UniPoly zero(const Field* f) { return UniPoly(f); }
    static UniPoly constant(const Field* f, uint32_t c) { return {f, {c}}; }
    static UniPoly one(const Field* f) { return constant(f, f->from_int(1)); }
    static UniPoly x(const Field* f) { return {f, {0, f->from_int(1)}}; }
    static UniPoly monomial(const Field* f, uint32_t c, size_t e) {
        std::vector<uint32_t> v(e + 1, 0);
        v[e] = c;
        return {f, std::move(v)};
    }
    // c * prod (x - r) over the given packed roots.
    static UniPoly from_roots(const Field* f, const std::vector<uint32_t>& roots,
                              uint32_t scale_c = 0) {
        UniPoly r = one(f);
        for (uint32_t a : roots) r = r * UniPoly(f, {f->neg(a), f->from_int(1)});
        if (scale_c == 0) scale_c = f->from_int(1);
        return r.scaled(scale_c);
    }

    const Field* field() const { return f_; }
    const std::vector<uint32_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int deg() const { return c_.empty() ? kNegInfDeg : int(c_.size()) - 1; }
    uint32_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint32_t lc() const { return c_.empty() ? 0 : c_.back(); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        a.check(b);
        std::vector<uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.f_->add(a.coeff(i), b.coeff(i));
        return {a.f_, std::move(r)};
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        a.check(b);
        std::vector<uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.f_->sub(a.coeff(i), b.coeff(i));
        return {a.f_, std::move(r)};
    }
    UniPoly operator-() const {
        std::vector<uint32_t> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = f_->neg(c_[i]);
        return {f_, std::move(r)};
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return zero(a.f_);
        return UniPoly(a.f_, mul_dispatch(*a.f_, a.c_, b.c_));
    }

    UniPoly scaled(uint32_t c) const {
        if (c == 0) return zero(f_);
        std::vector<uint32_t> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], c);
        return {f_, std::move(r)};
    }
    // Multiply by x^e.
    UniPoly shifted(size_t e) const {
        if (is_zero()) return *this;
        std::vector<uint32_t> r(c_.size() + e, 0);
        for (size_t i = 0; i < c_.size(); ++i) r[i + e] = c_[i];
        return {f_, std::move(r)};
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(f_->inv(lc()));
    }

    UniPoly pow(uint64_t e) const {
        UniPoly r = one(f_), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            if (e >>= 1) base = base * base;
        }
        return r;
    }

    // (quotient, remainder) with deg rem < deg b.
    static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
        a.check(b);
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (a.deg() < b.deg()) return {zero(a.f_), a};
        const Field& F = *a.f_;
        const uint32_t lcinv = F.inv(b.lc());
        std::vector<uint32_t> rem = a.c_, quot(a.c_.size() - b.c_.size() + 1, 0);
        for (size_t i = rem.size(); i-- >= b.c_.size();) {
            uint32_t c = F.mul(rem[i], lcinv);
            if (c != 0) {
                quot[i - (b.c_.size() - 1)] = c;
                for (size_t j = 0; j < b.c_.size(); ++j)
                    rem[i - (b.c_.size() - 1) + j] =
                        F.sub(rem[i - (b.c_.size() - 1) + j], F.mul(c, b.c_[j]));
            }
            if (i + 1 == b.c_.size()) break;
        }
        rem.resize(b.c_.size() - 1);
        return {UniPoly(a.f_, std::move(quot)), UniPoly(a.f_, std::move(rem))};
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return zero(f_);
        std::vector<uint32_t> r(c_.size() - 1, 0);
        for (size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = f_->mul(c_[i], f_->from_int(int64_t(i)));
        return {f_, std::move(r)};
    }

    uint32_t eval(uint32_t a) const {
        uint32_t r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, a), c_[i]);
        return r;
    }

    // Packed-identity lift into an extension built over this field (the
    // extension's constants are exactly this field's packed values).
    UniPoly lifted(const Field* ext) const {
        if (ext != f_ && ext->subfield() != f_)
            throw LevelMismatch("lift target is not an extension of the coefficient field");
        return {ext, c_};
    }

private:
    void check(const UniPoly& o) const {
        if (f_ != o.f_) throw LevelMismatch("polynomials over different fields");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    static std::vector<uint32_t> mul_schoolbook(const Field& F,
                                                const std::vector<uint32_t>& a,
                                                const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
        }
        return r;
    }

    // Karatsuba above this degree; equivalence with schoolbook is tested.
    static constexpr size_t kKaratsubaCut = 65;

    static std::vector<uint32_t> mul_dispatch(const Field& F,
                                              const std::vector<uint32_t>& a,
                                              const std::vector<uint32_t>& b) {
        if (a.size() < kKaratsubaCut || b.size() < kKaratsubaCut)
            return mul_schoolbook(F, a, b);
        const size_t h = (std::max(a.size(), b.size()) + 1) / 2;
        auto split = [h](const std::vector<uint32_t>& v) {
            std::vector<uint32_t> lo(v.begin(), v.begin() + std::min(h, v.size()));
            std::vector<uint32_t> hi(v.begin() + std::min(h, v.size()), v.end());
            if (lo.empty()) lo.push_back(0);
            if (hi.empty()) hi.push_back(0);
            return std::pair{lo, hi};
        };
        auto [a0, a1] = split(a);
        auto [b0, b1] = split(b);
        auto z0 = mul_dispatch(F, a0, b0);
        auto z2 = mul_dispatch(F, a1, b1);
        auto addv = [&F](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
            std::vector<uint32_t> r(std::max(x.size(), y.size()), 0);
            for (size_t i = 0; i < r.size(); ++i)
                r[i] = F.add(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
            return r;
        };
        auto z1 = mul_dispatch(F, addv(a0, a1), addv(b0, b1));
        std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
        auto acc = [&](const std::vector<uint32_t>& v, size_t off, bool negate_twice) {
            for (size_t i = 0; i < v.size(); ++i) {
                if (i + off >= r.size()) {
                    if (v[i] != 0) throw Error("karatsuba overflow");  // cannot happen
                    continue;
                }
                r[i + off] = negate_twice ? F.sub(r[i + off], v[i]) : F.add(r[i + off], v[i]);
            }
        };
        acc(z0, 0, false);
        acc(z2, 2 * h, false);
        acc(z1, h, false);
        acc(z0, h, true);
        acc(z2, h, true);
        return r;
    }

    const Field* f_;
    std::vector<uint32_t> c_;
};

inline UniPoly compose(const UniPoly& T, const UniPoly& F) {
    if (T.field() != F.field()) throw LevelMismatch("compose over different fields");
    UniPoly r = UniPoly::zero(F.field());
    for (size_t i = T.coeffs().size(); i-- > 0;)
        r = r * F + UniPoly::constant(F.field(), T.coeff(i));
    return r;
}

inline UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) throw BothZero("gcd(0, 0)");
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = UniPoly::divrem(x, y);
        (void)q;
        x = y;
        y = r;
    }
    return x.monic();
}

// x^q - x over the given field with q = field size.
inline UniPoly field_vanishing_poly(const Field* f) {
    std::vector<uint32_t> c(f->size() + 1, 0);
    c[1] = f->neg(f->from_int(1));
    c[f->size()] = f->from_int(1);
    return {f, std::move(c)};
}

// ---------------------------------------------------------------------------
// Value sets.

struct ValueSetReport {
    std::vector<uint32_t> values;  // sorted packed values
    size_t size = 0;
    size_t lower_bound = 0;          // floor((q-1)/deg f) + 1
    std::optional<bool> is_mvsp;     // unset for constant input
    bool values_in_base = false;     // all values in the immediate subfield
};

inline ValueSetReport value_set(const UniPoly& f) {
    const Field* F = f.field();
    std::set<uint32_t> vals;
    for (uint64_t a = 0; a < F->size(); ++a) vals.insert(f.eval(uint32_t(a)));
    ValueSetReport r;
    r.values.assign(vals.begin(), vals.end());
    r.size = r.values.size();
    if (f.is_constant()) {
        r.lower_bound = 1;
    } else {
        r.lower_bound = size_t((F->size() - 1) / uint64_t(f.deg())) + 1;
        r.is_mvsp = (r.size == r.lower_bound);
    }
    const uint64_t sub_size = F->subfield() ? F->subfield()->size() : F->size();
    r.values_in_base = true;
    for (uint32_t v : r.values)
        if (uint64_t(v) >= sub_size) { r.values_in_base = false; break; }
    return r;
}

// ---------------------------------------------------------------------------
// p-th roots: f = a^p iff every exponent is divisible by p; the coefficients
// of a are the inverse-Frobenius images.

inline std::optional<UniPoly> pth_power_root(const UniPoly& f) {
    const Field* F = f.field();
    const uint64_t p = F->characteristic();
    if (f.is_zero()) return UniPoly::zero(F);
    for (size_t i = 0; i < f.coeffs().size(); ++i)
        if (f.coeff(i) != 0 && i % p != 0) return std::nullopt;
    std::vector<uint32_t> r(size_t(f.deg() / int(p)) + 1, 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F->frobenius_inv_p(f.coeff(i * size_t(p)));
    return UniPoly(F, std::move(r));
}

}  // namespace fncforge
