#pragma once
// Sparse bivariate polynomials over a finite field, the Frobenius form
// (x^q - x) F_x + (y^q - y) F_y, and exact division in (F[x])[y] when the
// divisor's leading y-coefficient is a unit constant.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fncforge/field.hpp"
#include "fncforge/unipoly.hpp"

namespace fncforge {

class BiPoly {
public:
    // Term key (y-exponent, x-exponent): iteration is y-major, then x, which
    // fixes the serialization order.
    using Key = std::pair<int, int>;

    explicit BiPoly(const Field* f) : f_(f) {}

    static BiPoly zero(const Field* f) { return BiPoly(f); }
    static BiPoly from_x(const UniPoly& p) {
        BiPoly r(p.field());
        for (size_t i = 0; i < p.coeffs().size(); ++i) r.add_term(int(i), 0, p.coeff(i));
        return r;
    }
    static BiPoly from_y(const UniPoly& p) {
        BiPoly r(p.field());
        for (size_t i = 0; i < p.coeffs().size(); ++i) r.add_term(0, int(i), p.coeff(i));
        return r;
    }

    const Field* field() const { return f_; }
    const std::map<Key, uint32_t>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    int deg_x() const {
        int d = UniPoly::kNegInfDeg;
        for (const auto& [k, c] : t_) d = std::max(d, k.second);
        return d;
    }
    int deg_y() const { return t_.empty() ? UniPoly::kNegInfDeg : t_.rbegin()->first.first; }

    uint32_t coeff(int i, int j) const {
        auto it = t_.find({j, i});
        return it == t_.end() ? 0 : it->second;
    }

    // Accumulating insert; zero results are erased so the map stays canonical.
    void add_term(int i, int j, uint32_t c) {
        if (c == 0) return;
        Key k{j, i};
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_.emplace(k, c);
        } else {
            it->second = f_->add(it->second, c);
            if (it->second == 0) t_.erase(it);
        }
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.f_ == b.f_ && a.t_ == b.t_;
    }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        check(a, b);
        BiPoly r = a;
        for (const auto& [k, c] : b.t_) r.add_term(k.second, k.first, c);
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        check(a, b);
        BiPoly r = a;
        for (const auto& [k, c] : b.t_) r.add_term(k.second, k.first, a.f_->neg(c));
        return r;
    }
    BiPoly operator-() const {
        BiPoly r(f_);
        for (const auto& [k, c] : t_) r.t_.emplace(k, f_->neg(c));
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        check(a, b);
        BiPoly r(a.f_);
        for (const auto& [ka, ca] : a.t_)
            for (const auto& [kb, cb] : b.t_)
                r.add_term(ka.second + kb.second, ka.first + kb.first, a.f_->mul(ca, cb));
        return r;
    }
    BiPoly scaled(uint32_t c) const {
        BiPoly r(f_);
        if (c == 0) return r;
        for (const auto& [k, t] : t_) r.add_term(k.second, k.first, f_->mul(t, c));
        return r;
    }

    BiPoly partial_x() const {
        BiPoly r(f_);
        for (const auto& [k, c] : t_)
            if (k.second > 0) r.add_term(k.second - 1, k.first, f_->mul(c, f_->from_int(k.second)));
        return r;
    }
    BiPoly partial_y() const {
        BiPoly r(f_);
        for (const auto& [k, c] : t_)
            if (k.first > 0) r.add_term(k.second, k.first - 1, f_->mul(c, f_->from_int(k.first)));
        return r;
    }

    BiPoly swap_xy() const {
        BiPoly r(f_);
        for (const auto& [k, c] : t_) r.t_.emplace(Key{k.second, k.first}, c);
        return r;
    }

    uint32_t eval(uint32_t ax, uint32_t ay) const {
        uint32_t acc = 0;
        for (const auto& [k, c] : t_)
            acc = f_->add(acc,
                          f_->mul(c, f_->mul(f_->pow(ax, uint64_t(k.second)),
                                             f_->pow(ay, uint64_t(k.first)))));
        return acc;
    }

    // Coefficient of y^j as a polynomial in x.
    UniPoly y_slice(int j) const {
        std::vector<uint32_t> c;
        auto it = t_.lower_bound({j, std::numeric_limits<int>::min()});
        for (; it != t_.end() && it->first.first == j; ++it) {
            if (c.size() <= size_t(it->first.second)) c.resize(size_t(it->first.second) + 1, 0);
            c[size_t(it->first.second)] = it->second;
        }
        return {f_, std::move(c)};
    }

private:
    static void check(const BiPoly& a, const BiPoly& b) {
        if (a.f_ != b.f_) throw LevelMismatch("bivariate operands over different fields");
    }

    const Field* f_;
    std::map<Key, uint32_t> t_;
};

// (x^q - x) F_x + (y^q - y) F_y, expanded term by term.
inline BiPoly frobenius_form(const BiPoly& F, uint64_t q) {
    const Field* K = F.field();
    BiPoly r(K);
    for (const auto& [k, c] : F.terms()) {
        const int j = k.first, i = k.second;
        uint32_t cx = K->mul(c, K->from_int(i));
        if (cx != 0) {
            r.add_term(int(q) + i - 1, j, cx);
            r.add_term(i, j, K->neg(cx));
        }
        uint32_t cy = K->mul(c, K->from_int(j));
        if (cy != 0) {
            r.add_term(i, int(q) + j - 1, cy);
            r.add_term(i, j, K->neg(cy));
        }
    }
    return r;
}

inline BiPoly frobenius_form(const BiPoly& F) { return frobenius_form(F, F.field()->size()); }

// Division in (F[x])[y]; requires the divisor's top y-slice to be a nonzero
// constant.  Returns the quotient exactly when the remainder vanishes.
inline std::optional<BiPoly> bipoly_divides(const BiPoly& D, const BiPoly& F) {
    if (D.field() != F.field()) throw LevelMismatch("division operands over different fields");
    const Field* K = F.field();
    if (F.is_zero()) throw DivisionByZero("bivariate division by zero");
    const int dF = F.deg_y();
    UniPoly lead = F.y_slice(dF);
    if (!lead.is_constant() || lead.is_zero())
        throw NonUnitLeader("divisor's leading y-coefficient must be a nonzero constant");
    const uint32_t linv = K->inv(lead.coeff(0));
    if (dF == 0 && F.deg_x() == 0) return D.scaled(linv);  // nonzero constant divisor

    BiPoly R = D, Q(K);
    while (!R.is_zero() && R.deg_y() >= dF) {
        const int j = R.deg_y();
        UniPoly A = R.y_slice(j).scaled(linv);
        BiPoly sub(K);
        for (const auto& [k, c] : F.terms())
            for (size_t i2 = 0; i2 < A.coeffs().size(); ++i2)
                if (A.coeff(i2) != 0)
                    sub.add_term(k.second + int(i2), k.first + (j - dF), K->mul(c, A.coeff(i2)));
        for (size_t i2 = 0; i2 < A.coeffs().size(); ++i2)
            Q.add_term(int(i2), j - dF, A.coeff(i2));
        R = R - sub;
    }
    if (!R.is_zero()) return std::nullopt;
    return Q;
}

}  // namespace fncforge
