// Finite fields as explicit towers: F_p, then F_q = F_p^s, then F_Q = F_q^k.
//
// Every field is either a prime field or an extension of another field by a
// monic irreducible modulus.  The modulus is always the packed-minimal one:
// scan candidates x^d + c_{d-1}x^{d-1} + ... + c_0 in ascending packed order
// (c_0 + c_1*S + c_2*S^2 + ..., S = subfield size) and take the first
// irreducible.  This makes every rebuild bit-identical and keeps tower
// compatibility structural: the top field is built over the base field, so the
// base embeds as the packed constants [0, q).
//
// Elements are packed integers in [0, size): an element of an extension of
// degree d over a subfield of size S has digits e_0..e_{d-1} (coordinates over
// the subfield) packed as e_0 + e_1*S + ... + e_{d-1}*S^{d-1}.  No discrete
// log tables anywhere; exponentiation is square-and-multiply.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace fncforge {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {
// Largest field any code path is allowed to enumerate (root-search extensions
// of a capped tower can be bigger than the tower cap itself).
inline constexpr uint64_t kMaxEnumerableField = uint64_t(1) << 22;
// Extension digit buffers live on the stack.
inline constexpr int kMaxExtDegree = 24;
}  // namespace detail

class Field {
  struct Private {};  // locks constructors to the factory functions

public:
    Field(Private, uint64_t p);
    Field(Private, FieldPtr sub, std::vector<uint32_t> mod_low);

    // F_p.  Cached: the same p always returns the same object, so elements of
    // independently built towers over the same prime interoperate.
    static FieldPtr prime(uint64_t p);

    // Extension of degree d >= 2 with the packed-minimal irreducible modulus.
    // Cached per (subfield object, degree).
    static FieldPtr extension(const FieldPtr& sub, int degree);

    // Extension with an explicit monic modulus x^d + sum mod_low[i] x^i.
    // Validated irreducible.  Not cached; meant for tests.
    static FieldPtr extension_with_modulus(const FieldPtr& sub,
                                           std::vector<uint32_t> mod_low);

    uint64_t size() const { return size_; }
    uint64_t characteristic() const { return p_; }
    // Degree over the immediate subfield; 1 for prime fields.
    int degree() const { return deg_; }
    int degree_over_prime() const { return deg_over_prime_; }
    const Field* subfield() const { return sub_.get(); }
    bool is_prime_field() const { return sub_ == nullptr; }
    // Low coefficients of the monic modulus; empty for prime fields.
    const std::vector<uint32_t>& modulus_low() const { return mod_; }

    // Packed arithmetic.  All inputs and results are in [0, size).
    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;  // throws DivisionByZero on 0
    uint32_t div(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t e) const;
    // n * 1 in this field (negative n allowed).
    uint32_t from_int(int64_t n) const;
    // The unique b with b^p = a (inverse of the absolute Frobenius).
    uint32_t frobenius_inv_p(uint32_t a) const;

    // Digit access: exactly degree() digits over the immediate subfield.
    void decode(uint32_t a, uint32_t* digits) const;
    uint32_t encode(const uint32_t* digits) const;

    // Smallest packed generator of the multiplicative group.
    uint32_t generator() const;

private:
    static bool probably_prime(uint64_t n);

    uint64_t p_ = 0;
    uint64_t size_ = 0;
    int deg_ = 1;
    int deg_over_prime_ = 1;
    FieldPtr sub_;
    std::vector<uint32_t> mod_;  // low coefficients, length deg_
    bool sub_is_prime_ = false;

    mutable uint32_t gen_cache_ = 0;
    mutable std::once_flag gen_once_;
};

// ---------------------------------------------------------------------------
// Internal polynomial helpers over packed coefficients (used for modulus
// validation only; the real polynomial module lives in unipoly.hpp).
namespace detail {

// Remainder of (monic x^d + low) divided by monic candidate of degree t.
// Returns true when the candidate divides exactly.
inline bool monic_divides(const Field& k, const std::vector<uint32_t>& mod_low,
                          const std::vector<uint32_t>& cand_low) {
    const size_t d = mod_low.size(), t = cand_low.size();
    std::vector<uint32_t> r(d + 1, 0);
    for (size_t i = 0; i < d; ++i) r[i] = mod_low[i];
    r[d] = 1;
    for (size_t i = d; i + 1 >= t + 1; --i) {
        uint32_t c = r[i];
        if (c != 0) {
            r[i] = 0;
            for (size_t j = 0; j < t; ++j)
                r[i - t + j] = k.sub(r[i - t + j], k.mul(c, cand_low[j]));
        }
        if (i == t) break;
    }
    for (size_t j = 0; j < t; ++j)
        if (r[j] != 0) return false;
    return true;
}

// Exhaustive irreducibility test for x^d + mod_low over the field k.
// Trial-divides by every monic polynomial of degree 1..d/2; fine at desk
// scale because candidate counts stay near size^(d/2).
inline bool is_irreducible(const Field& k, const std::vector<uint32_t>& mod_low) {
    const size_t d = mod_low.size();
    if (d == 1) return true;
    const uint64_t S = k.size();
    for (size_t t = 1; t <= d / 2; ++t) {
        uint64_t count = 1;
        for (size_t i = 0; i < t; ++i) {
            count *= S;
            if (count > kMaxEnumerableField)
                throw TooLarge("irreducibility scan too large");
        }
        std::vector<uint32_t> cand(t, 0);
        for (uint64_t c = 0; c < count; ++c) {
            uint64_t v = c;
            for (size_t i = 0; i < t; ++i) { cand[i] = uint32_t(v % S); v /= S; }
            if (monic_divides(k, mod_low, cand)) return false;
        }
    }
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Field implementation.

inline Field::Field(Private, uint64_t p) : p_(p), size_(p) {}

inline Field::Field(Private, FieldPtr sub, std::vector<uint32_t> mod_low)
    : p_(sub->characteristic()),
      deg_(int(mod_low.size())),
      sub_(std::move(sub)),
      mod_(std::move(mod_low)) {
    deg_over_prime_ = deg_ * sub_->degree_over_prime();
    sub_is_prime_ = sub_->is_prime_field();
    size_ = 1;
    for (int i = 0; i < deg_; ++i) size_ *= sub_->size();
}

inline bool Field::probably_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline FieldPtr Field::prime(uint64_t p) {
    if (!probably_prime(p)) throw NotPrime("not a prime: " + std::to_string(p));
    if (p > detail::kMaxEnumerableField) throw TooLarge("prime too large");
    static std::mutex m;
    static std::map<uint64_t, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<Field>(Private{}, p);
    cache.emplace(p, f);
    return f;
}

inline FieldPtr Field::extension_with_modulus(const FieldPtr& sub,
                                              std::vector<uint32_t> mod_low) {
    const int d = int(mod_low.size());
    if (d < 2) throw Error("extension degree must be >= 2");
    if (d > detail::kMaxExtDegree) throw TooLarge("extension degree too large");
    uint64_t size = 1;
    for (int i = 0; i < d; ++i) {
        size *= sub->size();
        if (size > detail::kMaxEnumerableField)
            throw TooLarge("extension field too large to enumerate");
    }
    for (uint32_t c : mod_low)
        if (uint64_t(c) >= sub->size()) throw Error("modulus coefficient out of range");
    if (!detail::is_irreducible(*sub, mod_low))
        throw Error("modulus is reducible");
    return std::make_shared<Field>(Private{}, sub, std::move(mod_low));
}

inline FieldPtr Field::extension(const FieldPtr& sub, int degree) {
    if (degree == 1) return sub;
    if (degree < 1) throw Error("extension degree must be positive");
    static std::mutex m;
    static std::map<std::pair<const Field*, int>, FieldPtr> cache;
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = cache.find({sub.get(), degree});
        if (it != cache.end()) return it->second;
    }
    if (degree > detail::kMaxExtDegree) throw TooLarge("extension degree too large");
    const uint64_t S = sub->size();
    uint64_t size = 1;
    for (int i = 0; i < degree; ++i) {
        size *= S;
        if (size > detail::kMaxEnumerableField)
            throw TooLarge("extension field too large to enumerate");
    }
    // Packed-minimal irreducible scan.
    std::vector<uint32_t> low(size_t(degree), 0);
    uint64_t packed = 0;
    for (;; ++packed) {
        if (packed >= size) throw Error("no irreducible modulus found");  // cannot happen
        uint64_t v = packed;
        for (int i = 0; i < degree; ++i) { low[size_t(i)] = uint32_t(v % S); v /= S; }
        if (detail::is_irreducible(*sub, low)) break;
    }
    auto f = std::make_shared<Field>(Private{}, sub, low);
    std::lock_guard<std::mutex> lock(m);
    cache.emplace(std::make_pair(sub.get(), degree), f);
    return cache[{sub.get(), degree}];
}

inline void Field::decode(uint32_t a, uint32_t* digits) const {
    const uint64_t S = sub_ ? sub_->size() : p_;
    uint64_t v = a;
    for (int i = 0; i < deg_; ++i) { digits[i] = uint32_t(v % S); v /= S; }
}

inline uint32_t Field::encode(const uint32_t* digits) const {
    const uint64_t S = sub_ ? sub_->size() : p_;
    uint64_t v = 0;
    for (int i = deg_ - 1; i >= 0; --i) v = v * S + digits[i];
    return uint32_t(v);
}

inline uint32_t Field::add(uint32_t a, uint32_t b) const {
    if (!sub_) { uint64_t s = uint64_t(a) + b; return uint32_t(s >= p_ ? s - p_ : s); }
    uint32_t da[detail::kMaxExtDegree], db[detail::kMaxExtDegree], dr[detail::kMaxExtDegree];
    decode(a, da); decode(b, db);
    for (int i = 0; i < deg_; ++i) dr[i] = sub_->add(da[i], db[i]);
    return encode(dr);
}

inline uint32_t Field::sub(uint32_t a, uint32_t b) const {
    if (!sub_) { int64_t s = int64_t(a) - b; return uint32_t(s < 0 ? s + int64_t(p_) : s); }
    uint32_t da[detail::kMaxExtDegree], db[detail::kMaxExtDegree], dr[detail::kMaxExtDegree];
    decode(a, da); decode(b, db);
    for (int i = 0; i < deg_; ++i) dr[i] = sub_->sub(da[i], db[i]);
    return encode(dr);
}

inline uint32_t Field::neg(uint32_t a) const {
    if (!sub_) return a == 0 ? 0 : uint32_t(p_ - a);
    uint32_t da[detail::kMaxExtDegree], dr[detail::kMaxExtDegree];
    decode(a, da);
    for (int i = 0; i < deg_; ++i) dr[i] = sub_->neg(da[i]);
    return encode(dr);
}

inline uint32_t Field::mul(uint32_t a, uint32_t b) const {
    if (!sub_) return uint32_t((uint64_t(a) * b) % p_);
    uint32_t da[detail::kMaxExtDegree], db[detail::kMaxExtDegree];
    decode(a, da); decode(b, db);
    const int d = deg_;
    if (sub_is_prime_) {
        // Digits are residues mod p: convolve with lazy reduction.
        uint64_t conv[2 * detail::kMaxExtDegree - 1] = {0};
        for (int i = 0; i < d; ++i) {
            if (da[i] == 0) continue;
            for (int j = 0; j < d; ++j) conv[i + j] += uint64_t(da[i]) * db[j];
        }
        for (int i = 2 * d - 2; i >= d; --i) {
            uint32_t c = uint32_t(conv[i] % p_);
            if (c != 0) {
                // subtract c * modulus shifted by i-d (modulus monic)
                for (int j = 0; j < d; ++j) {
                    uint64_t t = uint64_t(c) * mod_[size_t(j)];
                    uint64_t cur = conv[i - d + j] % p_;
                    conv[i - d + j] = cur + p_ * ((t / p_) + 1) - t;  // stays nonnegative
                }
            }
            conv[i] = 0;
        }
        uint32_t dr[detail::kMaxExtDegree];
        for (int i = 0; i < d; ++i) dr[i] = uint32_t(conv[i] % p_);
        return encode(dr);
    }
    uint32_t conv[2 * detail::kMaxExtDegree - 1] = {0};
    for (int i = 0; i < d; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < d; ++j)
            conv[i + j] = sub_->add(conv[i + j], sub_->mul(da[i], db[j]));
    }
    for (int i = 2 * d - 2; i >= d; --i) {
        uint32_t c = conv[i];
        if (c != 0) {
            conv[i] = 0;
            for (int j = 0; j < d; ++j)
                conv[i - d + j] = sub_->sub(conv[i - d + j], sub_->mul(c, mod_[size_t(j)]));
        }
    }
    return encode(conv);
}

inline uint32_t Field::pow(uint32_t a, uint64_t e) const {
    uint32_t r = from_int(1), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

inline uint32_t Field::inv(uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    return pow(a, size_ - 2);
}

inline uint32_t Field::div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

inline uint32_t Field::from_int(int64_t n) const {
    int64_t r = n % int64_t(p_);
    if (r < 0) r += int64_t(p_);
    return uint32_t(r);  // constants pack identically at every level
}

inline uint32_t Field::frobenius_inv_p(uint32_t a) const {
    uint64_t e = 1;
    for (int i = 1; i < deg_over_prime_; ++i) e *= p_;
    return pow(a, e);
}

inline uint32_t Field::generator() const {
    std::call_once(gen_once_, [this] {
        const uint64_t n = size_ - 1;
        std::vector<uint64_t> primes;
        uint64_t m = n;
        for (uint64_t d = 2; d * d <= m; ++d)
            while (m % d == 0) { if (primes.empty() || primes.back() != d) primes.push_back(d); m /= d; }
        if (m > 1) primes.push_back(m);
        for (uint32_t a = 1; uint64_t(a) < size_; ++a) {
            bool ok = a != 0;
            for (uint64_t r : primes)
                if (pow(a, n / r) == from_int(1)) { ok = false; break; }
            if (n == 1) ok = (a == 1);  // F_2: the unit itself
            if (ok) { gen_cache_ = a; return; }
        }
        throw Error("no generator found");  // cannot happen
    });
    return gen_cache_;
}

// ---------------------------------------------------------------------------
// FieldElem: a packed value bound to its field.  Comparison of the field is by
// object identity; towers share field objects through the factory caches.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const Field* f, uint32_t v) : f_(f), v_(v) {
        if (f_ && uint64_t(v_) >= f_->size()) throw Error("packed value out of range");
    }

    const Field* field() const { return f_; }
    uint32_t packed() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    std::vector<uint32_t> coeffs() const {
        std::vector<uint32_t> d(size_t(f_->degree()));
        f_->decode(v_, d.data());
        return d;
    }

    friend FieldElem operator+(FieldElem a, FieldElem b) {
        a.check(b); return {a.f_, a.f_->add(a.v_, b.v_)};
    }
    friend FieldElem operator-(FieldElem a, FieldElem b) {
        a.check(b); return {a.f_, a.f_->sub(a.v_, b.v_)};
    }
    friend FieldElem operator*(FieldElem a, FieldElem b) {
        a.check(b); return {a.f_, a.f_->mul(a.v_, b.v_)};
    }
    friend FieldElem operator/(FieldElem a, FieldElem b) {
        a.check(b); return {a.f_, a.f_->div(a.v_, b.v_)};
    }
    FieldElem operator-() const { return {f_, f_->neg(v_)}; }
    FieldElem pow(uint64_t e) const { return {f_, f_->pow(v_, e)}; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.f_ == b.f_ && a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
    friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.v_ < b.v_; }

private:
    void check(const FieldElem& o) const {
        if (f_ != o.f_) throw LevelMismatch("elements from different fields");
    }
    const Field* f_ = nullptr;
    uint32_t v_ = 0;
};

// ---------------------------------------------------------------------------
// FieldTower: F_p in F_q = F_p^s in F_Q = F_q^k with deterministic moduli.
struct FieldTower {
    uint64_t p = 0;
    int s = 1, k = 1;
    uint64_t q = 0, Q = 0;
    FieldPtr prime_field;  // F_p
    FieldPtr base;         // F_q (== prime_field when s == 1)
    FieldPtr top;          // F_Q (== base when k == 1)

    FieldElem base_elem(uint32_t packed) const { return {base.get(), packed}; }
    FieldElem top_elem(uint32_t packed) const { return {top.get(), packed}; }

    // The base embeds into the top as the packed constants.
    FieldElem embed(const FieldElem& e) const {
        if (e.field() != base.get()) throw LevelMismatch("embed expects a BASE element");
        return {top.get(), e.packed()};
    }

    FieldElem frobenius_q(const FieldElem& e) const {
        if (e.field() != top.get()) throw LevelMismatch("frobenius_q expects a TOP element");
        return e.pow(q);
    }

    // Equivalent to frobenius_q(e) == e: the F_q-image inside the top field is
    // exactly the packed constants [0, q).
    bool in_base_subfield(const FieldElem& e) const {
        if (e.field() != top.get()) throw LevelMismatch("in_base_subfield expects a TOP element");
        return e.packed() < q;
    }

    FieldElem project_to_base(const FieldElem& e) const {
        if (!in_base_subfield(e)) throw Error("element not in the base subfield");
        return {base.get(), e.packed()};
    }

    std::pair<FieldElem, FieldElem> trace_norm_to_base(const FieldElem& e) const {
        if (e.field() != top.get()) throw LevelMismatch("trace/norm expect a TOP element");
        FieldElem t = e, n = e, c = e;
        for (int i = 1; i < k; ++i) {
            c = c.pow(q);
            t = t + c;
            n = n * c;
        }
        return {project_to_base(t), project_to_base(n)};
    }

    // |{a in F_Q : trace(a) = u, norm(a) = v}| by exhaustive scan.
    uint64_t fiber_count(const FieldElem& u, const FieldElem& v) const {
        if (u.field() != base.get() || v.field() != base.get())
            throw LevelMismatch("fiber_count expects BASE elements");
        uint64_t count = 0;
        for (uint64_t a = 0; a < Q; ++a) {
            auto [t, n] = trace_norm_to_base(top_elem(uint32_t(a)));
            if (t == u && n == v) ++count;
        }
        return count;
    }
};

// Rebuild a shared handle for a field constructed through the factories
// (prime/extension); needed when code holding only a raw pointer wants to
// build further extensions.  Custom-modulus fields are rejected.
inline FieldPtr factory_handle(const Field* f) {
    if (f->is_prime_field()) return Field::prime(f->characteristic());
    FieldPtr sub = factory_handle(f->subfield());
    FieldPtr self = Field::extension(sub, f->degree());
    if (self.get() != f) throw Error("field was not built by the standard factories");
    return self;
}

// Desk-scale cap on Q.  FNC_FORGE_CAP overrides when set (CLI contract).
inline uint64_t default_field_cap() {
    if (const char* env = std::getenv("FNC_FORGE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return uint64_t(v);
    }
    return uint64_t(1) << 20;
}

inline FieldTower build_tower(uint64_t p, int s, int k, uint64_t cap = default_field_cap()) {
    if (s < 1 || k < 1) throw Error("tower degrees must be positive");
    if (!([&] { for (uint64_t d = 2; d * d <= p; ++d) if (p % d == 0) return false; return p >= 2; }()))
        throw NotPrime("not a prime: " + std::to_string(p));
    uint64_t Q = 1;
    for (int i = 0; i < s * k; ++i) {
        Q *= p;
        if (Q > cap) throw TooLarge("field size exceeds cap " + std::to_string(cap));
    }
    FieldTower t;
    t.p = p; t.s = s; t.k = k;
    t.prime_field = Field::prime(p);
    t.base = (s == 1) ? t.prime_field : Field::extension(t.prime_field, s);
    t.top = (k == 1) ? t.base : Field::extension(t.base, k);
    t.q = t.base->size();
    t.Q = t.top->size();
    return t;
}

}  // namespace fncforge
