#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "floer/errors.hpp"

namespace floer {

// Runtime description of a coefficient ring: one of Z/2, Z, Q, optionally
// extended to Laurent polynomials base[t,t^-1].
enum class BaseRing { Zmod2, Z, Q };

struct RingSpec {
    BaseRing base = BaseRing::Zmod2;
    bool laurent = false;

    // Smith normal form needs a PID with effective division: Z, a field,
    // or F[t,t^-1] over a field F.  Z[t,t^-1] does not qualify.
    bool admits_snf() const { return !(laurent && base == BaseRing::Z); }
    bool is_field() const { return !laurent && base != BaseRing::Z; }

    std::string name() const {
        std::string b = base == BaseRing::Zmod2 ? "Z/2" : base == BaseRing::Z ? "Z" : "Q";
        return laurent ? b + "[t,t^-1]" : b;
    }
    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

// ---------------------------------------------------------------------------
// Ring element types.  Each is a regular value type with arithmetic operators
// plus the handful of static hooks the generic linear algebra needs.
// ---------------------------------------------------------------------------

struct Z2 {
    std::uint8_t v = 0;

    Z2() = default;
    explicit Z2(int n) : v(static_cast<std::uint8_t>(n & 1)) {}

    static Z2 zero() { return Z2{}; }
    static Z2 one() { return Z2{1}; }
    static Z2 from_int(long n) { return Z2{static_cast<int>(n)}; }
    static constexpr bool has_snf = true;
    static constexpr bool is_field = true;

    bool is_zero() const { return v == 0; }
    bool is_unit() const { return v != 0; }

    friend Z2 operator+(Z2 a, Z2 b) { return Z2{a.v ^ b.v}; }
    friend Z2 operator-(Z2 a, Z2 b) { return Z2{a.v ^ b.v}; }
    friend Z2 operator*(Z2 a, Z2 b) { return Z2{a.v & b.v}; }
    Z2 operator-() const { return *this; }
    friend bool operator==(Z2 a, Z2 b) { return a.v == b.v; }

    // a = q*b + r with r = 0 whenever b != 0 (field division).
    std::pair<Z2, Z2> divmod(Z2 b) const {
        if (b.is_zero()) throw FloerError("division by zero in Z/2");
        return {*this, Z2{}};
    }
    // Strictly smaller Euclidean norm; trivial over a field.
    bool norm_lt(Z2) const { return false; }
    // (u, u^-1) with (*this)*u in canonical form.
    std::pair<Z2, Z2> canonical_unit() const { return {one(), one()}; }

    std::string to_string() const { return v ? "1" : "0"; }
};

struct Zint {
    mpz_class v = 0;

    Zint() = default;
    explicit Zint(long n) : v(n) {}
    explicit Zint(mpz_class n) : v(std::move(n)) {}

    static Zint zero() { return Zint{}; }
    static Zint one() { return Zint{1}; }
    static Zint from_int(long n) { return Zint{n}; }
    static constexpr bool has_snf = true;
    static constexpr bool is_field = false;

    bool is_zero() const { return v == 0; }
    bool is_unit() const { return v == 1 || v == -1; }

    friend Zint operator+(const Zint& a, const Zint& b) { return Zint{a.v + b.v}; }
    friend Zint operator-(const Zint& a, const Zint& b) { return Zint{a.v - b.v}; }
    friend Zint operator*(const Zint& a, const Zint& b) { return Zint{a.v * b.v}; }
    Zint operator-() const { return Zint{-v}; }
    friend bool operator==(const Zint& a, const Zint& b) { return a.v == b.v; }

    // Nearest-integer quotient keeps remainders small during elimination.
    std::pair<Zint, Zint> divmod(const Zint& b) const {
        if (b.is_zero()) throw FloerError("division by zero in Z");
        mpz_class babs = abs(b.v);
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), babs.get_mpz_t());
        if (2 * r > babs) {
            r -= babs;
            q += 1;
        }
        if (b.v < 0) q = -q;
        return {Zint{q}, Zint{r}};
    }
    bool norm_lt(const Zint& b) const {
        return mpz_cmpabs(v.get_mpz_t(), b.v.get_mpz_t()) < 0;
    }
    std::pair<Zint, Zint> canonical_unit() const {
        return v < 0 ? std::pair{Zint{-1}, Zint{-1}} : std::pair{Zint{1}, Zint{1}};
    }

    std::string to_string() const { return v.get_str(); }
};

struct Rat {
    mpq_class v = 0;

    Rat() = default;
    explicit Rat(long n) : v(n) {}
    explicit Rat(long num, long den) : v(num, den) { v.canonicalize(); }
    explicit Rat(mpq_class q) : v(std::move(q)) { v.canonicalize(); }

    static Rat zero() { return Rat{}; }
    static Rat one() { return Rat{1}; }
    static Rat from_int(long n) { return Rat{n}; }
    static constexpr bool has_snf = true;
    static constexpr bool is_field = true;

    bool is_zero() const { return v == 0; }
    bool is_unit() const { return v != 0; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat{mpq_class(a.v + b.v)}; }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat{mpq_class(a.v - b.v)}; }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat{mpq_class(a.v * b.v)}; }
    Rat operator-() const { return Rat{mpq_class(-v)}; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v == b.v; }

    std::pair<Rat, Rat> divmod(const Rat& b) const {
        if (b.is_zero()) throw FloerError("division by zero in Q");
        return {Rat{mpq_class(v / b.v)}, Rat{}};
    }
    bool norm_lt(const Rat&) const { return false; }
    std::pair<Rat, Rat> canonical_unit() const {
        if (is_zero()) return {Rat{1}, Rat{1}};
        return {Rat{mpq_class(1 / v)}, *this};
    }

    std::string to_string() const { return v.get_str(); }
};

// Laurent polynomials base[t,t^-1]: sparse map exponent -> nonzero coefficient.
// Also reused with exponents >= 0 as plain polynomials (e.g. R[U] relation
// entries).  Euclidean structure exists over a field base: the norm of f is
// the spread deg(f) - ord(f), and t-powers are units.
template <class F>
struct Laurent {
    std::map<int, F> terms;

    Laurent() = default;
    explicit Laurent(const F& c) {
        if (!c.is_zero()) terms.emplace(0, c);
    }
    static Laurent monomial(const F& c, int exp) {
        Laurent p;
        if (!c.is_zero()) p.terms.emplace(exp, c);
        return p;
    }

    static Laurent zero() { return Laurent{}; }
    static Laurent one() { return Laurent{F::one()}; }
    static Laurent from_int(long n) { return Laurent{F::from_int(n)}; }
    static constexpr bool has_snf = F::is_field;
    static constexpr bool is_field = false;

    bool is_zero() const { return terms.empty(); }
    bool is_monomial() const { return terms.size() == 1; }
    int min_exp() const { return terms.begin()->first; }
    int max_exp() const { return terms.rbegin()->first; }
    int spread() const { return is_zero() ? -1 : max_exp() - min_exp(); }
    const F& coeff(int exp) const {
        static const F zero_coeff = F::zero();
        auto it = terms.find(exp);
        return it == terms.end() ? zero_coeff : it->second;
    }

    // Units of F[t,t^-1] are c*t^k with c a unit of F.
    bool is_unit() const {
        return terms.size() == 1 && terms.begin()->second.is_unit();
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [e, c] : b.terms) {
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                r.terms.emplace(e, c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                F prod = ca * cb;
                if (prod.is_zero()) continue;
                auto it = r.terms.find(ea + eb);
                if (it == r.terms.end()) {
                    r.terms.emplace(ea + eb, prod);
                } else {
                    it->second = it->second + prod;
                    if (it->second.is_zero()) r.terms.erase(it);
                }
            }
        return r;
    }
    Laurent operator-() const {
        Laurent r;
        for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
        return r;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms == b.terms; }

    // Euclidean division in F[t,t^-1] for field F: shift both operands to
    // honest polynomials, divide by descending degree, shift back.
    std::pair<Laurent, Laurent> divmod(const Laurent& b) const {
        if constexpr (!F::is_field) {
            throw UnsupportedRing("division in " + std::string("Z[t,t^-1]"));
        } else {
            if (b.is_zero()) throw FloerError("division by zero Laurent polynomial");
            if (is_zero()) return {Laurent{}, Laurent{}};
            const int shift_a = min_exp(), shift_b = b.min_exp();
            // rem starts as a*t^-shift_a; divisor is b*t^-shift_b.
            std::map<int, F> rem;
            for (const auto& [e, c] : terms) rem.emplace(e - shift_a, c);
            const int db = b.max_exp() - shift_b;
            const F& lead_b = b.terms.rbegin()->second;
            Laurent q;
            while (!rem.empty() && rem.rbegin()->first >= db) {
                const int da = rem.rbegin()->first;
                F factor = rem.rbegin()->second.divmod(lead_b).first;
                q.terms.emplace(da - db + shift_a - shift_b, factor);
                for (const auto& [e, c] : b.terms) {
                    int pos = e - shift_b + da - db;
                    F sub = factor * c;
                    auto it = rem.find(pos);
                    if (it == rem.end()) {
                        if (!sub.is_zero()) rem.emplace(pos, -sub);
                    } else {
                        it->second = it->second - sub;
                        if (it->second.is_zero()) rem.erase(it);
                    }
                }
            }
            Laurent r;
            for (const auto& [e, c] : rem) r.terms.emplace(e + shift_a, c);
            return {q, r};
        }
    }
    bool norm_lt(const Laurent& b) const { return spread() < b.spread(); }
    // Normalizes to a monic polynomial with nonzero constant term.
    std::pair<Laurent, Laurent> canonical_unit() const {
        if constexpr (!F::is_field) {
            return {one(), one()};
        } else {
            if (is_zero()) return {one(), one()};
            auto [lc_inv, lc] = terms.rbegin()->second.canonical_unit();
            return {monomial(lc_inv, -min_exp()), monomial(lc, min_exp())};
        }
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (const auto& [e, c] : terms) {
            std::string cs = c.to_string();
            bool neg = !cs.empty() && cs[0] == '-';
            if (!s.empty()) {
                s += neg ? "-" : "+";
                if (neg) cs = cs.substr(1);
            }
            if (e == 0) {
                s += cs;
            } else {
                if (cs != "1") s += cs + "*";
                s += e == 1 ? "t" : "t^" + std::to_string(e);
            }
        }
        return s;
    }
};

template <class R>
concept Ring = requires(const R a, const R b) {
    { R::zero() } -> std::same_as<R>;
    { R::one() } -> std::same_as<R>;
    { R::from_int(long{}) } -> std::same_as<R>;
    { a + b } -> std::same_as<R>;
    { a - b } -> std::same_as<R>;
    { a * b } -> std::same_as<R>;
    { -a } -> std::same_as<R>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_unit() } -> std::convertible_to<bool>;
    { a.divmod(b) } -> std::same_as<std::pair<R, R>>;
    { a.norm_lt(b) } -> std::convertible_to<bool>;
    { a.canonical_unit() } -> std::same_as<std::pair<R, R>>;
    { a.to_string() } -> std::same_as<std::string>;
    { R::has_snf } -> std::convertible_to<bool>;
};

template <Ring R>
struct ring_spec_of {
    static RingSpec get();
};
template <> inline RingSpec ring_spec_of<Z2>::get() { return {BaseRing::Zmod2, false}; }
template <> inline RingSpec ring_spec_of<Zint>::get() { return {BaseRing::Z, false}; }
template <> inline RingSpec ring_spec_of<Rat>::get() { return {BaseRing::Q, false}; }
template <> inline RingSpec ring_spec_of<Laurent<Z2>>::get() { return {BaseRing::Zmod2, true}; }
template <> inline RingSpec ring_spec_of<Laurent<Zint>>::get() { return {BaseRing::Z, true}; }
template <> inline RingSpec ring_spec_of<Laurent<Rat>>::get() { return {BaseRing::Q, true}; }

} // namespace floer
