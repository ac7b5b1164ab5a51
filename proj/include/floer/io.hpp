#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "floer/complex.hpp"
#include "floer/equivariant.hpp"
#include "floer/errors.hpp"
#include "floer/heegaard.hpp"
#include "floer/novikov.hpp"
#include "floer/rings.hpp"

namespace floer {

// Text format for complexes (one directive per line, '#' comments):
//
//   ring z2|z|q
//   deg_t <even int <= 0>        # optional; marks a Laurent complex
//   gen  <id> <degree>
//   diff <from> <to> <coeff> [<t-exponent>]
//   umap <from> <to> <coeff>     # optional, degree -2 chain map
//   jmap <from> <to> <coeff>     # optional, degree +1 anticommuting map
//
// Coefficients are decimal integers or rationals p/q; the t-exponent field is
// only meaningful for Laurent complexes.  Parsing validates against the ring
// and the usual complex axioms; emission is canonical (sorted generators and
// entries, normalized coefficient strings), so parse . emit is the identity
// on canonical files.
struct ComplexFile {
    enum class Kind { Plain, WithU, WithJ, Laurent };

    RingSpec ring;
    std::optional<int> deg_t;
    std::vector<Generator> gens;
    // (from, to, coefficient, t-exponent); exponent is 0 for non-Laurent.
    std::vector<std::tuple<std::string, std::string, mpq_class, int>> diff, umap, jmap;

    Kind kind() const {
        if (deg_t) return Kind::Laurent;
        if (!umap.empty()) return Kind::WithU;
        if (!jmap.empty()) return Kind::WithJ;
        return Kind::Plain;
    }
};

ComplexFile parse_complex_file(const std::string& text);
ComplexFile load_complex_file(const std::string& path);
std::string emit_complex_file(const ComplexFile& file);

// Heegaard diagram format:
//
//   genus <g>
//   point <alpha-index> <beta-index> <id> <+|->
//
// Curve indices are 1-based in files.
HeegaardDiagram parse_heegaard_file(const std::string& text);
HeegaardDiagram load_heegaard_file(const std::string& path);

std::string read_text_file(const std::string& path);

// ---------------------------------------------------------------------------
// Typed builders.  dispatch_base runs a generic callable with a value of the
// base ring type selected at runtime.
// ---------------------------------------------------------------------------

template <class Fn>
decltype(auto) dispatch_base(BaseRing base, Fn&& fn) {
    switch (base) {
        case BaseRing::Zmod2: return fn(Z2{});
        case BaseRing::Z: return fn(Zint{});
        case BaseRing::Q: return fn(Rat{});
    }
    throw FloerError("unreachable ring dispatch");
}

template <Ring R>
R coeff_from_rational(const mpq_class& q) {
    if constexpr (std::is_same_v<R, Rat>) {
        return Rat{q};
    } else if constexpr (std::is_same_v<R, Zint>) {
        if (q.get_den() != 1) throw ValidationError("coefficient " + q.get_str() + " is not in Z");
        return Zint{q.get_num()};
    } else {
        static_assert(std::is_same_v<R, Z2>);
        if (q.get_den() != 1)
            throw ValidationError("coefficient " + q.get_str() + " is not in Z/2");
        return Z2{static_cast<int>(mpz_class(q.get_num() % 2).get_si() != 0)};
    }
}

template <Ring R>
GradedComplex<R> build_graded(const ComplexFile& f) {
    std::vector<DiffEntry<R>> entries;
    for (const auto& [from, to, coeff, texp] : f.diff) {
        if (texp != 0) throw ValidationError("t-exponent in a non-Laurent complex");
        entries.push_back({from, to, coeff_from_rational<R>(coeff)});
    }
    return make_complex<R>(f.gens, entries);
}

template <Ring R>
UComplex<R> build_ucomplex(const ComplexFile& f) {
    std::vector<DiffEntry<R>> entries;
    for (const auto& [from, to, coeff, texp] : f.umap) {
        (void)texp;
        entries.push_back({from, to, coeff_from_rational<R>(coeff)});
    }
    return make_ucomplex(build_graded<R>(f), entries);
}

template <Ring R>
JComplex<R> build_jcomplex(const ComplexFile& f) {
    std::vector<DiffEntry<R>> entries;
    for (const auto& [from, to, coeff, texp] : f.jmap) {
        (void)texp;
        entries.push_back({from, to, coeff_from_rational<R>(coeff)});
    }
    return make_jcomplex(build_graded<R>(f), entries);
}

template <Ring R>
LaurentComplex<R> build_laurent(const ComplexFile& f) {
    std::vector<LaurentEntry<R>> entries;
    for (const auto& [from, to, coeff, texp] : f.diff)
        entries.push_back({from, to, Laurent<R>::monomial(coeff_from_rational<R>(coeff), texp)});
    return make_laurent<R>(f.gens, entries, f.deg_t.value_or(-2));
}

} // namespace floer
