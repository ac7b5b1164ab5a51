#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "floer/errors.hpp"
#include "floer/novikov.hpp"
#include "floer/rings.hpp"

namespace floer {

struct IntersectionPoint {
    std::string id;
    int sign = +1; // +1 or -1
};

// Genus-g diagram: for each (alpha_i, beta_j) pair the list of signed
// intersection points, sorted by point id.
struct HeegaardDiagram {
    int genus = 1;
    std::map<std::pair<int, int>, std::vector<IntersectionPoint>> points; // 0-based curve indices

    static HeegaardDiagram build(int genus,
                                 std::map<std::pair<int, int>, std::vector<IntersectionPoint>> pts);
    const std::vector<IntersectionPoint>& at(int i, int j) const;
};

// A generator: a permutation sigma together with one chosen point from each
// alpha_i /\ beta_sigma(i).
struct HeegaardGenerator {
    std::vector<int> permutation;    // sigma(i), 0-based
    std::vector<std::string> choice; // chosen point id per i

    std::string label() const;
};

// All matchings, ordered lexicographically in sigma and then in point ids.
std::vector<HeegaardGenerator> enumerate_generators(const HeegaardDiagram& d);

int permutation_sign(const std::vector<int>& perm);

struct SignedCount {
    mpz_class by_enumeration; // sum over generators of sign(sigma) * prod of point signs
    mpz_class by_determinant; // det of the signed intersection-count matrix
    mpz_class value;          // the common value
};

// The signed count of T_alpha /\ T_beta, computed both by enumeration and as
// a determinant; the two must agree (Leibniz expansion) or the function
// throws InternalMismatch.
SignedCount signed_count(const HeegaardDiagram& d);

// Exact determinant of an integer matrix (fraction-free elimination).
mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m);

// Chain group of the diagram as a Laurent complex with zero differential:
// one t-orbit per generator, degrees supplied by the caller.
template <Ring R>
LaurentComplex<R> formal_cf_module(const HeegaardDiagram& d,
                                   const std::map<std::string, int>& degree_assignment,
                                   int deg_t = -2) {
    std::vector<Generator> gens;
    for (const auto& g : enumerate_generators(d)) {
        auto it = degree_assignment.find(g.label());
        if (it == degree_assignment.end())
            throw ValidationError("no degree assigned to generator " + g.label());
        gens.push_back({g.label(), it->second});
    }
    return make_laurent<R>(std::move(gens), {}, deg_t);
}

} // namespace floer
