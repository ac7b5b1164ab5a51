#include "floer/heegaard.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace floer {

HeegaardDiagram HeegaardDiagram::build(
    int genus, std::map<std::pair<int, int>, std::vector<IntersectionPoint>> pts) {
    if (genus < 1) throw ValidationError("genus must be >= 1");
    HeegaardDiagram d;
    d.genus = genus;
    std::set<std::string> ids;
    for (auto& [pair, list] : pts) {
        if (pair.first < 0 || pair.first >= genus || pair.second < 0 || pair.second >= genus)
            throw ValidationError("curve index out of range");
        for (const auto& p : list) {
            if (p.sign != 1 && p.sign != -1) throw ValidationError("point sign must be +1 or -1");
            if (!ids.insert(p.id).second) throw ValidationError("duplicate point id: " + p.id);
        }
        std::sort(list.begin(), list.end(),
                  [](const IntersectionPoint& a, const IntersectionPoint& b) { return a.id < b.id; });
        if (!list.empty()) d.points.emplace(pair, std::move(list));
    }
    return d;
}

const std::vector<IntersectionPoint>& HeegaardDiagram::at(int i, int j) const {
    static const std::vector<IntersectionPoint> none;
    auto it = points.find({i, j});
    return it == points.end() ? none : it->second;
}

std::string HeegaardGenerator::label() const {
    std::string s = "{";
    for (std::size_t i = 0; i < choice.size(); ++i) {
        if (i) s += ",";
        s += choice[i];
    }
    return s + "}";
}

int permutation_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return (inversions % 2 == 0) ? +1 : -1;
}

std::vector<HeegaardGenerator> enumerate_generators(const HeegaardDiagram& d) {
    std::vector<HeegaardGenerator> out;
    std::vector<int> perm(d.genus);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool feasible = true;
        for (int i = 0; i < d.genus && feasible; ++i)
            if (d.at(i, perm[i]).empty()) feasible = false;
        if (!feasible) continue;
        // Cartesian product of the point lists, point ids in order.
        std::vector<std::size_t> pick(d.genus, 0);
        for (;;) {
            HeegaardGenerator g;
            g.permutation = perm;
            for (int i = 0; i < d.genus; ++i) g.choice.push_back(d.at(i, perm[i])[pick[i]].id);
            out.push_back(std::move(g));
            int pos = d.genus - 1;
            while (pos >= 0) {
                if (++pick[pos] < d.at(pos, perm[pos]).size()) break;
                pick[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = q;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

SignedCount signed_count(const HeegaardDiagram& d) {
    SignedCount out;
    out.by_enumeration = 0;
    for (const auto& g : enumerate_generators(d)) {
        int s = permutation_sign(g.permutation);
        for (int i = 0; i < d.genus; ++i) {
            for (const auto& p : d.at(i, g.permutation[i]))
                if (p.id == g.choice[i]) s *= p.sign;
        }
        out.by_enumeration += s;
    }

    std::vector<std::vector<mpz_class>> counts(d.genus, std::vector<mpz_class>(d.genus, 0));
    for (int i = 0; i < d.genus; ++i)
        for (int j = 0; j < d.genus; ++j)
            for (const auto& p : d.at(i, j)) counts[i][j] += p.sign;
    out.by_determinant = integer_determinant(counts);

    if (out.by_enumeration != out.by_determinant)
        throw InternalMismatch("generator enumeration disagrees with the determinant: " +
                               out.by_enumeration.get_str() + " vs " + out.by_determinant.get_str());
    out.value = out.by_enumeration;
    return out;
}

} // namespace floer
