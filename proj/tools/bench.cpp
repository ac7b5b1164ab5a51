// Benchmark: degree-parallel homology kernel against the serial reference on
// a family of flavored complexes of growing width.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "floer/equivariant.hpp"
#include "floer/homology.hpp"

#include "../tests/support/random_complexes.hpp"

using namespace floer;
using floer::testing::Rng;

namespace {

template <class Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        auto start = std::chrono::steady_clock::now();
        fn();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs < best) best = secs;
    }
    return best;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the serial path\n");
#endif
    std::printf("%-28s %8s %12s %12s %8s\n", "complex", "gens", "serial (s)", "parallel (s)",
                "speedup");

    Rng rng(1);
    for (int pieces : {4, 8, 12}) {
        auto u = floer::testing::random_ucomplex<Z2>(rng, pieces);
        int half = 12 + 2 * pieces;
        auto e = jones_flavor(s_bundle(u).total, Flavor::Infty, DegreeWindow(-half, half));
        const auto& c = e.complex;

        HomologyReport<Z2> hs, hp;
        double t_serial = time_best_of(3, [&] { hs = homology_serial(c); });
        double t_parallel = time_best_of(3, [&] { hp = homology(c); });
        if (!(hs == hp)) {
            std::printf("MISMATCH between serial and parallel results\n");
            return 1;
        }
        char name[64];
        std::snprintf(name, sizeof(name), "jones-infty window %d", half);
        std::printf("%-28s %8d %12.4f %12.4f %7.2fx\n", name, c.size(), t_serial, t_parallel,
                    t_serial / t_parallel);
    }

    for (int pieces : {20, 40}) {
        auto rc = floer::testing::random_graded_complex<Zint>(rng, pieces, -8, 8);
        const auto& c = rc.complex;
        HomologyReport<Zint> hs, hp;
        double t_serial = time_best_of(3, [&] { hs = homology_serial(c); });
        double t_parallel = time_best_of(3, [&] { hp = homology(c); });
        if (!(hs == hp)) {
            std::printf("MISMATCH between serial and parallel results\n");
            return 1;
        }
        char name[64];
        std::snprintf(name, sizeof(name), "integer complex %d pieces", pieces);
        std::printf("%-28s %8d %12.4f %12.4f %7.2fx\n", name, c.size(), t_serial, t_parallel,
                    t_serial / t_parallel);
    }
    return 0;
}
