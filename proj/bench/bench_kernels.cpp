// Serial reference vs OpenMP parallel path on the heavy kernels.
// Usage: barycentra_bench [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "barycentra/affine.hpp"
#include "barycentra/builtins.hpp"
#include "barycentra/io.hpp"
#include "barycentra/laws.hpp"

using namespace barycentra;

namespace {

double best_of(int repeats, const std::function<std::string()>& run, std::string& result) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        result = run();
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        best = std::min(best, took.count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    const AffineSpaceModel gf52(FiniteVectorSpace(5, 2));
    const CosetAlgebra s32(FiniteVectorSpace(3, 2));
    const CosetAlgebra s52(FiniteVectorSpace(5, 2));
    const auto t = builtin("t-algebra");

    const std::vector<std::pair<std::string, std::function<std::string(Execution)>>> kernels{
        {"entropicity GF(5)^2 200000 samples",
         [&](Execution e) {
             return dump_json(check_identity(gf52, find_law("entropicity"), Strategy::sampled(200000, 7), e).to_json());
         }},
        {"skew-associativity T 20000 samples",
         [&](Execution e) {
             return dump_json(check_identity(*t.model, find_law("skew-associativity"), Strategy::sampled(20000, 7), e).to_json());
         }},
        {"coset lift exhaustive GF(3)^2",
         [&](Execution e) { return dump_json(verify_lifted_operations(s32, e).to_json()); }},
        {"coset replica GF(5)^2",
         [&](Execution e) { return dump_json(verify_replica_is_projective(s52, {2, 3, 4}, e).to_json()); }},
    };

    std::printf("threads: %d, repeats: %d\n", omp_get_max_threads(), repeats);
    std::printf("%-40s %12s %12s %8s %s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "identical");
    bool all_same = true;
    for (const auto& [name, kernel] : kernels) {
        std::string serial_out, parallel_out;
        const double s = best_of(repeats, [&] { return kernel(Execution::Serial); }, serial_out);
        const double p = best_of(repeats, [&] { return kernel(Execution::Parallel); }, parallel_out);
        const bool same = serial_out == parallel_out;
        all_same = all_same && same;
        std::printf("%-40s %12.4f %12.4f %8.2f %s\n", name.c_str(), s, p, s / p, same ? "yes" : "NO");
    }
    return all_same ? 0 : 1;
}
