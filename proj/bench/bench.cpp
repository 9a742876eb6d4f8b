// Parallel kernels against their serial references: row reduction of random
// rational matrices, and the class predicates over a corpus of random maps.

#include "isphere/exactla.hpp"
#include "isphere/model.hpp"
#include "support/random_complexes.hpp"
#include "support/seed.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace isphere;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"isphere benchmarks"};
    std::vector<std::size_t> sizes{24, 48, 72};
    int reps = 3, maps = 60;
    app.add_option("--sizes", sizes, "square matrix sizes for row reduction");
    app.add_option("--reps", reps, "repetitions per measurement");
    app.add_option("--maps", maps, "random maps for the predicate benchmark");
    CLI11_PARSE(app, argc, argv);

    auto rng = testsupport::make_rng(5000);
    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial s", "parallel s", "same");

    for (std::size_t n : sizes) {
        Matrix m = testsupport::random_low_rank(rng, n, n, n - n / 4);
        exactla::RrefResult a, b;
        double ts = seconds([&] { a = exactla::serial::rref(m); }, reps);
        double tp = seconds([&] { b = exactla::rref(m); }, reps);
        bool same = a.reduced == b.reduced && a.pivots == b.pivots && a.transform == b.transform;
        std::string label = "rref " + std::to_string(n) + "x" + std::to_string(n);
        std::printf("%-28s %12.4f %12.4f %8s\n", label.c_str(), ts, tp, same ? "yes" : "NO");
    }

    testsupport::CorpusOptions opt;
    opt.max_values = 5;
    opt.max_degree = 4;
    opt.max_blocks = 6;
    std::vector<PersComplexMap> corpus;
    for (int i = 0; i < maps; ++i)
        corpus.push_back(testsupport::random_complex_map(rng, opt).map);
    using Pred = model::Verdict (*)(const PersComplexMap&, const model::CheckOptions&);
    const std::vector<std::pair<const char*, Pred>> preds{{"weq", model::is_weak_equivalence},
                                                          {"fib", model::is_fibration},
                                                          {"trivfib", model::is_trivial_fibration}};
    for (const auto& [name, pred] : preds) {
        model::CheckOptions serial, parallel;
        serial.parallel = false;
        serial.all_pairs = parallel.all_pairs = true;
        std::vector<bool> vs, vp;
        double ts = seconds([&] { vs.clear(); for (const auto& f : corpus) vs.push_back(pred(f, serial).holds); }, reps);
        double tp = seconds([&] { vp.clear(); for (const auto& f : corpus) vp.push_back(pred(f, parallel).holds); }, reps);
        std::string label = std::string(name) + ", all pairs, " + std::to_string(maps) + " maps";
        std::printf("%-28s %12.4f %12.4f %8s\n", label.c_str(), ts, tp, vs == vp ? "yes" : "NO");
    }
    return 0;
}
