// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Sample sizes are fixed here; all arithmetic is exact, so no tolerances apply.

#include "cli/demos.hpp"
#include "cli/fixtures.hpp"
#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/model.hpp"
#include "isphere/pcdga.hpp"
#include "support/cdga_fixtures.hpp"
#include "support/model_oracles.hpp"
#include "support/random_complexes.hpp"
#include "support/seed.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace isphere;

namespace {

constexpr int kModules = 500;         // criterion 1
constexpr int kMaps = 300;            // criteria 2, 3, 8
constexpr int kMonos = 200;           // criterion 6
constexpr int kJCells = 100;          // criterion 7
constexpr int kHirschTrials = 60;     // criterion 9
constexpr std::size_t kModelTop = 6;  // criterion 10: N
constexpr std::size_t kModelQiso = 4; // criterion 10: quasi-isomorphism checked through this degree

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<PersComplexMap> corpus()
{
    auto rng = testsupport::make_rng(900);
    testsupport::CorpusOptions opt;
    std::vector<PersComplexMap> maps;
    for (int i = 0; i < kMaps; ++i)
        maps.push_back(testsupport::random_complex_map(rng, opt).map);
    return maps;
}

std::vector<PersComplexMap> mono_corpus()
{
    auto rng = testsupport::make_rng(901);
    testsupport::CorpusOptions opt;
    std::vector<PersComplexMap> maps;
    for (int i = 0; i < kMonos; ++i)
        maps.push_back(testsupport::random_mono(rng, opt));
    return maps;
}

// Interval normal form built from the bar list alone: bar b maps to itself
// across a step when it is alive at both ends.
Matrix expected_step(const std::vector<BarRecord>& bars, std::size_t j)
{
    std::vector<std::size_t> here, there;
    for (std::size_t b = 0; b < bars.size(); ++b) {
        if (bars[b].first <= j && j <= bars[b].last)
            here.push_back(b);
        if (bars[b].first <= j + 1 && j + 1 <= bars[b].last)
            there.push_back(b);
    }
    Matrix m(there.size(), here.size());
    for (std::size_t r = 0; r < there.size(); ++r)
        for (std::size_t c = 0; c < here.size(); ++c)
            if (there[r] == here[c])
                m(r, c) = 1;
    return m;
}

Outcome barcode_oracle()
{
    auto rng = testsupport::make_rng(100);
    std::size_t rank_bad = 0, form_bad = 0, pairs = 0;
    for (int i = 0; i < kModules; ++i) {
        EventGrid g = testsupport::random_grid(rng, 5);
        PersModule m = testsupport::random_module(rng, g, 5);
        auto b = barcode(m);
        const std::size_t n = m.node_count();
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p; q < n; ++q) {
                std::size_t cover = 0;
                for (const auto& r : b.bars)
                    cover += r.first <= p && q <= r.last;
                std::size_t rank = exactla::rank(m.composite(p, q));
                rank_bad += cover != rank;
                ++pairs;
            }
        for (std::size_t j = 0; j + 1 < n; ++j) {
            auto inv = exactla::inverse(b.basis[j + 1]);
            if (!inv || *inv * m.step(j) * b.basis[j] != expected_step(b.bars, j))
                ++form_bad;
        }
        for (std::size_t j = 0; j < n; ++j)
            if (b.basis[j].rows() != m.dim(j) || exactla::rank(b.basis[j]) != m.dim(j))
                ++form_bad;
    }
    std::ostringstream d;
    d << kModules << " modules, " << pairs << " node pairs, " << rank_bad << " rank mismatches, " << form_bad
      << " normal-form mismatches";
    return {rank_bad == 0 && form_bad == 0, d.str()};
}

Outcome class_equality(const std::vector<PersComplexMap>& maps)
{
    std::size_t bad = 0, implication_bad = 0, trivfibs = 0, fibs = 0, weqs = 0;
    for (const auto& f : maps) {
        bool fib = model::is_fibration(f).holds;
        bool weq = model::is_weak_equivalence(f).holds;
        bool triv = model::is_trivial_fibration(f).holds;
        bad += triv != (fib && weq);
        implication_bad += triv && !fib;
        trivfibs += triv;
        fibs += fib;
        weqs += weq;
    }
    std::ostringstream d;
    d << maps.size() << " maps (" << trivfibs << " trivial fibrations, " << fibs << " fibrations, " << weqs
      << " weak equivalences), " << bad << " discrepancies, " << implication_bad << " trivfib-not-fib";
    return {bad == 0 && implication_bad == 0 && trivfibs > 0 && fibs > trivfibs, d.str()};
}

Outcome adjacency(const std::vector<PersComplexMap>& maps, const std::vector<PersComplexMap>& monos)
{
    std::size_t bad = 0, checked = 0, failures = 0;
    model::CheckOptions adj, all;
    all.all_pairs = true;
    for (const auto* set : {&maps, &monos})
        for (const auto& f : *set) {
            auto a = model::is_j0_injective(f, adj), b = model::is_j0_injective(f, all);
            auto c = model::is_i0_injective(f, adj), e = model::is_i0_injective(f, all);
            bad += (a.holds != b.holds) + (c.holds != e.holds);
            failures += !a.holds + !c.holds;
            if (!b.holds)
                bad += !model::reverify(f, *b.certificate);
            checked += 2;
        }
    std::ostringstream d;
    d << checked << " checks on " << maps.size() + monos.size() << " maps (" << failures << " failing), " << bad
      << " disagreements";
    return {bad == 0 && failures > 0, d.str()};
}

Outcome not_projective()
{
    auto t = cli::demo_not_projective();
    PersComplexMap q = cli::quotient_q();
    bool epi = testsupport::epi_oracle(q);
    bool weq = testsupport::weq_oracle(q);
    auto fib = model::is_fibration(q);
    bool cert = !fib.holds && fib.certificate->vector == Vector{Rational(1), Rational(0)} &&
                fib.certificate->components == std::vector<std::string>{"y_s", "x_t"} &&
                model::reverify(q, *fib.certificate);
    auto sq = cli::q_square();
    auto r = model::solve_lifting(q, sq);
    bool no_lift = !r.solved && !testsupport::brute_force_liftable(q, sq);
    std::ostringstream d;
    d << "surjective " << epi << ", quasi-iso " << weq << ", fibration " << fib.holds << ", certificate (y_s, x_t) = "
      << (cert ? "(1, 0)" : "wrong") << ", lift " << (no_lift ? "refuted" : "found") << ", demo "
      << (t.ok() ? "ok" : "failed");
    return {t.ok() && epi && weq && cert && no_lift, d.str()};
}

Outcome closed_interval()
{
    auto t = cli::demo_closed_interval();
    PersComplex x = cli::closed_interval_tensor();
    auto w = model::not_cofibrant_certificate(x);
    bool pinned = w && w->degree == 1 && w->value == Rational(1);
    // Independent reading: the degree-1 step At(1) -> Germ(1) has a kernel.
    Matrix step = x.step(1, EventGrid::at_node(1));
    bool kernel = x.dim(1, EventGrid::at_node(1)) > exactla::rank(step);
    std::ostringstream d;
    d << "witness " << (pinned ? "degree 1 at t = 1" : "missing or wrong") << ", step kernel at t " << kernel
      << ", demo " << (t.ok() ? "ok" : "failed");
    return {t.ok() && pinned && kernel, d.str()};
}

Outcome factorization(const std::vector<PersComplexMap>& monos)
{
    std::size_t bad = 0, cells = 0;
    for (const auto& i : monos) {
        auto r = model::factor_mono_as_cellular(i);
        bool ok = r.iso.is_iso() && compose(r.iso, r.replayed.inclusion) == i && r.ok();
        PersComplex current = r.presentation.base;
        for (std::size_t s = 0; s < r.presentation.stages.size(); ++s) {
            const auto& st = r.presentation.stages[s];
            ok = ok && verify_pushout(current, st, r.replayed.stages[s]).ok;
            current = r.replayed.stages[s].complex;
            cells += st.size();
        }
        ok = ok && current == r.replayed.complex && r.presentation.base == i.source;
        bad += !ok;
    }
    std::ostringstream d;
    d << monos.size() << " monomorphisms, " << cells << " cells, " << bad << " failed replays";
    return {bad == 0, d.str()};
}

Outcome j_pushout()
{
    auto rng = testsupport::make_rng(700);
    testsupport::CorpusOptions opt;
    std::size_t bad = 0;
    for (int i = 0; i < kJCells; ++i) {
        EventGrid g = testsupport::random_grid(rng, 4);
        std::size_t N = 1 + rng() % 3;
        auto x = testsupport::random_complex(rng, g, N, opt).complex;
        auto cells = testsupport::random_j_cells(rng, x, 1 + rng() % 3, N);
        auto a = attach_cells(x, cells);
        bad += !(model::is_weak_equivalence(a.inclusion).holds && testsupport::weq_oracle(a.inclusion));
    }
    std::ostringstream d;
    d << kJCells << " attachments, " << bad << " not quasi-isomorphisms";
    return {bad == 0, d.str()};
}

Outcome lift_solver(const std::vector<PersComplexMap>& maps)
{
    using model::Generator;
    auto rng = testsupport::make_rng(800);
    std::size_t squares = 0, missed = 0, wrong = 0, false_neg = 0, false_pos = 0;
    for (const auto& f : maps) {
        const EventGrid& g = f.source.grid();
        const std::size_t N = f.source.max_degree();
        bool fib = model::is_fibration(f).holds, triv = model::is_trivial_fibration(f).holds;
        for (Generator kind : {Generator::I0, Generator::Iinf, Generator::J0, Generator::Jinf}) {
            bool is_i = kind == Generator::I0 || kind == Generator::Iinf;
            bool two = kind == Generator::I0 || kind == Generator::J0;
            for (std::size_t K = is_i ? 0 : 1; K <= N + 1; ++K)
                for (std::size_t si = 0; si < g.value_count(); ++si)
                    for (std::size_t ti = si + 1; ti <= (two ? g.value_count() - 1 : si + 1); ++ti) {
                        if (two && ti >= g.value_count())
                            break;
                        auto pr = testsupport::random_square(rng, f, kind, K, si, ti);
                        auto r = model::solve_lifting(f, pr);
                        bool possible = testsupport::brute_force_liftable(f, pr);
                        ++squares;
                        if ((is_i && triv) || (!is_i && fib))
                            missed += !r.solved;
                        if (r.solved)
                            wrong += !model::check_lift(f, pr, r.lift);
                        false_neg += possible && !r.solved;
                        false_pos += !possible && r.solved;
                    }
        }
    }
    std::ostringstream d;
    d << squares << " squares, " << missed << " missing lifts against (trivial) fibrations, " << wrong
      << " lifts failing a triangle, " << false_neg << " false negatives, " << false_pos << " false positives";
    return {missed == 0 && wrong == 0 && false_neg == 0 && false_pos == 0, d.str()};
}

Outcome hirsch()
{
    auto rng = testsupport::make_rng(1000);
    EventGrid g({Rational(0), Rational(1), Rational(2)});
    std::size_t dim_bad = 0, weq_bad = 0, nodes = 0;
    for (int trial = 0; trial < kHirschTrials; ++trial) {
        const std::size_t N = 4 + rng() % 2;
        auto a = testsupport::random_free_cdga(rng, g, N, 1 + rng() % 3, 2);
        const std::size_t K = 2 + rng() % (N - 1);
        pcdga::HirschExtensionRecord rec{K, {testsupport::random_disk_cell(rng, a, K, "a")}};
        auto r = pcdga::hirsch_extension(a, rec);
        const auto& iv = rec.cells[0].interval;
        for (std::size_t u = iv.first_node(g); u <= iv.last_node(g); ++u) {
            std::vector<std::size_t> before, after;
            for (std::size_t q = 0; q <= N; ++q) {
                before.push_back(a.dim(u, q));
                after.push_back(r.algebra.dim(u, q));
            }
            dim_bad += after != testsupport::tensor_with_disk(before, K);
            ++nodes;
        }
        weq_bad += !(pcdga::is_weak_equivalence_cdga(r.inclusion).holds &&
                     testsupport::weq_oracle(r.inclusion.underlying(), N));
    }
    std::ostringstream d;
    d << kHirschTrials << " extensions, " << nodes << " nodes in [s,t), " << dim_bad << " dimension mismatches, "
      << weq_bad << " inclusions not weak equivalences";
    return {dim_bad == 0 && weq_bad == 0, d.str()};
}

Outcome minimal_models()
{
    EventGrid g = cli::grid01();
    bool ok = true;
    std::ostringstream d;
    for (bool dies : {false, true}) {
        auto a = cli::cohomology_s2(g, kModelTop, dies ? std::optional<Rational>(1) : std::nullopt);
        auto mm = pcdga::minimal_model(a);
        const auto& p = mm.model.presentation();
        auto support = dies ? DecoratedInterval::half_open(0, 1) : DecoratedInterval::half_open(0);
        bool shape = p.generators.size() == 2 && p.generators[0].degree == 2 && p.generators[1].degree == 3 &&
                     p.generators[0].d.is_zero() &&
                     p.generators[1].d == pcdga::multiply(pcdga::Polynomial::generator(0),
                                                          pcdga::Polynomial::generator(0), p.degrees()) &&
                     p.generators[0].support == support && p.generators[1].support == support;
        bool minimal = pcdga::verify_minimality(mm.model).holds;
        bool qiso = pcdga::is_weak_equivalence_cdga(mm.map, kModelQiso).holds &&
                    testsupport::weq_oracle(mm.map.underlying(), kModelQiso + 1);
        bool replays = pcdga::replay_skeleton(g, kModelTop, mm.skeleton) == mm.model;
        ok = ok && shape && minimal && qiso && replays;
        d << (dies ? "dying: " : "constant: ") << "generators e2,e3 with de3 = e2^2 on " << support.to_string() << " "
          << (shape ? "yes" : "no") << ", minimal " << minimal << ", quasi-iso through degree " << kModelQiso << " "
          << qiso << ", replays " << replays << (dies ? "" : "; ");
    }
    return {ok, d.str()};
}

Outcome guarded(const std::function<Outcome()>& f)
{
    try {
        return f();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

} // namespace

int main()
{
    std::printf("seed %llu\n", static_cast<unsigned long long>(testsupport::base_seed()));
    const auto maps = corpus();
    const auto monos = mono_corpus();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"barcode oracle", barcode_oracle},
        {"class equality", [&] { return class_equality(maps); }},
        {"adjacency reduction", [&] { return adjacency(maps, monos); }},
        {"not-projective pin", not_projective},
        {"not-injective pin", closed_interval},
        {"factorization replay", [&] { return factorization(monos); }},
        {"J-pushout weq", j_pushout},
        {"lift solver", [&] { return lift_solver(maps); }},
        {"Hirsch pointwise form", hirsch},
        {"minimal model", minimal_models},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o = guarded(criteria[i].second);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2zu %s: %s (%s; %.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
