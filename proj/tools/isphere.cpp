// isphere: command-line front end. JSON goes to stdout, diagnostics to stderr.
// Exit codes: 0 ok / holds, 1 does not hold or a hypothesis fails, 2 bad input.

#include "cli/demos.hpp"
#include "cli/fixtures.hpp"
#include "isphere/errors.hpp"
#include "isphere/io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <set>

using namespace isphere;
using io::Json;

namespace {

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t seed()
{
    if (const char* s = std::getenv("ISPHERE_SEED"))
        return std::strtoull(s, nullptr, 10);
    return 1;
}

// Grid refinement that puts the given values on the grid of a map.
PersComplexMap refined(const PersComplexMap& f, const std::vector<Rational>& extra, bool enabled)
{
    if (!enabled)
        return f;
    EventGrid finer = merge_grids(f.source.grid(), extra);
    if (finer == f.source.grid())
        return f;
    std::cerr << "refined grid to " << finer.value_count() << " values\n";
    return refine(f, finer);
}

int cmd_barcode(const std::string& file, bool text, std::optional<std::size_t> degree)
{
    Json j = io::read_json_file(file);
    PersModule m;
    if (j.contains("modules")) {
        if (!degree)
            throw UsageError("a complex needs --degree to select a cohomology module");
        PersComplex x = io::complex_from_json(j);
        if (*degree > x.max_degree())
            throw UsageError("--degree exceeds the top degree " + std::to_string(x.max_degree()));
        m = cohomology(x, *degree).module;
    } else {
        m = io::module_from_json(j);
    }
    auto b = barcode(m).barcode;
    Json out{{"barcode", io::to_json(b)}};
    if (text)
        out["text"] = b.to_text();
    emit(out);
    return 0;
}

int cmd_check(const std::string& cls, const std::string& file, bool all_pairs, bool serial)
{
    PersComplexMap f = io::map_from_json(io::read_json_file(file));
    model::CheckOptions opt;
    opt.all_pairs = all_pairs;
    opt.parallel = !serial;
    model::Verdict v;
    if (cls == "weq")
        v = model::is_weak_equivalence(f, opt);
    else if (cls == "fib")
        v = model::is_fibration(f, opt);
    else if (cls == "trivfib")
        v = model::is_trivial_fibration(f, opt);
    else
        v = model::is_pointwise_surjective(f, opt);
    Json out = io::to_json(v, f.source.grid());
    out = Json{{"class", cls}, {"holds", v.holds}, {"verdict", out}};
    emit(out);
    if (!v.holds && v.certificate)
        std::cerr << v.certificate->message << "\n";
    return v.holds ? 0 : 1;
}

int cmd_lift(const std::string& map_file, const std::string& problem_file, bool refine_grid)
{
    PersComplexMap f = io::map_from_json(io::read_json_file(map_file));
    auto pr = io::lifting_problem_from_json(io::read_json_file(problem_file));
    std::vector<Rational> ends{pr.s};
    if (pr.t)
        ends.push_back(*pr.t);
    f = refined(f, ends, refine_grid);
    auto r = model::solve_lifting(f, pr);
    Json out{{"problem", io::to_json(pr)}, {"result", io::to_json(r)}};
    if (r.solved)
        out["verified"] = model::check_lift(f, pr, r.lift);
    else
        std::cerr << "no lift: the functional separates the data from the attainable values\n";
    emit(out);
    return r.solved ? 0 : 1;
}

int report_factorization(const model::FactorizationReport& r, const PersComplex& target,
                         const std::optional<PersComplexMap>& base, const std::string& out_file)
{
    auto check = model::verify_cell_presentation(r.presentation, target, base, seed());
    Json out = io::to_json(r);
    out["verification"] = io::to_json(check);
    if (!out_file.empty()) {
        io::write_json_file(out_file, io::to_json(r.presentation));
        out["presentationFile"] = out_file;
    }
    emit(out);
    return r.ok() && check.holds ? 0 : 1;
}

int cmd_factorize(const std::string& file, const std::string& out_file)
{
    PersComplexMap i = io::map_from_json(io::read_json_file(file));
    return report_factorization(model::factor_mono_as_cellular(i), i.target, i, out_file);
}

int cmd_cofibrant_replace(const std::string& file, const std::string& out_file)
{
    PersComplex x = io::complex_from_json(io::read_json_file(file));
    return report_factorization(model::cofibrant_replacement(x), x, std::nullopt, out_file);
}

int cmd_minimal_model(const std::string& file, std::optional<std::size_t> top, const std::string& model_out,
                      const std::string& skeleton_out)
{
    auto a = io::cdga_from_json(io::read_json_file(file));
    if (top && *top != a.max_degree()) {
        if (a.is_free())
            a = pcdga::PersCDGA::free(a.grid(), *top, a.presentation());
        else
            a = cli::truncate_nodewise(a, *top);
    }
    auto mm = pcdga::minimal_model(a);
    Json out = io::to_json(mm);
    if (!model_out.empty()) {
        io::write_json_file(model_out, io::to_json(mm.model));
        out["modelFile"] = model_out;
    }
    if (!skeleton_out.empty()) {
        io::write_json_file(skeleton_out, io::skeleton_to_json(mm.skeleton));
        out["skeletonFile"] = skeleton_out;
    }
    emit(out);
    std::cerr << mm.model.presentation().generators.size() << " generators; minimal: " << mm.minimal.holds
              << ", quasi-isomorphism: " << mm.quasi_isomorphism.holds << "\n";
    return mm.minimal.holds && mm.quasi_isomorphism.holds ? 0 : 1;
}

int cmd_demo(const std::string& name)
{
    auto t = cli::run_demo(name);
    emit(t.to_json());
    std::cerr << t.to_text();
    return t.ok() ? 0 : 1;
}

int cmd_verify_cells(const std::string& p_file, const std::string& against, const std::string& base_file,
                     bool refine_grid)
{
    auto p = io::presentation_from_json(io::read_json_file(p_file));
    auto claimed = io::complex_from_json(io::read_json_file(against));
    std::optional<PersComplexMap> base;
    if (!base_file.empty())
        base = io::map_from_json(io::read_json_file(base_file));
    if (refine_grid) {
        std::vector<Rational> ends;
        for (const auto& stage : p.stages)
            for (const auto& c : stage) {
                ends.push_back(c.interval.left);
                if (c.interval.right)
                    ends.push_back(*c.interval.right);
            }
        EventGrid finer = merge_grids(merge_grids(p.base.grid(), ends), claimed.grid().values());
        if (finer != p.base.grid() || finer != claimed.grid()) {
            std::cerr << "refined grid to " << finer.value_count() << " values\n";
            p.base = refine(p.base, finer);
            claimed = refine(claimed, finer);
            if (base)
                base = refine(*base, finer);
        }
    }
    auto check = model::verify_cell_presentation(p, claimed, base, seed());
    emit(io::to_json(check));
    if (!check.holds)
        std::cerr << check.message << "\n";
    return check.holds ? 0 : 1;
}

int cmd_fixture(const std::string& name, bool list, const std::string& out_file)
{
    if (list || name.empty()) {
        Json names = cli::fixture_names();
        emit(Json{{"fixtures", names}, {"demos", cli::demo_names()}});
        return 0;
    }
    Json j = cli::fixture(name);
    if (!out_file.empty())
        io::write_json_file(out_file, j);
    else
        emit(j);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interval-sphere model structure on tame persistent cochain complexes over Q"};
    app.require_subcommand(1);
    app.fallthrough();
    bool refine_grid = false;
    app.add_flag("--refine", refine_grid, "merge off-grid endpoints into the grid before lifting or replaying cells");

    std::string file, second, out_file, skeleton_out, base_file, cls = "weq";
    bool text = false, all_pairs = false, serial = false, list = false;
    std::optional<std::size_t> degree, top;

    auto* barcode_cmd = app.add_subcommand("barcode", "decorated barcode of a module (or of H^k of a complex)");
    barcode_cmd->add_option("file", file, "module or complex JSON")->required();
    barcode_cmd->add_flag("--text", text, "include one line per bar");
    barcode_cmd->add_option("--degree", degree, "cohomology degree when the file holds a complex");

    auto* check_cmd = app.add_subcommand("check", "decide a class of a map, with a certificate on failure");
    check_cmd->add_option("--class", cls, "weq, fib, trivfib or epi")
        ->check(CLI::IsMember(std::set<std::string>{"weq", "fib", "trivfib", "epi"}));
    check_cmd->add_option("file", file, "map JSON")->required();
    check_cmd->add_flag("--all-pairs", all_pairs, "check every node pair instead of adjacent ones");
    check_cmd->add_flag("--serial", serial, "disable parallel evaluation");

    auto* lift_cmd = app.add_subcommand("lift", "solve a generating-cofibration lifting problem");
    lift_cmd->add_option("map", file, "map JSON")->required();
    lift_cmd->add_option("problem", second, "lifting problem JSON")->required();

    auto* factor_cmd = app.add_subcommand("factorize", "two-stage cellular presentation of a monomorphism");
    factor_cmd->add_option("file", file, "map JSON")->required();
    factor_cmd->add_option("-o,--output", out_file, "write the presentation here");

    auto* cof_cmd = app.add_subcommand("cofibrant-replace", "cellular presentation of a tame complex");
    cof_cmd->add_option("file", file, "complex JSON")->required();
    cof_cmd->add_option("-o,--output", out_file, "write the presentation here");

    auto* mm_cmd = app.add_subcommand("minimal-model", "persistent minimal model of a CDGA");
    mm_cmd->add_option("file", file, "CDGA JSON")->required();
    mm_cmd->add_option("--max-degree", top, "truncation degree N");
    mm_cmd->add_option("--model-out", out_file, "write the model here");
    mm_cmd->add_option("--skeleton-out", skeleton_out, "write the cell skeleton here");

    auto* demo_cmd = app.add_subcommand("demo", "machine-checked counterexample transcript");
    demo_cmd->add_option("name", file, "not-projective, closed-interval or j-pushout-weq")
        ->required()
        ->check(CLI::IsMember(cli::demo_names()));

    auto* verify_cmd = app.add_subcommand("verify-cells", "check that a presentation replays to a complex");
    verify_cmd->add_option("presentation", file, "presentation JSON")->required();
    verify_cmd->add_option("--against", second, "claimed complex JSON")->required();
    verify_cmd->add_option("--base-map", base_file, "map from the base to the claimed complex");

    auto* fixture_cmd = app.add_subcommand("fixture", "print a bundled example object");
    fixture_cmd->add_option("name", file, "fixture name");
    fixture_cmd->add_flag("--list", list, "list fixture and demo names");
    fixture_cmd->add_option("-o,--output", out_file, "write to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*barcode_cmd)
            return cmd_barcode(file, text, degree);
        if (*check_cmd)
            return cmd_check(cls, file, all_pairs, serial);
        if (*lift_cmd)
            return cmd_lift(file, second, refine_grid);
        if (*factor_cmd)
            return cmd_factorize(file, out_file);
        if (*cof_cmd)
            return cmd_cofibrant_replace(file, out_file);
        if (*mm_cmd)
            return cmd_minimal_model(file, top, out_file, skeleton_out);
        if (*demo_cmd)
            return cmd_demo(file);
        if (*verify_cmd)
            return cmd_verify_cells(file, second, base_file, refine_grid);
        if (*fixture_cmd)
            return cmd_fixture(file, list, out_file);
    } catch (const HypothesisError& e) {
        Json w;
        try {
            w = Json::parse(e.witness());
        } catch (const nlohmann::json::exception&) {
            w = e.witness();
        }
        emit(Json{{"error", e.what()}, {"witness", w}});
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
