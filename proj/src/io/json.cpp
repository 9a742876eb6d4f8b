#include "isphere/io.hpp"

#include "isphere/errors.hpp"

#include <fstream>
#include <sstream>

namespace isphere::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw UsageError("JSON " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(path, std::string("missing key \"") + key + "\"");
    return *it;
}

const Json* optional_field(const Json& j, const char* key)
{
    if (!j.is_object())
        return nullptr;
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string sub(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& array(const Json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

std::size_t count(const Json& j, const std::string& path)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        fail(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::string text(const Json& j, const std::string& path)
{
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

template <class F>
auto list_of(const Json& j, const std::string& path, F f)
{
    array(j, path);
    std::vector<decltype(f(j, path))> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(f(j[i], sub(path, i)));
    return out;
}

template <class T>
Json json_list(const std::vector<T>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs)
        a.push_back(to_json(x));
    return a;
}

Json matrix_grid(const std::vector<std::vector<Matrix>>& ms)
{
    Json a = Json::array();
    for (const auto& row : ms)
        a.push_back(json_list(row));
    return a;
}

std::vector<std::vector<Matrix>> matrix_grid_from_json(const Json& j, const std::string& path)
{
    return list_of(j, path, [](const Json& r, const std::string& p) {
        return list_of(r, p, [](const Json& m, const std::string& q) { return matrix_from_json(m, q); });
    });
}

template <class F>
auto wrap(const std::string& path, F f) -> decltype(f())
{
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError("JSON " + (path.empty() ? std::string("/") : path) + ": " + e.what());
    }
}

} // namespace

Json to_json(const Rational& r) { return format_rational(r); }

Json to_json(const Vector& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(format_rational(x));
    return a;
}

Json to_json(const Matrix& m)
{
    Json data = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        data.push_back(to_json(m.row(r)));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Json to_json(const EventGrid& g) { return to_json(g.values()); }

Json to_json(const DecoratedInterval& i)
{
    Json left{{"value", format_rational(i.left)},
              {"dec", i.left_dec == LeftDec::ClosedAt ? "closed-at" : "open-after"}};
    Json right{{"value", i.right ? format_rational(*i.right) : std::string("inf")},
               {"dec", i.right_dec == RightDec::OpenBefore ? "open-before" : "closed-through"}};
    return Json{{"left", left}, {"right", right}};
}

Json to_json(const DecoratedBarcode& b)
{
    Json a = Json::array();
    for (const auto& bar : b.bars) {
        Json j = to_json(bar.interval);
        j["mult"] = bar.multiplicity;
        a.push_back(j);
    }
    return a;
}

Json to_json(const PersModule& m)
{
    Json dims = Json::array();
    for (auto d : m.dims())
        dims.push_back(d);
    return Json{{"grid", to_json(m.grid())}, {"dims", dims}, {"steps", json_list(m.steps())}};
}

Json to_json(const PersComplex& x)
{
    Json modules = Json::array();
    for (const auto& m : x.modules()) {
        Json j = to_json(m);
        j.erase("grid");
        modules.push_back(j);
    }
    return Json{{"grid", to_json(x.grid())},
                {"maxDegree", x.max_degree()},
                {"modules", modules},
                {"differentials", matrix_grid(x.differentials())}};
}

Json to_json(const PersComplexMap& f)
{
    return Json{{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"components", matrix_grid(f.f)}};
}

Json to_json(const CellAttachment& c)
{
    Json j{{"kind", c.kind == CellKind::Sphere ? "sphere" : "disk"}, {"k", c.degree}, {"interval", to_json(c.interval)}};
    if (c.kind == CellKind::Sphere) {
        j["x_s"] = to_json(c.x_s);
        j["u_t"] = to_json(c.u_t);
    } else {
        j["z_t"] = to_json(c.z_t);
    }
    return j;
}

Json to_json(const CellPresentation& p)
{
    Json stages = Json::array();
    for (const auto& st : p.stages)
        stages.push_back(json_list(st));
    return Json{{"base", to_json(p.base)}, {"stages", stages}};
}

Json to_json(const model::Verdict& v, const EventGrid& g)
{
    Json j{{"holds", v.holds}};
    if (v.certificate) {
        const auto& c = *v.certificate;
        Json comps = Json::array();
        for (const auto& s : c.components)
            comps.push_back(s);
        j["certificate"] = Json{{"check", c.check},
                                {"degree", c.degree},
                                {"p", g.node_label(c.p)},
                                {"q", g.node_label(c.q)},
                                {"vector", to_json(c.vector)},
                                {"components", comps},
                                {"message", c.message}};
    }
    j["notes"] = v.notes;
    return j;
}

Json to_json(const model::LiftingProblem& p)
{
    Json j{{"kind", model::to_string(p.kind)}, {"degree", p.degree}, {"s", format_rational(p.s)}};
    if (p.t)
        j["t"] = format_rational(*p.t);
    j["top_x"] = to_json(p.top_x);
    j["top_u"] = to_json(p.top_u);
    j["bottom"] = to_json(p.bottom);
    return j;
}

Json to_json(const model::LiftResult& r)
{
    Json j{{"solved", r.solved}};
    if (r.solved) {
        j["lift"] = to_json(r.lift);
    } else {
        j["functional"] = to_json(r.functional);
        if (!r.pair.empty())
            j["pair"] = to_json(r.pair);
    }
    j["rhs"] = to_json(r.rhs);
    j["components"] = r.components;
    return j;
}

Json to_json(const model::FactorizationReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.stage_checks)
        checks.push_back(Json{{"ok", c.ok}, {"failure", c.failure}});
    return Json{{"presentation", to_json(r.presentation)},
                {"iso_verified", r.iso_verified},
                {"composite_verified", r.composite_verified},
                {"stage_checks", checks},
                {"ok", r.ok()},
                {"notes", r.notes}};
}

Json to_json(const model::PresentationCheck& c)
{
    Json j{{"holds", c.holds}, {"message", c.message}};
    if (c.iso)
        j["iso"] = matrix_grid(c.iso->f);
    return j;
}

// Polynomials are written with the generator names, so presentations need them in scope.

Json to_json(const pcdga::FreePresentation& p)
{
    const auto names = p.names();
    Json gens = Json::array();
    Json d = Json::object();
    Json death = Json::object();
    for (const auto& g : p.generators) {
        Json support{{"left", format_rational(g.support.left)},
                     {"right", g.support.right ? format_rational(*g.support.right) : std::string("inf")}};
        gens.push_back(Json{{"name", g.name}, {"degree", g.degree}, {"support", support}});
        if (!g.d.is_zero())
            d[g.name] = pcdga::format_polynomial(g.d, names);
        if (!g.at_death.is_zero())
            death[g.name] = pcdga::format_polynomial(g.at_death, names);
    }
    Json j{{"generators", gens}, {"d", d}};
    if (!death.empty())
        j["at_death"] = death;
    return j;
}

Json to_json(const pcdga::PersCDGA& a)
{
    Json j{{"grid", to_json(a.grid())}, {"maxDegree", a.max_degree()}};
    if (a.is_free()) {
        j["free"] = to_json(a.presentation());
        return j;
    }
    const auto& t = a.tables();
    Json mult = Json::array();
    for (const auto& node : t.mult)
        mult.push_back(matrix_grid(node));
    j["nodewise"] = Json{{"dims", t.dims},
                         {"mult", mult},
                         {"d", matrix_grid(t.d)},
                         {"steps", matrix_grid(t.steps)},
                         {"labels", t.labels}};
    return j;
}

Json to_json(const pcdga::PersCDGAMap& f)
{
    return Json{{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"components", matrix_grid(f.f)}};
}

Json skeleton_to_json(const std::vector<pcdga::HirschExtensionRecord>& s)
{
    std::vector<std::string> names;
    Json out = Json::array();
    for (const auto& rec : s) {
        Json cells = Json::array();
        for (const auto& c : rec.cells) {
            Json j{{"kind", c.kind == CellKind::Sphere ? "sphere" : "disk"},
                   {"name", c.name},
                   {"interval", to_json(c.interval)}};
            if (c.kind == CellKind::Sphere)
                j["cocycle"] = pcdga::format_polynomial(c.cocycle, names);
            j["bound"] = pcdga::format_polynomial(c.bound, names);
            cells.push_back(j);
        }
        for (const auto& c : rec.cells) {
            if (c.kind == CellKind::Disk)
                names.push_back("d" + c.name);
            names.push_back(c.name);
        }
        out.push_back(Json{{"degree", rec.degree}, {"cells", cells}});
    }
    return out;
}

Json to_json(const pcdga::MinimalModel& m)
{
    return Json{{"model", to_json(m.model)},
                {"map", matrix_grid(m.map.f)},
                {"skeleton", skeleton_to_json(m.skeleton)},
                {"minimal", to_json(m.minimal, m.model.grid())},
                {"quasiIsomorphism", to_json(m.quasi_isomorphism, m.model.grid())},
                {"notes", m.notes}};
}

// Parsing.

Rational rational_from_json(const Json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        fail(path, "expected a rational as a string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const UsageError& e) {
        fail(path, e.what());
    }
}

Vector vector_from_json(const Json& j, const std::string& path)
{
    return list_of(j, path, [](const Json& x, const std::string& p) { return rational_from_json(x, p); });
}

Matrix matrix_from_json(const Json& j, const std::string& path)
{
    std::vector<Vector> rows;
    std::size_t nr = 0, nc = 0;
    if (j.is_object()) {
        nr = count(field(j, "rows", path), sub(path, "rows"));
        nc = count(field(j, "cols", path), sub(path, "cols"));
        rows = list_of(field(j, "data", path), sub(path, "data"),
                       [](const Json& r, const std::string& p) { return vector_from_json(r, p); });
        if (rows.size() != nr)
            fail(path, "data has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(nr));
    } else {
        rows = list_of(j, path, [](const Json& r, const std::string& p) { return vector_from_json(r, p); });
        nr = rows.size();
        if (nr == 0)
            fail(path, "empty row list: use {\"rows\",\"cols\",\"data\"} for empty matrices");
        nc = rows[0].size();
    }
    Matrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        if (rows[r].size() != nc)
            fail(sub(path, r), "row has " + std::to_string(rows[r].size()) + " entries, expected " + std::to_string(nc));
        for (std::size_t c = 0; c < nc; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

EventGrid grid_from_json(const Json& j, const std::string& path)
{
    Vector v = vector_from_json(j, path);
    try {
        return EventGrid(v);
    } catch (const UsageError& e) {
        fail(path, e.what());
    }
}

DecoratedInterval interval_from_json(const Json& j, const std::string& path)
{
    DecoratedInterval i;
    const Json& l = field(j, "left", path);
    const Json& r = field(j, "right", path);
    const Json& lv = l.is_object() ? field(l, "value", sub(path, "left")) : l;
    i.left = rational_from_json(lv, sub(path, "left"));
    if (l.is_object()) {
        std::string dec = text(field(l, "dec", sub(path, "left")), sub(path, "left/dec"));
        if (dec == "closed-at")
            i.left_dec = LeftDec::ClosedAt;
        else if (dec == "open-after")
            i.left_dec = LeftDec::OpenAfter;
        else
            fail(sub(path, "left/dec"), "expected closed-at or open-after");
    }
    const Json& rv = r.is_object() ? field(r, "value", sub(path, "right")) : r;
    if (!(rv.is_string() && rv.get<std::string>() == "inf"))
        i.right = rational_from_json(rv, sub(path, "right"));
    if (r.is_object()) {
        std::string dec = text(field(r, "dec", sub(path, "right")), sub(path, "right/dec"));
        if (dec == "open-before")
            i.right_dec = RightDec::OpenBefore;
        else if (dec == "closed-through")
            i.right_dec = RightDec::ClosedThrough;
        else
            fail(sub(path, "right/dec"), "expected open-before or closed-through");
    }
    return i;
}

DecoratedBarcode barcode_from_json(const Json& j, const std::string& path)
{
    DecoratedBarcode b;
    b.bars = list_of(j, path, [](const Json& x, const std::string& p) {
        Bar bar;
        bar.interval = interval_from_json(x, p);
        if (auto m = optional_field(x, "mult"))
            bar.multiplicity = count(*m, sub(p, "mult"));
        return bar;
    });
    return b;
}

namespace {

PersModule module_on(const EventGrid& g, const Json& j, const std::string& path)
{
    auto dims = list_of(field(j, "dims", path), sub(path, "dims"),
                        [](const Json& x, const std::string& p) { return count(x, p); });
    auto steps = list_of(field(j, "steps", path), sub(path, "steps"),
                         [](const Json& x, const std::string& p) { return matrix_from_json(x, p); });
    if (dims.size() != g.node_count())
        fail(sub(path, "dims"), "expected " + std::to_string(g.node_count()) + " node dimensions");
    if (steps.size() + 1 != dims.size())
        fail(sub(path, "steps"), "expected " + std::to_string(dims.size() - 1) + " step matrices");
    return wrap(path, [&] { return PersModule(g, dims, steps); });
}

} // namespace

PersModule module_from_json(const Json& j, const std::string& path)
{
    return module_on(grid_from_json(field(j, "grid", path), sub(path, "grid")), j, path);
}

PersComplex complex_from_json(const Json& j, const std::string& path)
{
    EventGrid g = grid_from_json(field(j, "grid", path), sub(path, "grid"));
    std::size_t N = count(field(j, "maxDegree", path), sub(path, "maxDegree"));
    auto modules = list_of(field(j, "modules", path), sub(path, "modules"),
                           [&](const Json& x, const std::string& p) { return module_on(g, x, p); });
    if (modules.size() != N + 1)
        fail(sub(path, "modules"), "expected " + std::to_string(N + 1) + " modules (degrees 0..N)");
    auto d = matrix_grid_from_json(field(j, "differentials", path), sub(path, "differentials"));
    if (d.size() != N)
        fail(sub(path, "differentials"), "expected " + std::to_string(N) + " degrees of differentials");
    return wrap(path, [&] { return PersComplex(N, modules, d); });
}

PersComplexMap map_from_json(const Json& j, const std::string& path)
{
    PersComplexMap f{complex_from_json(field(j, "source", path), sub(path, "source")),
                     complex_from_json(field(j, "target", path), sub(path, "target")),
                     matrix_grid_from_json(field(j, "components", path), sub(path, "components"))};
    wrap(path, [&] {
        f.validate();
        return 0;
    });
    return f;
}

CellAttachment cell_from_json(const Json& j, const std::string& path)
{
    CellAttachment c;
    std::string kind = text(field(j, "kind", path), sub(path, "kind"));
    if (kind == "sphere")
        c.kind = CellKind::Sphere;
    else if (kind == "disk")
        c.kind = CellKind::Disk;
    else
        fail(sub(path, "kind"), "expected sphere or disk");
    c.degree = count(field(j, "k", path), sub(path, "k"));
    c.interval = interval_from_json(field(j, "interval", path), sub(path, "interval"));
    if (auto x = optional_field(j, "x_s"))
        c.x_s = vector_from_json(*x, sub(path, "x_s"));
    if (auto x = optional_field(j, "u_t"))
        c.u_t = vector_from_json(*x, sub(path, "u_t"));
    if (auto x = optional_field(j, "z_t"))
        c.z_t = vector_from_json(*x, sub(path, "z_t"));
    return c;
}

CellPresentation presentation_from_json(const Json& j, const std::string& path)
{
    CellPresentation p;
    p.base = complex_from_json(field(j, "base", path), sub(path, "base"));
    p.stages = list_of(field(j, "stages", path), sub(path, "stages"), [](const Json& s, const std::string& sp) {
        return list_of(s, sp, [](const Json& c, const std::string& cp) { return cell_from_json(c, cp); });
    });
    return p;
}

model::LiftingProblem lifting_problem_from_json(const Json& j, const std::string& path)
{
    model::LiftingProblem p;
    try {
        p.kind = model::parse_generator(text(field(j, "kind", path), sub(path, "kind")));
    } catch (const UsageError& e) {
        fail(sub(path, "kind"), e.what());
    }
    p.degree = count(field(j, "degree", path), sub(path, "degree"));
    p.s = rational_from_json(field(j, "s", path), sub(path, "s"));
    if (auto t = optional_field(j, "t"))
        p.t = rational_from_json(*t, sub(path, "t"));
    if (auto x = optional_field(j, "top_x"))
        p.top_x = vector_from_json(*x, sub(path, "top_x"));
    if (auto x = optional_field(j, "top_u"))
        p.top_u = vector_from_json(*x, sub(path, "top_u"));
    p.bottom = vector_from_json(field(j, "bottom", path), sub(path, "bottom"));
    return p;
}

pcdga::FreePresentation free_presentation_from_json(const Json& j, const std::string& path)
{
    pcdga::FreePresentation p;
    const Json& gens = array(field(j, "generators", path), sub(path, "generators"));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string gp = sub(sub(path, "generators"), i);
        pcdga::FreeGenerator g;
        g.name = text(field(gens[i], "name", gp), sub(gp, "name"));
        g.degree = count(field(gens[i], "degree", gp), sub(gp, "degree"));
        g.support = interval_from_json(field(gens[i], "support", gp), sub(gp, "support"));
        p.generators.push_back(std::move(g));
    }
    const auto names = p.names();
    const auto degrees = p.degrees();
    auto polys = [&](const char* key, auto member) {
        const Json* m = optional_field(j, key);
        if (!m)
            return;
        if (!m->is_object())
            fail(sub(path, key), "expected an object from generator names to polynomials");
        for (auto it = m->begin(); it != m->end(); ++it) {
            const std::string kp = sub(sub(path, key), it.key());
            auto idx = p.index_of(it.key());
            if (!idx)
                fail(kp, "unknown generator");
            try {
                p.generators[*idx].*member = pcdga::parse_polynomial(text(it.value(), kp), names, degrees);
            } catch (const UsageError& e) {
                fail(kp, e.what());
            }
        }
    };
    polys("d", &pcdga::FreeGenerator::d);
    polys("at_death", &pcdga::FreeGenerator::at_death);
    return p;
}

pcdga::PersCDGA cdga_from_json(const Json& j, const std::string& path)
{
    EventGrid g = grid_from_json(field(j, "grid", path), sub(path, "grid"));
    std::size_t N = count(field(j, "maxDegree", path), sub(path, "maxDegree"));
    if (auto f = optional_field(j, "free")) {
        auto p = free_presentation_from_json(*f, sub(path, "free"));
        return wrap(sub(path, "free"), [&] { return pcdga::PersCDGA::free(g, N, p); });
    }
    const Json* nw = optional_field(j, "nodewise");
    if (!nw)
        fail(path, "expected \"free\" or \"nodewise\"");
    const std::string np = sub(path, "nodewise");
    pcdga::NodewiseCDGA t;
    t.grid = g;
    t.max_degree = N;
    t.dims = list_of(field(*nw, "dims", np), sub(np, "dims"), [](const Json& x, const std::string& p) {
        return list_of(x, p, [](const Json& y, const std::string& q) { return count(y, q); });
    });
    t.mult = list_of(field(*nw, "mult", np), sub(np, "mult"),
                     [](const Json& x, const std::string& p) { return matrix_grid_from_json(x, p); });
    t.d = matrix_grid_from_json(field(*nw, "d", np), sub(np, "d"));
    t.steps = matrix_grid_from_json(field(*nw, "steps", np), sub(np, "steps"));
    if (auto l = optional_field(*nw, "labels"))
        t.labels = l->get<std::vector<std::vector<std::vector<std::string>>>>();
    return wrap(np, [&] { return pcdga::PersCDGA::nodewise(std::move(t)); });
}

pcdga::PersCDGAMap cdga_map_from_json(const Json& j, const std::string& path)
{
    pcdga::PersCDGAMap f{cdga_from_json(field(j, "source", path), sub(path, "source")),
                         cdga_from_json(field(j, "target", path), sub(path, "target")),
                         matrix_grid_from_json(field(j, "components", path), sub(path, "components"))};
    wrap(path, [&] {
        f.validate();
        return 0;
    });
    return f;
}

std::vector<pcdga::HirschExtensionRecord> skeleton_from_json(const Json& j, const std::string& path)
{
    std::vector<std::string> names;
    std::vector<std::size_t> degrees;
    std::vector<pcdga::HirschExtensionRecord> out;
    array(j, path);
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string rp = sub(path, r);
        pcdga::HirschExtensionRecord rec;
        rec.degree = count(field(j[r], "degree", rp), sub(rp, "degree"));
        const Json& cells = array(field(j[r], "cells", rp), sub(rp, "cells"));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string cp = sub(sub(rp, "cells"), i);
            pcdga::HirschCell c;
            std::string kind = text(field(cells[i], "kind", cp), sub(cp, "kind"));
            if (kind != "sphere" && kind != "disk")
                fail(sub(cp, "kind"), "expected sphere or disk");
            c.kind = kind == "sphere" ? CellKind::Sphere : CellKind::Disk;
            c.name = text(field(cells[i], "name", cp), sub(cp, "name"));
            c.interval = interval_from_json(field(cells[i], "interval", cp), sub(cp, "interval"));
            try {
                if (auto x = optional_field(cells[i], "cocycle"))
                    c.cocycle = pcdga::parse_polynomial(text(*x, sub(cp, "cocycle")), names, degrees);
                if (auto x = optional_field(cells[i], "bound"))
                    c.bound = pcdga::parse_polynomial(text(*x, sub(cp, "bound")), names, degrees);
            } catch (const UsageError& e) {
                fail(cp, e.what());
            }
            rec.cells.push_back(std::move(c));
        }
        for (const auto& c : rec.cells) {
            if (c.kind == CellKind::Disk) {
                names.push_back("d" + c.name);
                degrees.push_back(rec.degree);
            }
            names.push_back(c.name);
            degrees.push_back(rec.degree - 1);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

Json read_json_file(const std::string& file)
{
    std::ifstream in(file);
    if (!in)
        throw UsageError("cannot open " + file);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(file + ": " + e.what());
    }
}

void write_json_file(const std::string& file, const Json& j)
{
    std::ofstream out(file);
    if (!out)
        throw UsageError("cannot write " + file);
    out << j.dump(2) << "\n";
}

} // namespace isphere::io
