#include "doctest.h"

#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/pcdga.hpp"
#include "support/cdga_fixtures.hpp"
#include "support/model_oracles.hpp"
#include "support/seed.hpp"

using namespace isphere;
using namespace isphere::pcdga;
using namespace testsupport;

namespace {

EventGrid grid01() { return EventGrid({Rational(0), Rational(1)}); }

FreeGenerator gen(const std::string& name, std::size_t degree, DecoratedInterval support)
{
    FreeGenerator g;
    g.name = name;
    g.degree = degree;
    g.support = support;
    return g;
}

std::vector<std::size_t> dims_at(const PersCDGA& a, std::size_t node)
{
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q <= a.max_degree(); ++q)
        out.push_back(a.dim(node, q));
    return out;
}

} // namespace

TEST_CASE("polynomials: graded signs, parsing and formatting")
{
    std::vector<std::string> names{"x", "y", "z"};
    std::vector<std::size_t> degs{1, 1, 2};
    auto P = [&](const std::string& s) { return parse_polynomial(s, names, degs); };
    CHECK(P("y*x") == P("-x*y"));
    CHECK(P("x*x").is_zero());
    CHECK(P("z*x") == P("x*z"));
    CHECK(P("z^2*z") == P("z^3"));
    CHECK(P("2*x*y - 1/2*z + 3") == P("3 + 2*x*y - 1/2*z"));
    CHECK(format_polynomial(P("-x*y + 2*z^2"), names) == "-x*y + 2*z^2");
    CHECK(P(format_polynomial(P("1/3*x*z - y"), names)) == P("1/3*x*z - y"));
    CHECK(homogeneous_degree(P("x*y + z"), degs) == std::size_t(2));
    CHECK_THROWS_AS(homogeneous_degree(P("x + z"), degs), UsageError);
    CHECK_THROWS_AS(P("x*w"), UsageError);
    CHECK_THROWS_AS(P("x +"), UsageError);
    CHECK_THROWS_AS(P(""), UsageError);

    // d x = z, d y = 0, d z = 0: Leibniz with the Koszul sign.
    std::vector<Polynomial> dg{P("z"), Polynomial{}, Polynomial{}};
    CHECK(differential(P("x*y"), dg, degs) == P("z*y"));
    CHECK(differential(P("y*x"), dg, degs) == P("-y*z"));
    CHECK(differential(P("x*z^2"), dg, degs) == P("z^3"));
    // substitution is an algebra map
    std::vector<Polynomial> im{P("y"), P("x"), P("z")};
    CHECK(substitute(P("x*y"), im, degs) == P("-x*y"));
}

TEST_CASE("free algebras: monomial bases and validation")
{
    EventGrid g = grid01();
    auto inf0 = DecoratedInterval::half_open(0);

    FreePresentation p{{gen("x", 2, inf0)}};
    PersCDGA a = free_pcdga(g, 6, p);
    CHECK(dims_at(a, 0) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1});
    CHECK(a.tables().labels[0][6][0] == "x^3");
    a.validate();

    // Lambda D^2_0: a in degree 1, b = da. Every degree up to N is one-dimensional.
    FreePresentation q{{gen("b", 2, inf0), gen("a", 1, inf0)}};
    q.generators[1].d = Polynomial::generator(0);
    PersCDGA disk = free_pcdga(g, 4, q);
    CHECK(dims_at(disk, 0) == std::vector<std::size_t>{1, 1, 1, 1, 1});
    disk.validate();
    for (std::size_t k = 1; k <= 3; ++k)
        CHECK(cohomology_pcdga(disk, k).module.is_zero());
    CHECK(cohomology_pcdga(disk, 0).barcode.to_text() == "[0,inf)\n");
    CHECK_THROWS_AS(cohomology_pcdga(disk, 4), UsageError);

    SUBCASE("d^2 != 0 is rejected")
    {
        FreePresentation bad{{gen("y", 1, inf0), gen("x", 1, inf0), gen("w", 1, inf0)}};
        auto names = bad.names();
        auto degs = bad.degrees();
        bad.generators[1].d = parse_polynomial("y*y", names, degs);  // zero, fine
        bad.generators[2].d = parse_polynomial("x*y", names, degs);
        CHECK_NOTHROW(free_pcdga(g, 4, bad));
        FreePresentation worse{{gen("u", 2, inf0), gen("v", 3, inf0), gen("w", 3, inf0)}};
        names = worse.names();
        degs = worse.degrees();
        worse.generators[1].d = parse_polynomial("u^2", names, degs);
        worse.generators[2].d = parse_polynomial("u^2", names, degs);
        CHECK_NOTHROW(free_pcdga(g, 6, worse));
        FreePresentation odd{{gen("u", 1, inf0), gen("v", 1, inf0), gen("w", 1, inf0)}};
        names = odd.names();
        degs = odd.degrees();
        odd.generators[1].d = parse_polynomial("0", names, degs);
        odd.generators[2].d = parse_polynomial("u*v", names, degs);
        CHECK_NOTHROW(free_pcdga(g, 4, odd));
        // d v = u^2 with u even, then d w = v u: d(d w) = u^3 != 0
        FreePresentation nz{{gen("u", 2, inf0), gen("v", 3, inf0), gen("w", 4, inf0)}};
        names = nz.names();
        degs = nz.degrees();
        nz.generators[1].d = parse_polynomial("u^2", names, degs);
        nz.generators[2].d = parse_polynomial("u*v", names, degs);
        CHECK_THROWS_AS(free_pcdga(g, 8, nz), ValidationError);
    }
    SUBCASE("a differential may only use earlier generators alive at birth")
    {
        FreePresentation bad{{gen("x", 2, DecoratedInterval::half_open(1)), gen("y", 3, inf0)}};
        bad.generators[1].d = parse_polynomial("x^2", bad.names(), bad.degrees());
        CHECK_THROWS_AS(free_pcdga(g, 6, bad), ValidationError);
        FreePresentation later{{gen("y", 3, inf0), gen("x", 2, inf0)}};
        later.generators[0].d = parse_polynomial("x^2", later.names(), later.degrees());
        CHECK_THROWS_AS(free_pcdga(g, 6, later), ValidationError);
    }
    SUBCASE("the death value must be compatible with d")
    {
        // y in degree 1 on [0,1) with dy = 0, sent at 1 to a closed element: fine.
        FreePresentation ok{{gen("x", 1, inf0), gen("y", 1, DecoratedInterval::half_open(0, Rational(1)))}};
        ok.generators[1].at_death = Polynomial::generator(0);
        PersCDGA b = free_pcdga(g, 3, ok);
        b.validate();
        CHECK(b.dim(2, 1) == 1);
        // w in degree 1 with dw = x^2-free, death value u with du != 0.
        FreePresentation bad{{gen("v", 2, inf0), gen("u", 1, inf0), gen("w", 1, DecoratedInterval::half_open(0, Rational(1)))}};
        bad.generators[1].d = Polynomial::generator(0);
        bad.generators[2].at_death = Polynomial::generator(1);
        CHECK_THROWS_AS(free_pcdga(g, 3, bad), ValidationError);
    }
}

TEST_CASE("nodewise tables are validated")
{
    EventGrid g = grid01();
    PersCDGA s2 = cohomology_s2(g, 6);
    CHECK(cohomology_pcdga(s2, 2).barcode.to_text() == "[0,inf)\n");
    PersCDGA dying = cohomology_s2(g, 6, Rational(1));
    CHECK(cohomology_pcdga(dying, 2).barcode.to_text() == "[0,1)\n");

    NodewiseCDGA t = s2.tables();
    t.mult[0][2][0](0, 0) = 2;  // x.1 = 2x
    CHECK_THROWS_AS(PersCDGA::nodewise(t), ValidationError);
    t = s2.tables();
    t.steps[0][2](0, 0) = 3;  // fine: a scaling of x is multiplicative since x^2 = 0
    CHECK_NOTHROW(PersCDGA::nodewise(t));
    t = s2.tables();
    t.steps[0][0](0, 0) = 2;  // unit not preserved
    CHECK_THROWS_AS(PersCDGA::nodewise(t), ValidationError);
}

TEST_CASE("maps out of free algebras")
{
    EventGrid g = grid01();
    auto inf0 = DecoratedInterval::half_open(0);
    PersCDGA lx = free_pcdga(g, 6, FreePresentation{{gen("x", 2, inf0)}});
    PersCDGA s2 = cohomology_s2(g, 6);
    PersCDGAMap m = map_from_generators(lx, s2, {Vector{Rational(1)}});
    CHECK(m.f[4][0].is_zero());
    CHECK(m.f[2][0] == Matrix{{1}});
    // quasi-isomorphism up to degree 3 only: x^2 survives in Lambda(x)
    CHECK(is_weak_equivalence_cdga(m, 3).holds);
    CHECK_FALSE(is_weak_equivalence_cdga(m, 4).holds);
    CHECK_FALSE(is_weak_equivalence_cdga(m).holds);

    // the image of x must be compatible with the death of the target class
    PersCDGA dying = cohomology_s2(g, 6, Rational(1));
    PersCDGA lx01 = free_pcdga(g, 6, FreePresentation{{gen("x", 2, DecoratedInterval::half_open(0, Rational(1)))}});
    CHECK_THROWS_AS(map_from_generators(lx01, s2, {Vector{Rational(1)}}), ValidationError);
    CHECK_NOTHROW(map_from_generators(lx01, dying, {Vector{Rational(1)}}));
    CHECK_NOTHROW(map_from_generators(lx, dying, {Vector{Rational(1)}}));

    CHECK_NOTHROW(PersCDGAMap::identity(lx).validate());
    CHECK_NOTHROW(PersCDGAMap::unit(lx).validate());
    CHECK(compose(m, PersCDGAMap::identity(lx)).f == m.f);
}

TEST_CASE("Hirsch extensions: the sphere and disk examples")
{
    EventGrid g = grid01();
    PersCDGA q = PersCDGA::rationals(g, 4);

    SUBCASE("sphere cell S^2_[0,1) along zero")
    {
        HirschExtensionRecord rec{2, {HirschCell{CellKind::Sphere, DecoratedInterval::half_open(0, Rational(1)), {}, {}, "y"}}};
        HirschResult r = hirsch_extension(q, rec);
        // one degree-1 generator on [0,1) with dy = 0, and Q from 1 on
        CHECK(dims_at(r.algebra, 0) == std::vector<std::size_t>{1, 1, 0, 0, 0});
        CHECK(dims_at(r.algebra, 1) == std::vector<std::size_t>{1, 1, 0, 0, 0});
        CHECK(dims_at(r.algebra, 2) == std::vector<std::size_t>{1, 0, 0, 0, 0});
        CHECK(cohomology_pcdga(r.algebra, 1).barcode.to_text() == "[0,1)\n");
        r.algebra.validate();
        r.inclusion.validate();
    }
    SUBCASE("disk cell D^2_1 -> D^2_0 along the unique map")
    {
        HirschExtensionRecord rec{2, {HirschCell{CellKind::Disk, DecoratedInterval::half_open(0, Rational(1)), {}, {}, "a"}}};
        HirschResult r = hirsch_extension(q, rec);
        CHECK(dims_at(r.algebra, 0) == tensor_with_disk(dims_at(q, 0), 2));
        CHECK(dims_at(r.algebra, 2) == dims_at(q, 2));
        CHECK(is_weak_equivalence_cdga(r.inclusion).holds);
        CHECK(r.algebra.presentation().generators[0].name == "da");
    }
    SUBCASE("invalid attaching data")
    {
        PersCDGA lx = free_pcdga(g, 4, FreePresentation{{gen("x", 2, DecoratedInterval::half_open(0))}});
        auto x = Polynomial::generator(0);
        // x is a cocycle but does not bound at 1
        HirschExtensionRecord rec{2, {HirschCell{CellKind::Sphere, DecoratedInterval::half_open(0, Rational(1)), x, {}, "v"}}};
        CHECK_THROWS_AS(hirsch_extension(lx, rec), ValidationError);
        rec.cells[0].interval = DecoratedInterval::half_open(0);
        HirschResult r = hirsch_extension(lx, rec);
        CHECK(cohomology_pcdga(r.algebra, 2).module.is_zero());
        CHECK(dims_at(r.algebra, 0) == std::vector<std::size_t>{1, 1, 1, 1, 1});
        rec.degree = 1;
        CHECK_THROWS_AS(hirsch_extension(lx, rec), UsageError);
        rec.degree = 2;
        rec.cells[0].interval = DecoratedInterval::closed(0, 1);
        CHECK_THROWS_AS(hirsch_extension(lx, rec), UsageError);
    }
}

TEST_CASE("Hirsch extensions: maps out of the extension are pairs (map, element)")
{
    // B = Q with a degree-1 generator y on [0,1), dy = 0, y -> 0 at 1. Maps
    // B -> C over the unit correspond to c in C^1(0) with dc = 0 and c_1 = 0.
    EventGrid g = grid01();
    auto rng = make_rng(71);
    PersCDGA q = PersCDGA::rationals(g, 4);
    HirschExtensionRecord rec{2, {HirschCell{CellKind::Sphere, DecoratedInterval::half_open(0, Rational(1)), {}, {}, "y"}}};
    PersCDGA b = hirsch_extension(q, rec).algebra;
    for (int trial = 0; trial < 10; ++trial) {
        PersCDGA c = random_free_cdga(rng, g, 4, 3, 2);
        PersComplex U = c.underlying();
        Matrix constraints = vstack(U.d(1, 0), c.tables().steps[1][1] * c.tables().steps[0][1]);
        Matrix sol = exactla::kernel_basis(constraints);
        for (std::size_t k = 0; k < sol.cols(); ++k)
            CHECK_NOTHROW(map_from_generators(b, c, {sol.column(k)}));
        for (std::size_t i = 0; i < c.dim(0, 1); ++i) {
            Vector e = unit_vector(c.dim(0, 1), i);
            bool in_space = exactla::in_column_span(sol, e);
            bool ok = true;
            try {
                map_from_generators(b, c, {e});
            } catch (const ValidationError&) {
                ok = false;
            }
            CHECK(ok == in_space);
        }
    }
}

TEST_CASE("disk cells on random free algebras: tensor dimensions and weak equivalence")
{
    auto rng = make_rng(72);
    EventGrid g({Rational(0), Rational(1), Rational(2)});
    int finite = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t N = 4 + rng() % 2;
        PersCDGA a = random_free_cdga(rng, g, N, 1 + rng() % 3, 2);
        const std::size_t K = 2 + rng() % (N - 1);
        HirschExtensionRecord rec{K, {random_disk_cell(rng, a, K, "a")}};
        HirschResult r = hirsch_extension(a, rec);
        const auto& iv = rec.cells[0].interval;
        const std::size_t first = iv.first_node(g), last = iv.last_node(g);
        finite += !iv.is_infinite();
        CAPTURE(trial);
        for (std::size_t j = 0; j < g.node_count(); ++j) {
            if (first <= j && j <= last)
                CHECK(dims_at(r.algebra, j) == tensor_with_disk(dims_at(a, j), K));
            else
                CHECK(dims_at(r.algebra, j) == dims_at(a, j));
        }
        CHECK(is_weak_equivalence_cdga(r.inclusion).holds);
        CHECK(weq_oracle(r.inclusion.underlying(), N));
        if (trial < 8) {
            r.algebra.validate();
            r.inclusion.validate();
        }
    }
    CHECK(finite > 5);
}

TEST_CASE("mapping cone")
{
    EventGrid g = grid01();
    PersCDGA ls2 = free_pcdga(g, 5, FreePresentation{{gen("x", 2, DecoratedInterval::half_open(0))}});
    PersCDGAMap unit = PersCDGAMap::unit(ls2);
    CHECK(mapping_cone_cohomology(unit, 2).barcode.to_text() == "[0,inf)\n");
    CHECK(mapping_cone_cohomology(unit, 1).module.is_zero());
    CHECK(mapping_cone_cohomology(unit, 0).module.is_zero());
    CHECK_THROWS_AS(mapping_cone_cohomology(unit, 4), UsageError);
    // the identity has acyclic cone
    PersCDGAMap id = PersCDGAMap::identity(ls2);
    for (std::size_t k = 0; k <= 3; ++k)
        CHECK(mapping_cone_cohomology(id, k).module.is_zero());
    mapping_cone_complex(unit).validate();
}

TEST_CASE("minimal model of H*(S^2), constant and dying")
{
    EventGrid g = grid01();
    for (bool dies : {false, true}) {
        CAPTURE(dies);
        PersCDGA a = dies ? cohomology_s2(g, 6, Rational(1)) : cohomology_s2(g, 6);
        MinimalModel mm = minimal_model(a);
        const FreePresentation& p = mm.model.presentation();
        REQUIRE(p.generators.size() == 2);
        CHECK(p.generators[0].name == "e2");
        CHECK(p.generators[0].degree == 2);
        CHECK(p.generators[1].name == "e3");
        CHECK(p.generators[1].degree == 3);
        CHECK(format_polynomial(p.generators[0].d, p.names()) == "0");
        CHECK(format_polynomial(p.generators[1].d, p.names()) == "e2^2");
        auto expected = dies ? DecoratedInterval::half_open(0, Rational(1)) : DecoratedInterval::half_open(0);
        CHECK(p.generators[0].support == expected);
        CHECK(p.generators[1].support == expected);
        CHECK(p.generators[0].at_death.is_zero());
        CHECK(mm.minimal.holds);
        CHECK(mm.quasi_isomorphism.holds);
        CHECK(weq_oracle(mm.map.underlying(), 5));
        CHECK(mm.map.f[2][0] == Matrix{{1}});
        mm.map.validate();
        mm.model.validate();
        CHECK(replay_skeleton(g, 6, mm.skeleton) == mm.model);
        CHECK(mm.skeleton.size() == 2);
    }
}

TEST_CASE("minimal models of free inputs")
{
    EventGrid g({Rational(0), Rational(1), Rational(2)});
    SUBCASE("a free minimal algebra is its own model")
    {
        PersCDGA lx = free_pcdga(g, 6, FreePresentation{{gen("x", 2, DecoratedInterval::half_open(1))}});
        MinimalModel mm = minimal_model(lx);
        REQUIRE(mm.model.presentation().generators.size() == 1);
        CHECK(mm.model.presentation().generators[0].support == DecoratedInterval::half_open(1));
        CHECK(mm.quasi_isomorphism.holds);
    }
    SUBCASE("a non-minimal input loses its contractible part")
    {
        FreePresentation p{{gen("x", 2, DecoratedInterval::half_open(0)), gen("b", 4, DecoratedInterval::half_open(0)),
                            gen("a", 3, DecoratedInterval::half_open(0))}};
        p.generators[2].d = Polynomial::generator(1);
        PersCDGA a = free_pcdga(g, 6, p);
        CHECK_FALSE(verify_minimality(a).holds);
        CHECK(verify_minimality(a).certificate->check == "minimality");
        MinimalModel mm = minimal_model(a);
        CHECK(mm.model.presentation().generators.size() == 1);
        CHECK(mm.minimal.holds);
        CHECK(mm.quasi_isomorphism.holds);
    }
    SUBCASE("random simply connected free inputs")
    {
        auto rng = make_rng(73);
        for (int trial = 0; trial < 12; ++trial) {
            CAPTURE(trial);
            PersCDGA a = PersCDGA::rationals(g, 6);
            for (std::size_t i = 0; i < 2 + rng() % 2; ++i) {
                std::size_t K = 3 + rng() % 2;
                HirschExtensionRecord rec{K, {random_sphere_cell(rng, a, K, "g" + std::to_string(i))}};
                a = hirsch_extension(a, rec).algebra;
            }
            MinimalModel mm;
            try {
                mm = minimal_model(a);
            } catch (const HypothesisError& e) {
                // a class killed only up to homotopy is a legitimate refusal
                CHECK(std::string(e.what()).find("strictly") != std::string::npos);
                continue;
            }
            CHECK(mm.minimal.holds);
            CHECK(mm.quasi_isomorphism.holds);
            CHECK(weq_oracle(mm.map.underlying(), 5));
            CHECK(replay_skeleton(g, 6, mm.skeleton) == mm.model);
        }
    }
}

TEST_CASE("minimal model hypotheses")
{
    EventGrid g = grid01();
    PersCDGA ly = free_pcdga(g, 4, FreePresentation{{gen("y", 1, DecoratedInterval::half_open(0))}});
    try {
        minimal_model(ly);
        FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
        CHECK(std::string(e.what()).find("H^1") != std::string::npos);
        CHECK(e.witness().find("\"degree\":1") != std::string::npos);
    }
    CHECK_THROWS_AS(minimal_model(PersCDGA::rationals(g, 1)), UsageError);
}
