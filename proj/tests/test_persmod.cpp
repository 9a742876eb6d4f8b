#include "doctest.h"

#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/persmod.hpp"
#include "support/random_objects.hpp"
#include "support/seed.hpp"

using namespace isphere;

namespace {

EventGrid g01() { return EventGrid({Rational(0), Rational(1)}); }

std::vector<std::size_t> dims_of(const PersModule& m) { return m.dims(); }

DecoratedInterval iv(const char* text)
{
    // "[0,1)", "(0,1)", "[0,1]", "[0,inf)"
    std::string s(text);
    DecoratedInterval d;
    d.left_dec = s.front() == '[' ? LeftDec::ClosedAt : LeftDec::OpenAfter;
    d.right_dec = s.back() == ']' ? RightDec::ClosedThrough : RightDec::OpenBefore;
    auto comma = s.find(',');
    d.left = parse_rational(s.substr(1, comma - 1));
    std::string r = s.substr(comma + 1, s.size() - comma - 2);
    if (r != "inf")
        d.right = parse_rational(r);
    return d;
}

PersModule mixed()
{
    return PersModule(g01(), {2, 2, 1, 1},
                      {Matrix::identity(2), Matrix{{1, 1}}, Matrix::identity(1)});
}

std::size_t covering(const BarcodeResult& b, std::size_t p, std::size_t q)
{
    std::size_t n = 0;
    for (const auto& r : b.bars)
        if (r.first <= p && q <= r.last)
            ++n;
    return n;
}

} // namespace

TEST_CASE("grid nodes and labels")
{
    EventGrid g = g01();
    CHECK(g.node_count() == 4);
    CHECK(g.node_label(3) == "1+");
    CHECK(g.parse_node("1+") == 3);
    CHECK(g.parse_node("0") == 0);
    CHECK(*g.node_containing(Rational(1, 2)) == 1);
    CHECK(*g.node_containing(Rational(1)) == 2);
    CHECK(*g.node_containing(Rational(7)) == 3);
    CHECK_THROWS_AS(EventGrid({Rational(1), Rational(1)}), UsageError);
    CHECK_THROWS_AS(EventGrid({Rational(-1)}), UsageError);
}

TEST_CASE("interval modules")
{
    CHECK(dims_of(make_interval_module(g01(), iv("[0,1)"))) == std::vector<std::size_t>{1, 1, 0, 0});
    CHECK(dims_of(make_interval_module(g01(), iv("[0,1]"))) == std::vector<std::size_t>{1, 1, 1, 0});
    CHECK(dims_of(make_interval_module(g01(), iv("[0,inf)"))) == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(dims_of(make_interval_module(g01(), iv("(0,1)"))) == std::vector<std::size_t>{0, 1, 0, 0});
    CHECK_THROWS_AS(make_interval_module(g01(), iv("[0,2)")), UsageError);
    for (const char* s : {"[0,1)", "[0,1]", "(0,1)", "[1,inf)", "(0,inf)"})
        CHECK(iv(s).to_string() == s);
}

TEST_CASE("direct sums")
{
    auto a = make_interval_module(g01(), iv("[0,1)"));
    auto b = make_interval_module(g01(), iv("[0,inf)"));
    CHECK(dims_of(direct_sum({a, b})) == std::vector<std::size_t>{2, 2, 1, 1});
    CHECK(direct_sum(std::vector<PersModule>{}).is_zero());
    CHECK(dims_of(direct_sum({b, b})) == std::vector<std::size_t>{2, 2, 2, 2});
}

TEST_CASE("barcode examples")
{
    auto a = make_interval_module(g01(), iv("[0,1)"));
    auto b = make_interval_module(g01(), iv("[0,inf)"));
    auto bc = barcode(direct_sum({a, b})).barcode;
    REQUIRE(bc.bars.size() == 2);
    CHECK(bc.bars[0].interval == iv("[0,1)"));
    CHECK(bc.bars[1].interval == iv("[0,inf)"));

    auto mb = barcode(mixed());
    CHECK(mb.barcode == bc);
    CHECK(rank_invariant(mixed(), 0, 3) == 1);

    auto closed = barcode(make_interval_module(g01(), iv("[0,1]"))).barcode;
    REQUIRE(closed.bars.size() == 1);
    CHECK(closed.bars[0].interval == iv("[0,1]"));
    CHECK(closed.bars[0].interval.right_dec == RightDec::ClosedThrough);
}

TEST_CASE("rank invariant examples")
{
    CHECK(rank_invariant(make_interval_module(g01(), iv("[0,1)")), 0, 2) == 0);
    auto b = make_interval_module(g01(), iv("[0,inf)"));
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = p; q < 4; ++q)
            CHECK(rank_invariant(b, p, q) == 1);
    CHECK(rank_invariant(mixed(), 0, 2) == 1);
    CHECK_THROWS_AS(rank_invariant(b, 2, 1), UsageError);
}

TEST_CASE("kernel image cokernel examples")
{
    auto b = make_interval_module(g01(), iv("[0,inf)"));
    auto id = PersModuleMap::identity(b);
    CHECK(kernel_module(id).module.is_zero());
    CHECK(image_module(id).module == b);
    CHECK(cokernel_module(id).module.is_zero());

    auto z = PersModuleMap::zero(b, b);
    CHECK(kernel_module(z).module == b);
    CHECK(cokernel_module(z).module == b);

    auto a = make_interval_module(g01(), iv("[0,1)"));
    PersModuleMap proj{b, a, {Matrix{{1}}, Matrix{{1}}, Matrix(0, 1), Matrix(0, 1)}};
    proj.validate();
    auto k = barcode(kernel_module(proj).module).barcode;
    REQUIRE(k.bars.size() == 1);
    CHECK(k.bars[0].interval == iv("[1,inf)"));
}

TEST_CASE("tameness and right-closed points")
{
    CHECK(is_tame(make_interval_module(g01(), iv("[0,1)"))));
    CHECK_FALSE(is_tame(make_interval_module(g01(), iv("[0,1]"))));
    CHECK_FALSE(is_tame(make_interval_module(g01(), iv("(0,1)"))));

    auto closed = make_interval_module(g01(), iv("[0,1]"));
    auto pts = right_closed_points(closed);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].value == 1);
    CHECK(right_closed_points(make_interval_module(g01(), iv("[0,1)"))).empty());
    auto two = right_closed_points(direct_sum({closed, closed}));
    REQUIRE(two.size() == 1);
    CHECK(two[0].kernel.cols() == 2);

    auto lc = is_locally_compact(closed);
    CHECK_FALSE(lc.locally_compact);
    REQUIRE(lc.witness);
    CHECK(lc.witness->value == 1);
    CHECK(is_locally_compact(make_interval_module(g01(), iv("[0,1)"))).locally_compact);
    CHECK(is_locally_compact(make_interval_module(g01(), iv("(0,1)"))).locally_compact);
}

TEST_CASE("refinement keeps the module constant on old stretches")
{
    auto a = make_interval_module(g01(), iv("[0,1)"));
    EventGrid fine({Rational(0), Rational(1, 2), Rational(1)});
    auto r = refine(a, fine);
    CHECK(dims_of(r) == std::vector<std::size_t>{1, 1, 1, 1, 0, 0});
    CHECK(barcode(r).barcode.bars[0].interval == iv("[0,1)"));
    EventGrid later({Rational(1), Rational(2)});
    CHECK_THROWS_AS(refine(a, later), UsageError);
}

TEST_CASE("randomized barcode properties")
{
    auto rng = testsupport::make_rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        EventGrid g = testsupport::random_grid(rng, 5);
        PersModule m = testsupport::random_module(rng, g, 5);
        auto b = barcode(m);
        std::size_t n = m.node_count();
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p; q < n; ++q)
                REQUIRE(covering(b, p, q) == rank_invariant(m, p, q));
        auto nf = normal_form_steps(b.bars, n);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            auto inv = exactla::inverse(b.basis[j + 1]);
            REQUIRE(inv);
            REQUIRE(*inv * m.step(j) * b.basis[j] == nf[j]);
        }

        bool half_open = true;
        for (const auto& bar : b.barcode.bars)
            half_open = half_open && bar.interval.is_half_open();
        REQUIRE(is_tame(m) == half_open);

        PersModule m2 = testsupport::random_module(rng, g, 3);
        auto joint = barcode(direct_sum({m, m2})).barcode;
        auto b2 = barcode(m2).barcode;
        std::size_t total = 0;
        for (const auto& bar : joint.bars) {
            std::size_t expect = 0;
            for (const auto& x : b.barcode.bars)
                if (x.interval == bar.interval)
                    expect += x.multiplicity;
            for (const auto& x : b2.bars)
                if (x.interval == bar.interval)
                    expect += x.multiplicity;
            REQUIRE(bar.multiplicity == expect);
            total += expect;
        }
        REQUIRE(total == b.barcode.bar_count() + b2.bar_count());
    }
}

TEST_CASE("randomized kernel/image/cokernel exactness")
{
    auto rng = testsupport::make_rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        EventGrid g = testsupport::random_grid(rng, 4);
        PersModule src = testsupport::random_module(rng, g, 4);
        // f = projection of src onto a quotient, then included in a sum: always a valid map.
        PersModule extra = testsupport::random_module(rng, g, 2);
        PersModuleMap f{src, direct_sum({src, extra}), {}};
        for (std::size_t j = 0; j < g.node_count(); ++j)
            f.components.push_back(vstack(Matrix::identity(src.dim(j)).scaled(Rational(trial % 3)),
                                          Matrix(extra.dim(j), src.dim(j))));
        f.validate();
        auto k = kernel_module(f);
        auto im = image_module(f);
        auto ck = cokernel_module(f);
        k.map.validate();
        im.map.validate();
        ck.map.validate();
        for (std::size_t j = 0; j < g.node_count(); ++j) {
            std::size_t rk = exactla::rank(f.components[j]);
            REQUIRE(k.module.dim(j) + rk == src.dim(j));
            REQUIRE(im.module.dim(j) == rk);
            REQUIRE(rk + ck.module.dim(j) == f.target.dim(j));
            REQUIRE((f.components[j] * k.map.components[j]).is_zero());
            REQUIRE((ck.map.components[j] * f.components[j]).is_zero());
        }
    }
}
