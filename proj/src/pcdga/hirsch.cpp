#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/pcdga.hpp"

#include "json.hpp"

namespace isphere::pcdga {

namespace {

std::size_t node_of(const EventGrid& g, const Rational& v) { return EventGrid::at_node(g.require_index(v)); }

} // namespace

HirschResult hirsch_extension(const PersCDGA& a, const HirschExtensionRecord& rec)
{
    const FreePresentation& base = a.presentation();
    const EventGrid& grid = a.grid();
    const std::size_t K = rec.degree;
    if (K < 2)
        throw UsageError("Hirsch extensions need degree >= 2 (new generators of degree >= 1)");
    FreePresentation p = base;
    for (const HirschCell& c : rec.cells) {
        if (!c.interval.is_half_open())
            throw UsageError("cell interval " + c.interval.to_string() + " is not half-open");
        if (c.name.empty())
            throw UsageError("cell needs a generator name");
        FreeGenerator gen;
        gen.name = c.name;
        gen.degree = K - 1;
        gen.support = c.interval;
        if (c.interval.is_infinite() && !c.bound.is_zero())
            throw UsageError("cell " + c.name + " has an infinite interval but a bound at t");
        if (c.kind == CellKind::Sphere) {
            gen.d = c.cocycle;
            gen.at_death = c.bound;
        } else {
            if (!c.cocycle.is_zero())
                throw UsageError("disk cell " + c.name + " takes no cocycle");
            FreeGenerator dgen;
            dgen.name = "d" + c.name;
            dgen.degree = K;
            dgen.support = c.interval;
            if (!c.interval.is_infinite()) {
                const std::size_t t = node_of(grid, *c.interval.right);
                std::vector<Polynomial> dg;
                for (std::size_t h = 0; h < base.generators.size(); ++h)
                    dg.push_back(a.generator_differential(h, t));
                dgen.at_death = differential(c.bound, dg, base.degrees());
            }
            gen.d = Polynomial::generator(p.generators.size());
            gen.at_death = c.bound;
            p.generators.push_back(std::move(dgen));
        }
        p.generators.push_back(std::move(gen));
    }
    PersCDGA b = PersCDGA::free(grid, a.max_degree(), p);
    std::vector<Vector> images;
    for (std::size_t g = 0; g < base.generators.size(); ++g) {
        const auto& gen = base.generators[g];
        images.push_back(gen.degree <= a.max_degree()
                             ? b.coordinates(Polynomial::generator(g), gen.support.first_node(grid), gen.degree)
                             : Vector{});
    }
    PersCDGAMap inc = map_from_generators(a, b, images);
    return {std::move(b), std::move(inc)};
}

PersComplex mapping_cone_complex(const PersCDGAMap& m)
{
    const PersComplex M = m.source.underlying();
    const PersComplex A = m.target.underlying();
    const std::size_t N = M.max_degree();
    const std::size_t n = M.node_count();
    std::vector<PersModule> modules;
    modules.push_back(M.module(0));
    for (std::size_t i = 1; i <= N; ++i)
        modules.push_back(direct_sum({M.module(i), A.module(i - 1)}, M.grid()));
    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t mi = M.dim(i, j), mi1 = M.dim(i + 1, j), ai = A.dim(i, j);
            const std::size_t ai1 = i ? A.dim(i - 1, j) : 0;
            Matrix c(mi1 + ai, mi + ai1);
            c.set_block(0, 0, -M.d(i, j));
            c.set_block(mi1, 0, m.f[i][j]);
            if (i)
                c.set_block(mi1, mi, A.d(i - 1, j));
            d[i].push_back(std::move(c));
        }
    return PersComplex(N, std::move(modules), std::move(d));
}

CohomologyResult mapping_cone_cohomology(const PersCDGAMap& m, std::size_t k)
{
    const std::size_t N = m.source.max_degree();
    if (N < 2 || k > N - 2)
        throw UsageError("mapping cone cohomology is available in degrees <= N-2");
    return cohomology(mapping_cone_complex(m), k + 1);
}

model::Verdict verify_minimality(const PersCDGA& m)
{
    const FreePresentation& p = m.presentation();
    model::Verdict v;
    for (std::size_t g = 0; g < p.generators.size() && v.holds; ++g) {
        const auto& gen = p.generators[g];
        const std::size_t first = gen.support.first_node(m.grid());
        const std::size_t last = gen.support.last_node(m.grid());
        for (std::size_t j = first; j <= last && v.holds; ++j)
            for (const auto& [e, c] : m.generator_differential(g, j).terms) {
                unsigned total = 0;
                for (unsigned x : e)
                    total += x;
                if (total == 1) {
                    model::Certificate cert;
                    cert.check = "minimality";
                    cert.degree = gen.degree;
                    cert.p = cert.q = j;
                    cert.message = "d " + gen.name + " has the linear term " +
                                   format_polynomial(Polynomial{{{e, c}}}, p.names()) + " at node " +
                                   m.grid().node_label(j);
                    v.holds = false;
                    v.certificate = cert;
                    break;
                }
            }
    }
    return v;
}

PersCDGA replay_skeleton(const EventGrid& grid, std::size_t max_degree, const std::vector<HirschExtensionRecord>& s)
{
    PersCDGA a = PersCDGA::rationals(grid, max_degree);
    for (const auto& rec : s)
        a = hirsch_extension(a, rec).algebra;
    return a;
}

namespace {

Rational leading(const Vector& v)
{
    for (const auto& x : v)
        if (!is_zero(x))
            return x;
    return 0;
}

void require_simply_connected(const PersCDGA& a)
{
    const PersComplex U = a.underlying();
    for (std::size_t j = 0; j < U.node_count(); ++j) {
        const std::size_t h0 = U.dim(0, j) - exactla::rank(U.d(0, j));
        const std::size_t h1 = U.dim(1, j) - exactla::rank(U.d(1, j)) - exactla::rank(U.d(0, j));
        auto witness = [&](std::size_t degree, std::size_t dim) {
            return nlohmann::json{{"degree", degree}, {"node", a.grid().node_label(j)}, {"dimension", dim}}.dump();
        };
        if (h0 != 1)
            throw HypothesisError("H^0 is not Q at node " + a.grid().node_label(j) + " (dimension " +
                                      std::to_string(h0) + ")",
                                  witness(0, h0));
        if (h1 != 0)
            throw HypothesisError("H^1 is nonzero at node " + a.grid().node_label(j) + " (dimension " +
                                      std::to_string(h1) + "): not simply connected",
                                  witness(1, h1));
    }
}

} // namespace

MinimalModel minimal_model(const PersCDGA& a)
{
    const std::size_t N = a.max_degree();
    if (N < 2)
        throw UsageError("minimal models need N >= 2");
    require_simply_connected(a);
    const EventGrid& grid = a.grid();
    const std::size_t n = a.node_count();

    MinimalModel out;
    PersCDGA M = PersCDGA::rationals(grid, N);
    PersCDGAMap m = PersCDGAMap::unit(a);
    std::vector<Vector> images;
    for (std::size_t g = 1; g + 2 <= N; ++g) {
        PersComplex D = mapping_cone_complex(m);
        CohomologyResult H = cohomology(D, g + 1);
        if (H.module.is_zero())
            continue;
        if (g == 1)
            throw HypothesisError("the cone has cohomology in degree 1: degree-1 generators would be needed",
                                  nlohmann::json{{"degree", 1}}.dump());
        BarcodeResult bc = barcode(H.module);
        HirschExtensionRecord rec;
        rec.degree = g + 1;
        std::vector<Vector> new_images;
        for (std::size_t i = 0; i < bc.bars.size(); ++i) {
            const BarRecord& bar = bc.bars[i];
            const std::size_t s = bar.first;
            const bool dies = bar.last + 1 < n;
            if (EventGrid::is_germ(s) || (dies && !EventGrid::is_germ(bar.last)))
                throw HypothesisError(
                    "cone cohomology in degree " + std::to_string(g) + " has the non-tame bar " +
                        barcode_of_records(grid, {bar}).to_text(),
                    nlohmann::json{{"degree", g}, {"node", grid.node_label(s)}}.dump());
            std::size_t col = 0;
            for (std::size_t k = 0; k < i; ++k)
                if (bc.bars[k].first <= s && s <= bc.bars[k].last)
                    ++col;
            Vector h = bc.basis[s].column(col);
            Vector c = H.cocycle_basis[s] * (exactla::right_inverse(H.projection[s]) * h);
            const std::size_t mdim = M.dim(s, g + 1);
            const std::size_t adim = a.dim(s, g);
            // Prefer a representative with zero component in the target algebra.
            {
                Matrix bd = D.d(g, s);
                Matrix arows = bd.block(mdim, 0, adim, bd.cols());
                if (auto w = exactla::solve_linear(arows, Rational(-1) * slice(c, mdim, adim)))
                    c = c + bd * *w;
            }
            Vector x = slice(c, 0, mdim);
            Vector y = slice(c, mdim, adim);
            Rational scale = is_zero(x) ? Rational(-1) / leading(y) : Rational(1) / leading(x);
            c = scale * c;
            x = slice(c, 0, mdim);
            y = slice(c, mdim, adim);

            HirschCell cell;
            cell.kind = CellKind::Sphere;
            cell.interval = dies ? DecoratedInterval::half_open(grid.value(EventGrid::value_index(s)),
                                                                grid.value(EventGrid::value_index(bar.last + 1)))
                                 : DecoratedInterval::half_open(grid.value(EventGrid::value_index(s)));
            cell.cocycle = M.polynomial(x, s, g + 1);
            if (dies) {
                const std::size_t t = bar.last + 1;
                Vector ct = D.module(g + 1).composite(s, t) * c;
                Matrix strict = vstack(-M.underlying().d(g, t), m.f[g][t]);
                auto w = exactla::solve_linear(strict, ct);
                if (!w) {
                    if (exactla::solve_linear(D.d(g, t), ct))
                        throw HypothesisError(
                            "the class born at " + grid.node_label(s) + " in degree " + std::to_string(g) +
                                " dies only up to homotopy; strictly commuting inputs are required",
                            nlohmann::json{{"degree", g}, {"node", grid.node_label(t)}}.dump());
                    throw std::logic_error("cone class does not die at the end of its bar");
                }
                cell.bound = M.polynomial(Rational(-1) * *w, t, g);
            }
            new_images.push_back(Rational(-1) * y);
            rec.cells.push_back(std::move(cell));
        }
        for (std::size_t i = 0; i < rec.cells.size(); ++i)
            rec.cells[i].name =
                "e" + std::to_string(g) + (rec.cells.size() > 1 ? "_" + std::to_string(i + 1) : std::string());
        HirschResult r = hirsch_extension(M, rec);
        M = std::move(r.algebra);
        images.insert(images.end(), new_images.begin(), new_images.end());
        m = map_from_generators(M, a, images);
        out.skeleton.push_back(std::move(rec));
    }
    out.minimal = verify_minimality(M);
    out.quasi_isomorphism = is_weak_equivalence_cdga(m, N - 2);
    out.notes.push_back("generators attached in degrees 2.." + std::to_string(N - 2) +
                        "; the map is checked to be a quasi-isomorphism in degrees <= " + std::to_string(N - 2));
    out.model = std::move(M);
    out.map = std::move(m);
    return out;
}

} // namespace isphere::pcdga
