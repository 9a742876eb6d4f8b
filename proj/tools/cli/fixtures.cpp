#include "fixtures.hpp"

#include "isphere/errors.hpp"

namespace isphere::cli {

EventGrid grid01() { return EventGrid({Rational(0), Rational(1)}); }

namespace {

Matrix one_by_one(long v)
{
    Matrix m(1, 1);
    m(0, 0) = v;
    return m;
}

} // namespace

PersComplexMap quotient_q(std::size_t max_degree)
{
    const EventGrid g = grid01();
    PersComplex d0 = disk(g, max_degree, 2, 0);
    PersComplex d1 = disk(g, max_degree, 2, 1);
    PersComplexMap inc{d1, d0, {}};
    for (std::size_t k = 0; k <= max_degree; ++k) {
        inc.f.emplace_back();
        for (std::size_t j = 0; j < g.node_count(); ++j) {
            Matrix c(d0.dim(k, j), d1.dim(k, j));
            if (c.rows() == 1 && c.cols() == 1)
                c(0, 0) = 1;
            inc.f[k].push_back(c);
        }
    }
    return quotient_complex(d0, inc).map;
}

model::LiftingProblem q_square()
{
    model::LiftingProblem p;
    p.kind = model::Generator::J0;
    p.degree = 2;
    p.s = 0;
    p.t = 1;
    p.top_x = {Rational(0)};
    p.bottom = {Rational(1)};
    return p;
}

PersComplex closed_interval_tensor(std::size_t max_degree)
{
    return interval_tensor(grid01(), max_degree, DecoratedInterval::closed(0, 1), 1);
}

pcdga::PersCDGA cohomology_s2(const EventGrid& grid, std::size_t N, std::optional<Rational> death)
{
    const std::size_t n = grid.node_count();
    const std::size_t cut = death ? EventGrid::at_node(grid.require_index(*death)) : n;
    auto dim = [&](std::size_t j, std::size_t q) -> std::size_t { return q == 0 || (q == 2 && j < cut) ? 1 : 0; };
    pcdga::NodewiseCDGA t;
    t.grid = grid;
    t.max_degree = N;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> dims;
        std::vector<std::vector<std::string>> labels;
        for (std::size_t q = 0; q <= N; ++q) {
            dims.push_back(dim(j, q));
            labels.push_back(q == 0 ? std::vector<std::string>{"1"}
                                    : dims[q] ? std::vector<std::string>{"x"} : std::vector<std::string>{});
        }
        t.dims.push_back(dims);
        t.labels.push_back(labels);
        std::vector<std::vector<Matrix>> mult(N + 1);
        for (std::size_t p = 0; p <= N; ++p)
            for (std::size_t q = 0; p + q <= N; ++q) {
                Matrix m(dims[p + q], dims[p] * dims[q]);
                if ((p == 0 || q == 0) && m.rows() && m.cols())
                    m(0, 0) = 1;
                mult[p].push_back(m);
            }
        t.mult.push_back(mult);
        std::vector<Matrix> d;
        for (std::size_t q = 0; q < N; ++q)
            d.emplace_back(dims[q + 1], dims[q]);
        t.d.push_back(d);
        if (j + 1 < n) {
            std::vector<Matrix> s;
            for (std::size_t q = 0; q <= N; ++q) {
                Matrix m(dim(j + 1, q), dim(j, q));
                if (m.rows() && m.cols())
                    m(0, 0) = 1;
                s.push_back(m);
            }
            t.steps.push_back(s);
        }
    }
    return pcdga::PersCDGA::nodewise(std::move(t));
}

pcdga::PersCDGA truncate_nodewise(const pcdga::PersCDGA& a, std::size_t N)
{
    if (N > a.max_degree())
        throw UsageError("cannot raise the top degree of a table-given algebra from " +
                         std::to_string(a.max_degree()) + " to " + std::to_string(N));
    pcdga::NodewiseCDGA t = a.tables();
    t.max_degree = N;
    for (std::size_t j = 0; j < t.dims.size(); ++j) {
        t.dims[j].resize(N + 1);
        t.mult[j].resize(N + 1);
        for (std::size_t p = 0; p <= N; ++p)
            t.mult[j][p].resize(N - p + 1);
        t.d[j].resize(N);
        if (!t.labels.empty())
            t.labels[j].resize(N + 1);
    }
    for (auto& s : t.steps)
        s.resize(N + 1);
    return pcdga::PersCDGA::nodewise(std::move(t));
}

std::vector<std::string> fixture_names()
{
    return {"interval", "mixed", "empty-module", "sphere", "closed-interval", "q", "q-square", "identity",
            "sphere-in-disk", "sphere-presentation", "s2-constant", "s2-dying", "rationals"};
}

io::Json fixture(const std::string& name)
{
    const EventGrid g = grid01();
    if (name == "interval")
        return io::to_json(make_interval_module(g, DecoratedInterval::half_open(0, 1)));
    if (name == "mixed") {
        Matrix glue(1, 2);
        glue(0, 0) = 1;
        glue(0, 1) = 1;
        return io::to_json(PersModule(g, {2, 2, 1, 1}, {Matrix::identity(2), glue, one_by_one(1)}));
    }
    if (name == "empty-module")
        return io::to_json(PersModule::zero(g));
    if (name == "sphere")
        return io::to_json(sphere(g, 3, 2, 0, Rational(1)));
    if (name == "closed-interval")
        return io::to_json(closed_interval_tensor());
    if (name == "q")
        return io::to_json(quotient_q());
    if (name == "q-square")
        return io::to_json(q_square());
    if (name == "identity")
        return io::to_json(PersComplexMap::identity(disk(g, 3, 2, 0)));
    if (name == "sphere-in-disk") {
        model::LiftingProblem p;
        p.kind = model::Generator::I0;
        p.degree = 2;
        p.s = 0;
        p.t = 1;
        return io::to_json(model::generator_map(g, 3, p));
    }
    if (name == "sphere-presentation")
        return io::to_json(model::cofibrant_replacement(sphere(g, 3, 2, 0, Rational(1))).presentation);
    if (name == "s2-constant")
        return io::to_json(cohomology_s2(g, 6));
    if (name == "s2-dying")
        return io::to_json(cohomology_s2(g, 6, Rational(1)));
    if (name == "rationals")
        return io::to_json(pcdga::PersCDGA::rationals(g, 6));
    throw UsageError("unknown fixture '" + name + "'");
}

} // namespace isphere::cli
