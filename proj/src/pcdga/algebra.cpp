#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/pcdga.hpp"

#include <algorithm>
#include <functional>

namespace isphere::pcdga {

bool FreeGenerator::operator==(const FreeGenerator& o) const
{
    return name == o.name && degree == o.degree && support == o.support && d == o.d && at_death == o.at_death;
}

std::vector<std::size_t> FreePresentation::degrees() const
{
    std::vector<std::size_t> out;
    for (const auto& g : generators)
        out.push_back(g.degree);
    return out;
}

std::vector<std::string> FreePresentation::names() const
{
    std::vector<std::string> out;
    for (const auto& g : generators)
        out.push_back(g.name);
    return out;
}

std::optional<std::size_t> FreePresentation::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name)
            return i;
    return std::nullopt;
}

namespace {

std::size_t mult_columns(const NodewiseCDGA& t, std::size_t j, std::size_t p, std::size_t q)
{
    return t.dims[j][p] * t.dims[j][q];
}

Vector tensor(const Vector& a, const Vector& b)
{
    Vector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i]))
            for (std::size_t k = 0; k < b.size(); ++k)
                out[i * b.size() + k] = a[i] * b[k];
    return out;
}

void shape_error(const std::string& what) { throw ValidationError("malformed algebra tables: " + what); }

void check_shapes(const NodewiseCDGA& t)
{
    const std::size_t n = t.grid.node_count();
    const std::size_t N = t.max_degree;
    if (n == 0)
        shape_error("empty grid");
    if (t.dims.size() != n || t.mult.size() != n || t.d.size() != n || t.steps.size() + 1 != n)
        shape_error("wrong number of nodes");
    for (std::size_t j = 0; j < n; ++j) {
        if (t.dims[j].size() != N + 1)
            shape_error("node " + std::to_string(j) + " needs dims for degrees 0..N");
        if (t.dims[j][0] == 0)
            shape_error("degree 0 is zero at node " + t.grid.node_label(j) + ", no unit");
        if (t.d[j].size() != N)
            shape_error("node " + std::to_string(j) + " needs differentials for degrees 0..N-1");
        for (std::size_t q = 0; q < N; ++q)
            if (t.d[j][q].rows() != t.dims[j][q + 1] || t.d[j][q].cols() != t.dims[j][q])
                shape_error("d^" + std::to_string(q) + " at node " + t.grid.node_label(j));
        if (t.mult[j].size() != N + 1)
            shape_error("multiplication at node " + std::to_string(j));
        for (std::size_t p = 0; p <= N; ++p) {
            if (t.mult[j][p].size() != N + 1 - p)
                shape_error("multiplication at node " + std::to_string(j));
            for (std::size_t q = 0; p + q <= N; ++q)
                if (t.mult[j][p][q].rows() != t.dims[j][p + q] || t.mult[j][p][q].cols() != mult_columns(t, j, p, q))
                    shape_error("product of degrees " + std::to_string(p) + "," + std::to_string(q) + " at node " +
                                t.grid.node_label(j));
        }
        if (j + 1 < n) {
            if (t.steps[j].size() != N + 1)
                shape_error("steps at node " + std::to_string(j));
            for (std::size_t q = 0; q <= N; ++q)
                if (t.steps[j][q].rows() != t.dims[j + 1][q] || t.steps[j][q].cols() != t.dims[j][q])
                    shape_error("step in degree " + std::to_string(q) + " at node " + t.grid.node_label(j));
        }
    }
}

Vector mult_at(const NodewiseCDGA& t, std::size_t j, std::size_t p, const Vector& a, std::size_t q, const Vector& b)
{
    if (p + q > t.max_degree)
        return {};
    return t.mult[j][p][q] * tensor(a, b);
}

} // namespace

const FreePresentation& PersCDGA::presentation() const
{
    if (!free_)
        throw UsageError("algebra is not given by a free presentation");
    return *free_;
}

const std::vector<Exponents>& PersCDGA::monomials(std::size_t node, std::size_t degree) const
{
    presentation();
    return monomials_.at(node).at(degree);
}

const Polynomial& PersCDGA::generator_differential(std::size_t g, std::size_t node) const
{
    presentation();
    return dgen_.at(g).at(node);
}

Vector PersCDGA::multiply(std::size_t node, std::size_t p, const Vector& a, std::size_t q, const Vector& b) const
{
    return mult_at(t_, node, p, a, q, b);
}

Vector PersCDGA::unit(std::size_t node) const { return unit_vector(t_.dims.at(node)[0], 0); }

Vector PersCDGA::coordinates(const Polynomial& p, std::size_t node, std::size_t degree) const
{
    const auto& basis = monomials(node, degree);
    const auto degs = free_->degrees();
    Vector v = zero_vector(basis.size());
    for (const auto& [e, c] : p.terms) {
        std::size_t k = monomial_degree(e, degs);
        if (k > t_.max_degree)
            continue;
        if (k != degree)
            throw UsageError("polynomial term of degree " + std::to_string(k) + " where degree " +
                             std::to_string(degree) + " was expected");
        auto it = std::lower_bound(basis.begin(), basis.end(), e, std::greater<>());
        if (it == basis.end() || *it != e)
            throw UsageError("monomial " + format_monomial(e, free_->names()) + " is not alive at node " +
                             t_.grid.node_label(node));
        v[static_cast<std::size_t>(it - basis.begin())] += c;
    }
    return v;
}

Polynomial PersCDGA::polynomial(const Vector& v, std::size_t node, std::size_t degree) const
{
    const auto& basis = monomials(node, degree);
    if (v.size() != basis.size())
        throw UsageError("coordinate vector has the wrong size");
    Polynomial p;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i]))
            p.terms[basis[i]] = v[i];
    return p;
}

Vector PersCDGA::push(std::size_t degree, std::size_t from, std::size_t to, const Vector& v) const
{
    if (from > to)
        throw UsageError("push runs forward only");
    Vector r = v;
    for (std::size_t j = from; j < to; ++j)
        r = t_.steps[j][degree] * r;
    return r;
}

PersComplex PersCDGA::underlying() const
{
    const std::size_t n = node_count();
    const std::size_t N = max_degree();
    std::vector<PersModule> modules;
    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t q = 0; q <= N; ++q) {
        std::vector<std::size_t> dims;
        std::vector<Matrix> steps;
        for (std::size_t j = 0; j < n; ++j) {
            dims.push_back(t_.dims[j][q]);
            if (j + 1 < n)
                steps.push_back(t_.steps[j][q]);
            if (q < N)
                d[q].push_back(t_.d[j][q]);
        }
        modules.emplace_back(grid(), std::move(dims), std::move(steps));
    }
    return PersComplex(N, std::move(modules), std::move(d));
}

void PersCDGA::validate() const
{
    const NodewiseCDGA& t = t_;
    check_shapes(t);
    const std::size_t n = t.grid.node_count();
    const std::size_t N = t.max_degree;
    auto fail = [&](std::size_t j, const std::string& what) {
        throw ValidationError(what + " at node " + t.grid.node_label(j));
    };
    auto basis = [&](std::size_t j, std::size_t q, std::size_t i) { return unit_vector(t.dims[j][q], i); };
    for (std::size_t j = 0; j < n; ++j) {
        const Vector one = unit_vector(t.dims[j][0], 0);
        for (std::size_t q = 0; q <= N; ++q)
            for (std::size_t i = 0; i < t.dims[j][q]; ++i) {
                Vector b = basis(j, q, i);
                if (mult_at(t, j, 0, one, q, b) != b || mult_at(t, j, q, b, 0, one) != b)
                    fail(j, "basis vector 0 of degree 0 is not a unit in degree " + std::to_string(q));
            }
        if (!is_zero(t.d[j].empty() ? Vector{} : t.d[j][0] * one))
            fail(j, "d(1) != 0");
        for (std::size_t q = 0; q + 1 < N; ++q)
            if (!(t.d[j][q + 1] * t.d[j][q]).is_zero())
                fail(j, "d^2 != 0 in degree " + std::to_string(q));
        for (std::size_t p = 0; p <= N; ++p)
            for (std::size_t q = 0; p + q <= N; ++q)
                for (std::size_t a = 0; a < t.dims[j][p]; ++a)
                    for (std::size_t b = 0; b < t.dims[j][q]; ++b) {
                        Vector x = basis(j, p, a), y = basis(j, q, b);
                        Vector xy = mult_at(t, j, p, x, q, y);
                        Vector yx = mult_at(t, j, q, y, p, x);
                        if ((p * q) % 2 ? xy != Rational(-1) * yx : xy != yx)
                            fail(j, "product is not graded commutative in degrees " + std::to_string(p) + "," +
                                        std::to_string(q));
                        if (p + q < N) {
                            Vector lhs = t.d[j][p + q] * xy;
                            Vector r1 = p < N ? mult_at(t, j, p + 1, t.d[j][p] * x, q, y) : Vector{};
                            Vector r2 = q < N ? mult_at(t, j, p, x, q + 1, t.d[j][q] * y) : Vector{};
                            if (p % 2)
                                r2 = Rational(-1) * r2;
                            if (lhs != r1 + r2)
                                fail(j, "Leibniz rule fails in degrees " + std::to_string(p) + "," +
                                            std::to_string(q));
                        }
                        for (std::size_t r = 0; p + q + r <= N; ++r)
                            for (std::size_t c = 0; c < t.dims[j][r]; ++c) {
                                Vector z = basis(j, r, c);
                                if (mult_at(t, j, p + q, xy, r, z) != mult_at(t, j, p, x, q + r, mult_at(t, j, q, y, r, z)))
                                    fail(j, "product is not associative");
                            }
                    }
        if (j + 1 == n)
            continue;
        const auto& s = t.steps[j];
        if (s[0] * one != unit_vector(t.dims[j + 1][0], 0))
            fail(j, "step does not preserve the unit");
        for (std::size_t q = 0; q < N; ++q)
            if (t.d[j + 1][q] * s[q] != s[q + 1] * t.d[j][q])
                fail(j, "step is not a chain map in degree " + std::to_string(q));
        for (std::size_t p = 0; p <= N; ++p)
            for (std::size_t q = 0; p + q <= N; ++q)
                for (std::size_t a = 0; a < t.dims[j][p]; ++a)
                    for (std::size_t b = 0; b < t.dims[j][q]; ++b) {
                        Vector x = basis(j, p, a), y = basis(j, q, b);
                        if (s[p + q] * mult_at(t, j, p, x, q, y) != mult_at(t, j + 1, p, s[p] * x, q, s[q] * y))
                            fail(j, "step is not multiplicative");
                    }
    }
}

PersCDGA PersCDGA::nodewise(NodewiseCDGA tables)
{
    PersCDGA a;
    a.t_ = std::move(tables);
    a.validate();
    const std::size_t n = a.t_.grid.node_count();
    if (a.t_.labels.empty()) {
        a.t_.labels.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t q = 0; q <= a.t_.max_degree; ++q) {
                std::vector<std::string> l;
                for (std::size_t i = 0; i < a.t_.dims[j][q]; ++i)
                    l.push_back(q == 0 && i == 0 ? "1" : "b" + std::to_string(q) + "." + std::to_string(i));
                a.t_.labels[j].push_back(std::move(l));
            }
    }
    return a;
}

namespace {

void enumerate_monomials(const std::vector<std::size_t>& alive, const std::vector<std::size_t>& degrees,
                         std::size_t max_degree, std::size_t pos, Exponents& e, std::size_t deg,
                         std::vector<std::vector<Exponents>>& out)
{
    if (pos == alive.size()) {
        out[deg].push_back(trim(e));
        return;
    }
    const std::size_t g = alive[pos];
    const unsigned cap = degrees[g] % 2 ? 1u : ~0u;
    for (unsigned k = 0; k <= cap && deg + k * degrees[g] <= max_degree; ++k) {
        e[g] = k;
        enumerate_monomials(alive, degrees, max_degree, pos + 1, e, deg + k * degrees[g], out);
    }
    e[g] = 0;
}

} // namespace

PersCDGA PersCDGA::free(const EventGrid& grid, std::size_t max_degree, FreePresentation p)
{
    const std::size_t n = grid.node_count();
    const std::size_t N = max_degree;
    const std::size_t G = p.generators.size();
    const auto degs = p.degrees();
    const auto names = p.names();
    if (n == 0)
        throw UsageError("empty grid");
    std::vector<std::size_t> first(G), last(G);
    auto alive = [&](std::size_t g, std::size_t j) { return first[g] <= j && j <= last[g]; };
    auto bad = [&](std::size_t g, const std::string& what) {
        throw ValidationError("generator " + p.generators[g].name + ": " + what);
    };
    for (std::size_t g = 0; g < G; ++g) {
        const FreeGenerator& gen = p.generators[g];
        if (gen.name.empty())
            bad(g, "empty name");
        for (std::size_t h = 0; h < g; ++h)
            if (p.generators[h].name == gen.name)
                bad(g, "duplicate name");
        if (gen.degree == 0)
            bad(g, "degree must be at least 1");
        if (!gen.support.is_half_open())
            bad(g, "support must be half-open [s,t) or [s,inf)");
        first[g] = gen.support.first_node(grid);
        last[g] = gen.support.last_node(grid);
        auto uses = [&](const Polynomial& poly, std::size_t node, const char* what) {
            for (const auto& [e, c] : poly.terms)
                for (std::size_t h = 0; h < e.size(); ++h)
                    if (e[h]) {
                        if (h >= g)
                            bad(g, std::string(what) + " uses " + names.at(h) + ", not an earlier generator");
                        if (!alive(h, node))
                            bad(g, std::string(what) + " uses " + names[h] + ", not alive at " + grid.node_label(node));
                    }
        };
        uses(gen.d, first[g], "d");
        if (auto k = homogeneous_degree(gen.d, degs); k && *k != gen.degree + 1)
            bad(g, "d has degree " + std::to_string(*k));
        if (gen.support.is_infinite()) {
            if (!gen.at_death.is_zero())
                bad(g, "at_death given for an infinite support");
        } else {
            uses(gen.at_death, last[g] + 1, "at_death");
            if (auto k = homogeneous_degree(gen.at_death, degs); k && *k != gen.degree)
                bad(g, "at_death has degree " + std::to_string(*k));
        }
    }

    PersCDGA a;
    a.dgen_.assign(G, std::vector<Polynomial>(n));
    auto step_images = [&](std::size_t j) {
        std::vector<Polynomial> im(G);
        for (std::size_t h = 0; h < G; ++h)
            if (alive(h, j))
                im[h] = alive(h, j + 1) ? Polynomial::generator(h) : p.generators[h].at_death;
        return im;
    };
    auto dgen_at = [&](std::size_t j) {
        std::vector<Polynomial> out(G);
        for (std::size_t h = 0; h < G; ++h)
            out[h] = a.dgen_[h][j];
        return out;
    };
    // Generators are processed in index order, so the differentials they use are known.
    for (std::size_t g = 0; g < G; ++g) {
        a.dgen_[g][first[g]] = p.generators[g].d;
        for (std::size_t j = first[g]; j < last[g]; ++j)
            a.dgen_[g][j + 1] = substitute(a.dgen_[g][j], step_images(j), degs);
        if (!differential(p.generators[g].d, dgen_at(first[g]), degs).is_zero())
            bad(g, "d(d " + names[g] + ") != 0");
        if (!p.generators[g].support.is_infinite()) {
            const std::size_t t = last[g] + 1;
            Polynomial lhs = differential(p.generators[g].at_death, dgen_at(t), degs);
            Polynomial rhs = substitute(a.dgen_[g][last[g]], step_images(last[g]), degs);
            if (lhs != rhs)
                bad(g, "d(at_death) = " + format_polynomial(lhs, names) + " but d " + names[g] + " is sent to " +
                           format_polynomial(rhs, names));
        }
    }

    NodewiseCDGA& t = a.t_;
    t.grid = grid;
    t.max_degree = N;
    a.monomials_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> live;
        for (std::size_t g = 0; g < G; ++g)
            if (alive(g, j))
                live.push_back(g);
        Exponents e(G, 0);
        a.monomials_[j].assign(N + 1, {});
        enumerate_monomials(live, degs, N, 0, e, 0, a.monomials_[j]);
        for (auto& list : a.monomials_[j])
            std::sort(list.begin(), list.end(), std::greater<>());
    }
    a.free_ = p;
    t.dims.resize(n);
    t.labels.resize(n);
    t.mult.resize(n);
    t.d.resize(n);
    t.steps.resize(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t q = 0; q <= N; ++q) {
            t.dims[j].push_back(a.monomials_[j][q].size());
            std::vector<std::string> l;
            for (const auto& e : a.monomials_[j][q])
                l.push_back(format_monomial(e, names));
            t.labels[j].push_back(std::move(l));
        }
        t.mult[j].resize(N + 1);
        for (std::size_t pd = 0; pd <= N; ++pd)
            for (std::size_t qd = 0; pd + qd <= N; ++qd) {
                const auto& bp = a.monomials_[j][pd];
                const auto& bq = a.monomials_[j][qd];
                Matrix m(t.dims[j][pd + qd], bp.size() * bq.size());
                for (std::size_t x = 0; x < bp.size(); ++x)
                    for (std::size_t y = 0; y < bq.size(); ++y) {
                        Polynomial prod = pcdga::multiply(Polynomial{{{bp[x], 1}}}, Polynomial{{{bq[y], 1}}}, degs);
                        m.set_column(x * bq.size() + y, a.coordinates(prod, j, pd + qd));
                    }
                t.mult[j][pd].push_back(std::move(m));
            }
        const auto dg = dgen_at(j);
        for (std::size_t q = 0; q < N; ++q) {
            const auto& b = a.monomials_[j][q];
            Matrix m(t.dims[j][q + 1], b.size());
            for (std::size_t x = 0; x < b.size(); ++x)
                m.set_column(x, a.coordinates(differential(Polynomial{{{b[x], 1}}}, dg, degs), j, q + 1));
            t.d[j].push_back(std::move(m));
        }
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto im = step_images(j);
        for (std::size_t q = 0; q <= N; ++q) {
            const auto& b = a.monomials_[j][q];
            Matrix m(a.monomials_[j + 1][q].size(), b.size());
            for (std::size_t x = 0; x < b.size(); ++x)
                m.set_column(x, a.coordinates(truncate(substitute(Polynomial{{{b[x], 1}}}, im, degs), degs, N), j + 1, q));
            t.steps[j].push_back(std::move(m));
        }
    }
    return a;
}

PersCDGA PersCDGA::rationals(const EventGrid& grid, std::size_t max_degree)
{
    return free(grid, max_degree, {});
}

bool PersCDGA::operator==(const PersCDGA& o) const
{
    return t_.grid == o.t_.grid && t_.max_degree == o.t_.max_degree && t_.dims == o.t_.dims &&
           t_.mult == o.t_.mult && t_.d == o.t_.d && t_.steps == o.t_.steps && free_ == o.free_;
}

PersCDGA free_pcdga(const EventGrid& grid, std::size_t max_degree, const FreePresentation& p)
{
    return PersCDGA::free(grid, max_degree, p);
}

// Maps.

PersCDGAMap PersCDGAMap::identity(const PersCDGA& a)
{
    PersCDGAMap m{a, a, {}};
    m.f.resize(a.max_degree() + 1);
    for (std::size_t q = 0; q <= a.max_degree(); ++q)
        for (std::size_t j = 0; j < a.node_count(); ++j)
            m.f[q].push_back(Matrix::identity(a.dim(j, q)));
    return m;
}

PersCDGAMap PersCDGAMap::unit(const PersCDGA& a)
{
    PersCDGAMap m{PersCDGA::rationals(a.grid(), a.max_degree()), a, {}};
    m.f.resize(a.max_degree() + 1);
    for (std::size_t q = 0; q <= a.max_degree(); ++q)
        for (std::size_t j = 0; j < a.node_count(); ++j)
            m.f[q].push_back(q == 0 ? Matrix::column_matrix(a.unit(j)) : Matrix(a.dim(j, q), 0));
    return m;
}

void PersCDGAMap::validate() const
{
    const std::size_t N = source.max_degree();
    const std::size_t n = source.node_count();
    if (target.grid() != source.grid() || target.max_degree() != N)
        throw ValidationError("algebra map between different grids or truncation degrees");
    auto fail = [&](std::size_t j, const std::string& what) {
        throw ValidationError("algebra map: " + what + " at node " + source.grid().node_label(j));
    };
    if (f.size() != N + 1)
        throw ValidationError("algebra map needs components in degrees 0..N");
    for (std::size_t q = 0; q <= N; ++q) {
        if (f[q].size() != n)
            throw ValidationError("algebra map needs a component at every node");
        for (std::size_t j = 0; j < n; ++j)
            if (f[q][j].rows() != target.dim(j, q) || f[q][j].cols() != source.dim(j, q))
                fail(j, "component of degree " + std::to_string(q) + " has the wrong shape");
    }
    const auto& S = source.tables();
    const auto& T = target.tables();
    for (std::size_t j = 0; j < n; ++j) {
        if (f[0][j] * source.unit(j) != target.unit(j))
            fail(j, "unit not preserved");
        for (std::size_t q = 0; q < N; ++q)
            if (f[q + 1][j] * S.d[j][q] != T.d[j][q] * f[q][j])
                fail(j, "not a chain map in degree " + std::to_string(q));
        if (j + 1 < n)
            for (std::size_t q = 0; q <= N; ++q)
                if (f[q][j + 1] * S.steps[j][q] != T.steps[j][q] * f[q][j])
                    fail(j, "does not commute with the step in degree " + std::to_string(q));
        for (std::size_t p = 0; p <= N; ++p)
            for (std::size_t q = 0; p + q <= N; ++q)
                for (std::size_t a = 0; a < source.dim(j, p); ++a)
                    for (std::size_t b = 0; b < source.dim(j, q); ++b) {
                        Vector x = unit_vector(source.dim(j, p), a), y = unit_vector(source.dim(j, q), b);
                        if (f[p + q][j] * source.multiply(j, p, x, q, y) !=
                            target.multiply(j, p, f[p][j] * x, q, f[q][j] * y))
                            fail(j, "not multiplicative in degrees " + std::to_string(p) + "," + std::to_string(q));
                    }
    }
}

PersComplexMap PersCDGAMap::underlying() const { return {source.underlying(), target.underlying(), f}; }

PersCDGAMap compose(const PersCDGAMap& g, const PersCDGAMap& f)
{
    PersCDGAMap r{f.source, g.target, {}};
    r.f.resize(f.f.size());
    for (std::size_t q = 0; q < f.f.size(); ++q)
        for (std::size_t j = 0; j < f.f[q].size(); ++j)
            r.f[q].push_back(g.f.at(q).at(j) * f.f[q][j]);
    return r;
}

PersCDGAMap map_from_generators(const PersCDGA& source, const PersCDGA& target, const std::vector<Vector>& images)
{
    const FreePresentation& p = source.presentation();
    const std::size_t G = p.generators.size();
    const std::size_t n = source.node_count();
    const std::size_t N = source.max_degree();
    if (target.grid() != source.grid() || target.max_degree() != N)
        throw UsageError("algebra map between different grids or truncation degrees");
    if (images.size() != G)
        throw UsageError("one image per generator expected");
    std::vector<std::size_t> first(G), last(G);
    for (std::size_t g = 0; g < G; ++g) {
        first[g] = p.generators[g].support.first_node(source.grid());
        last[g] = p.generators[g].support.last_node(source.grid());
        const std::size_t k = p.generators[g].degree;
        if (k <= N && images[g].size() != target.dim(first[g], k))
            throw UsageError("image of " + p.generators[g].name + " has the wrong size");
    }
    const auto degs = p.degrees();
    PersCDGAMap m{source, target, {}};
    m.f.assign(N + 1, {});
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Vector> img(G);
        for (std::size_t g = 0; g < G; ++g)
            if (first[g] <= j && j <= last[g] && degs[g] <= N)
                img[g] = target.push(degs[g], first[g], j, images[g]);
        for (std::size_t q = 0; q <= N; ++q) {
            const auto& basis = source.monomials(j, q);
            Matrix c(target.dim(j, q), basis.size());
            for (std::size_t x = 0; x < basis.size(); ++x) {
                Vector v = target.unit(j);
                std::size_t deg = 0;
                for (std::size_t g = 0; g < basis[x].size(); ++g)
                    for (unsigned k = 0; k < basis[x][g]; ++k) {
                        v = target.multiply(j, deg, v, degs[g], img[g]);
                        deg += degs[g];
                    }
                c.set_column(x, v);
            }
            m.f[q].push_back(std::move(c));
        }
    }
    m.validate();
    return m;
}

CohomologyResult cohomology_pcdga(const PersCDGA& a, std::size_t k)
{
    if (a.max_degree() == 0 || k > a.max_degree() - 1)
        throw UsageError("cohomology of a truncated algebra is available in degrees <= N-1");
    return cohomology(a.underlying(), k);
}

model::Verdict is_weak_equivalence_cdga(const PersCDGAMap& f, std::size_t top_degree)
{
    model::CheckOptions opt;
    opt.top_degree = top_degree;
    return model::is_weak_equivalence(f.underlying(), opt);
}

model::Verdict is_weak_equivalence_cdga(const PersCDGAMap& f)
{
    const std::size_t N = f.source.max_degree();
    return is_weak_equivalence_cdga(f, N == 0 ? 0 : N - 1);
}

} // namespace isphere::pcdga
