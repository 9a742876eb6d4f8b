#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/pcx.hpp"

namespace isphere {

PersComplex::PersComplex(std::size_t max_degree, std::vector<PersModule> modules, std::vector<std::vector<Matrix>> d)
    : max_degree_(max_degree), modules_(std::move(modules)), d_(std::move(d))
{
    validate();
}

PersComplex PersComplex::zero(const EventGrid& grid, std::size_t max_degree)
{
    std::vector<PersModule> ms(max_degree + 1, PersModule::zero(grid));
    std::vector<std::vector<Matrix>> d(max_degree, std::vector<Matrix>(grid.node_count(), Matrix()));
    return PersComplex(max_degree, std::move(ms), std::move(d));
}

PersComplex PersComplex::concentrated(const PersModule& m, std::size_t k, std::size_t max_degree)
{
    if (k > max_degree)
        throw UsageError("degree " + std::to_string(k) + " exceeds the maximal degree");
    std::vector<PersModule> ms(max_degree + 1, PersModule::zero(m.grid()));
    ms[k] = m;
    std::vector<std::vector<Matrix>> d(max_degree);
    for (std::size_t q = 0; q < max_degree; ++q)
        for (std::size_t j = 0; j < m.node_count(); ++j)
            d[q].push_back(Matrix(ms[q + 1].dim(j), ms[q].dim(j)));
    return PersComplex(max_degree, std::move(ms), std::move(d));
}

Matrix PersComplex::d(std::size_t k, std::size_t node) const
{
    if (k > max_degree_)
        throw UsageError("degree out of range");
    if (k == max_degree_)
        return Matrix(0, dim(k, node));
    return d_[k].at(node);
}

PersModuleMap PersComplex::differential_map(std::size_t k) const
{
    PersModuleMap m;
    m.source = module(k);
    m.target = k < max_degree_ ? module(k + 1) : PersModule(grid(), std::vector<std::size_t>(node_count(), 0),
                                                              std::vector<Matrix>(node_count() - 1, Matrix()));
    for (std::size_t j = 0; j < node_count(); ++j)
        m.components.push_back(d(k, j));
    return m;
}

bool PersComplex::is_zero() const
{
    for (const auto& m : modules_)
        if (!m.is_zero())
            return false;
    return true;
}

void PersComplex::validate() const
{
    if (modules_.size() != max_degree_ + 1)
        throw ValidationError("complex needs one module per degree 0..N");
    if (d_.size() != max_degree_)
        throw ValidationError("complex needs one differential per degree 0..N-1");
    for (const auto& m : modules_) {
        if (m.grid() != grid())
            throw ValidationError("complex modules live on different grids");
        m.validate();
    }
    const std::size_t n = node_count();
    for (std::size_t k = 0; k < max_degree_; ++k) {
        if (d_[k].size() != n)
            throw ValidationError("differential d^" + std::to_string(k) + " needs one matrix per node");
        for (std::size_t j = 0; j < n; ++j)
            if (d_[k][j].rows() != dim(k + 1, j) || d_[k][j].cols() != dim(k, j))
                throw ValidationError("d^" + std::to_string(k) + " at " + grid().node_label(j) + " has the wrong shape");
    }
    for (std::size_t k = 0; k + 1 < max_degree_; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (!(d_[k + 1][j] * d_[k][j]).is_zero())
                throw ValidationError("d^" + std::to_string(k + 1) + " d^" + std::to_string(k) + " != 0 at " +
                                      grid().node_label(j));
    for (std::size_t k = 0; k < max_degree_; ++k)
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (d_[k][j + 1] * step(k, j) != step(k + 1, j) * d_[k][j])
                throw ValidationError("d^" + std::to_string(k) + " does not commute with the step at " +
                                      grid().node_label(j));
}

bool PersComplex::operator==(const PersComplex& o) const
{
    return max_degree_ == o.max_degree_ && modules_ == o.modules_ && d_ == o.d_;
}

PersComplexMap PersComplexMap::identity(const PersComplex& x)
{
    PersComplexMap m{x, x, {}};
    for (std::size_t k = 0; k <= x.max_degree(); ++k)
        m.f.push_back(PersModuleMap::identity(x.module(k)).components);
    return m;
}

PersComplexMap PersComplexMap::zero(const PersComplex& s, const PersComplex& t)
{
    if (s.max_degree() != t.max_degree() || s.grid() != t.grid())
        throw UsageError("zero map needs matching grid and maximal degree");
    PersComplexMap m{s, t, {}};
    for (std::size_t k = 0; k <= s.max_degree(); ++k)
        m.f.push_back(PersModuleMap::zero(s.module(k), t.module(k)).components);
    return m;
}

PersModuleMap PersComplexMap::component(std::size_t k) const
{
    return PersModuleMap{source.module(k), target.module(k), f.at(k)};
}

void PersComplexMap::validate() const
{
    if (source.max_degree() != target.max_degree())
        throw ValidationError("map between complexes of different maximal degree");
    if (source.grid() != target.grid())
        throw ValidationError("map between complexes on different grids");
    if (f.size() != source.max_degree() + 1)
        throw ValidationError("map needs one component per degree");
    for (std::size_t k = 0; k <= source.max_degree(); ++k)
        component(k).validate();
    for (std::size_t k = 0; k < source.max_degree(); ++k)
        for (std::size_t j = 0; j < source.node_count(); ++j)
            if (f[k + 1][j] * source.d(k, j) != target.d(k, j) * f[k][j])
                throw ValidationError("map does not commute with d^" + std::to_string(k) + " at " +
                                      source.grid().node_label(j));
}

bool PersComplexMap::is_mono() const
{
    for (std::size_t k = 0; k < f.size(); ++k)
        if (!component(k).is_mono())
            return false;
    return true;
}

bool PersComplexMap::is_epi() const
{
    for (std::size_t k = 0; k < f.size(); ++k)
        if (!component(k).is_epi())
            return false;
    return true;
}

bool PersComplexMap::is_iso() const { return is_mono() && is_epi(); }

bool PersComplexMap::operator==(const PersComplexMap& o) const
{
    return source == o.source && target == o.target && f == o.f;
}

PersComplexMap compose(const PersComplexMap& g, const PersComplexMap& f)
{
    if (f.target != g.source)
        throw UsageError("compose: target of the first map differs from source of the second");
    PersComplexMap h{f.source, g.target, {}};
    for (std::size_t k = 0; k < f.f.size(); ++k) {
        h.f.emplace_back();
        for (std::size_t j = 0; j < f.f[k].size(); ++j)
            h.f[k].push_back(g.f[k][j] * f.f[k][j]);
    }
    return h;
}

PersComplex refine(const PersComplex& x, const EventGrid& finer)
{
    const auto origin = refinement_origin(x.grid(), finer);
    std::vector<PersModule> modules;
    for (const auto& m : x.modules())
        modules.push_back(refine(m, finer));
    std::vector<std::vector<Matrix>> d(x.max_degree());
    for (std::size_t k = 0; k < x.max_degree(); ++k)
        for (std::size_t j = 0; j < finer.node_count(); ++j)
            d[k].push_back(origin[j] ? x.d(k, *origin[j]) : Matrix());
    return PersComplex(x.max_degree(), std::move(modules), std::move(d));
}

PersComplexMap refine(const PersComplexMap& f, const EventGrid& finer)
{
    const auto origin = refinement_origin(f.source.grid(), finer);
    PersComplexMap r{refine(f.source, finer), refine(f.target, finer), {}};
    for (std::size_t k = 0; k < f.f.size(); ++k) {
        r.f.emplace_back();
        for (std::size_t j = 0; j < finer.node_count(); ++j)
            r.f[k].push_back(origin[j] ? f.at(k, *origin[j]) : Matrix());
    }
    return r;
}

PersComplex direct_sum(const std::vector<PersComplex>& xs)
{
    if (xs.empty())
        throw UsageError("direct_sum of no complexes needs a grid");
    std::size_t N = xs.front().max_degree();
    const EventGrid& g = xs.front().grid();
    for (const auto& x : xs)
        if (x.max_degree() != N || x.grid() != g)
            throw UsageError("direct_sum: complexes differ in grid or maximal degree");
    std::vector<PersModule> ms;
    for (std::size_t k = 0; k <= N; ++k) {
        std::vector<PersModule> parts;
        for (const auto& x : xs)
            parts.push_back(x.module(k));
        ms.push_back(direct_sum(parts, g));
    }
    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < g.node_count(); ++j) {
            std::vector<Matrix> blocks;
            for (const auto& x : xs)
                blocks.push_back(x.d(k, j));
            d[k].push_back(block_diagonal(blocks));
        }
    return PersComplex(N, std::move(ms), std::move(d));
}

PersComplexMap direct_sum(const std::vector<PersComplexMap>& fs)
{
    std::vector<PersComplex> src, tgt;
    for (const auto& f : fs) {
        src.push_back(f.source);
        tgt.push_back(f.target);
    }
    PersComplexMap h{direct_sum(src), direct_sum(tgt), {}};
    for (std::size_t k = 0; k <= h.source.max_degree(); ++k) {
        h.f.emplace_back();
        for (std::size_t j = 0; j < h.source.node_count(); ++j) {
            std::vector<Matrix> blocks;
            for (const auto& f : fs)
                blocks.push_back(f.f[k][j]);
            h.f[k].push_back(block_diagonal(blocks));
        }
    }
    return h;
}

PersComplexMap summand_inclusion(const PersComplex& x, const PersComplex& y)
{
    PersComplexMap m{x, direct_sum({x, y}), {}};
    for (std::size_t k = 0; k <= x.max_degree(); ++k) {
        m.f.emplace_back();
        for (std::size_t j = 0; j < x.node_count(); ++j)
            m.f[k].push_back(vstack(Matrix::identity(x.dim(k, j)), Matrix(y.dim(k, j), x.dim(k, j))));
    }
    return m;
}

PersComplexMap summand_projection(const PersComplex& x, const PersComplex& y)
{
    PersComplexMap m{direct_sum({x, y}), x, {}};
    for (std::size_t k = 0; k <= x.max_degree(); ++k) {
        m.f.emplace_back();
        for (std::size_t j = 0; j < x.node_count(); ++j)
            m.f[k].push_back(hstack(Matrix::identity(x.dim(k, j)), Matrix(x.dim(k, j), y.dim(k, j))));
    }
    return m;
}

namespace {

// 1x1 identity where both spaces are one-dimensional, zero of the right shape otherwise.
Matrix unit_or_zero(std::size_t rows, std::size_t cols)
{
    Matrix m(rows, cols);
    if (rows == 1 && cols == 1)
        m(0, 0) = 1;
    return m;
}

PersModule ray(const EventGrid& g, const Rational& s) { return make_interval_module(g, DecoratedInterval::half_open(s)); }

} // namespace

PersComplex sphere(const EventGrid& grid, std::size_t max_degree, std::size_t k, const Rational& s,
                   std::optional<Rational> t)
{
    if (k == 0)
        throw UsageError("sphere needs k >= 1");
    if (k > max_degree + 1)
        throw UsageError("sphere degree exceeds the maximal degree");
    grid.require_index(s);
    if (t) {
        grid.require_index(*t);
        if (*t <= s)
            throw UsageError("sphere needs s < t");
    }
    std::vector<PersModule> ms(max_degree + 1, PersModule::zero(grid));
    if (k <= max_degree)
        ms[k] = ray(grid, s);
    if (t)
        ms[k - 1] = ray(grid, *t);
    std::vector<std::vector<Matrix>> d(max_degree);
    for (std::size_t q = 0; q < max_degree; ++q)
        for (std::size_t j = 0; j < grid.node_count(); ++j)
            d[q].push_back(unit_or_zero(ms[q + 1].dim(j), ms[q].dim(j)));
    return PersComplex(max_degree, std::move(ms), std::move(d));
}

PersComplex disk(const EventGrid& grid, std::size_t max_degree, std::size_t k, const Rational& s)
{
    grid.require_index(s);
    if (k == 0)
        return PersComplex::zero(grid, max_degree);
    if (k > max_degree + 1)
        throw UsageError("disk degree exceeds the maximal degree");
    std::vector<PersModule> ms(max_degree + 1, PersModule::zero(grid));
    ms[k - 1] = ray(grid, s);
    if (k <= max_degree)
        ms[k] = ray(grid, s);
    std::vector<std::vector<Matrix>> d(max_degree);
    for (std::size_t q = 0; q < max_degree; ++q)
        for (std::size_t j = 0; j < grid.node_count(); ++j)
            d[q].push_back(unit_or_zero(ms[q + 1].dim(j), ms[q].dim(j)));
    return PersComplex(max_degree, std::move(ms), std::move(d));
}

namespace {

template <class Build>
PersComplex of_module(const std::vector<PersModule>& graded, const EventGrid& grid, std::size_t max_degree,
                      Build&& build)
{
    std::vector<PersComplex> parts{PersComplex::zero(grid, max_degree)};
    for (std::size_t k = 0; k < graded.size(); ++k) {
        if (graded[k].is_zero())
            continue;
        if (!is_tame(graded[k]))
            throw HypothesisError("module in degree " + std::to_string(k) + " is not tame",
                                  "{\"degree\":" + std::to_string(k) + "}");
        for (const auto& bar : barcode(graded[k]).barcode.bars)
            for (std::size_t m = 0; m < bar.multiplicity; ++m)
                parts.push_back(build(k, bar.interval));
    }
    return direct_sum(parts);
}

} // namespace

PersComplex sphere_of_module(const std::vector<PersModule>& graded, const EventGrid& grid, std::size_t max_degree)
{
    return of_module(graded, grid, max_degree, [&](std::size_t k, const DecoratedInterval& iv) {
        return sphere(grid, max_degree, k, iv.left, iv.right);
    });
}

PersComplex disk_of_module(const std::vector<PersModule>& graded, const EventGrid& grid, std::size_t max_degree)
{
    return of_module(graded, grid, max_degree, [&](std::size_t k, const DecoratedInterval& iv) {
        return disk(grid, max_degree, k, iv.left);
    });
}

PersComplex interval_tensor(const EventGrid& grid, std::size_t max_degree, const DecoratedInterval& interval,
                            std::size_t k)
{
    return PersComplex::concentrated(make_interval_module(grid, interval), k, max_degree);
}

SubmoduleResult cocycles(const PersComplex& x, std::size_t k) { return kernel_module(x.differential_map(k)); }

SubmoduleResult coboundaries(const PersComplex& x, std::size_t k)
{
    if (k == 0) {
        std::vector<Matrix> bases;
        for (std::size_t j = 0; j < x.node_count(); ++j)
            bases.push_back(Matrix(x.dim(0, j), 0));
        return submodule(x.module(0), bases);
    }
    return image_module(x.differential_map(k - 1));
}

CohomologyResult cohomology(const PersComplex& x, std::size_t k)
{
    if (k > x.max_degree())
        throw UsageError("cohomology degree exceeds the maximal degree");
    auto z = cocycles(x, k);
    std::vector<Matrix> b_in_z;
    for (std::size_t j = 0; j < x.node_count(); ++j) {
        Matrix b = k == 0 ? Matrix(x.dim(0, j), 0) : exactla::image_basis(x.d(k - 1, j));
        if (b.cols() == 0)
            b = Matrix(x.dim(k, j), 0);
        auto coords = exactla::solve_matrix(z.map.components[j], b);
        if (!coords)
            throw ValidationError("coboundaries are not cocycles (d^2 != 0)");
        b_in_z.push_back(std::move(*coords));
    }
    auto h = quotient_module(z.module, b_in_z);
    CohomologyResult r;
    r.barcode = barcode(h.module).barcode;
    r.module = std::move(h.module);
    r.truncated = k == x.max_degree();
    r.cocycle_basis = z.map.components;
    r.projection = h.map.components;
    return r;
}

SubcomplexResult subcomplex(const PersComplex& x, const std::vector<std::vector<Matrix>>& bases)
{
    std::size_t N = x.max_degree();
    if (bases.size() != N + 1)
        throw UsageError("subcomplex: need bases for every degree");
    std::vector<PersModule> ms;
    PersComplexMap inc;
    for (std::size_t k = 0; k <= N; ++k) {
        auto s = submodule(x.module(k), bases[k]);
        ms.push_back(s.module);
        inc.f.push_back(s.map.components);
    }
    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < x.node_count(); ++j) {
            auto c = exactla::solve_matrix(bases[k + 1][j], x.d(k, j) * bases[k][j]);
            if (!c)
                throw ValidationError("subcomplex: not closed under d^" + std::to_string(k));
            d[k].push_back(std::move(*c));
        }
    PersComplex sub(N, std::move(ms), std::move(d));
    inc.source = sub;
    inc.target = x;
    return {std::move(sub), std::move(inc)};
}

SubcomplexResult quotient_by(const PersComplex& x, const std::vector<std::vector<Matrix>>& bases)
{
    std::size_t N = x.max_degree();
    if (bases.size() != N + 1)
        throw UsageError("quotient_by: need bases for every degree");
    std::vector<PersModule> ms;
    PersComplexMap proj;
    std::vector<std::vector<Matrix>> sections(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        auto q = quotient_module(x.module(k), bases[k]);
        for (std::size_t j = 0; j < x.node_count(); ++j)
            sections[k].push_back(exactla::right_inverse(q.map.components[j]));
        ms.push_back(q.module);
        proj.f.push_back(q.map.components);
    }
    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < x.node_count(); ++j) {
            if (!(proj.f[k + 1][j] * x.d(k, j) * bases[k][j]).is_zero())
                throw ValidationError("quotient_by: subspace not closed under d^" + std::to_string(k));
            d[k].push_back(proj.f[k + 1][j] * x.d(k, j) * sections[k][j]);
        }
    PersComplex quo(N, std::move(ms), std::move(d));
    proj.source = x;
    proj.target = quo;
    return {std::move(quo), std::move(proj)};
}

namespace {

std::vector<std::vector<Matrix>> image_bases(const PersComplexMap& f)
{
    std::vector<std::vector<Matrix>> bases(f.f.size());
    for (std::size_t k = 0; k < f.f.size(); ++k)
        for (std::size_t j = 0; j < f.f[k].size(); ++j) {
            Matrix b = exactla::image_basis(f.f[k][j]);
            bases[k].push_back(b.cols() == 0 ? Matrix(f.target.dim(k, j), 0) : b);
        }
    return bases;
}

} // namespace

SubcomplexResult kernel_complex(const PersComplexMap& f)
{
    std::vector<std::vector<Matrix>> bases(f.f.size());
    for (std::size_t k = 0; k < f.f.size(); ++k)
        for (const auto& c : f.f[k])
            bases[k].push_back(exactla::kernel_basis(c));
    return subcomplex(f.source, bases);
}

SubcomplexResult image_complex(const PersComplexMap& f) { return subcomplex(f.target, image_bases(f)); }

SubcomplexResult cokernel_complex(const PersComplexMap& f) { return quotient_by(f.target, image_bases(f)); }

SubcomplexResult quotient_complex(const PersComplex& x, const PersComplexMap& sub)
{
    if (sub.target != x)
        throw UsageError("quotient_complex: map does not land in the given complex");
    for (std::size_t k = 0; k < sub.f.size(); ++k)
        for (std::size_t j = 0; j < sub.f[k].size(); ++j)
            if (exactla::rank(sub.f[k][j]) != sub.source.dim(k, j))
                throw HypothesisError("quotient_complex: map is not a monomorphism",
                                      "{\"degree\":" + std::to_string(k) + ",\"node\":\"" +
                                          x.grid().node_label(j) + "\"}");
    return cokernel_complex(sub);
}

namespace {

// Columns push_{p -> j}(v) for every node j >= p, zero before p.
std::vector<Vector> pushes(const PersModule& m, std::size_t p, const Vector& v)
{
    std::vector<Vector> out(m.node_count());
    for (std::size_t j = 0; j < m.node_count(); ++j)
        out[j] = zero_vector(m.dim(j));
    if (v.size() != m.dim(p))
        throw UsageError("element has " + std::to_string(v.size()) + " coordinates, space has dimension " +
                         std::to_string(m.dim(p)));
    out[p] = v;
    for (std::size_t j = p; j + 1 < m.node_count(); ++j)
        out[j + 1] = m.step(j) * out[j];
    return out;
}

// Map out of a complex whose degree-q part at node j is either zero or
// one-dimensional, sending the generator to gen[q][j].
PersComplexMap map_from_rank_one(const PersComplex& src, const PersComplex& x,
                                 const std::vector<std::vector<Vector>>& gen)
{
    PersComplexMap m{src, x, {}};
    for (std::size_t q = 0; q <= x.max_degree(); ++q) {
        m.f.emplace_back();
        for (std::size_t j = 0; j < x.node_count(); ++j) {
            Matrix c(x.dim(q, j), src.dim(q, j));
            if (src.dim(q, j) == 1)
                c.set_column(0, gen[q][j]);
            m.f[q].push_back(std::move(c));
        }
    }
    m.validate();
    return m;
}

} // namespace

PersComplexMap map_from_disk(const PersComplex& x, std::size_t k, const Rational& s, const Vector& v)
{
    if (k == 0)
        throw UsageError("Hom out of a disk needs k >= 1");
    PersComplex dk = disk(x.grid(), x.max_degree(), k, s);
    std::size_t p = EventGrid::at_node(x.grid().require_index(s));
    std::vector<std::vector<Vector>> gen(x.max_degree() + 1, std::vector<Vector>(x.node_count()));
    auto low = pushes(x.module(k - 1), p, v);
    for (std::size_t j = 0; j < x.node_count(); ++j) {
        gen[k - 1][j] = low[j];
        if (k <= x.max_degree())
            gen[k][j] = x.d(k - 1, j) * low[j];
    }
    return map_from_rank_one(dk, x, gen);
}

DiskHom hom_from_disk(const PersComplex& x, std::size_t k, const Rational& s)
{
    if (k == 0)
        throw UsageError("Hom out of a disk needs k >= 1");
    std::size_t p = EventGrid::at_node(x.grid().require_index(s));
    DiskHom h;
    h.basis = Matrix::identity(x.dim(k - 1, p));
    h.to_map = [x, k, s](const Vector& v) { return map_from_disk(x, k, s, v); };
    return h;
}

PersComplexMap map_from_sphere(const PersComplex& x, std::size_t k, const Rational& s, std::optional<Rational> t,
                               const Vector& xs, const Vector& ut)
{
    PersComplex sk = sphere(x.grid(), x.max_degree(), k, s, t);
    std::vector<std::vector<Vector>> gen(x.max_degree() + 1, std::vector<Vector>(x.node_count()));
    if (k <= x.max_degree()) {
        auto top = pushes(x.module(k), EventGrid::at_node(x.grid().require_index(s)), xs);
        for (std::size_t j = 0; j < x.node_count(); ++j)
            gen[k][j] = top[j];
    }
    if (t) {
        auto low = pushes(x.module(k - 1), EventGrid::at_node(x.grid().require_index(*t)), ut);
        for (std::size_t j = 0; j < x.node_count(); ++j)
            gen[k - 1][j] = low[j];
    }
    return map_from_rank_one(sk, x, gen);
}

SphereHom hom_from_sphere(const PersComplex& x, std::size_t k, const Rational& s, std::optional<Rational> t)
{
    if (k == 0 || k > x.max_degree())
        throw UsageError("Hom out of a sphere needs 1 <= k <= N");
    std::size_t p = EventGrid::at_node(x.grid().require_index(s));
    Matrix z = exactla::kernel_basis(x.d(k, p));
    SphereHom h;
    if (!t) {
        h.x_part = z;
        h.u_part = Matrix(0, z.cols());
    } else {
        std::size_t q = EventGrid::at_node(x.grid().require_index(*t));
        auto pb = exactla::pullback_basis(x.module(k).composite(p, q) * z, x.d(k - 1, q));
        h.x_part = z * pb.first;
        h.u_part = pb.second;
    }
    h.to_map = [x, k, s, t](const Vector& xs, const Vector& ut) { return map_from_sphere(x, k, s, t, xs, ut); };
    return h;
}

} // namespace isphere
