#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/persmod.hpp"

namespace isphere {

PersModule::PersModule(EventGrid grid, std::vector<std::size_t> dims, std::vector<Matrix> steps)
    : grid_(std::move(grid)), dims_(std::move(dims)), steps_(std::move(steps))
{
    validate();
}

PersModule PersModule::zero(const EventGrid& grid)
{
    std::size_t n = grid.node_count();
    return PersModule(grid, std::vector<std::size_t>(n, 0),
                      std::vector<Matrix>(n == 0 ? 0 : n - 1, Matrix()));
}

std::size_t PersModule::total_dim() const
{
    std::size_t s = 0;
    for (auto d : dims_)
        s += d;
    return s;
}

bool PersModule::is_zero() const { return total_dim() == 0; }

Matrix PersModule::composite(std::size_t p, std::size_t q) const
{
    if (p > q || q >= node_count())
        throw UsageError("composite: need p <= q < node count");
    Matrix m = Matrix::identity(dims_[p]);
    for (std::size_t j = p; j < q; ++j)
        m = steps_[j] * m;
    return m;
}

void PersModule::validate() const
{
    if (dims_.size() != grid_.node_count())
        throw ValidationError("module has " + std::to_string(dims_.size()) + " node dimensions, grid has " +
                              std::to_string(grid_.node_count()) + " nodes");
    std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
    if (steps_.size() != expected)
        throw ValidationError("module has " + std::to_string(steps_.size()) + " steps, expected " +
                              std::to_string(expected));
    for (std::size_t j = 0; j < steps_.size(); ++j)
        if (steps_[j].rows() != dims_[j + 1] || steps_[j].cols() != dims_[j])
            throw ValidationError("step " + grid_.node_label(j) + " -> " + grid_.node_label(j + 1) +
                                  " has shape " + std::to_string(steps_[j].rows()) + "x" +
                                  std::to_string(steps_[j].cols()));
}

bool PersModule::operator==(const PersModule& o) const
{
    return grid_ == o.grid_ && dims_ == o.dims_ && steps_ == o.steps_;
}

PersModuleMap PersModuleMap::identity(const PersModule& m)
{
    PersModuleMap f{m, m, {}};
    for (auto d : m.dims())
        f.components.push_back(Matrix::identity(d));
    return f;
}

PersModuleMap PersModuleMap::zero(const PersModule& s, const PersModule& t)
{
    if (s.grid() != t.grid())
        throw UsageError("zero map between modules on different grids");
    PersModuleMap f{s, t, {}};
    for (std::size_t j = 0; j < s.node_count(); ++j)
        f.components.push_back(Matrix(t.dim(j), s.dim(j)));
    return f;
}

void PersModuleMap::validate() const
{
    if (source.grid() != target.grid())
        throw ValidationError("map between modules on different grids");
    if (components.size() != source.node_count())
        throw ValidationError("map has the wrong number of components");
    for (std::size_t j = 0; j < components.size(); ++j)
        if (components[j].rows() != target.dim(j) || components[j].cols() != source.dim(j))
            throw ValidationError("map component at " + source.grid().node_label(j) + " has the wrong shape");
    for (std::size_t j = 0; j + 1 < components.size(); ++j)
        if (components[j + 1] * source.step(j) != target.step(j) * components[j])
            throw ValidationError("map does not commute with the step " + source.grid().node_label(j) + " -> " +
                                  source.grid().node_label(j + 1));
}

bool PersModuleMap::is_mono() const
{
    for (std::size_t j = 0; j < components.size(); ++j)
        if (exactla::rank(components[j]) != source.dim(j))
            return false;
    return true;
}

bool PersModuleMap::is_epi() const
{
    for (std::size_t j = 0; j < components.size(); ++j)
        if (exactla::rank(components[j]) != target.dim(j))
            return false;
    return true;
}

bool PersModuleMap::is_iso() const { return is_mono() && is_epi(); }

PersModuleMap compose(const PersModuleMap& g, const PersModuleMap& f)
{
    if (f.target != g.source)
        throw UsageError("compose: target of the first map differs from source of the second");
    PersModuleMap h{f.source, g.target, {}};
    for (std::size_t j = 0; j < f.components.size(); ++j)
        h.components.push_back(g.components[j] * f.components[j]);
    return h;
}

PersModule make_interval_module(const EventGrid& grid, const DecoratedInterval& interval)
{
    std::size_t first = interval.first_node(grid);
    std::size_t last = interval.last_node(grid);
    if (first > last)
        throw UsageError("interval " + interval.to_string() + " is empty on this grid");
    std::size_t n = grid.node_count();
    std::vector<std::size_t> dims(n, 0);
    for (std::size_t j = first; j <= last; ++j)
        dims[j] = 1;
    std::vector<Matrix> steps;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        Matrix s(dims[j + 1], dims[j]);
        if (dims[j] == 1 && dims[j + 1] == 1)
            s(0, 0) = 1;
        steps.push_back(std::move(s));
    }
    return PersModule(grid, std::move(dims), std::move(steps));
}

PersModule direct_sum(const std::vector<PersModule>& ms, const EventGrid& grid)
{
    for (const auto& m : ms)
        if (m.grid() != grid)
            throw UsageError("direct_sum: modules live on different grids");
    std::size_t n = grid.node_count();
    std::vector<std::size_t> dims(n, 0);
    for (const auto& m : ms)
        for (std::size_t j = 0; j < n; ++j)
            dims[j] += m.dim(j);
    std::vector<Matrix> steps;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        std::vector<Matrix> blocks;
        for (const auto& m : ms)
            blocks.push_back(m.step(j));
        steps.push_back(block_diagonal(blocks));
    }
    return PersModule(grid, std::move(dims), std::move(steps));
}

PersModule direct_sum(const std::vector<PersModule>& ms)
{
    if (ms.empty())
        return PersModule::zero(EventGrid());
    return direct_sum(ms, ms.front().grid());
}

PersModuleMap direct_sum(const std::vector<PersModuleMap>& fs)
{
    if (fs.empty())
        throw UsageError("direct_sum of an empty list of maps needs a grid");
    std::vector<PersModule> src, tgt;
    for (const auto& f : fs) {
        src.push_back(f.source);
        tgt.push_back(f.target);
    }
    PersModuleMap h{direct_sum(src), direct_sum(tgt), {}};
    for (std::size_t j = 0; j < h.source.node_count(); ++j) {
        std::vector<Matrix> blocks;
        for (const auto& f : fs)
            blocks.push_back(f.components[j]);
        h.components.push_back(block_diagonal(blocks));
    }
    return h;
}

std::vector<std::optional<std::size_t>> refinement_origin(const EventGrid& g, const EventGrid& finer)
{
    for (const auto& v : g.values())
        if (!finer.index_of(v))
            throw UsageError("refine: target grid does not contain " + format_rational(v));
    std::vector<std::optional<std::size_t>> origin(finer.node_count());
    for (std::size_t i = 0; i < finer.value_count(); ++i) {
        auto o = g.node_containing(finer.value(i));
        origin[EventGrid::at_node(i)] = o;
        if (o)
            o = EventGrid::germ_node(EventGrid::value_index(*o));
        origin[EventGrid::germ_node(i)] = o;
    }
    return origin;
}

PersModule refine(const PersModule& m, const EventGrid& finer)
{
    const auto origin = refinement_origin(m.grid(), finer);
    std::size_t n = finer.node_count();
    std::vector<std::size_t> dims(n);
    for (std::size_t j = 0; j < n; ++j)
        dims[j] = origin[j] ? m.dim(*origin[j]) : 0;
    std::vector<Matrix> steps;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (!origin[j] || !origin[j + 1])
            steps.push_back(Matrix(dims[j + 1], dims[j]));
        else
            steps.push_back(m.composite(*origin[j], *origin[j + 1]));
    }
    return PersModule(finer, std::move(dims), std::move(steps));
}

std::size_t rank_invariant(const PersModule& m, std::size_t p, std::size_t q)
{
    if (p > q)
        throw UsageError("rank_invariant: p must not come after q");
    return exactla::rank(m.composite(p, q));
}

SubmoduleResult submodule(const PersModule& m, const std::vector<Matrix>& bases)
{
    std::size_t n = m.node_count();
    if (bases.size() != n)
        throw UsageError("submodule: need one basis per node");
    std::vector<std::size_t> dims(n);
    for (std::size_t j = 0; j < n; ++j)
        dims[j] = bases[j].cols();
    std::vector<Matrix> steps;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        auto s = exactla::solve_matrix(bases[j + 1], m.step(j) * bases[j]);
        if (!s)
            throw ValidationError("submodule: subspace at " + m.grid().node_label(j) +
                                  " is not carried into the subspace at the next node");
        steps.push_back(std::move(*s));
    }
    PersModule sub(m.grid(), std::move(dims), std::move(steps));
    PersModuleMap inc{sub, m, bases};
    return {std::move(sub), std::move(inc)};
}

SubmoduleResult quotient_module(const PersModule& m, const std::vector<Matrix>& bases)
{
    std::size_t n = m.node_count();
    if (bases.size() != n)
        throw UsageError("quotient_module: need one basis per node");
    std::vector<Matrix> q(n), r(n);
    std::vector<std::size_t> dims(n);
    for (std::size_t j = 0; j < n; ++j) {
        Matrix b = bases[j].cols() == 0 ? Matrix(m.dim(j), 0) : bases[j];
        q[j] = exactla::left_annihilator(b);
        r[j] = exactla::right_inverse(q[j]);
        dims[j] = q[j].rows();
    }
    std::vector<Matrix> steps;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (!(q[j + 1] * m.step(j) * bases[j]).is_zero())
            throw ValidationError("quotient_module: subspace at " + m.grid().node_label(j) +
                                  " is not carried into the subspace at the next node");
        steps.push_back(q[j + 1] * m.step(j) * r[j]);
    }
    PersModule quo(m.grid(), std::move(dims), std::move(steps));
    PersModuleMap proj{m, quo, std::move(q)};
    return {std::move(quo), std::move(proj)};
}

SubmoduleResult kernel_module(const PersModuleMap& f)
{
    std::vector<Matrix> bases;
    for (const auto& c : f.components)
        bases.push_back(exactla::kernel_basis(c));
    return submodule(f.source, bases);
}

SubmoduleResult image_module(const PersModuleMap& f)
{
    std::vector<Matrix> bases;
    for (std::size_t j = 0; j < f.components.size(); ++j) {
        Matrix b = exactla::image_basis(f.components[j]);
        bases.push_back(b.cols() == 0 ? Matrix(f.target.dim(j), 0) : b);
    }
    return submodule(f.target, bases);
}

SubmoduleResult cokernel_module(const PersModuleMap& f)
{
    std::vector<Matrix> bases;
    for (std::size_t j = 0; j < f.components.size(); ++j) {
        Matrix b = exactla::image_basis(f.components[j]);
        bases.push_back(b.cols() == 0 ? Matrix(f.target.dim(j), 0) : b);
    }
    return quotient_module(f.target, bases);
}

bool is_tame(const PersModule& m)
{
    for (std::size_t i = 0; i < m.grid().value_count(); ++i) {
        std::size_t a = EventGrid::at_node(i);
        if (m.dim(a) != m.dim(a + 1) || exactla::rank(m.step(a)) != m.dim(a))
            return false;
    }
    return true;
}

std::vector<RightClosedPoint> right_closed_points(const PersModule& m)
{
    std::vector<RightClosedPoint> out;
    for (std::size_t i = 0; i < m.grid().value_count(); ++i) {
        Matrix k = exactla::kernel_basis(m.step(EventGrid::at_node(i)));
        if (k.cols() > 0)
            out.push_back({i, m.grid().value(i), std::move(k)});
    }
    return out;
}

LocalCompactness is_locally_compact(const PersModule& m)
{
    auto pts = right_closed_points(m);
    if (pts.empty())
        return {true, std::nullopt};
    return {false, pts.front()};
}

} // namespace isphere
