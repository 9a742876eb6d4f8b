#include "isphere/model.hpp"

#include "internal.hpp"

#include <random>

namespace isphere::model {

using namespace detail;

namespace {

struct Gen {
    std::size_t cell;
    bool boundary;
    std::size_t first;
    std::size_t last;
};

// Generators of degree q in the order attach_cells appends them.
std::vector<Gen> generators(const EventGrid& g, const std::vector<CellAttachment>& cells, std::size_t q)
{
    std::vector<Gen> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        auto [first, last] = cell_nodes(g, c);
        if (c.degree - 1 == q)
            out.push_back({i, false, first, last});
        else if (c.kind == CellKind::Disk && c.degree == q)
            out.push_back({i, true, first, last});
    }
    return out;
}

std::string vector_json(const Vector& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ",\"" : "\"") + format_rational(v[i]) + "\"";
    return s + "]";
}

void require_mono(const PersComplexMap& i)
{
    for (std::size_t k = 0; k <= i.source.max_degree(); ++k)
        for (std::size_t j = 0; j < i.source.node_count(); ++j) {
            Matrix ker = exactla::kernel_basis(i.at(k, j));
            if (ker.cols() == 0)
                continue;
            throw HypothesisError("map is not a monomorphism in degree " + std::to_string(k) + " at " +
                                      i.source.grid().node_label(j),
                                  "{\"kind\":\"kernel\",\"degree\":" + std::to_string(k) + ",\"node\":\"" +
                                      i.source.grid().node_label(j) + "\",\"vector\":" + vector_json(ker.column(0)) +
                                      "}");
        }
}

void require_tame(const PersComplex& x, const char* which)
{
    if (auto w = tameness_witness(x))
        throw HypothesisError(std::string(which) + " is not tame", *w);
}

/// Column of bar b in basis[node].
Vector bar_vector(const BarcodeResult& bc, std::size_t b, std::size_t node)
{
    std::size_t col = 0;
    for (std::size_t a = 0; a < b; ++a)
        if (bc.bars[a].first <= node && node <= bc.bars[a].last)
            ++col;
    return bc.basis[node].column(col);
}

struct Stage {
    std::vector<CellAttachment> cells;
    std::vector<Vector> images;
};

/// One sphere cell per bar of `quotient`; rep(b) gives y_s in Y^k(s), and
/// the attaching data is pulled back along g.
template <class Rep>
void cells_for_quotient(Stage& st, const PersComplexMap& g, std::size_t k, const BarcodeResult& bc, Rep&& rep,
                        bool attach_boundary)
{
    const PersComplex& W = g.source;
    const PersComplex& Y = g.target;
    const EventGrid& grid = W.grid();
    const std::size_t N = W.max_degree();
    const std::size_t n = grid.node_count();
    for (std::size_t b = 0; b < bc.bars.size(); ++b) {
        const BarRecord& bar = bc.bars[b];
        Vector y = rep(b);
        CellAttachment c;
        c.kind = CellKind::Sphere;
        c.degree = k + 1;
        c.interval = interval_from_nodes(grid, bar.first, bar.last);
        if (k + 1 <= N) {
            c.x_s = zero_vector(W.dim(k + 1, bar.first));
            if (attach_boundary) {
                auto x = exactla::solve_linear(g.at(k + 1, bar.first), Y.d(k, bar.first) * y);
                if (!x)
                    throw ValidationError("boundary of a stage-2 generator is not in the image");
                c.x_s = *x;
            }
        }
        if (bar.last + 1 < n) {
            std::size_t t = bar.last + 1;
            auto u = exactla::solve_linear(g.at(k, t), Y.module(k).composite(bar.first, t) * y);
            if (!u)
                throw ValidationError("dying generator does not land in the image");
            c.u_t = *u;
        }
        st.cells.push_back(std::move(c));
        st.images.push_back(std::move(y));
    }
}

// Stage 1: cocycles of Y modulo the image of the cocycles of X.
Stage cocycle_stage(const PersComplexMap& i)
{
    Stage st;
    const PersComplex& X = i.source;
    const PersComplex& Y = i.target;
    const std::size_t n = X.node_count();
    for (std::size_t k = 0; k <= X.max_degree(); ++k) {
        SubmoduleResult zy = cocycles(Y, k);
        std::vector<Matrix> sub;
        for (std::size_t j = 0; j < n; ++j) {
            Matrix img = i.at(k, j) * exactla::kernel_basis(X.d(k, j));
            auto coords = exactla::solve_matrix(zy.map.components[j], img);
            sub.push_back(exactla::image_basis(*coords));
        }
        SubmoduleResult q = quotient_module(zy.module, sub);
        BarcodeResult bc = barcode(q.module);
        cells_for_quotient(
            st, i, k, bc,
            [&](std::size_t b) {
                std::size_t s = bc.bars[b].first;
                Matrix section = exactla::right_inverse(q.map.components[s]);
                return zy.map.components[s] * (section * bar_vector(bc, b, s));
            },
            false);
    }
    return st;
}

// Stage 2: Y modulo the image of the first-stage complex.
Stage chain_stage(const PersComplexMap& g1)
{
    Stage st;
    const PersComplex& Y = g1.target;
    const std::size_t n = Y.node_count();
    for (std::size_t k = 0; k <= Y.max_degree(); ++k) {
        std::vector<Matrix> sub;
        for (std::size_t j = 0; j < n; ++j)
            sub.push_back(exactla::image_basis(g1.at(k, j)));
        SubmoduleResult q = quotient_module(Y.module(k), sub);
        BarcodeResult bc = barcode(q.module);
        cells_for_quotient(
            st, g1, k, bc,
            [&](std::size_t b) {
                std::size_t s = bc.bars[b].first;
                return exactla::right_inverse(q.map.components[s]) * bar_vector(bc, b, s);
            },
            true);
    }
    return st;
}

std::vector<std::string> degree0_notes(const FactorizationReport& r, const PersComplex& target)
{
    std::vector<std::string> notes;
    std::size_t count = 0;
    for (const auto& c : r.presentation.stages.front())
        if (c.degree == 1 && is_zero(c.x_s))
            ++count;
    if (count)
        notes.push_back("degree 0: " + std::to_string(count) +
                        " generator(s) attached as 1-cells along zero, standing in for a degree-0 sphere");
    CohomologyResult h0 = cohomology(target, 0);
    const auto& bars = h0.barcode.bars;
    bool connected = bars.size() == 1 && bars[0].multiplicity == 1 && bars[0].interval.is_infinite() &&
                     bars[0].interval.left == target.grid().value(0);
    if (!connected)
        notes.push_back("degree 0: target is not connected, H^0 barcode is " +
                        (bars.empty() ? std::string("empty") : h0.barcode.to_text()));
    return notes;
}

} // namespace

PersComplexMap extend_map_over_cells(const PersComplexMap& g, const AttachResult& attached,
                                     const std::vector<CellAttachment>& cells, const std::vector<Vector>& images)
{
    require_same_shape(g);
    const PersComplex& W = g.source;
    const PersComplex& Y = g.target;
    const EventGrid& grid = W.grid();
    const std::size_t N = W.max_degree();
    const std::size_t n = grid.node_count();
    if (images.size() != cells.size())
        throw UsageError("one image per cell is required");
    // Pushes of each cell image along its interval.
    std::vector<std::vector<Vector>> pushed(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        auto [first, last] = cell_nodes(grid, cells[c]);
        const std::size_t q = cells[c].degree - 1;
        if (images[c].size() != Y.dim(q, first))
            throw UsageError("image of cell " + std::to_string(c) + " has the wrong size");
        pushed[c].assign(n, Vector{});
        pushed[c][first] = images[c];
        for (std::size_t j = first; j < last; ++j)
            pushed[c][j + 1] = Y.step(q, j) * pushed[c][j];
    }
    PersComplexMap out{attached.complex, Y, {}};
    for (std::size_t q = 0; q <= N; ++q) {
        auto gens = generators(grid, cells, q);
        out.f.emplace_back();
        for (std::size_t j = 0; j < n; ++j) {
            Matrix m = g.at(q, j);
            for (const auto& gen : gens) {
                if (j < gen.first || j > gen.last)
                    continue;
                Vector v = pushed[gen.cell][j];
                if (gen.boundary)
                    v = Y.d(q - 1, j) * v;
                m = hstack(m, Matrix::column_matrix(v));
            }
            if (m.cols() != attached.complex.dim(q, j))
                throw UsageError("attach result does not match the cells");
            out.f[q].push_back(std::move(m));
        }
    }
    out.validate();
    return out;
}

bool FactorizationReport::ok() const
{
    if (!iso_verified || !composite_verified)
        return false;
    for (const auto& c : stage_checks)
        if (!c.ok)
            return false;
    return true;
}

FactorizationReport factor_mono_as_cellular(const PersComplexMap& i)
{
    require_same_shape(i);
    i.validate();
    require_mono(i);
    require_tame(i.source, "source");
    require_tame(i.target, "target");

    Stage s1 = cocycle_stage(i);
    AttachResult w1 = attach_cells(i.source, s1.cells, 1);
    PersComplexMap g1 = extend_map_over_cells(i, w1, s1.cells, s1.images);
    Stage s2 = chain_stage(g1);
    AttachResult w2 = attach_cells(w1.complex, s2.cells, 2);
    PersComplexMap g2 = extend_map_over_cells(g1, w2, s2.cells, s2.images);

    FactorizationReport r;
    r.presentation = {i.source, {s1.cells, s2.cells}};
    r.replayed = replay(r.presentation);
    r.stage_checks = {verify_pushout(i.source, s1.cells, w1), verify_pushout(w1.complex, s2.cells, w2)};
    if (r.replayed.complex != w2.complex)
        throw ValidationError("replay disagrees with the constructed presentation");
    r.iso = g2;
    r.iso_verified = g2.is_iso();
    r.composite_verified = compose(g2, r.replayed.inclusion) == i;
    r.notes = degree0_notes(r, i.target);
    return r;
}

FactorizationReport cofibrant_replacement(const PersComplex& x)
{
    PersComplex zero = PersComplex::zero(x.grid(), x.max_degree());
    return factor_mono_as_cellular(PersComplexMap::zero(zero, x));
}

std::optional<NotCofibrantWitness> not_cofibrant_certificate(const PersComplex& x)
{
    for (std::size_t k = 1; k <= x.max_degree(); ++k) {
        auto pts = right_closed_points(x.module(k));
        if (pts.empty())
            continue;
        const auto& p = pts.front();
        return NotCofibrantWitness{k, p.value_index, p.value, p.kernel.column(0)};
    }
    return std::nullopt;
}

std::optional<std::string> tameness_witness(const PersComplex& x)
{
    const EventGrid& g = x.grid();
    for (std::size_t k = 0; k <= x.max_degree(); ++k) {
        const PersModule& m = x.module(k);
        if (is_tame(m))
            continue;
        std::string head = "{\"degree\":" + std::to_string(k) + ",";
        auto pts = right_closed_points(m);
        if (!pts.empty())
            return head + "\"kind\":\"right-closed\",\"value\":\"" + format_rational(pts[0].value) +
                   "\",\"vector\":" + vector_json(pts[0].kernel.column(0)) + "}";
        for (std::size_t i = 0; i < g.value_count(); ++i) {
            std::size_t at = EventGrid::at_node(i);
            if (exactla::rank(m.step(at)) < m.dim(at + 1))
                return head + "\"kind\":\"left-open\",\"value\":\"" + format_rational(g.value(i)) + "\"}";
        }
        return head + "\"kind\":\"other\"}";
    }
    return std::nullopt;
}

namespace {

// g(b) = L Z + c for a basis vector b of some W^q(j).
struct Affine {
    Matrix lin;
    Vector c;
};

using AffineMap = std::vector<std::vector<std::vector<Affine>>>;  // [q][j][basis index]

Affine apply(const std::vector<Affine>& cols, const Vector& v, std::size_t ydim, std::size_t nz)
{
    Affine out{Matrix(ydim, nz), zero_vector(ydim)};
    for (std::size_t b = 0; b < v.size(); ++b) {
        if (is_zero(v[b]))
            continue;
        out.lin = out.lin + cols[b].lin.scaled(v[b]);
        out.c = out.c + v[b] * cols[b].c;
    }
    return out;
}

} // namespace

PresentationCheck verify_cell_presentation(const CellPresentation& p, const PersComplex& claimed,
                                           const std::optional<PersComplexMap>& base_map, std::uint64_t seed)
{
    PresentationCheck out;
    const EventGrid& grid = claimed.grid();
    const std::size_t N = claimed.max_degree();
    const std::size_t n = grid.node_count();
    if (p.base.grid() != grid || p.base.max_degree() != N)
        throw UsageError("presentation and claimed complex must share grid and maximal degree");
    PersComplexMap base;
    if (base_map) {
        if (base_map->source != p.base || base_map->target != claimed)
            throw UsageError("base map must go from the presentation base to the claimed complex");
        base_map->validate();
        base = *base_map;
    } else {
        if (!p.base.is_zero())
            throw UsageError("a base map is required when the base is not zero");
        base = PersComplexMap::zero(p.base, claimed);
    }
    ReplayResult r = replay(p);

    // Unknowns: the image of every cell generator, stage by stage.
    std::vector<std::vector<std::size_t>> offset(p.stages.size());
    std::size_t nz = 0;
    for (std::size_t s = 0; s < p.stages.size(); ++s)
        for (const auto& c : p.stages[s]) {
            offset[s].push_back(nz);
            nz += claimed.dim(c.degree - 1, cell_nodes(grid, c).first);
        }
    auto select = [&](std::size_t s, std::size_t c, std::size_t q, std::size_t node) {
        Matrix m(claimed.dim(q, node), nz);
        m.set_block(0, offset[s][c], Matrix::identity(claimed.dim(q, node)));
        return m;
    };

    AffineMap g(N + 1, std::vector<std::vector<Affine>>(n));
    for (std::size_t q = 0; q <= N; ++q)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t b = 0; b < p.base.dim(q, j); ++b)
                g[q][j].push_back({Matrix(claimed.dim(q, j), nz), base.at(q, j).column(b)});

    Matrix A(0, nz);
    Vector rhs;
    auto constrain = [&](const Affine& lhs) {  // lhs.lin Z + lhs.c = 0
        A = vstack(A, lhs.lin);
        rhs = concat(rhs, Rational(-1) * lhs.c);
    };
    const PersComplex* w = &p.base;
    for (std::size_t s = 0; s < p.stages.size(); ++s) {
        const auto& cells = p.stages[s];
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto& cell = cells[c];
            const std::size_t K = cell.degree;
            auto [first, last] = cell_nodes(grid, cell);
            Matrix z = select(s, c, K - 1, first);
            if (cell.kind == CellKind::Sphere && K <= N) {
                Affine gx = apply(g[K][first], cell.x_s, claimed.dim(K, first), nz);
                constrain({claimed.d(K - 1, first) * z - gx.lin, Rational(-1) * gx.c});
            }
            if (last + 1 < n) {
                const std::size_t t = last + 1;
                const Vector& at_t = cell.kind == CellKind::Sphere ? cell.u_t : cell.z_t;
                Affine gu = apply(g[K - 1][t], at_t, claimed.dim(K - 1, t), nz);
                constrain({claimed.module(K - 1).composite(first, t) * z - gu.lin, Rational(-1) * gu.c});
            }
        }
        for (std::size_t q = 0; q <= N; ++q)
            for (const auto& gen : generators(grid, cells, q))
                for (std::size_t j = gen.first; j <= gen.last; ++j) {
                    Matrix lin = claimed.module(q - (gen.boundary ? 1 : 0)).composite(gen.first, j) *
                                 select(s, gen.cell, q - (gen.boundary ? 1 : 0), gen.first);
                    if (gen.boundary)
                        lin = claimed.d(q - 1, j) * lin;
                    g[q][j].push_back({lin, zero_vector(claimed.dim(q, j))});
                }
        w = &r.stages[s].complex;
    }
    for (std::size_t q = 0; q <= N; ++q)
        for (std::size_t j = 0; j < n; ++j)
            if (g[q][j].size() != w->dim(q, j))
                throw ValidationError("generator bookkeeping disagrees with the replayed complex");

    auto particular = exactla::solve_linear(A, rhs);
    if (!particular) {
        out.message = "no map out of the presentation restricts to the base map";
        return out;
    }
    Matrix ker = exactla::kernel_basis(A);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    const int attempts = ker.cols() == 0 ? 1 : 8;
    for (int a = 0; a < attempts; ++a) {
        Vector z = *particular;
        for (std::size_t c = 0; c < ker.cols(); ++c)
            z = z + Rational(coef(rng)) * ker.column(c);
        PersComplexMap m{r.complex, claimed, {}};
        for (std::size_t q = 0; q <= N; ++q) {
            m.f.emplace_back();
            for (std::size_t j = 0; j < n; ++j) {
                Matrix col(claimed.dim(q, j), g[q][j].size());
                for (std::size_t b = 0; b < g[q][j].size(); ++b)
                    col.set_column(b, g[q][j][b].lin * z + g[q][j][b].c);
                m.f[q].push_back(std::move(col));
            }
        }
        m.validate();
        if (m.is_iso()) {
            out.holds = true;
            out.iso = m;
            out.message = "isomorphism found";
            return out;
        }
    }
    out.message = ker.cols() == 0 ? "the unique map under the base is not an isomorphism"
                                  : "no sampled map under the base is an isomorphism";
    return out;
}

} // namespace isphere::model
