#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/pcx.hpp"

namespace isphere {

namespace {

struct NewGenerator {
    std::size_t cell;
    bool boundary;  // the "de" generator of a disk cell
    std::size_t first;
    std::size_t last;
};

Vector push(const PersModule& m, std::size_t p, std::size_t q, const Vector& v) { return m.composite(p, q) * v; }

std::string describe(const CellAttachment& c, std::size_t index)
{
    return std::string(c.kind == CellKind::Sphere ? "sphere" : "disk") + " cell " + std::to_string(index) +
           " (degree " + std::to_string(c.degree) + ", " + c.interval.to_string() + ")";
}

} // namespace

std::pair<std::size_t, std::size_t> cell_nodes(const EventGrid& g, const CellAttachment& c)
{
    if (!c.interval.is_half_open())
        throw UsageError("cells are attached along half-open intervals, got " + c.interval.to_string());
    std::size_t first = c.interval.first_node(g);
    std::size_t last = c.interval.last_node(g);
    if (last < first)
        throw UsageError("empty cell interval " + c.interval.to_string());
    return {first, last};
}

void validate_cell(const PersComplex& x, const CellAttachment& c)
{
    const std::size_t N = x.max_degree();
    const EventGrid& g = x.grid();
    if (c.degree == 0 || c.degree > N + 1)
        throw UsageError("cell degree must lie in 1..N+1");
    auto [first, last] = cell_nodes(g, c);
    const std::size_t K = c.degree;
    const bool finite = c.interval.right.has_value();
    const std::size_t t_node = last + 1;
    if (c.kind == CellKind::Sphere) {
        std::size_t xdim = K <= N ? x.dim(K, first) : 0;
        if (c.x_s.size() != xdim)
            throw UsageError("x_s has " + std::to_string(c.x_s.size()) + " coordinates, expected " +
                             std::to_string(xdim));
        if (K <= N && !is_zero(x.d(K, first) * c.x_s))
            throw ValidationError("attaching element x_s is not a cocycle");
        if (finite) {
            if (c.u_t.size() != x.dim(K - 1, t_node))
                throw UsageError("u_t has " + std::to_string(c.u_t.size()) + " coordinates, expected " +
                                 std::to_string(x.dim(K - 1, t_node)));
            Vector xt = K <= N ? push(x.module(K), first, t_node, c.x_s) : Vector{};
            if (x.d(K - 1, t_node) * c.u_t != xt)
                throw ValidationError("d u_t differs from the pushforward of x_s");
        } else if (!c.u_t.empty()) {
            throw UsageError("u_t must be empty for an infinite cell");
        }
    } else {
        std::size_t zdim = finite ? x.dim(K - 1, t_node) : 0;
        if (c.z_t.size() != zdim)
            throw UsageError("z_t has " + std::to_string(c.z_t.size()) + " coordinates, expected " +
                             std::to_string(zdim));
    }
}

AttachResult attach_cells(const PersComplex& x, const std::vector<CellAttachment>& cells, std::size_t stage)
{
    const std::size_t N = x.max_degree();
    const EventGrid& g = x.grid();
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        try {
            validate_cell(x, cells[i]);
        } catch (const UsageError& e) {
            throw UsageError(describe(cells[i], i) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(describe(cells[i], i) + ": " + e.what());
        }
    }

    std::vector<std::vector<NewGenerator>> gens(N + 1);
    AttachResult res;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        auto [first, last] = cell_nodes(g, c);
        gens[c.degree - 1].push_back({i, false, first, last});
        if (c.kind == CellKind::Disk && c.degree <= N)
            gens[c.degree].push_back({i, true, first, last});
        res.names.push_back("c" + std::to_string(stage) + "." + std::to_string(i));
    }

    // slot[q][j][g] = coordinate of generator g of degree q at node j, or -1.
    std::vector<std::vector<std::vector<long>>> slot(N + 1, std::vector<std::vector<long>>(n));
    std::vector<std::vector<std::size_t>> dims(N + 1, std::vector<std::size_t>(n));
    for (std::size_t q = 0; q <= N; ++q)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t d = x.dim(q, j);
            for (const auto& gen : gens[q])
                slot[q][j].push_back(gen.first <= j && j <= gen.last ? static_cast<long>(d++) : -1);
            dims[q][j] = d;
        }

    // Image in old coordinates at node At(t) of a generator leaving its interval.
    auto exit_image = [&](const NewGenerator& gen) -> Vector {
        const auto& c = cells[gen.cell];
        std::size_t t_node = gen.last + 1;
        if (c.kind == CellKind::Sphere)
            return c.u_t;
        if (!gen.boundary)
            return c.z_t;
        return x.d(c.degree - 1, t_node) * c.z_t;
    };

    std::vector<PersModule> ms;
    for (std::size_t q = 0; q <= N; ++q) {
        std::vector<Matrix> steps;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            Matrix s(dims[q][j + 1], dims[q][j]);
            s.set_block(0, 0, x.step(q, j));
            for (std::size_t a = 0; a < gens[q].size(); ++a) {
                long from = slot[q][j][a];
                if (from < 0)
                    continue;
                long to = slot[q][j + 1][a];
                if (to >= 0) {
                    s(static_cast<std::size_t>(to), static_cast<std::size_t>(from)) = 1;
                } else {
                    Vector img = exit_image(gens[q][a]);
                    for (std::size_t r = 0; r < img.size(); ++r)
                        s(r, static_cast<std::size_t>(from)) = img[r];
                }
            }
            steps.push_back(std::move(s));
        }
        ms.emplace_back(g, dims[q], std::move(steps));
    }

    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t q = 0; q < N; ++q)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix m(dims[q + 1][j], dims[q][j]);
            m.set_block(0, 0, x.d(q, j));
            for (std::size_t a = 0; a < gens[q].size(); ++a) {
                long col = slot[q][j][a];
                if (col < 0)
                    continue;
                const auto& gen = gens[q][a];
                const auto& c = cells[gen.cell];
                if (c.kind == CellKind::Sphere) {
                    Vector img = push(x.module(q + 1), gen.first, j, c.x_s);
                    for (std::size_t r = 0; r < img.size(); ++r)
                        m(r, static_cast<std::size_t>(col)) = img[r];
                } else if (!gen.boundary) {
                    for (std::size_t b = 0; b < gens[q + 1].size(); ++b)
                        if (gens[q + 1][b].cell == gen.cell && gens[q + 1][b].boundary)
                            m(static_cast<std::size_t>(slot[q + 1][j][b]), static_cast<std::size_t>(col)) = 1;
                }
            }
            d[q].push_back(std::move(m));
        }

    res.complex = PersComplex(N, std::move(ms), std::move(d));
    res.inclusion.source = x;
    res.inclusion.target = res.complex;
    for (std::size_t q = 0; q <= N; ++q) {
        res.inclusion.f.emplace_back();
        for (std::size_t j = 0; j < n; ++j)
            res.inclusion.f[q].push_back(
                vstack(Matrix::identity(x.dim(q, j)), Matrix(dims[q][j] - x.dim(q, j), x.dim(q, j))));
    }
    res.inclusion.validate();
    return res;
}

namespace {

struct CellPieces {
    PersComplex sources;
    PersComplex disks;
    PersComplexMap attaching;
    PersComplexMap inclusion;
};

PersComplexMap disk_to_disk(const PersComplex& from, const PersComplex& to)
{
    // Both have rank <= 1 in every degree and node; the map is 1 wherever both are.
    PersComplexMap m{from, to, {}};
    for (std::size_t q = 0; q <= from.max_degree(); ++q) {
        m.f.emplace_back();
        for (std::size_t j = 0; j < from.node_count(); ++j) {
            Matrix c(to.dim(q, j), from.dim(q, j));
            if (c.rows() == 1 && c.cols() == 1)
                c(0, 0) = 1;
            m.f[q].push_back(std::move(c));
        }
    }
    m.validate();
    return m;
}

CellPieces cell_pieces(const PersComplex& x, const std::vector<CellAttachment>& cells)
{
    const EventGrid& g = x.grid();
    const std::size_t N = x.max_degree();
    std::vector<PersComplex> src{PersComplex::zero(g, N)}, dsk{PersComplex::zero(g, N)};
    std::vector<PersComplexMap> att{PersComplexMap::zero(src[0], x)}, inc{PersComplexMap::identity(src[0])};
    for (const auto& c : cells) {
        validate_cell(x, c);
        const Rational& s = c.interval.left;
        PersComplex target = disk(g, N, c.degree, s);
        PersComplex source;
        PersComplexMap a;
        if (c.kind == CellKind::Sphere) {
            source = sphere(g, N, c.degree, s, c.interval.right);
            a = map_from_sphere(x, c.degree, s, c.interval.right, c.x_s, c.u_t);
        } else if (c.interval.right) {
            source = disk(g, N, c.degree, *c.interval.right);
            a = map_from_disk(x, c.degree, *c.interval.right, c.z_t);
        } else {
            source = PersComplex::zero(g, N);
            a = PersComplexMap::zero(source, x);
        }
        inc.push_back(disk_to_disk(source, target));
        src.push_back(source);
        dsk.push_back(target);
        att.push_back(a);
    }
    // att maps each summand to x; fold them into one map out of the sum.
    PersComplex S = direct_sum(src);
    PersComplexMap fold{S, x, {}};
    for (std::size_t q = 0; q <= N; ++q) {
        fold.f.emplace_back();
        for (std::size_t j = 0; j < g.node_count(); ++j) {
            Matrix m(x.dim(q, j), 0);
            for (const auto& a : att)
                m = hstack(m, a.f[q][j]);
            fold.f[q].push_back(std::move(m));
        }
    }
    fold.validate();
    return {S, direct_sum(dsk), fold, direct_sum(inc)};
}

// (attaching, -inclusion): S -> X (+) D.
PersComplexMap relation_map(const PersComplex& x, const CellPieces& p)
{
    PersComplexMap r{p.sources, direct_sum({x, p.disks}), {}};
    for (std::size_t q = 0; q <= x.max_degree(); ++q) {
        r.f.emplace_back();
        for (std::size_t j = 0; j < x.node_count(); ++j)
            r.f[q].push_back(vstack(p.attaching.f[q][j], -p.inclusion.f[q][j]));
    }
    r.validate();
    return r;
}

} // namespace

QuotientPushout pushout_by_quotient(const PersComplex& x, const std::vector<CellAttachment>& cells)
{
    CellPieces p = cell_pieces(x, cells);
    PersComplexMap rel = relation_map(x, p);
    auto ck = cokernel_complex(rel);
    return {p.sources, p.disks, p.attaching, p.inclusion, ck.complex, ck.map};
}

PersComplexMap canonical_pushout_map(const PersComplex& x, const std::vector<CellAttachment>& cells,
                                     const AttachResult& r)
{
    const EventGrid& g = x.grid();
    const std::size_t N = x.max_degree();
    const std::size_t n = g.node_count();
    const PersComplex& W = r.complex;
    std::vector<PersComplex> parts{x};
    for (const auto& c : cells)
        parts.push_back(disk(g, N, c.degree, c.interval.left));
    PersComplexMap psi{direct_sum(parts), W, {}};
    // Column blocks: x first, then each disk.
    for (std::size_t q = 0; q <= N; ++q) {
        psi.f.emplace_back();
        for (std::size_t j = 0; j < n; ++j)
            psi.f[q].push_back(hstack(r.inclusion.f[q][j], Matrix(W.dim(q, j), 0)));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const std::size_t K = c.degree;
        std::size_t first = cell_nodes(g, c).first;
        std::size_t offset = x.dim(K - 1, first);
        // Earlier cells whose degree-(K-1) generator is alive at `first` come before ours.
        for (std::size_t e = 0; e < i; ++e) {
            const auto& o = cells[e];
            auto [f2, l2] = cell_nodes(g, o);
            if (f2 <= first && first <= l2) {
                if (o.degree == K)
                    ++offset;
                else if (o.kind == CellKind::Disk && o.degree + 1 == K)
                    ++offset;
            }
        }
        std::vector<Vector> a(n);
        for (std::size_t j = 0; j < n; ++j)
            a[j] = zero_vector(W.dim(K - 1, j));
        a[first] = unit_vector(W.dim(K - 1, first), offset);
        for (std::size_t j = first; j + 1 < n; ++j)
            a[j + 1] = W.step(K - 1, j) * a[j];
        PersComplex dk = disk(g, N, K, c.interval.left);
        for (std::size_t q = 0; q <= N; ++q)
            for (std::size_t j = 0; j < n; ++j) {
                Matrix col(W.dim(q, j), dk.dim(q, j));
                if (dk.dim(q, j) == 1) {
                    if (q == K - 1)
                        col.set_column(0, a[j]);
                    else
                        col.set_column(0, W.d(K - 1, j) * a[j]);
                }
                psi.f[q][j] = hstack(psi.f[q][j], col);
            }
    }
    return psi;
}

PushoutCheck verify_pushout(const PersComplex& x, const std::vector<CellAttachment>& cells, const AttachResult& r)
{
    PushoutCheck out;
    try {
        PersComplexMap psi = canonical_pushout_map(x, cells, r);
        psi.validate();
        CellPieces p = cell_pieces(x, cells);
        PersComplexMap rel = relation_map(x, p);
        if (rel.target != psi.source) {
            out.ok = false;
            out.failure = "relation map and canonical map disagree on X (+) D";
            return out;
        }
        PersComplexMap zero = compose(psi, rel);
        for (std::size_t q = 0; q <= x.max_degree(); ++q)
            for (std::size_t j = 0; j < x.node_count(); ++j) {
                std::string where = " in degree " + std::to_string(q) + " at " + x.grid().node_label(j);
                if (!zero.f[q][j].is_zero()) {
                    out.ok = false;
                    out.failure = "canonical map does not kill the relations" + where;
                    return out;
                }
                if (exactla::rank(psi.f[q][j]) != r.complex.dim(q, j)) {
                    out.ok = false;
                    out.failure = "canonical map is not onto" + where;
                    return out;
                }
                std::size_t expected = psi.source.dim(q, j) - exactla::rank(rel.f[q][j]);
                if (r.complex.dim(q, j) != expected) {
                    out.ok = false;
                    out.failure = "dimension count fails" + where;
                    return out;
                }
            }
    } catch (const std::exception& e) {
        out.ok = false;
        out.failure = e.what();
    }
    return out;
}

ReplayResult replay(const CellPresentation& p)
{
    ReplayResult r{p.base, PersComplexMap::identity(p.base), {}};
    for (std::size_t s = 0; s < p.stages.size(); ++s) {
        AttachResult a = attach_cells(r.complex, p.stages[s], s + 1);
        r.inclusion = compose(a.inclusion, r.inclusion);
        r.complex = a.complex;
        r.stages.push_back(std::move(a));
    }
    return r;
}

} // namespace isphere
