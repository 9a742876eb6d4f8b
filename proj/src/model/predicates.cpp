#include "isphere/model.hpp"

#include "internal.hpp"

#include <algorithm>

namespace isphere::model {

using namespace detail;

namespace {

struct Task {
    std::string check;
    std::size_t degree;
    std::size_t p;
    std::size_t q;
};

std::vector<std::pair<std::size_t, std::size_t>> node_pairs(std::size_t n, bool all)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (!all) {
            out.emplace_back(p, p + 1);
            continue;
        }
        for (std::size_t q = p + 1; q < n; ++q)
            out.emplace_back(p, q);
    }
    return out;
}

/// Stacks the rows of a block matrix given as rows of blocks; every block in
/// a column must share its width.
Matrix stack_rows(const std::vector<std::vector<Matrix>>& rows)
{
    Matrix out;
    bool first = true;
    for (const auto& row : rows) {
        Matrix r = row.front();
        for (std::size_t i = 1; i < row.size(); ++i)
            r = hstack(r, row[i]);
        out = first ? r : vstack(out, r);
        first = false;
    }
    return out;
}

std::optional<Certificate> evaluate(const PersComplexMap& f, const Task& t)
{
    GapSystem gs = gap_system(f, t.check, t.degree, t.p, t.q);
    std::size_t r = exactla::rank(gs.gap);
    if (exactla::rank(hstack(gs.gap, gs.target)) == r)
        return std::nullopt;
    Certificate c{t.check, t.degree, t.p, t.q, {}, gs.components, {}};
    for (std::size_t i = 0; i < gs.target.cols(); ++i) {
        Vector v = gs.target.column(i);
        if (!exactla::in_column_span(gs.gap, v)) {
            c.vector = v;
            break;
        }
    }
    const EventGrid& g = f.source.grid();
    c.message = t.check + " fails in degree " + std::to_string(t.degree) + " at " + g.node_label(t.p);
    if (t.q != t.p)
        c.message += " -> " + g.node_label(t.q);
    return c;
}

Verdict run(const PersComplexMap& f, const std::vector<Task>& tasks, bool parallel)
{
    require_same_shape(f);
    Verdict v;
    auto fail = first_failure(tasks.size(), parallel, [&](std::size_t i) { return evaluate(f, tasks[i]); });
    if (fail) {
        v.holds = false;
        v.certificate = std::move(fail);
    }
    return v;
}

std::vector<Task> j0_tasks(const PersComplexMap& f, bool all)
{
    std::vector<Task> tasks;
    for (auto [p, q] : node_pairs(f.source.node_count(), all))
        for (std::size_t k = 0; k <= f.source.max_degree(); ++k)
            tasks.push_back({"J0", k, p, q});
    return tasks;
}

std::vector<Task> jinf_tasks(const PersComplexMap& f)
{
    std::vector<Task> tasks;
    for (std::size_t j = 0; j < f.source.node_count(); ++j)
        for (std::size_t k = 0; k <= f.source.max_degree(); ++k)
            tasks.push_back({"Jinf", k, j, j});
    return tasks;
}

std::vector<Task> weq_tasks(const PersComplexMap& f, std::optional<std::size_t> top = std::nullopt)
{
    std::vector<Task> tasks;
    const std::size_t last = top ? std::min(*top, f.source.max_degree()) : f.source.max_degree();
    for (std::size_t j = 0; j < f.source.node_count(); ++j)
        for (std::size_t k = 0; k <= last; ++k) {
            tasks.push_back({"weq-injective", k, j, j});
            tasks.push_back({"weq-surjective", k, j, j});
        }
    return tasks;
}

// Degree-0 part of the I-classes: no nonzero cocycle of X^0 maps to zero.
std::vector<Task> degree0_tasks(const PersComplexMap& f)
{
    std::vector<Task> tasks;
    for (std::size_t j = 0; j < f.source.node_count(); ++j)
        tasks.push_back({"I0-degree0", 0, j, j});
    return tasks;
}

std::vector<Task> i0_tasks(const PersComplexMap& f, bool all)
{
    std::vector<Task> tasks = degree0_tasks(f);
    for (auto [p, q] : node_pairs(f.source.node_count(), all))
        for (std::size_t K = 1; K <= f.source.max_degree() + 1; ++K)
            tasks.push_back({"I0", K, p, q});
    return tasks;
}

std::vector<Task> iinf_lifting_tasks(const PersComplexMap& f)
{
    std::vector<Task> tasks = degree0_tasks(f);
    for (std::size_t j = 0; j < f.source.node_count(); ++j)
        for (std::size_t K = 1; K <= f.source.max_degree() + 1; ++K)
            tasks.push_back({"Iinf", K, j, j});
    return tasks;
}

Verdict both(Verdict a, const std::function<Verdict()>& second)
{
    if (!a.holds)
        return a;
    Verdict b = second();
    b.notes.insert(b.notes.begin(), a.notes.begin(), a.notes.end());
    return b;
}

} // namespace

GapSystem gap_system(const PersComplexMap& f, const std::string& check, std::size_t degree, std::size_t p,
                     std::size_t q)
{
    const PersComplex& X = f.source;
    const PersComplex& Y = f.target;
    const long k = static_cast<long>(degree);
    GapSystem gs;
    if (check == "J0") {
        auto pb = exactla::pullback_basis(push(Y, k, p, q), fmat(f, k, q));
        gs.target = vstack(pb.first, pb.second);
        gs.gap = vstack(fmat(f, k, p), push(X, k, p, q));
        gs.components = {"y_s", "x_t"};
    } else if (check == "Jinf") {
        gs.target = Matrix::identity(dim(Y, k, p));
        gs.gap = fmat(f, k, p);
        gs.components = {"y"};
    } else if (check == "I0") {
        // (x, u', y) in X^K(p) + X^{K-1}(q) + Y^{K-1}(p) with
        // dx = 0, Mx = du', fx = dy, fu' = M_Y y.
        const std::size_t ax = dim(X, k, p), au = dim(X, k - 1, q), ay = dim(Y, k - 1, p);
        Matrix c = stack_rows({
            {dmat(X, k, p), Matrix(dim(X, k + 1, p), au), Matrix(dim(X, k + 1, p), ay)},
            {push(X, k, p, q), -dmat(X, k - 1, q), Matrix(dim(X, k, q), ay)},
            {fmat(f, k, p), Matrix(dim(Y, k, p), au), -dmat(Y, k - 1, p)},
            {Matrix(dim(Y, k - 1, q), ax), fmat(f, k - 1, q), -push(Y, k - 1, p, q)},
        });
        gs.target = exactla::kernel_basis(c);
        gs.gap = vstack(std::vector<Matrix>{dmat(X, k - 1, p), push(X, k - 1, p, q), fmat(f, k - 1, p)},
                        dim(X, k - 1, p));
        gs.components = {"x_s", "u_t", "y_s"};
    } else if (check == "I0-degree0") {
        gs.target = exactla::kernel_basis(vstack(dmat(X, 0, p), fmat(f, 0, p)));
        gs.gap = Matrix(dim(X, 0, p), 0);
        gs.components = {"x_s"};
    } else if (check == "Iinf") {
        const std::size_t ay = dim(Y, k - 1, p);
        Matrix c = stack_rows({
            {dmat(X, k, p), Matrix(dim(X, k + 1, p), ay)},
            {fmat(f, k, p), -dmat(Y, k - 1, p)},
        });
        gs.target = exactla::kernel_basis(c);
        gs.gap = vstack(dmat(X, k - 1, p), fmat(f, k - 1, p));
        gs.components = {"x_s", "y_s"};
    } else if (check == "weq-injective") {
        // {z in ZX : f z in BY} against BX.
        Matrix zx = exactla::kernel_basis(dmat(X, k, p));
        Matrix by = exactla::image_basis(dmat(Y, k - 1, p));
        auto pb = exactla::pullback_basis(fmat(f, k, p) * zx, by);
        gs.target = zx * pb.first;
        gs.gap = exactla::image_basis(dmat(X, k - 1, p));
        gs.components = {"z"};
    } else if (check == "epi") {
        gs.target = Matrix::identity(Y.dim(k, p));
        gs.gap = fmat(f, k, p);
        gs.components = {"y"};
    } else if (check == "weq-surjective") {
        Matrix zx = exactla::kernel_basis(dmat(X, k, p));
        gs.target = exactla::kernel_basis(dmat(Y, k, p));
        gs.gap = hstack(fmat(f, k, p) * zx, exactla::image_basis(dmat(Y, k - 1, p)));
        gs.components = {"z"};
    } else {
        throw UsageError("unknown check '" + check + "'");
    }
    return gs;
}

bool reverify(const PersComplexMap& f, const Certificate& c)
{
    GapSystem gs = gap_system(f, c.check, c.degree, c.p, c.q);
    if (c.vector.size() != gs.target.rows())
        return false;
    return exactla::in_column_span(gs.target, c.vector) && !exactla::in_column_span(gs.gap, c.vector);
}

Verdict is_weak_equivalence(const PersComplexMap& f, const CheckOptions& opt)
{
    Verdict v = run(f, weq_tasks(f, opt.top_degree), opt.parallel);
    if (opt.top_degree && *opt.top_degree < f.source.max_degree())
        v.notes.push_back("checked in degrees <= " + std::to_string(*opt.top_degree));
    else
        v.notes.push_back("degree " + std::to_string(f.source.max_degree()) +
                      " is the truncation degree: its cocycles ignore the absent differential");
    return v;
}

Verdict is_pointwise_surjective(const PersComplexMap& f, const CheckOptions& opt)
{
    std::vector<Task> tasks;
    for (std::size_t j = 0; j < f.source.node_count(); ++j)
        for (std::size_t k = 0; k <= f.source.max_degree(); ++k)
            tasks.push_back({"epi", k, j, j});
    return run(f, tasks, opt.parallel);
}

Verdict is_j0_injective(const PersComplexMap& f, const CheckOptions& opt)
{
    return run(f, j0_tasks(f, opt.all_pairs), opt.parallel);
}

Verdict is_j_infinity_injective(const PersComplexMap& f, const CheckOptions& opt)
{
    return run(f, jinf_tasks(f), opt.parallel);
}

Verdict is_fibration(const PersComplexMap& f, const CheckOptions& opt)
{
    return both(is_j_infinity_injective(f, opt), [&] { return is_j0_injective(f, opt); });
}

Verdict is_i0_injective(const PersComplexMap& f, const CheckOptions& opt)
{
    return run(f, i0_tasks(f, opt.all_pairs), opt.parallel);
}

Verdict is_i_infinity_injective(const PersComplexMap& f, const CheckOptions& opt)
{
    return both(is_j_infinity_injective(f, opt), [&] { return is_weak_equivalence(f, opt); });
}

Verdict is_i_infinity_injective_by_lifting(const PersComplexMap& f, const CheckOptions& opt)
{
    return run(f, iinf_lifting_tasks(f), opt.parallel);
}

Verdict is_trivial_fibration(const PersComplexMap& f, const CheckOptions& opt)
{
    return both(is_i_infinity_injective(f, opt), [&] { return is_i0_injective(f, opt); });
}

} // namespace isphere::model
