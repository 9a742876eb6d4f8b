#include "isphere/model.hpp"

#include "internal.hpp"

namespace isphere::model {

using namespace detail;

std::string to_string(Generator g)
{
    switch (g) {
    case Generator::I0: return "I0";
    case Generator::Iinf: return "Iinf";
    case Generator::J0: return "J0";
    case Generator::Jinf: return "Jinf";
    }
    return "?";
}

Generator parse_generator(const std::string& s)
{
    if (s == "I0")
        return Generator::I0;
    if (s == "Iinf")
        return Generator::Iinf;
    if (s == "J0")
        return Generator::J0;
    if (s == "Jinf")
        return Generator::Jinf;
    throw UsageError("unknown generating cofibration '" + s + "' (expected I0, Iinf, J0 or Jinf)");
}

namespace {

struct Nodes {
    std::size_t s;
    std::size_t t;  // equal to s when there is no t
};

Nodes check_shape(const PersComplexMap& f, const LiftingProblem& pr)
{
    require_same_shape(f);
    const EventGrid& g = f.source.grid();
    const std::size_t N = f.source.max_degree();
    const bool sphere_kind = pr.kind == Generator::I0 || pr.kind == Generator::Iinf;
    const bool needs_t = pr.kind == Generator::I0 || pr.kind == Generator::J0;
    if (pr.degree > N + 1)
        throw UsageError("lifting degree exceeds N+1");
    if (!sphere_kind && pr.degree == 0)
        throw UsageError("disk generators need degree >= 1");
    if (needs_t != pr.t.has_value())
        throw UsageError(to_string(pr.kind) + (needs_t ? " needs a finite t" : " takes no t"));
    Nodes n{EventGrid::at_node(g.require_index(pr.s)), 0};
    n.t = n.s;
    if (pr.t) {
        if (*pr.t <= pr.s)
            throw UsageError("lifting problem needs s < t");
        n.t = EventGrid::at_node(g.require_index(*pr.t));
    }
    const long K = static_cast<long>(pr.degree);
    const PersComplex& X = f.source;
    auto expect = [](const Vector& v, std::size_t n, const char* what) {
        if (v.size() != n)
            throw UsageError(std::string(what) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                             std::to_string(n));
    };
    expect(pr.bottom, dim(f.target, K - 1, n.s), "bottom");
    switch (pr.kind) {
    case Generator::I0:
        expect(pr.top_x, dim(X, K, n.s), "top x_s");
        expect(pr.top_u, dim(X, K - 1, n.t), "top u_t");
        break;
    case Generator::Iinf:
        expect(pr.top_x, dim(X, K, n.s), "top x_s");
        expect(pr.top_u, 0, "top u_t");
        break;
    case Generator::J0:
        expect(pr.top_x, dim(X, K - 1, n.t), "top x_t");
        expect(pr.top_u, 0, "top u_t");
        break;
    case Generator::Jinf:
        expect(pr.top_x, 0, "top");
        expect(pr.top_u, 0, "top u_t");
        break;
    }
    return n;
}

void check_commutes(const PersComplexMap& f, const LiftingProblem& pr, const Nodes& n)
{
    const PersComplex& X = f.source;
    const PersComplex& Y = f.target;
    const long K = static_cast<long>(pr.degree);
    auto require = [](bool ok, const std::string& what) {
        if (!ok)
            throw UsageError("square does not commute: " + what);
    };
    const Vector& y = pr.bottom;
    if (pr.kind == Generator::I0 || pr.kind == Generator::Iinf) {
        require(is_zero(dmat(X, K, n.s) * pr.top_x), "x_s is not a cocycle");
        require(fmat(f, K, n.s) * pr.top_x == dmat(Y, K - 1, n.s) * y, "f x_s != d y_s");
    }
    // In degree 0 the sphere is the ray from s: there is no u_t to constrain.
    if (pr.kind == Generator::I0 && K >= 1) {
        require(dmat(X, K - 1, n.t) * pr.top_u == push(X, K, n.s, n.t) * pr.top_x, "d u_t != x_t");
        require(fmat(f, K - 1, n.t) * pr.top_u == push(Y, K - 1, n.s, n.t) * y, "f u_t != y_t");
    }
    if (pr.kind == Generator::J0)
        require(fmat(f, K - 1, n.t) * pr.top_x == push(Y, K - 1, n.s, n.t) * y, "f x_t != y_t");
}

} // namespace

LiftResult solve_lifting(const PersComplexMap& f, const LiftingProblem& pr)
{
    Nodes n = check_shape(f, pr);
    check_commutes(f, pr, n);
    const PersComplex& X = f.source;
    const long K = static_cast<long>(pr.degree);
    const std::size_t cols = dim(X, K - 1, n.s);
    std::vector<Matrix> blocks;
    Vector b;
    LiftResult r;
    switch (pr.kind) {
    case Generator::I0:
        blocks = {dmat(X, K - 1, n.s), push(X, K - 1, n.s, n.t), fmat(f, K - 1, n.s)};
        b = concat(concat(pr.top_x, pr.top_u), pr.bottom);
        r.components = {"x_s", "u_t", "y_s"};
        break;
    case Generator::Iinf:
        blocks = {dmat(X, K - 1, n.s), fmat(f, K - 1, n.s)};
        b = concat(pr.top_x, pr.bottom);
        r.components = {"x_s", "y_s"};
        break;
    case Generator::J0:
        blocks = {push(X, K - 1, n.s, n.t), fmat(f, K - 1, n.s)};
        b = concat(pr.top_x, pr.bottom);
        r.components = {"x_t", "y_s"};
        break;
    case Generator::Jinf:
        blocks = {fmat(f, K - 1, n.s)};
        b = pr.bottom;
        r.components = {"y_s"};
        break;
    }
    Matrix a = vstack(blocks, cols);
    r.rhs = b;
    if (auto v = exactla::solve_linear(a, b)) {
        r.solved = true;
        r.lift = *v;
        return r;
    }
    Matrix ann = exactla::left_annihilator(a);
    for (std::size_t i = 0; i < ann.rows(); ++i) {
        Vector l = ann.row(i);
        Rational dot = 0;
        for (std::size_t j = 0; j < l.size(); ++j)
            dot += l[j] * b[j];
        if (!is_zero(dot)) {
            r.functional = l;
            break;
        }
    }
    if (pr.kind == Generator::J0)
        r.pair = concat(pr.bottom, pr.top_x);
    return r;
}

PersComplexMap generator_map(const EventGrid& grid, std::size_t N, const LiftingProblem& pr)
{
    const std::size_t K = pr.degree;
    PersComplex target = disk(grid, N, K, pr.s);
    Vector one{Rational(1)};
    switch (pr.kind) {
    case Generator::I0:
    case Generator::Iinf:
        if (K == 0)
            throw UsageError("the degree-0 sphere has no disk to map into");
        return map_from_sphere(target, K, pr.s, pr.t, K <= N ? one : Vector{}, pr.t ? one : Vector{});
    case Generator::J0:
        return map_from_disk(target, K, *pr.t, one);
    case Generator::Jinf:
        break;
    }
    return PersComplexMap::zero(PersComplex::zero(grid, N), target);
}

bool check_lift(const PersComplexMap& f, const LiftingProblem& pr, const Vector& lift)
{
    Nodes n = check_shape(f, pr);
    check_commutes(f, pr, n);
    const PersComplex& X = f.source;
    if (lift.size() != dim(X, static_cast<long>(pr.degree) - 1, n.s))
        return false;
    if (pr.degree == 0)
        return is_zero(pr.top_x);  // D^0 = 0, so the top map must vanish
    const std::size_t N = X.max_degree();
    PersComplexMap L = map_from_disk(X, pr.degree, pr.s, lift);
    PersComplexMap iota = generator_map(X.grid(), N, pr);
    PersComplexMap top;
    switch (pr.kind) {
    case Generator::I0:
    case Generator::Iinf:
        top = map_from_sphere(X, pr.degree, pr.s, pr.t, pr.top_x, pr.top_u);
        break;
    case Generator::J0:
        top = map_from_disk(X, pr.degree, *pr.t, pr.top_x);
        break;
    case Generator::Jinf:
        top = PersComplexMap::zero(iota.source, X);
        break;
    }
    PersComplexMap bottom = map_from_disk(f.target, pr.degree, pr.s, pr.bottom);
    return compose(L, iota) == top && compose(f, L) == bottom;
}

} // namespace isphere::model
