#include "demos.hpp"

#include "fixtures.hpp"
#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"

#include <sstream>

namespace isphere::cli {

bool Transcript::ok() const
{
    for (const auto& c : claims)
        if (!c.ok)
            return false;
    return true;
}

io::Json Transcript::to_json() const
{
    io::Json cs = io::Json::array();
    for (const auto& c : claims)
        cs.push_back(io::Json{{"claim", c.statement}, {"ok", c.ok}, {"detail", c.detail}});
    return io::Json{{"demo", name}, {"ok", ok()}, {"claims", cs}};
}

std::string Transcript::to_text() const
{
    std::ostringstream out;
    out << "demo " << name << "\n";
    for (const auto& c : claims)
        out << "  [" << (c.ok ? "ok" : "FAILED") << "] " << c.statement << "\n";
    return out.str();
}

namespace {

bool acyclic(const PersComplex& x)
{
    for (std::size_t k = 0; k <= x.max_degree(); ++k)
        if (!cohomology(x, k).module.is_zero())
            return false;
    return true;
}

io::Json verdict_json(const model::Verdict& v, const EventGrid& g) { return io::to_json(v, g); }

} // namespace

Transcript demo_not_projective()
{
    Transcript t{"not-projective", {}};
    const PersComplexMap q = quotient_q();
    const EventGrid& g = q.source.grid();

    auto epi = model::is_pointwise_surjective(q);
    t.claims.push_back({"q : D^2_0 -> D^2_0/D^2_1 is surjective at every index", epi.holds, verdict_json(epi, g)});

    bool both = acyclic(q.source) && acyclic(q.target);
    t.claims.push_back({"source and target of q are acyclic at every index", both, io::Json{{"acyclic", both}}});

    auto weq = model::is_weak_equivalence(q);
    t.claims.push_back({"q is a pointwise quasi-isomorphism", weq.holds, verdict_json(weq, g)});

    auto fib = model::is_fibration(q);
    bool pinned = !fib.holds && fib.certificate && fib.certificate->check == "J0" && fib.certificate->degree == 1 &&
                  fib.certificate->vector == Vector{Rational(1), Rational(0)} && model::reverify(q, *fib.certificate);
    t.claims.push_back({"q is not a fibration: the gap map misses (y_s, x_t) = (1, 0) in degree 1 on the node pair 0+ -> 1",
                        pinned, verdict_json(fib, g)});

    const auto square = q_square();
    auto lift = model::solve_lifting(q, square);
    bool refuted = false;
    if (!lift.solved) {
        // lambda annihilates the constraint matrix [structure map s -> t; q at s] and not the data.
        const std::size_t s = EventGrid::at_node(g.require_index(square.s));
        const std::size_t tn = EventGrid::at_node(g.require_index(*square.t));
        const std::size_t k = square.degree - 1;
        Matrix a = vstack(q.source.module(k).composite(s, tn), q.at(k, s));
        if (lift.functional.size() == a.rows() && lift.rhs.size() == a.rows()) {
            Matrix lambda = Matrix::from_columns(a.rows(), {lift.functional}).transpose();
            Rational dot = 0;
            for (std::size_t i = 0; i < a.rows(); ++i)
                dot += lift.functional[i] * lift.rhs[i];
            refuted = (lambda * a).is_zero() && !is_zero(dot);
        }
    }
    io::Json detail{{"problem", io::to_json(square)}, {"result", io::to_json(lift)}};
    t.claims.push_back({"the square D^2_1 -> D^2_0 against q with bottom 1 has no lift: no lift can exist", refuted,
                        detail});
    return t;
}

Transcript demo_closed_interval()
{
    Transcript t{"closed-interval", {}};
    const PersComplex x = closed_interval_tensor();
    const std::size_t at1 = EventGrid::at_node(1), after1 = EventGrid::germ_node(1);

    bool shape = x.dim(1, at1) == 1 && x.dim(1, after1) == 0;
    t.claims.push_back({"I_[0,1] (x) S^1 is nonzero at 1 and zero just after 1", shape,
                        io::Json{{"dim_at_1", x.dim(1, at1)}, {"dim_after_1", x.dim(1, after1)}}});

    auto w = model::not_cofibrant_certificate(x);
    bool pinned = w && w->degree == 1 && w->value == Rational(1);
    io::Json detail = io::Json::object();
    if (w)
        detail = io::Json{{"degree", w->degree}, {"value", format_rational(w->value)}, {"vector", io::to_json(w->vector)}};
    t.claims.push_back({"it has a right-closed point: degree 1 at t = 1", pinned, detail});

    bool refused = false;
    io::Json witness;
    try {
        model::cofibrant_replacement(x);
    } catch (const HypothesisError& e) {
        refused = true;
        witness = io::Json{{"error", e.what()}, {"witness", io::Json::parse(e.witness())}};
    }
    t.claims.push_back({"it is not cofibrant: cofibrant replacement rejects it with a witness", refused, witness});
    return t;
}

Transcript demo_j_pushout_weq()
{
    Transcript t{"j-pushout-weq", {}};
    const EventGrid g = grid01();
    const PersComplex x = sphere(g, 3, 2, 0, Rational(1));
    CellAttachment c;
    c.kind = CellKind::Disk;
    c.degree = 2;
    c.interval = DecoratedInterval::half_open(0, 1);
    c.z_t = {Rational(1)};
    const std::vector<CellAttachment> cells{c};
    auto w = attach_cells(x, cells);

    auto po = verify_pushout(x, cells, w);
    t.claims.push_back({"W = S^2_[0,1) with D^2_1 -> D^2_0 attached is the pushout", po.ok,
                        io::Json{{"failure", po.failure}}});

    t.claims.push_back({"the inclusion S^2_[0,1) -> W is a monomorphism", w.inclusion.is_mono(), io::Json::object()});

    auto cofiber = quotient_complex(w.complex, w.inclusion).complex;
    bool acy = acyclic(cofiber);
    t.claims.push_back({"the cofiber is acyclic at every index", acy, io::Json{{"cofiber", io::to_json(cofiber)}}});

    bool same = true;
    io::Json bars = io::Json::array();
    for (std::size_t k = 0; k <= x.max_degree(); ++k) {
        auto a = cohomology(x, k).barcode, b = cohomology(w.complex, k).barcode;
        same = same && a == b;
        bars.push_back(io::Json{{"degree", k}, {"before", io::to_json(a)}, {"after", io::to_json(b)}});
    }
    t.claims.push_back({"cohomology barcodes agree before and after", same, bars});

    auto weq = model::is_weak_equivalence(w.inclusion);
    t.claims.push_back({"the inclusion is a weak equivalence", weq.holds, io::to_json(weq, g)});
    return t;
}

std::vector<std::string> demo_names() { return {"not-projective", "closed-interval", "j-pushout-weq"}; }

Transcript run_demo(const std::string& name)
{
    if (name == "not-projective")
        return demo_not_projective();
    if (name == "closed-interval")
        return demo_closed_interval();
    if (name == "j-pushout-weq")
        return demo_j_pushout_weq();
    throw UsageError("unknown demo '" + name + "'");
}

} // namespace isphere::cli
