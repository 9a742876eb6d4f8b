#pragma once

// Persistent commutative differential graded algebras over Q, truncated at
// degree N, with Hirsch extensions and persistent minimal models.
//
// Every algebra is held nodewise (basis per degree, multiplication table,
// differential, algebra maps along the steps). Free algebras additionally
// keep their generators: each lives on a half-open support [s,t) and, when t
// is finite, is sent at t to a polynomial in the generators alive there.

#include "isphere/model.hpp"
#include "isphere/pcx.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace isphere::pcdga {

/// Exponents by generator index, trailing zeros trimmed.
using Exponents = std::vector<unsigned>;

/// Graded-commutative polynomial in the generators of a presentation.
struct Polynomial {
    std::map<Exponents, Rational> terms;  // no zero coefficients

    static Polynomial constant(const Rational& c);
    static Polynomial generator(std::size_t index);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const Polynomial& o) const { return terms == o.terms; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    /// Largest generator index used, plus one.
    std::size_t span() const;
};

Exponents trim(Exponents e);
std::size_t monomial_degree(const Exponents& e, const std::vector<std::size_t>& degrees);
/// Signed product with a.b = (-1)^{|a||b|} b.a; zero when an odd generator is squared.
Polynomial multiply(const Polynomial& a, const Polynomial& b, const std::vector<std::size_t>& degrees);
/// Terms of degree above `max_degree` removed.
Polynomial truncate(const Polynomial& p, const std::vector<std::size_t>& degrees, std::size_t max_degree);
/// Algebra map sending generator i to images[i].
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images,
                      const std::vector<std::size_t>& degrees);
/// Leibniz extension of generator differentials dgen[i].
Polynomial differential(const Polynomial& p, const std::vector<Polynomial>& dgen,
                        const std::vector<std::size_t>& degrees);
/// Homogeneous degree; nullopt for zero; throws UsageError for mixed degrees.
std::optional<std::size_t> homogeneous_degree(const Polynomial& p, const std::vector<std::size_t>& degrees);

/// `coef*gen^pow*...` terms joined by + or -.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names,
                            const std::vector<std::size_t>& degrees);
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names);
std::string format_monomial(const Exponents& e, const std::vector<std::string>& names);

struct FreeGenerator {
    std::string name;
    std::size_t degree = 1;
    DecoratedInterval support;  // half-open
    Polynomial d;               // in generators alive at the birth node, all of smaller index
    Polynomial at_death;        // in generators alive at t; zero for infinite support
    bool operator==(const FreeGenerator& o) const;
};

struct FreePresentation {
    std::vector<FreeGenerator> generators;
    std::vector<std::size_t> degrees() const;
    std::vector<std::string> names() const;
    std::optional<std::size_t> index_of(const std::string& name) const;
    bool operator==(const FreePresentation& o) const { return generators == o.generators; }
};

/// Explicit tables. Basis vector 0 of degree 0 is the unit at every node.
struct NodewiseCDGA {
    EventGrid grid;
    std::size_t max_degree = 0;
    std::vector<std::vector<std::size_t>> dims;  // [node][degree]
    /// mult[node][p][q] for p + q <= N: dims[p+q] x (dims[p] * dims[q]), column a * dims[q] + b.
    std::vector<std::vector<std::vector<Matrix>>> mult;
    std::vector<std::vector<Matrix>> d;      // [node][q] for q < N
    std::vector<std::vector<Matrix>> steps;  // [node][q], node j -> j+1
    std::vector<std::vector<std::vector<std::string>>> labels;  // optional basis names
};

class PersCDGA {
public:
    PersCDGA() = default;
    /// Validates and evaluates the presentation. Throws ValidationError
    /// naming the failing generator.
    static PersCDGA free(const EventGrid& grid, std::size_t max_degree, FreePresentation p);
    /// Validates the tables.
    static PersCDGA nodewise(NodewiseCDGA tables);
    /// The constant algebra Q.
    static PersCDGA rationals(const EventGrid& grid, std::size_t max_degree);

    const EventGrid& grid() const { return t_.grid; }
    std::size_t max_degree() const { return t_.max_degree; }
    std::size_t node_count() const { return t_.grid.node_count(); }
    std::size_t dim(std::size_t node, std::size_t degree) const { return t_.dims.at(node).at(degree); }
    const NodewiseCDGA& tables() const { return t_; }
    bool is_free() const { return free_.has_value(); }
    const FreePresentation& presentation() const;
    /// Monomial basis of degree q at a node (free algebras only).
    const std::vector<Exponents>& monomials(std::size_t node, std::size_t degree) const;
    /// Differential of generator g pushed to node j (free algebras only).
    const Polynomial& generator_differential(std::size_t g, std::size_t node) const;

    /// Product of basis-coordinate vectors; empty when p + q > N.
    Vector multiply(std::size_t node, std::size_t p, const Vector& a, std::size_t q, const Vector& b) const;
    Vector unit(std::size_t node) const;
    /// Coordinates of a polynomial at a node (free algebras only), truncated at N.
    Vector coordinates(const Polynomial& p, std::size_t node, std::size_t degree) const;
    /// Polynomial with the given coordinates (free algebras only).
    Polynomial polynomial(const Vector& v, std::size_t node, std::size_t degree) const;
    Vector push(std::size_t degree, std::size_t from, std::size_t to, const Vector& v) const;

    /// Underlying persistent cochain complex.
    PersComplex underlying() const;
    void validate() const;
    bool operator==(const PersCDGA& o) const;

private:
    NodewiseCDGA t_;
    std::optional<FreePresentation> free_;
    std::vector<std::vector<std::vector<Exponents>>> monomials_;  // [node][degree]
    std::vector<std::vector<Polynomial>> dgen_;                   // [generator][node]
};

struct PersCDGAMap {
    PersCDGA source;
    PersCDGA target;
    std::vector<std::vector<Matrix>> f;  // [degree][node]

    static PersCDGAMap identity(const PersCDGA& a);
    /// Unit map Q -> a.
    static PersCDGAMap unit(const PersCDGA& a);
    /// Chain map, steps, products and unit. Throws ValidationError.
    void validate() const;
    PersComplexMap underlying() const;
};

/// Algebra map out of a free algebra, given the image of each generator at
/// its birth node (coordinates in the target).
PersCDGAMap map_from_generators(const PersCDGA& source, const PersCDGA& target, const std::vector<Vector>& images);
PersCDGAMap compose(const PersCDGAMap& g, const PersCDGAMap& f);

/// Same as PersCDGA::free.
PersCDGA free_pcdga(const EventGrid& grid, std::size_t max_degree, const FreePresentation& p);

/// H^k for k <= N-1.
CohomologyResult cohomology_pcdga(const PersCDGA& a, std::size_t k);
/// H^k iso for every node and k <= N-1.
model::Verdict is_weak_equivalence_cdga(const PersCDGAMap& f, std::size_t top_degree);
model::Verdict is_weak_equivalence_cdga(const PersCDGAMap& f);

struct HirschCell {
    CellKind kind = CellKind::Sphere;
    DecoratedInterval interval;  // half-open [s,t) or [s,inf)
    Polynomial cocycle;          // sphere: x_s in A^K(s)
    Polynomial bound;            // sphere: u_t with d u_t = x_t; disk: z_t; zero when t is infinite
    std::string name;            // new generator; a disk cell also adds "d<name>"
};

/// Cells of one degree K: new generators in degree K-1 (and K for disks).
struct HirschExtensionRecord {
    std::size_t degree = 2;
    std::vector<HirschCell> cells;
};

struct HirschResult {
    PersCDGA algebra;
    PersCDGAMap inclusion;
};

/// Pushout of Lambda S -> Lambda D (or Lambda D_t -> Lambda D_s) along the
/// attaching data. Throws ValidationError for invalid attachments.
HirschResult hirsch_extension(const PersCDGA& a, const HirschExtensionRecord& rec);

/// Cone of the underlying map shifted up by one: D^i = M^i (+) A^{i-1},
/// d(x, y) = (-dx, m(x) + dy), so H^k of the cone is H^{k+1}(D).
PersComplex mapping_cone_complex(const PersCDGAMap& m);
/// H^k of the mapping cone, k <= N-2.
CohomologyResult mapping_cone_cohomology(const PersCDGAMap& m, std::size_t k);

struct MinimalModel {
    PersCDGA model;
    PersCDGAMap map;  // model -> a
    std::vector<HirschExtensionRecord> skeleton;
    model::Verdict minimal;
    model::Verdict quasi_isomorphism;  // degrees <= N-2
    std::vector<std::string> notes;
};

/// Requires a simply connected input: H^0 = Q and H^1 = 0 at every node.
/// Throws HypothesisError naming the failing degree and node.
MinimalModel minimal_model(const PersCDGA& a);
/// True iff no generator differential has a linear term.
model::Verdict verify_minimality(const PersCDGA& m);
/// Rebuilds the algebra from Q by applying the records in order.
PersCDGA replay_skeleton(const EventGrid& grid, std::size_t max_degree, const std::vector<HirschExtensionRecord>& s);

} // namespace isphere::pcdga
