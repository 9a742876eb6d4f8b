#pragma once

// Decision procedures and constructions for the interval-sphere model
// structure on tame persistent complexes.
//
// Gap maps. For a node pair p < q and a degree, each injectivity class is
// "a certain linear map into a fibre product is onto". Checking adjacent
// pairs is enough: a square over p < r < q factors as a square over (r, q)
// followed by one over (p, r), and lifts of the two compose. The all-pairs
// variant is kept for cross-checking.

#include "isphere/pcx.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isphere::model {

struct Certificate {
    /// "J0", "Jinf", "I0", "I0-degree0", "Iinf", "weq-injective", "weq-surjective", "epi".
    std::string check;
    std::size_t degree = 0;
    std::size_t p = 0;  // node
    std::size_t q = 0;  // second node for pair checks, equal to p otherwise
    Vector vector;      // element of the target outside the image
    std::vector<std::string> components;  // names of the stacked blocks of `vector`
    std::string message;
};

struct Verdict {
    bool holds = true;
    std::optional<Certificate> certificate;
    std::vector<std::string> notes;
};

struct CheckOptions {
    bool all_pairs = false;
    bool parallel = true;
    /// Weak equivalence only: highest degree checked (default N).
    std::optional<std::size_t> top_degree;
};

Verdict is_weak_equivalence(const PersComplexMap& f, const CheckOptions& opt = {});
Verdict is_pointwise_surjective(const PersComplexMap& f, const CheckOptions& opt = {});
Verdict is_j0_injective(const PersComplexMap& f, const CheckOptions& opt = {});
Verdict is_j_infinity_injective(const PersComplexMap& f, const CheckOptions& opt = {});
Verdict is_fibration(const PersComplexMap& f, const CheckOptions& opt = {});
Verdict is_i0_injective(const PersComplexMap& f, const CheckOptions& opt = {});
Verdict is_i_infinity_injective(const PersComplexMap& f, const CheckOptions& opt = {});
/// Direct per-node lifting check against S^K_[s,inf) -> D^K_s; test oracle for the above.
Verdict is_i_infinity_injective_by_lifting(const PersComplexMap& f, const CheckOptions& opt = {});
Verdict is_trivial_fibration(const PersComplexMap& f, const CheckOptions& opt = {});

/// Recomputes the named target and image and confirms the vector lies in
/// the first and not in the second.
bool reverify(const PersComplexMap& f, const Certificate& c);

/// Target space and gap map of one check, both in the stacked ambient coordinates.
struct GapSystem {
    Matrix target;  // columns: basis of the fibre product
    Matrix gap;     // columns: images of a basis of the source
    std::vector<std::string> components;
};
GapSystem gap_system(const PersComplexMap& f, const std::string& check, std::size_t degree, std::size_t p,
                     std::size_t q);

enum class Generator { I0, Iinf, J0, Jinf };
std::string to_string(Generator g);
Generator parse_generator(const std::string& s);

/// A square from a generating cofibration into f. K is the disk degree.
///   I0:   S^K_[s,t) -> D^K_s, top (x_s, u_t), bottom y_s
///   Iinf: S^K_[s,inf) -> D^K_s, top x_s, bottom y_s
///   J0:   D^K_t -> D^K_s, top x_t, bottom y_s
///   Jinf: 0 -> D^K_s, bottom y_s
struct LiftingProblem {
    Generator kind = Generator::I0;
    std::size_t degree = 1;
    Rational s;
    std::optional<Rational> t;
    Vector top_x;
    Vector top_u;
    Vector bottom;
};

struct LiftResult {
    bool solved = false;
    Vector lift;        // v in X^{K-1}(s)
    Vector functional;  // lambda with lambda A = 0, lambda b != 0
    Vector rhs;         // b
    std::vector<std::string> components;
    /// J0 only: the pair (y_s, x_t) that no lift can realise.
    Vector pair;
};

/// Throws UsageError when the square does not commute or data is malformed.
LiftResult solve_lifting(const PersComplexMap& f, const LiftingProblem& problem);
/// Checks both triangles of a returned lift with explicit maps.
bool check_lift(const PersComplexMap& f, const LiftingProblem& problem, const Vector& lift);
/// The generating cofibration of a problem as a map of complexes.
PersComplexMap generator_map(const EventGrid& grid, std::size_t max_degree, const LiftingProblem& problem);

/// Map attach_cells(W, cells) -> Y extending g: W -> Y, sending the new
/// generator of cell c to images[c] in Y^{K-1}(s). Throws ValidationError
/// when the images are incompatible with the attaching data.
PersComplexMap extend_map_over_cells(const PersComplexMap& g, const AttachResult& attached,
                                     const std::vector<CellAttachment>& cells, const std::vector<Vector>& images);

struct FactorizationReport {
    CellPresentation presentation;
    ReplayResult replayed;
    PersComplexMap iso;  // replayed.complex -> target
    bool iso_verified = false;
    bool composite_verified = false;
    std::vector<PushoutCheck> stage_checks;
    std::vector<std::string> notes;
    bool ok() const;
};

/// Two-stage cellular presentation of a monomorphism between tame complexes.
/// Throws HypothesisError (with a JSON witness) for non-mono or non-tame input.
FactorizationReport factor_mono_as_cellular(const PersComplexMap& i);
FactorizationReport cofibrant_replacement(const PersComplex& x);

struct NotCofibrantWitness {
    std::size_t degree = 0;
    std::size_t value_index = 0;
    Rational value;
    Vector vector;
};
/// A right-closed point in some degree >= 1 (absence proves nothing).
std::optional<NotCofibrantWitness> not_cofibrant_certificate(const PersComplex& x);

struct PresentationCheck {
    bool holds = false;
    std::optional<PersComplexMap> iso;  // replay -> claimed, restricting to the base map
    std::string message;
};

/// Replays p and looks for an isomorphism onto `claimed` under the base map
/// (zero map when the base is zero). Generator images are solved jointly
/// and a seeded random solution is tested.
PresentationCheck verify_cell_presentation(const CellPresentation& p, const PersComplex& claimed,
                                           const std::optional<PersComplexMap>& base_map = std::nullopt,
                                           std::uint64_t seed = 1);

/// First non-tame degree of x with a witness, as JSON text.
std::optional<std::string> tameness_witness(const PersComplex& x);

} // namespace isphere::model
