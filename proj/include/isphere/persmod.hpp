#pragma once

// Persistence modules over a finite event grid.
//
// A grid t_0 < ... < t_n has 2(n+1) nodes. Node 2i is At(t_i), node 2i+1 is
// Germ(t_i), the open stretch (t_i, t_{i+1}) (or (t_n, inf) for the last
// one). A module assigns a space to every node and a matrix to every step
// node j -> node j+1.

#include "isphere/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isphere {

class EventGrid {
public:
    EventGrid() = default;
    explicit EventGrid(std::vector<Rational> values);

    std::size_t value_count() const noexcept { return values_.size(); }
    std::size_t node_count() const noexcept { return 2 * values_.size(); }
    const std::vector<Rational>& values() const noexcept { return values_; }
    const Rational& value(std::size_t i) const { return values_.at(i); }
    std::optional<std::size_t> index_of(const Rational& v) const;
    std::size_t require_index(const Rational& v) const;

    static std::size_t at_node(std::size_t i) { return 2 * i; }
    static std::size_t germ_node(std::size_t i) { return 2 * i + 1; }
    static bool is_germ(std::size_t node) { return node % 2 == 1; }
    static std::size_t value_index(std::size_t node) { return node / 2; }

    /// Node whose stretch contains r; nullopt for r < t_0.
    std::optional<std::size_t> node_containing(const Rational& r) const;

    /// "1" for At(1), "1+" for Germ(1).
    std::string node_label(std::size_t node) const;
    std::size_t parse_node(const std::string& label) const;

    bool operator==(const EventGrid& other) const { return values_ == other.values_; }
    bool operator!=(const EventGrid& other) const { return !(*this == other); }

private:
    std::vector<Rational> values_;
};

EventGrid merge_grids(const EventGrid& a, const std::vector<Rational>& extra);

enum class LeftDec { ClosedAt, OpenAfter };
enum class RightDec { OpenBefore, ClosedThrough };

struct DecoratedInterval {
    Rational left;
    LeftDec left_dec = LeftDec::ClosedAt;
    std::optional<Rational> right;  // nullopt is infinity
    RightDec right_dec = RightDec::OpenBefore;

    static DecoratedInterval half_open(const Rational& s, std::optional<Rational> t = std::nullopt);
    static DecoratedInterval closed(const Rational& s, const Rational& t);
    static DecoratedInterval open(const Rational& s, std::optional<Rational> t);

    bool is_half_open() const { return left_dec == LeftDec::ClosedAt && right_dec == RightDec::OpenBefore; }
    bool is_infinite() const { return !right.has_value(); }

    std::size_t first_node(const EventGrid& g) const;
    /// Inclusive last node.
    std::size_t last_node(const EventGrid& g) const;

    std::string to_string() const;
    bool operator==(const DecoratedInterval& o) const;
    bool operator!=(const DecoratedInterval& o) const { return !(*this == o); }
};

DecoratedInterval interval_from_nodes(const EventGrid& g, std::size_t first, std::size_t last);

struct Bar {
    DecoratedInterval interval;
    std::size_t multiplicity = 1;
};

struct DecoratedBarcode {
    std::vector<Bar> bars;

    std::size_t bar_count() const;
    /// One line per bar, "[0,1) x2".
    std::string to_text() const;
    bool operator==(const DecoratedBarcode& o) const;
};

class PersModule {
public:
    PersModule() = default;
    PersModule(EventGrid grid, std::vector<std::size_t> dims, std::vector<Matrix> steps);

    static PersModule zero(const EventGrid& grid);

    const EventGrid& grid() const noexcept { return grid_; }
    std::size_t node_count() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t node) const { return dims_.at(node); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const Matrix& step(std::size_t j) const { return steps_.at(j); }
    const std::vector<Matrix>& steps() const noexcept { return steps_; }
    std::size_t total_dim() const;
    bool is_zero() const;

    /// Composite structure map node p -> node q (p <= q).
    Matrix composite(std::size_t p, std::size_t q) const;

    void validate() const;
    bool operator==(const PersModule& o) const;
    bool operator!=(const PersModule& o) const { return !(*this == o); }

private:
    EventGrid grid_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> steps_;
};

struct PersModuleMap {
    PersModule source;
    PersModule target;
    std::vector<Matrix> components;

    static PersModuleMap identity(const PersModule& m);
    static PersModuleMap zero(const PersModule& s, const PersModule& t);

    /// Throws ValidationError naming the first non-commuting step.
    void validate() const;
    bool is_mono() const;
    bool is_epi() const;
    bool is_iso() const;
};

PersModuleMap compose(const PersModuleMap& g, const PersModuleMap& f);

PersModule make_interval_module(const EventGrid& grid, const DecoratedInterval& interval);
PersModule direct_sum(const std::vector<PersModule>& ms, const EventGrid& grid);
PersModule direct_sum(const std::vector<PersModule>& ms);
PersModuleMap direct_sum(const std::vector<PersModuleMap>& fs);

/// Pulls m back along a refinement of its grid, constant on the old stretches.
PersModule refine(const PersModule& m, const EventGrid& finer);
/// Old node whose stretch contains each node of `finer`; nullopt before t_0.
std::vector<std::optional<std::size_t>> refinement_origin(const EventGrid& coarse, const EventGrid& finer);

struct BarRecord {
    std::size_t first = 0;
    std::size_t last = 0;  // inclusive
};

struct BarcodeResult {
    DecoratedBarcode barcode;
    /// One record per bar (multiplicity expanded), sorted by (first, last).
    std::vector<BarRecord> bars;
    /// basis[j] has one column per bar alive at node j, in `bars` order.
    /// Conjugating the module by these yields the interval normal form.
    std::vector<Matrix> basis;
};

BarcodeResult barcode(const PersModule& m);
DecoratedBarcode barcode_of_records(const EventGrid& g, const std::vector<BarRecord>& bars);

/// Matrices of the direct sum of the listed intervals in `bars` order.
std::vector<Matrix> normal_form_steps(const std::vector<BarRecord>& bars, std::size_t nodes);

std::size_t rank_invariant(const PersModule& m, std::size_t p, std::size_t q);

/// A submodule given by a basis at every node, or a quotient by one.
struct SubmoduleResult {
    PersModule module;
    PersModuleMap map;  // inclusion for sub, projection for quotient
};

/// `bases[j]` must span a subspace closed under the steps.
SubmoduleResult submodule(const PersModule& m, const std::vector<Matrix>& bases);
SubmoduleResult quotient_module(const PersModule& m, const std::vector<Matrix>& bases);

SubmoduleResult kernel_module(const PersModuleMap& f);
SubmoduleResult image_module(const PersModuleMap& f);
SubmoduleResult cokernel_module(const PersModuleMap& f);

bool is_tame(const PersModule& m);

struct RightClosedPoint {
    std::size_t value_index = 0;
    Rational value;
    Matrix kernel;  // columns: basis of ker(At -> Germ)
};

std::vector<RightClosedPoint> right_closed_points(const PersModule& m);

struct LocalCompactness {
    bool locally_compact = true;
    std::optional<RightClosedPoint> witness;
};

LocalCompactness is_locally_compact(const PersModule& m);

} // namespace isphere
