#pragma once

// Persistent cochain complexes truncated at a maximal degree N.
//
// Degrees above N are absent and d^N is zero. Every operation requires its
// inputs to share grid and N.

#include "isphere/persmod.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace isphere {

class PersComplex {
public:
    PersComplex() = default;
    /// d[k][j] is d^k at node j, for k = 0..N-1.
    PersComplex(std::size_t max_degree, std::vector<PersModule> modules, std::vector<std::vector<Matrix>> d);

    static PersComplex zero(const EventGrid& grid, std::size_t max_degree);
    /// Single module placed in degree k, zero differential.
    static PersComplex concentrated(const PersModule& m, std::size_t k, std::size_t max_degree);

    const EventGrid& grid() const { return modules_.front().grid(); }
    std::size_t max_degree() const noexcept { return max_degree_; }
    std::size_t node_count() const { return grid().node_count(); }
    const PersModule& module(std::size_t k) const { return modules_.at(k); }
    const std::vector<PersModule>& modules() const noexcept { return modules_; }
    std::size_t dim(std::size_t k, std::size_t node) const { return modules_.at(k).dim(node); }
    const Matrix& step(std::size_t k, std::size_t j) const { return modules_.at(k).step(j); }
    /// d^k at node j; for k = N a 0 x dim matrix.
    Matrix d(std::size_t k, std::size_t node) const;
    const std::vector<std::vector<Matrix>>& differentials() const noexcept { return d_; }
    PersModuleMap differential_map(std::size_t k) const;

    bool is_zero() const;
    void validate() const;
    bool operator==(const PersComplex& o) const;
    bool operator!=(const PersComplex& o) const { return !(*this == o); }

private:
    std::size_t max_degree_ = 0;
    std::vector<PersModule> modules_;
    std::vector<std::vector<Matrix>> d_;
};

struct PersComplexMap {
    PersComplex source;
    PersComplex target;
    std::vector<std::vector<Matrix>> f;  // f[k][j]

    static PersComplexMap identity(const PersComplex& x);
    static PersComplexMap zero(const PersComplex& s, const PersComplex& t);

    PersModuleMap component(std::size_t k) const;
    const Matrix& at(std::size_t k, std::size_t node) const { return f.at(k).at(node); }
    void validate() const;
    bool is_mono() const;
    bool is_epi() const;
    bool is_iso() const;
    bool operator==(const PersComplexMap& o) const;
};

PersComplexMap compose(const PersComplexMap& g, const PersComplexMap& f);
/// Pullback along a grid refinement, constant on the old stretches.
PersComplex refine(const PersComplex& x, const EventGrid& finer);
PersComplexMap refine(const PersComplexMap& f, const EventGrid& finer);
PersComplex direct_sum(const std::vector<PersComplex>& xs);
PersComplexMap direct_sum(const std::vector<PersComplexMap>& fs);

/// Inclusion of the first summand of x (+) y, and projection onto it.
PersComplexMap summand_inclusion(const PersComplex& x, const PersComplex& y);
PersComplexMap summand_projection(const PersComplex& x, const PersComplex& y);

/// S^k_[s,t): 1 in degree k from s, 1 in degree k-1 from t, d = id from t.
/// k may be N+1, in which case only the degree-N part remains.
PersComplex sphere(const EventGrid& grid, std::size_t max_degree, std::size_t k, const Rational& s,
                   std::optional<Rational> t);
/// D^k_s: degrees k-1 and k, both [s,inf), d = id. D^0 is zero.
PersComplex disk(const EventGrid& grid, std::size_t max_degree, std::size_t k, const Rational& s);

/// graded[k] is the module placed in degree k (missing entries are zero).
PersComplex sphere_of_module(const std::vector<PersModule>& graded, const EventGrid& grid, std::size_t max_degree);
PersComplex disk_of_module(const std::vector<PersModule>& graded, const EventGrid& grid, std::size_t max_degree);

PersComplex interval_tensor(const EventGrid& grid, std::size_t max_degree, const DecoratedInterval& interval,
                            std::size_t k);

SubmoduleResult cocycles(const PersComplex& x, std::size_t k);
SubmoduleResult coboundaries(const PersComplex& x, std::size_t k);

struct CohomologyResult {
    PersModule module;
    DecoratedBarcode barcode;
    /// Cocycles at the top degree ignore the absent d^N.
    bool truncated = false;
    std::vector<Matrix> cocycle_basis;  // columns in X^k(j)
    std::vector<Matrix> projection;     // cocycle coordinates -> H^k(j)
};

CohomologyResult cohomology(const PersComplex& x, std::size_t k);

struct SubcomplexResult {
    PersComplex complex;
    PersComplexMap map;  // inclusion or projection
};

/// bases[k][j] spans a subspace of X^k(j) closed under steps and d.
SubcomplexResult subcomplex(const PersComplex& x, const std::vector<std::vector<Matrix>>& bases);
SubcomplexResult quotient_by(const PersComplex& x, const std::vector<std::vector<Matrix>>& bases);

SubcomplexResult kernel_complex(const PersComplexMap& f);
SubcomplexResult image_complex(const PersComplexMap& f);
SubcomplexResult cokernel_complex(const PersComplexMap& f);
/// Throws HypothesisError when sub is not a monomorphism.
SubcomplexResult quotient_complex(const PersComplex& x, const PersComplexMap& sub);

/// Hom(D^k_s, X) = X^{k-1}(s).
struct DiskHom {
    Matrix basis;  // columns in X^{k-1}(s)
    std::function<PersComplexMap(const Vector&)> to_map;
};
DiskHom hom_from_disk(const PersComplex& x, std::size_t k, const Rational& s);
PersComplexMap map_from_disk(const PersComplex& x, std::size_t k, const Rational& s, const Vector& v);

/// Hom(S^k_[s,t), X) = ZX^k(s) x_{ZX^k(t)} X^{k-1}(t); pairs (x_s, u_t).
struct SphereHom {
    Matrix x_part;  // columns in X^k(s)
    Matrix u_part;  // columns in X^{k-1}(t); zero rows when t is infinite
    std::size_t dimension() const { return x_part.cols(); }
    std::function<PersComplexMap(const Vector&, const Vector&)> to_map;
};
SphereHom hom_from_sphere(const PersComplex& x, std::size_t k, const Rational& s, std::optional<Rational> t);
PersComplexMap map_from_sphere(const PersComplex& x, std::size_t k, const Rational& s, std::optional<Rational> t,
                               const Vector& xs, const Vector& ut);

enum class CellKind { Sphere, Disk };

/// Attachment of S^K_[s,t) -> D^K_s (Sphere) or D^K_t -> D^K_s (Disk).
/// Sphere cells carry x_s in ZX^K(s) and, for finite t, u_t in X^{K-1}(t)
/// with d u_t = x_t. Disk cells carry z_t in X^{K-1}(t) for finite t.
struct CellAttachment {
    CellKind kind = CellKind::Sphere;
    std::size_t degree = 1;  // K
    DecoratedInterval interval;
    Vector x_s;
    Vector u_t;
    Vector z_t;
};

struct AttachResult {
    PersComplex complex;
    PersComplexMap inclusion;
    std::vector<std::string> names;
};

/// Node range [first, last] of a half-open cell interval. Throws on other shapes.
std::pair<std::size_t, std::size_t> cell_nodes(const EventGrid& g, const CellAttachment& c);
void validate_cell(const PersComplex& x, const CellAttachment& c);

/// Explicit pushout: new generators are appended after the old coordinates,
/// in cell order; names are "c<stage>.<cell>".
AttachResult attach_cells(const PersComplex& x, const std::vector<CellAttachment>& cells, std::size_t stage = 0);

/// The same pushout computed as the cokernel of S -> X (+) D.
struct QuotientPushout {
    PersComplex sources;  // (+) of the cell sources
    PersComplex disks;    // (+) of the cell targets
    PersComplexMap attaching;   // sources -> X
    PersComplexMap inclusion;   // sources -> disks
    PersComplex pushout;
    PersComplexMap from_sum;    // X (+) disks -> pushout
};
QuotientPushout pushout_by_quotient(const PersComplex& x, const std::vector<CellAttachment>& cells);

struct PushoutCheck {
    bool ok = true;
    std::string failure;
};

/// Checks that `r` is the pushout: the canonical map X (+) disks -> W is a
/// chain map, kills the relations, is onto, and has the right kernel size.
PushoutCheck verify_pushout(const PersComplex& x, const std::vector<CellAttachment>& cells, const AttachResult& r);

/// Canonical map X (+) disks -> attach_cells(x, cells).complex.
PersComplexMap canonical_pushout_map(const PersComplex& x, const std::vector<CellAttachment>& cells,
                                     const AttachResult& r);

/// Presentation: base complex plus stages of simultaneous attachments.
struct CellPresentation {
    PersComplex base;
    std::vector<std::vector<CellAttachment>> stages;
};

struct ReplayResult {
    PersComplex complex;
    PersComplexMap inclusion;  // base -> complex
    std::vector<AttachResult> stages;
};

ReplayResult replay(const CellPresentation& p);

} // namespace isphere
