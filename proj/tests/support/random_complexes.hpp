#pragma once

// Random persistent complexes and maps for property tests.
//
// Complexes are sums of "blocks" conjugated by random nodewise basis changes.
// A block is either one generator in degree k alive on nodes [c1, c2] with
// d = 0, or a pair: y in degree k-1 on [a1, a2] and w in degree k on
// [c1, c2] with c1 <= a1 <= c2 <= a2 and d y = w on the overlap.

#include "isphere/exactla.hpp"
#include "isphere/pcx.hpp"
#include "support/random_objects.hpp"

#include <random>

namespace testsupport {

using namespace isphere;

struct Block {
    bool pair = false;
    std::size_t k = 0;
    std::size_t a1 = 0, a2 = 0, c1 = 0, c2 = 0;
};

struct CorpusOptions {
    std::size_t max_values = 4;
    std::size_t max_degree = 3;
    std::size_t max_blocks = 4;
    bool tame = true;
};

inline PersModule range_module(const EventGrid& g, std::size_t first, std::size_t last)
{
    return make_interval_module(g, interval_from_nodes(g, first, last));
}

inline PersComplex block_complex(const EventGrid& g, std::size_t N, const Block& b)
{
    if (!b.pair)
        return PersComplex::concentrated(range_module(g, b.c1, b.c2), b.k, N);
    std::vector<PersModule> ms(N + 1, PersModule::zero(g));
    ms[b.k - 1] = range_module(g, b.a1, b.a2);
    ms[b.k] = range_module(g, b.c1, b.c2);
    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t q = 0; q < N; ++q)
        for (std::size_t j = 0; j < g.node_count(); ++j) {
            Matrix m(ms[q + 1].dim(j), ms[q].dim(j));
            if (q + 1 == b.k && b.a1 <= j && j <= b.c2)
                m(0, 0) = 1;
            d[q].push_back(m);
        }
    return PersComplex(N, ms, d);
}

inline std::size_t pick_value(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return lo + rng() % (hi - lo + 1);
}

inline Block random_block(std::mt19937_64& rng, const EventGrid& g, std::size_t N, bool tame)
{
    const std::size_t nv = g.value_count();
    Block b;
    b.pair = N >= 1 && rng() % 3 != 0;
    b.k = b.pair ? 1 + rng() % N : rng() % (N + 1);
    if (tame) {
        // Births lean towards the first value so that surjective maps are common.
        std::size_t i1 = rng() % 2 ? 0 : pick_value(rng, 0, nv - 1);
        std::size_t i2 = b.pair ? (rng() % 2 ? i1 : pick_value(rng, i1, nv - 1)) : i1;
        std::size_t i3 = rng() % 2 ? nv - 1 : pick_value(rng, i2, nv - 1);
        std::size_t i4 = b.pair ? pick_value(rng, i3, nv - 1) : i3;
        b.c1 = 2 * i1;
        b.a1 = 2 * i2;
        b.c2 = 2 * i3 + 1;
        b.a2 = 2 * i4 + 1;
    } else {
        const std::size_t n = g.node_count();
        b.c1 = rng() % 2 ? 0 : pick_value(rng, 0, n - 1);
        b.a1 = b.pair ? pick_value(rng, b.c1, n - 1) : b.c1;
        b.c2 = rng() % 2 ? n - 1 : pick_value(rng, b.a1, n - 1);
        b.a2 = b.pair ? pick_value(rng, b.c2, n - 1) : b.c2;
    }
    return b;
}

/// Nodewise basis change: X' has steps P s P^-1 and d P d P^-1.
inline PersComplex conjugate(const PersComplex& x, const std::vector<std::vector<Matrix>>& P)
{
    const std::size_t N = x.max_degree(), n = x.node_count();
    std::vector<std::vector<Matrix>> inv(N + 1);
    for (std::size_t k = 0; k <= N; ++k)
        for (std::size_t j = 0; j < n; ++j)
            inv[k].push_back(*exactla::inverse(P[k][j]));
    std::vector<PersModule> ms;
    for (std::size_t k = 0; k <= N; ++k) {
        std::vector<Matrix> steps;
        for (std::size_t j = 0; j + 1 < n; ++j)
            steps.push_back(P[k][j + 1] * x.step(k, j) * inv[k][j]);
        ms.emplace_back(x.grid(), x.module(k).dims(), steps);
    }
    std::vector<std::vector<Matrix>> d(N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < n; ++j)
            d[k].push_back(P[k + 1][j] * x.d(k, j) * inv[k][j]);
    return PersComplex(N, ms, d);
}

inline std::vector<std::vector<Matrix>> random_basis_change(std::mt19937_64& rng, const PersComplex& x)
{
    std::vector<std::vector<Matrix>> P(x.max_degree() + 1);
    for (std::size_t k = 0; k <= x.max_degree(); ++k)
        for (std::size_t j = 0; j < x.node_count(); ++j)
            P[k].push_back(random_invertible(rng, x.dim(k, j)));
    return P;
}

struct RandomComplex {
    PersComplex complex;   // conjugated
    PersComplex blocks;    // unconjugated sum of blocks
    std::vector<Block> parts;
    std::vector<std::vector<Matrix>> P;  // complex = P blocks P^-1
};

inline RandomComplex random_complex(std::mt19937_64& rng, const EventGrid& g, std::size_t N, const CorpusOptions& opt)
{
    RandomComplex r;
    std::vector<PersComplex> pieces{PersComplex::zero(g, N)};
    std::size_t count = rng() % (opt.max_blocks + 1);
    for (std::size_t i = 0; i < count; ++i) {
        r.parts.push_back(random_block(rng, g, N, opt.tame));
        pieces.push_back(block_complex(g, N, r.parts.back()));
    }
    r.blocks = direct_sum(pieces);
    r.P = random_basis_change(rng, r.blocks);
    r.complex = conjugate(r.blocks, r.P);
    return r;
}

/// Random element of Hom(block, Y) as the images (y', w') of its generators.
inline std::pair<Vector, Vector> random_block_hom(std::mt19937_64& rng, const Block& b, const PersComplex& y)
{
    const std::size_t n = y.node_count();
    const std::size_t dw = y.dim(b.k, b.c1);
    const std::size_t dy = b.pair ? y.dim(b.k - 1, b.a1) : 0;
    std::vector<Matrix> rows;
    std::size_t cols = dy + dw;
    // d w' = 0
    rows.push_back(hstack(Matrix(y.d(b.k, b.c1).rows(), dy), y.d(b.k, b.c1)));
    if (b.c2 + 1 < n)
        rows.push_back(hstack(Matrix(y.dim(b.k, b.c2 + 1), dy), y.module(b.k).composite(b.c1, b.c2 + 1)));
    if (b.pair) {
        rows.push_back(hstack(y.d(b.k - 1, b.a1), -y.module(b.k).composite(b.c1, b.a1)));
        if (b.a2 + 1 < n)
            rows.push_back(hstack(y.module(b.k - 1).composite(b.a1, b.a2 + 1), Matrix(y.dim(b.k - 1, b.a2 + 1), dw)));
    }
    Matrix sys = vstack(rows, cols);
    Matrix ker = exactla::kernel_basis(sys);
    Vector v = zero_vector(cols);
    for (std::size_t c = 0; c < ker.cols(); ++c)
        if (rng() % 3)
            v = v + small_rational(rng) * ker.column(c);
    return {slice(v, 0, dy), slice(v, dy, dw)};
}

/// Random map from the unconjugated block sum of `x` into y.
inline PersComplexMap random_map_from_blocks(std::mt19937_64& rng, const RandomComplex& x, const PersComplex& y)
{
    const std::size_t N = y.max_degree(), n = y.node_count();
    PersComplexMap f{x.blocks, y, {}};
    for (std::size_t k = 0; k <= N; ++k) {
        f.f.emplace_back();
        for (std::size_t j = 0; j < n; ++j)
            f.f[k].push_back(Matrix(y.dim(k, j), 0));
    }
    for (const auto& b : x.parts) {
        auto [yv, wv] = random_block_hom(rng, b, y);
        for (std::size_t k = 0; k <= N; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t width = 0;
                Vector col;
                if (k == b.k && b.c1 <= j && j <= b.c2) {
                    width = 1;
                    col = y.module(k).composite(b.c1, j) * wv;
                } else if (b.pair && k + 1 == b.k && b.a1 <= j && j <= b.a2) {
                    width = 1;
                    col = y.module(k).composite(b.a1, j) * yv;
                }
                Matrix m(y.dim(k, j), width);
                if (width)
                    m.set_column(0, col);
                f.f[k][j] = hstack(f.f[k][j], m);
            }
    }
    f.validate();
    return f;
}

inline std::vector<std::vector<Matrix>> inverses(const std::vector<std::vector<Matrix>>& P)
{
    std::vector<std::vector<Matrix>> out(P.size());
    for (std::size_t k = 0; k < P.size(); ++k)
        for (const auto& m : P[k])
            out[k].push_back(*exactla::inverse(m));
    return out;
}

/// Random map x.complex -> y.
inline PersComplexMap random_map(std::mt19937_64& rng, const RandomComplex& x, const PersComplex& y)
{
    PersComplexMap raw = random_map_from_blocks(rng, x, y);
    auto inv = inverses(x.P);
    PersComplexMap f{x.complex, y, raw.f};
    for (std::size_t k = 0; k < f.f.size(); ++k)
        for (std::size_t j = 0; j < f.f[k].size(); ++j)
            f.f[k][j] = raw.f[k][j] * inv[k][j];
    f.validate();
    return f;
}

enum class MapKind { Hom, Projection, Quotient, ToZero, ImageInclusion, SummandInclusion, Augmented, Identity };

struct RandomMap {
    MapKind kind;
    PersComplexMap map;
};

inline RandomMap random_complex_map(std::mt19937_64& rng, const CorpusOptions& opt)
{
    EventGrid g = random_grid(rng, opt.max_values);
    std::size_t N = 1 + rng() % opt.max_degree;
    auto X = random_complex(rng, g, N, opt);
    auto Y = random_complex(rng, g, N, opt);
    MapKind kind = static_cast<MapKind>(rng() % 8);
    switch (kind) {
    case MapKind::Hom:
        return {kind, random_map(rng, X, Y.complex)};
    case MapKind::Projection:
        return {kind, summand_projection(X.complex, Y.complex)};
    case MapKind::Quotient: {
        auto h = random_map(rng, Y, X.complex);
        return {kind, cokernel_complex(h).map};
    }
    case MapKind::ToZero:
        return {kind, PersComplexMap::zero(X.complex, PersComplex::zero(g, N))};
    case MapKind::ImageInclusion: {
        auto h = random_map(rng, Y, X.complex);
        return {kind, image_complex(h).map};
    }
    case MapKind::SummandInclusion:
        return {kind, summand_inclusion(X.complex, Y.complex)};
    case MapKind::Augmented: {
        // [id | h] : X (+) Y -> X, always onto.
        auto h = random_map(rng, Y, X.complex);
        PersComplexMap f{direct_sum({X.complex, Y.complex}), X.complex, {}};
        for (std::size_t k = 0; k <= N; ++k) {
            f.f.emplace_back();
            for (std::size_t j = 0; j < g.node_count(); ++j)
                f.f[k].push_back(hstack(Matrix::identity(X.complex.dim(k, j)), h.f[k][j]));
        }
        f.validate();
        return {kind, f};
    }
    case MapKind::Identity:
        return {kind, PersComplexMap::identity(X.complex)};
    }
    return {kind, PersComplexMap::identity(X.complex)};
}

/// Random monomorphism between tame complexes.
inline PersComplexMap random_mono(std::mt19937_64& rng, const CorpusOptions& opt)
{
    EventGrid g = random_grid(rng, opt.max_values);
    std::size_t N = 1 + rng() % opt.max_degree;
    auto X = random_complex(rng, g, N, opt);
    auto Y = random_complex(rng, g, N, opt);
    switch (rng() % 3) {
    case 0:
        return summand_inclusion(X.complex, Y.complex);
    case 1: {
        // Image of a map between tame complexes is tame.
        auto h = random_map(rng, Y, X.complex);
        return image_complex(h).map;
    }
    default: {
        // Conjugated inclusion of a sub-sum of blocks.
        auto inc = summand_inclusion(X.complex, Y.complex);
        auto P = random_basis_change(rng, inc.target);
        PersComplexMap f{inc.source, conjugate(inc.target, P), inc.f};
        for (std::size_t k = 0; k < f.f.size(); ++k)
            for (std::size_t j = 0; j < f.f[k].size(); ++j)
                f.f[k][j] = P[k][j] * inc.f[k][j];
        f.validate();
        return f;
    }
    }
}

} // namespace testsupport
