#pragma once

// Fixture complexes and random generators shared by the unit, acceptance
// and benchmark targets.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coxl2/core_model.hpp"
#include "coxl2/embedding.hpp"
#include "coxl2/nerve.hpp"

namespace coxl2::testing {

inline Label lab(std::uint32_t m) { return m == 0 ? Label::infinity() : Label::finite(m); }

inline std::vector<VertexId> names(const std::string& prefix, std::size_t n)
{
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

inline CoxeterSpec complete_graph(std::size_t n, std::uint32_t m)
{
    auto vs = names("v", n);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.push_back({vs[i], vs[j], lab(m)});
    return CoxeterSpec(vs, edges);
}

inline CoxeterSpec k5() { return complete_graph(5, 3); }

inline CoxeterSpec k33()
{
    std::vector<VertexId> vs{"a1", "a2", "a3", "b1", "b2", "b3"};
    std::vector<Edge> edges;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            edges.push_back({"a" + std::to_string(i), "b" + std::to_string(j), lab(2)});
    return CoxeterSpec(vs, edges);
}

inline CoxeterSpec points(std::size_t n, const std::string& prefix = "p")
{
    return CoxeterSpec(names(prefix, n), {});
}

/// Cycle of length n with the given label on every edge.
inline CoxeterSpec cycle(std::size_t n, std::uint32_t m = 2, const std::string& prefix = "h")
{
    auto vs = names(prefix, n);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        edges.push_back({vs[i], vs[(i + 1) % n], lab(m)});
    return CoxeterSpec(vs, edges);
}

inline CoxeterSpec hexagon() { return cycle(6, 2); }

/// Path with the given labels between consecutive vertices (others 2).
inline CoxeterSpec path(const std::vector<std::uint32_t>& labels)
{
    auto vs = names("s", labels.size() + 1);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            edges.push_back({vs[i], vs[j], lab(j == i + 1 ? labels[i] : 2)});
    return CoxeterSpec(vs, edges);
}

/// Octahedron graph: antipodal pairs (n,s), (e0,e2), (e1,e3) unlabeled (inf).
/// `labels` gives the 12 edge labels in a fixed order (default all 2).
inline CoxeterSpec octahedron(const std::vector<std::uint32_t>& labels = std::vector<std::uint32_t>(12, 2))
{
    std::vector<VertexId> vs{"n", "s", "e0", "e1", "e2", "e3"};
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (int i = 0; i < 4; ++i) {
        pairs.push_back({"n", "e" + std::to_string(i)});
        pairs.push_back({"s", "e" + std::to_string(i)});
        pairs.push_back({"e" + std::to_string(i), "e" + std::to_string((i + 1) % 4)});
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        edges.push_back({pairs[i].first, pairs[i].second, lab(labels[i])});
    return CoxeterSpec(vs, edges);
}

/// The 8 faces of octahedron() as index triples into its edge label order.
inline std::vector<std::array<std::size_t, 3>> octahedron_face_edges()
{
    // edge order per i: 3i -> (n,e_i), 3i+1 -> (s,e_i), 3i+2 -> (e_i,e_{i+1})
    std::vector<std::array<std::size_t, 3>> faces;
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t j = (i + 1) % 4;
        faces.push_back({3 * i, 3 * j, 3 * i + 2});
        faces.push_back({3 * i + 1, 3 * j + 1, 3 * i + 2});
    }
    return faces;
}

inline CoxeterSpec icosahedron(std::uint32_t m = 2)
{
    auto vs = names("i", 12);
    std::vector<Edge> edges;
    auto add = [&](std::size_t a, std::size_t b) { edges.push_back({vs[a], vs[b], lab(m)}); };
    for (std::size_t k = 0; k < 5; ++k) {
        const std::size_t up = 1 + k, up_next = 1 + (k + 1) % 5;
        const std::size_t lo = 6 + k, lo_next = 6 + (k + 1) % 5;
        add(0, up);
        add(up, up_next);
        add(up, lo);
        add(up, lo_next);
        add(lo, lo_next);
        add(11, lo);
    }
    return CoxeterSpec(vs, edges);
}

inline CoxeterSpec random_spec(std::mt19937_64& rng, std::size_t n, const std::vector<std::uint32_t>& choices)
{
    auto vs = names("v", n);
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto m = choices[pick(rng)];
            if (m != 0)
                edges.push_back({vs[i], vs[j], lab(m)});
        }
    return CoxeterSpec(vs, edges);
}

/// Rotation system for the given names, listing neighbours in cyclic order.
inline RotationSystem rotation(const CoxeterSpec& spec, const std::vector<std::pair<VertexId, std::vector<VertexId>>>& rows)
{
    RotationSystem rot;
    rot.order.resize(spec.size());
    for (const auto& [v, nbrs] : rows) {
        auto& row = rot.order[*spec.index_of(v)];
        for (const auto& u : nbrs)
            row.push_back(*spec.index_of(u));
    }
    return rot;
}

inline RotationSystem cycle_rotation(const CoxeterSpec& c)
{
    const auto& vs = c.vertices();
    const std::size_t n = vs.size();
    std::vector<std::pair<VertexId, std::vector<VertexId>>> rows;
    for (std::size_t i = 0; i < n; ++i)
        rows.push_back({vs[i], {vs[(i + n - 1) % n], vs[(i + 1) % n]}});
    return rotation(c, rows);
}

/// Straight-line embedding of K4: v3 inside the triangle v0 v1 v2.
inline RotationSystem k4_rotation(const CoxeterSpec& k4)
{
    return rotation(k4, {{"v0", {"v1", "v3", "v2"}},
                         {"v1", {"v2", "v3", "v0"}},
                         {"v2", {"v0", "v3", "v1"}},
                         {"v3", {"v0", "v1", "v2"}}});
}

/// Random connected straight-line planar graph on integer points with no
/// three collinear. The rotation at each vertex is the counter-clockwise
/// angular order of its neighbours, so it is a sphere embedding by
/// construction (independent of the planarity oracle).
struct PlanarSample {
    std::vector<std::pair<long, long>> points;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::size_t>> rotation; // by point index
};

inline long orient(std::pair<long, long> a, std::pair<long, long> b, std::pair<long, long> c)
{
    return (b.first - a.first) * (c.second - a.second) - (b.second - a.second) * (c.first - a.first);
}

inline bool segments_cross(std::pair<long, long> a, std::pair<long, long> b, std::pair<long, long> c,
                           std::pair<long, long> d)
{
    // Shared endpoints do not count; no three points are collinear.
    if (a == c || a == d || b == c || b == d)
        return false;
    const long o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

inline PlanarSample random_planar_graph(std::mt19937_64& rng, std::size_t n, double extra_edge_fraction)
{
    PlanarSample s;
    std::uniform_int_distribution<long> coord(0, 999);
    while (s.points.size() < n) {
        std::pair<long, long> p{coord(rng), coord(rng)};
        bool ok = true;
        for (std::size_t i = 0; i < s.points.size() && ok; ++i) {
            if (s.points[i] == p)
                ok = false;
            for (std::size_t j = i + 1; j < s.points.size() && ok; ++j)
                if (orient(s.points[i], s.points[j], p) == 0)
                    ok = false;
        }
        if (ok)
            s.points.push_back(p);
    }

    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            candidates.push_back({i, j});
    std::shuffle(candidates.begin(), candidates.end(), rng);

    // Union-find for connectivity.
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    std::bernoulli_distribution extra(extra_edge_fraction);
    for (auto [i, j] : candidates) {
        bool crosses = false;
        for (auto [a, b] : s.edges)
            if (segments_cross(s.points[i], s.points[j], s.points[a], s.points[b])) {
                crosses = true;
                break;
            }
        if (crosses)
            continue;
        const bool joins = find(i) != find(j);
        if (!joins && !extra(rng))
            continue;
        s.edges.push_back({i, j});
        if (joins) {
            parent[find(i)] = find(j);
            --components;
        }
    }

    s.rotation.resize(n);
    for (auto [a, b] : s.edges) {
        s.rotation[a].push_back(b);
        s.rotation[b].push_back(a);
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto origin = s.points[v];
        auto half = [&](std::size_t u) {
            long dx = s.points[u].first - origin.first, dy = s.points[u].second - origin.second;
            return dy < 0 || (dy == 0 && dx < 0) ? 1 : 0;
        };
        std::sort(s.rotation[v].begin(), s.rotation[v].end(), [&](std::size_t a, std::size_t b) {
            if (half(a) != half(b))
                return half(a) < half(b);
            return orient(origin, s.points[a], s.points[b]) > 0;
        });
    }
    return s;
}

/// Labels the edges of a planar sample and returns the spec plus the
/// rotation in the spec's canonical indices.
inline std::pair<CoxeterSpec, RotationSystem> label_planar(const PlanarSample& s, std::mt19937_64& rng,
                                                           const std::vector<std::uint32_t>& choices)
{
    const std::size_t n = s.points.size();
    auto vs = names("v", n); // "v0".."v9": lexicographic order equals index order for n <= 10
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    std::vector<Edge> edges;
    for (auto [a, b] : s.edges)
        edges.push_back({vs[a], vs[b], lab(choices[pick(rng)])});
    CoxeterSpec spec(vs, edges);
    RotationSystem rot;
    rot.order.resize(n);
    for (std::size_t v = 0; v < n; ++v)
        for (auto u : s.rotation[v])
            rot.order[*spec.index_of(vs[v])].push_back(*spec.index_of(vs[u]));
    return {std::move(spec), std::move(rot)};
}

} // namespace coxl2::testing
