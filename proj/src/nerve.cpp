#include "coxl2/nerve.hpp"

#include <algorithm>
#include <set>

#include "coxl2/error.hpp"
#include "coxl2/spherical.hpp"

namespace coxl2 {

namespace {

const std::vector<Simplex> kNoSimplices;

bool lex_less(const Simplex& a, const IndexSet& b) { return a.vertices < b; }

// All (k+1)-simplices extending one k-simplex by a larger vertex.
void extend(const CoxeterSpec& spec, const Simplex& s, std::vector<Simplex>& out)
{
    const std::size_t n = spec.size();
    for (std::size_t v = s.vertices.back() + 1; v < n; ++v) {
        bool clique = true;
        for (auto u : s.vertices)
            if (spec.label(u, v).is_infinite()) {
                clique = false;
                break;
            }
        if (!clique)
            continue;
        IndexSet t = s.vertices;
        t.push_back(v);
        auto verdict = classify(spec, t);
        if (verdict.spherical)
            out.push_back({std::move(t), std::move(verdict.order)});
    }
}

} // namespace

const std::vector<Simplex>& Nerve::simplices(int d) const
{
    if (d < 0 || d > dimension())
        return kNoSimplices;
    return by_dim_[static_cast<std::size_t>(d)];
}

std::size_t Nerve::simplex_count() const noexcept
{
    std::size_t total = 0;
    for (const auto& level : by_dim_)
        total += level.size();
    return total;
}

bool Nerve::contains(const IndexSet& t) const
{
    return order(t).has_value();
}

std::optional<mpz_class> Nerve::order(const IndexSet& t) const
{
    if (t.empty())
        return std::nullopt;
    const auto& level = simplices(static_cast<int>(t.size()) - 1);
    auto it = std::lower_bound(level.begin(), level.end(), t, lex_less);
    if (it == level.end() || it->vertices != t)
        return std::nullopt;
    return it->order;
}

IndexSet Nerve::neighbors(std::size_t v) const
{
    IndexSet out;
    for (std::size_t u = 0; u < spec_.size(); ++u)
        if (u != v && spec_.label(u, v).is_finite())
            out.push_back(u);
    return out;
}

bool Nerve::is_connected() const
{
    const std::size_t n = spec_.size();
    if (n == 0)
        return false;
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto u : neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    return reached == n;
}

Nerve build_nerve(const CoxeterSpec& spec, std::size_t cap, Exec exec)
{
    Nerve nerve;
    nerve.spec_ = spec;
    if (spec.empty())
        return nerve;

    std::vector<Simplex> level;
    for (std::size_t v = 0; v < spec.size(); ++v)
        level.push_back({{v}, 2});
    std::size_t total = level.size();
    if (total > cap)
        throw Error(ErrorCode::CapExceeded, "nerve exceeds " + std::to_string(cap) + " simplices");

    while (!level.empty()) {
        const auto count = static_cast<std::ptrdiff_t>(level.size());
        std::vector<std::vector<Simplex>> parts(level.size());
        if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
            for (std::ptrdiff_t i = 0; i < count; ++i)
                extend(spec, level[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(i)]);
        } else {
            for (std::ptrdiff_t i = 0; i < count; ++i)
                extend(spec, level[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(i)]);
        }
        std::vector<Simplex> next;
        for (auto& p : parts) {
            total += p.size();
            if (total > cap)
                throw Error(ErrorCode::CapExceeded, "nerve exceeds " + std::to_string(cap) + " simplices");
            std::move(p.begin(), p.end(), std::back_inserter(next));
        }
        nerve.by_dim_.push_back(std::move(level));
        level = std::move(next);
    }
    return nerve;
}

bool is_full_subcomplex(const Nerve& ambient, const Subcomplex& sub)
{
    const auto& spec = ambient.spec();
    std::vector<char> inside(spec.size(), 0);
    for (const auto& v : sub.vertices) {
        auto i = spec.index_of(v);
        if (!i)
            return false;
        inside[*i] = 1;
    }
    std::set<std::vector<VertexId>> have(sub.simplices.begin(), sub.simplices.end());
    for (int d = 0; d <= ambient.dimension(); ++d)
        for (const auto& s : ambient.simplices(d)) {
            if (!std::all_of(s.vertices.begin(), s.vertices.end(), [&](auto i) { return inside[i] != 0; }))
                continue;
            if (!have.count(spec.names(s.vertices)))
                return false;
        }
    return true;
}

Subcomplex as_subcomplex(const Nerve& nerve)
{
    Subcomplex sub;
    sub.vertices = nerve.spec().sorted_names();
    for (int d = 0; d <= nerve.dimension(); ++d)
        for (const auto& s : nerve.simplices(d))
            sub.simplices.push_back(nerve.spec().names(s.vertices));
    sub.full = true;
    return sub;
}

bool has_right_angled_complement(const CoxeterSpec& spec, const std::vector<VertexId>& A)
{
    const IndexSet a = spec.subset(A);
    std::vector<char> inside(spec.size(), 0);
    for (auto i : a)
        inside[i] = 1;
    for (std::size_t s = 0; s < spec.size(); ++s)
        for (std::size_t t = s + 1; t < spec.size(); ++t) {
            Label l = spec.label(s, t);
            if (l.is_finite() && l.value() != 2 && !(inside[s] && inside[t]))
                return false;
        }
    return true;
}

bool has_right_angled_complement(const Nerve& nerve, const std::vector<VertexId>& A)
{
    return has_right_angled_complement(nerve.spec(), A);
}

std::vector<std::string> infinite_pairs_leaving(const CoxeterSpec& spec, const std::vector<VertexId>& A)
{
    const IndexSet a = spec.subset(A);
    std::vector<char> inside(spec.size(), 0);
    for (auto i : a)
        inside[i] = 1;
    std::vector<std::string> out;
    for (std::size_t s = 0; s < spec.size(); ++s)
        for (std::size_t t = s + 1; t < spec.size(); ++t)
            if (spec.label(s, t).is_infinite() && !(inside[s] && inside[t]))
                out.push_back(spec.name(s) + "-" + spec.name(t));
    return out;
}

std::pair<Nerve, SubcomplexWitness> full_subcomplex(const Nerve& nerve, const std::vector<VertexId>& A)
{
    const IndexSet a = nerve.spec().subset(A);
    Nerve sub = build_nerve(induced_subspec(nerve.spec(), a));
    SubcomplexWitness w;
    w.ambient = nerve.spec();
    w.vertex_set = nerve.spec().names(a);
    w.full = is_full_subcomplex(nerve, as_subcomplex(sub));
    w.right_angled_complement = has_right_angled_complement(nerve.spec(), w.vertex_set);
    return {std::move(sub), std::move(w)};
}

Subcomplex link(const Nerve& nerve, const VertexId& v, const std::optional<std::vector<VertexId>>& rac_target)
{
    const auto& spec = nerve.spec();
    auto vi = spec.index_of(v);
    if (!vi)
        throw Error(ErrorCode::UnknownVertex, "'" + v + "' is not a vertex");

    Subcomplex sub;
    for (auto u : nerve.neighbors(*vi))
        sub.vertices.push_back(spec.name(u));
    for (int d = 1; d <= nerve.dimension(); ++d)
        for (const auto& s : nerve.simplices(d)) {
            if (!std::binary_search(s.vertices.begin(), s.vertices.end(), *vi))
                continue;
            IndexSet t;
            for (auto i : s.vertices)
                if (i != *vi)
                    t.push_back(i);
            sub.simplices.push_back(spec.names(t));
        }
    std::sort(sub.simplices.begin(), sub.simplices.end(), [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    sub.full = is_full_subcomplex(nerve, sub);

    if (rac_target) {
        const auto& A = *rac_target;
        const bool outside = std::find(A.begin(), A.end(), v) == A.end();
        if (outside && has_right_angled_complement(spec, A)) {
            sub.fullness_asserted = true;
            if (!sub.full)
                throw Error(ErrorCode::HypothesisViolated, "link of " + v + " is not a full subcomplex");
        }
    }
    return sub;
}

VertexId fresh_name(const CoxeterSpec& spec, const VertexId& base)
{
    VertexId name = base;
    while (spec.index_of(name))
        name += "'";
    return name;
}

Nerve join2(const Nerve& a, const Nerve& b)
{
    const auto& sa = a.spec();
    const auto& sb = b.spec();
    std::vector<VertexId> vertices = sa.vertices();
    std::vector<Edge> edges = sa.finite_edges();

    std::vector<VertexId> renamed(sb.size());
    CoxeterSpec taken = sa;
    for (const auto& v : sb.vertices()) {
        VertexId name = v;
        while (taken.index_of(name) || std::find(vertices.begin(), vertices.end(), name) != vertices.end())
            name += "'";
        renamed[*sb.index_of(v)] = name;
        vertices.push_back(name);
    }
    for (const auto& e : sb.finite_edges())
        edges.push_back({renamed[*sb.index_of(e.u)], renamed[*sb.index_of(e.v)], e.m});
    for (const auto& u : sa.vertices())
        for (std::size_t j = 0; j < sb.size(); ++j)
            edges.push_back({u, renamed[j], Label::finite(2)});
    return build_nerve(CoxeterSpec(std::move(vertices), edges));
}

Nerve cone2(const Nerve& n)
{
    const auto& spec = n.spec();
    const VertexId apex = fresh_name(spec, "P");
    std::vector<VertexId> vertices = spec.vertices();
    vertices.push_back(apex);
    std::vector<Edge> edges = spec.finite_edges();
    for (const auto& v : spec.vertices())
        edges.push_back({apex, v, Label::finite(2)});
    return build_nerve(CoxeterSpec(std::move(vertices), edges));
}

const char* sphere_type_name(SphereType t) noexcept
{
    switch (t) {
    case SphereType::Circle: return "Circle";
    case SphereType::TwoSphere: return "TwoSphere";
    case SphereType::Neither: return "Neither";
    }
    return "?";
}

namespace {

// A connected graph in which every vertex has degree two.
bool is_single_cycle(const std::vector<IndexSet>& adj)
{
    if (adj.size() < 3)
        return false;
    for (const auto& a : adj)
        if (a.size() != 2)
            return false;
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    return reached == adj.size();
}

} // namespace

SphereType recognize_sphere(const Nerve& nerve)
{
    const std::size_t n = nerve.vertex_count();
    if (!nerve.is_connected())
        return SphereType::Neither;

    if (nerve.dimension() == 1) {
        std::vector<IndexSet> adj(n);
        for (std::size_t v = 0; v < n; ++v)
            adj[v] = nerve.neighbors(v);
        return is_single_cycle(adj) ? SphereType::Circle : SphereType::Neither;
    }
    if (nerve.dimension() != 2)
        return SphereType::Neither;

    const auto& edges = nerve.simplices(1);
    const auto& triangles = nerve.simplices(2);
    const auto V = static_cast<long>(n);
    const auto E = static_cast<long>(edges.size());
    const auto F = static_cast<long>(triangles.size());
    if (V - E + F != 2)
        return SphereType::Neither;

    std::vector<int> edge_faces(edges.size(), 0);
    auto edge_index = [&](std::size_t a, std::size_t b) {
        IndexSet key{std::min(a, b), std::max(a, b)};
        auto it = std::lower_bound(edges.begin(), edges.end(), key, lex_less);
        return static_cast<std::size_t>(it - edges.begin());
    };
    // Link of each vertex as a graph on its neighbours.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> link_edges(n);
    for (const auto& t : triangles) {
        const auto& s = t.vertices;
        ++edge_faces[edge_index(s[0], s[1])];
        ++edge_faces[edge_index(s[0], s[2])];
        ++edge_faces[edge_index(s[1], s[2])];
        link_edges[s[0]].push_back({s[1], s[2]});
        link_edges[s[1]].push_back({s[0], s[2]});
        link_edges[s[2]].push_back({s[0], s[1]});
    }
    for (int c : edge_faces)
        if (c != 2)
            return SphereType::Neither;

    for (std::size_t v = 0; v < n; ++v) {
        IndexSet nb = nerve.neighbors(v);
        std::vector<IndexSet> adj(nb.size());
        auto local = [&](std::size_t u) {
            return static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), u) - nb.begin());
        };
        for (auto [a, b] : link_edges[v]) {
            adj[local(a)].push_back(local(b));
            adj[local(b)].push_back(local(a));
        }
        if (!is_single_cycle(adj))
            return SphereType::Neither;
    }
    return SphereType::TwoSphere;
}

std::optional<std::vector<std::vector<VertexId>>> detect_join2(const Nerve& nerve)
{
    const auto& spec = nerve.spec();
    const std::size_t n = spec.size();
    if (n < 2)
        return std::nullopt;
    std::vector<char> seen(n, 0);
    std::vector<std::vector<VertexId>> factors;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        IndexSet comp;
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v || seen[u])
                    continue;
                Label l = spec.label(u, v);
                if (l.is_infinite() || l.value() != 2) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        factors.push_back(spec.names(comp));
    }
    if (factors.size() < 2)
        return std::nullopt;
    return factors;
}

nlohmann::json nerve_to_json(const Nerve& nerve)
{
    nlohmann::json levels = nlohmann::json::array();
    for (int d = 0; d <= nerve.dimension(); ++d) {
        nlohmann::json level = nlohmann::json::array();
        for (const auto& s : nerve.simplices(d))
            level.push_back({{"vertices", nerve.spec().names(s.vertices)}, {"order", s.order.get_str()}});
        levels.push_back(std::move(level));
    }
    return {{"spec", spec_to_json(nerve.spec())}, {"dimension", nerve.dimension()}, {"simplices", std::move(levels)}};
}

} // namespace coxl2
