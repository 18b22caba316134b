#include "coxl2/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "coxl2/error.hpp"

namespace coxl2 {

std::size_t SimpleGraph::edge_count() const noexcept
{
    std::size_t deg = 0;
    for (const auto& a : adj)
        deg += a.size();
    return deg / 2;
}

bool SimpleGraph::has_edge(std::size_t u, std::size_t v) const
{
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

std::vector<IndexSet> SimpleGraph::components() const
{
    std::vector<IndexSet> out;
    std::vector<char> seen(adj.size(), 0);
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (seen[s])
            continue;
        IndexSet comp;
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (auto u : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool SimpleGraph::is_connected() const
{
    return components().size() == 1;
}

SimpleGraph one_skeleton(const CoxeterSpec& spec)
{
    SimpleGraph g;
    g.adj.resize(spec.size());
    for (std::size_t u = 0; u < spec.size(); ++u)
        for (std::size_t v = 0; v < spec.size(); ++v)
            if (u != v && spec.label(u, v).is_finite())
                g.adj[u].push_back(v);
    return g;
}

bool rotation_matches(const SimpleGraph& graph, const RotationSystem& rot)
{
    if (rot.order.size() != graph.vertex_count())
        return false;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        IndexSet sorted = rot.order[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != graph.adj[v])
            return false;
    }
    return true;
}

RotationSystem rotation_from_json(const nlohmann::json& doc, const CoxeterSpec& spec)
{
    if (!doc.is_object())
        throw Error(ErrorCode::MalformedDocument, "rotation document must map vertex -> neighbour list");
    RotationSystem rot;
    rot.order.resize(spec.size());
    for (const auto& [name, list] : doc.items()) {
        auto v = spec.index_of(name);
        if (!v)
            throw Error(ErrorCode::UnknownVertex, "'" + name + "' in rotation is not a vertex");
        if (!list.is_array())
            throw Error(ErrorCode::MalformedDocument, "rotation of '" + name + "' must be a list");
        for (const auto& u : list) {
            if (!u.is_string())
                throw Error(ErrorCode::MalformedDocument, "rotation entry " + u.dump() + " is not a string");
            auto ui = spec.index_of(u.get<std::string>());
            if (!ui)
                throw Error(ErrorCode::UnknownVertex, "'" + u.get<std::string>() + "' in rotation is not a vertex");
            rot.order[*v].push_back(*ui);
        }
    }
    return rot;
}

RotationSystem parse_rotation(std::string_view document, const CoxeterSpec& spec)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    return rotation_from_json(doc, spec);
}

nlohmann::json rotation_to_json(const RotationSystem& rot, const CoxeterSpec& spec)
{
    nlohmann::json doc = nlohmann::json::object();
    for (std::size_t v = 0; v < rot.order.size(); ++v)
        doc[spec.name(v)] = spec.names(rot.order[v]);
    return doc;
}

namespace {

std::size_t successor(const IndexSet& cyc, std::size_t u)
{
    auto it = std::find(cyc.begin(), cyc.end(), u);
    ++it;
    return it == cyc.end() ? cyc.front() : *it;
}

// Faces of the (partial) embedding described by rot alone: darts are the
// entries of the rotation lists.
std::vector<IndexSet> trace(const std::vector<IndexSet>& rot)
{
    std::vector<IndexSet> faces;
    std::vector<std::vector<char>> used(rot.size());
    for (std::size_t v = 0; v < rot.size(); ++v)
        used[v].assign(rot[v].size(), 0);
    auto slot = [&](std::size_t u, std::size_t v) {
        return static_cast<std::size_t>(std::find(rot[u].begin(), rot[u].end(), v) - rot[u].begin());
    };
    for (std::size_t u0 = 0; u0 < rot.size(); ++u0) {
        IndexSet sorted = rot[u0];
        std::sort(sorted.begin(), sorted.end());
        for (auto v0 : sorted) {
            if (used[u0][slot(u0, v0)])
                continue;
            IndexSet walk;
            std::size_t u = u0, v = v0;
            while (!used[u][slot(u, v)]) {
                used[u][slot(u, v)] = 1;
                walk.push_back(u);
                std::size_t w = successor(rot[v], u);
                u = v;
                v = w;
            }
            faces.push_back(std::move(walk));
        }
    }
    return faces;
}

std::size_t count_faces(const std::vector<IndexSet>& rot)
{
    return trace(rot).size();
}

} // namespace

FaceSet trace_faces(const SimpleGraph& graph, const RotationSystem& rot)
{
    FaceSet fs;
    fs.faces = trace(rot.order);
    for (std::size_t v = 0; v < graph.vertex_count(); ++v)
        if (graph.adj[v].empty())
            fs.faces.push_back({v});
    return fs;
}

FaceSet faces_from_rotation(const SimpleGraph& graph, const RotationSystem& rot)
{
    if (!graph.is_connected())
        throw Error(ErrorCode::HypothesisViolated, "face tracing needs a connected graph");
    if (!rotation_matches(graph, rot))
        throw Error(ErrorCode::InvalidWitness, "rotation system does not match the edge set");
    FaceSet fs = trace_faces(graph, rot);
    const auto V = static_cast<long>(graph.vertex_count());
    const auto E = static_cast<long>(graph.edge_count());
    const auto F = static_cast<long>(fs.faces.size());
    if (V - E + F != 2)
        throw Error(ErrorCode::NotSpherical, "Euler characteristic V-E+F = " + std::to_string(V - E + F) + ", not 2");
    return fs;
}

bool is_sphere_rotation(const SimpleGraph& graph, const RotationSystem& rot)
{
    if (!rotation_matches(graph, rot))
        return false;
    const auto faces = trace_faces(graph, rot).faces;
    for (const auto& comp : graph.components()) {
        long E = 0;
        for (auto v : comp)
            E += static_cast<long>(graph.adj[v].size());
        E /= 2;
        long F = 0;
        for (const auto& f : faces)
            if (std::binary_search(comp.begin(), comp.end(), f.front()))
                ++F;
        if (static_cast<long>(comp.size()) - E + F != 2)
            return false;
    }
    return true;
}

namespace {

struct SearchNode {
    std::size_t placed;
    std::vector<IndexSet> rot;
};

class PlanarSearch {
public:
    PlanarSearch(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges)
        : n_(n), edges_(std::move(edges))
    {
    }

    // Children of a node in search order; each is a prefix embedding of
    // genus zero.
    std::vector<SearchNode> children(const SearchNode& node) const
    {
        std::vector<SearchNode> out;
        auto [u, w] = edges_[node.placed];
        const std::size_t nu = std::max<std::size_t>(node.rot[u].size(), 1);
        const std::size_t nw = std::max<std::size_t>(node.rot[w].size(), 1);
        for (std::size_t pu = 0; pu < nu; ++pu)
            for (std::size_t pw = 0; pw < nw; ++pw) {
                SearchNode child{node.placed + 1, node.rot};
                auto& ru = child.rot[u];
                auto& rw = child.rot[w];
                ru.insert(ru.begin() + static_cast<std::ptrdiff_t>(std::min(pu + 1, ru.size())), w);
                rw.insert(rw.begin() + static_cast<std::ptrdiff_t>(std::min(pw + 1, rw.size())), u);
                if (genus_zero(child))
                    out.push_back(std::move(child));
            }
        return out;
    }

    bool complete(const SearchNode& node) const { return node.placed == edges_.size(); }

    std::optional<std::vector<IndexSet>> dfs(const SearchNode& node) const
    {
        if (complete(node))
            return node.rot;
        for (const auto& c : children(node))
            if (auto r = dfs(c))
                return r;
        return std::nullopt;
    }

    SearchNode root() const { return {0, std::vector<IndexSet>(n_)}; }

private:
    bool genus_zero(const SearchNode& node) const
    {
        long V = 0;
        for (const auto& r : node.rot)
            V += r.empty() ? 0 : 1;
        const auto E = static_cast<long>(node.placed);
        const auto F = static_cast<long>(count_faces(node.rot));
        return V - E + F == 2;
    }

    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Edge order in which every prefix is connected.
std::vector<std::pair<std::size_t, std::size_t>> connected_edge_order(const SimpleGraph& g, std::size_t root)
{
    std::vector<std::pair<std::size_t, std::size_t>> order;
    std::vector<char> touched(g.vertex_count(), 0);
    std::vector<std::size_t> queue{root};
    touched[root] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto u = queue[head];
        for (auto w : g.adj[u]) {
            if (touched[w] == 2)
                continue; // edge already listed from w's side
            order.push_back({u, w});
            if (!touched[w]) {
                touched[w] = 1;
                queue.push_back(w);
            }
        }
        touched[u] = 2;
    }
    return order;
}

std::optional<std::vector<IndexSet>> search_component(const SimpleGraph& g, std::size_t root, Exec exec)
{
    PlanarSearch search(g.vertex_count(), connected_edge_order(g, root));
    if (exec == Exec::Serial)
        return search.dfs(search.root());

    // Expand breadth-first to a frontier (kept in DFS order), then search
    // the subtrees in parallel and keep the first success in that order.
    std::vector<SearchNode> frontier{search.root()};
    const std::size_t want = 8 * static_cast<std::size_t>(std::max(thread_count(), 1));
    while (frontier.size() < want) {
        if (std::any_of(frontier.begin(), frontier.end(), [&](const auto& n) { return search.complete(n); }))
            break;
        std::vector<SearchNode> next;
        for (const auto& node : frontier)
            for (auto& c : search.children(node))
                next.push_back(std::move(c));
        if (next.empty())
            return std::nullopt;
        frontier = std::move(next);
    }

    const auto count = static_cast<std::ptrdiff_t>(frontier.size());
    std::vector<std::optional<std::vector<IndexSet>>> found(frontier.size());
    std::atomic<std::ptrdiff_t> best{std::numeric_limits<std::ptrdiff_t>::max()};
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        if (i > best.load())
            continue;
        found[static_cast<std::size_t>(i)] = search.dfs(frontier[static_cast<std::size_t>(i)]);
        if (found[static_cast<std::size_t>(i)]) {
            auto cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }
    for (auto& f : found)
        if (f)
            return f;
    return std::nullopt;
}

} // namespace

std::optional<RotationSystem> find_planar_rotation(const SimpleGraph& graph, Exec exec)
{
    const std::size_t n = graph.vertex_count();
    if (n > kPlanarOracleMaxVertices)
        throw Error(ErrorCode::TooLarge, "planarity oracle limited to " + std::to_string(kPlanarOracleMaxVertices) +
                                             " vertices, got " + std::to_string(n));
    if (n >= 3 && graph.edge_count() > 3 * n - 6)
        return std::nullopt;

    RotationSystem rot;
    rot.order.resize(n);
    for (const auto& comp : graph.components()) {
        if (comp.size() == 1)
            continue;
        auto r = search_component(graph, comp.front(), exec);
        if (!r)
            return std::nullopt;
        for (auto v : comp)
            rot.order[v] = (*r)[v];
    }
    return rot;
}

bool brute_force_planar(const SimpleGraph& graph, Exec exec)
{
    return find_planar_rotation(graph, exec).has_value();
}

} // namespace coxl2
