#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "coxl2/core_model.hpp"
#include "coxl2/exec.hpp"

namespace coxl2 {

/// Simple undirected graph on canonical vertex indices; adjacency sorted.
struct SimpleGraph {
    std::vector<IndexSet> adj;

    std::size_t vertex_count() const noexcept { return adj.size(); }
    std::size_t edge_count() const noexcept;
    bool has_edge(std::size_t u, std::size_t v) const;
    bool is_connected() const; // false for the empty graph
    std::vector<IndexSet> components() const;
};

/// 1-skeleton of the nerve: pairs with a finite label.
SimpleGraph one_skeleton(const CoxeterSpec& spec);

/// Cyclic order of the neighbours around each vertex.
struct RotationSystem {
    std::vector<IndexSet> order; // not sorted: order[v] is a cyclic sequence

    friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
};

/// Checks that every vertex lists exactly its graph neighbours once.
bool rotation_matches(const SimpleGraph& graph, const RotationSystem& rot);

/// Reads {"v": ["n1", "n2", ...], ...}; vertices not mentioned have an empty
/// rotation. Throws Error(MalformedDocument / UnknownVertex).
RotationSystem parse_rotation(std::string_view document, const CoxeterSpec& spec);
RotationSystem rotation_from_json(const nlohmann::json& doc, const CoxeterSpec& spec);
nlohmann::json rotation_to_json(const RotationSystem& rot, const CoxeterSpec& spec);

/// Boundary walks of the regions of an embedding. Each face lists the
/// vertices met along its closed walk; an isolated vertex is one face [v].
struct FaceSet {
    std::vector<IndexSet> faces;
};

/// Face tracing: the dart u->v is followed by v->w, w the successor of u in
/// the rotation at v. Works for any graph; no Euler check.
FaceSet trace_faces(const SimpleGraph& graph, const RotationSystem& rot);

/// trace_faces plus the sphere check V - E + F = 2. Requires a connected
/// graph (Error(HypothesisViolated) otherwise) and a matching rotation
/// (Error(InvalidWitness)); throws Error(NotSpherical) on a positive-genus
/// rotation.
FaceSet faces_from_rotation(const SimpleGraph& graph, const RotationSystem& rot);

/// Per-component sphere check for possibly disconnected graphs.
bool is_sphere_rotation(const SimpleGraph& graph, const RotationSystem& rot);

inline constexpr std::size_t kPlanarOracleMaxVertices = 10;

/// Exhaustive search for a rotation system passing the Euler check. Edges
/// are inserted one at a time (each prefix connected) in every cyclic
/// position; a prefix whose embedding already has positive genus is pruned,
/// which loses nothing because genus never drops when edges are added.
/// Throws Error(TooLarge) beyond kPlanarOracleMaxVertices.
std::optional<RotationSystem> find_planar_rotation(const SimpleGraph& graph, Exec exec = Exec::Parallel);
bool brute_force_planar(const SimpleGraph& graph, Exec exec = Exec::Parallel);

} // namespace coxl2
