#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace coxl2 {

using VertexId = std::string;

/// Sorted list of canonical vertex indices (positions in the
/// lexicographically sorted vertex names of the owning spec).
using IndexSet = std::vector<std::size_t>;

/// An off-diagonal Coxeter matrix entry: an integer m >= 2 or infinity.
class Label {
public:
    static Label infinity() noexcept { return Label(); }
    static Label finite(std::uint32_t m);

    bool is_infinite() const noexcept { return m_ == 0; }
    bool is_finite() const noexcept { return m_ != 0; }
    /// Precondition: is_finite().
    std::uint32_t value() const noexcept { return m_; }

    std::string to_string() const;

    friend bool operator==(Label, Label) = default;

private:
    Label() = default;
    std::uint32_t m_ = 0; // 0 encodes infinity
};

struct Edge {
    VertexId u;
    VertexId v;
    Label m;
};

/// A Coxeter system given by its vertex set S and the symmetric matrix of
/// labels m_st. Pairs that are not stored carry label infinity; the diagonal
/// is implicitly 1 and is never stored. Immutable once built.
class CoxeterSpec {
public:
    /// The trivial Coxeter system (empty generating set).
    CoxeterSpec() = default;

    /// Throws Error on duplicate vertices, unknown endpoints, self-pairs, or
    /// a pair listed twice with different labels.
    CoxeterSpec(std::vector<VertexId> vertices, const std::vector<Edge>& edges);

    std::size_t size() const noexcept { return sorted_.size(); }
    bool empty() const noexcept { return sorted_.empty(); }

    /// Vertices in document order.
    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    /// Canonical index -> name; canonical order is lexicographic.
    const VertexId& name(std::size_t i) const { return sorted_[i]; }
    const std::vector<VertexId>& sorted_names() const noexcept { return sorted_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    /// Precondition: i != j, both < size().
    Label label(std::size_t i, std::size_t j) const { return labels_[i * size() + j]; }
    Label label(std::string_view u, std::string_view v) const;

    IndexSet all() const;
    /// Throws Error(UnknownVertex) for names not in the spec.
    IndexSet subset(const std::vector<VertexId>& names) const;
    std::vector<VertexId> names(const IndexSet& set) const;

    /// Finite-label pairs with u < v, sorted by (u, v).
    std::vector<Edge> finite_edges() const;

    friend bool operator==(const CoxeterSpec&, const CoxeterSpec&) = default;

private:
    std::vector<VertexId> vertices_;
    std::vector<VertexId> sorted_;
    std::vector<Label> labels_;
};

/// Parses the input document
///   {"vertices": [...], "edges": [{"u": .., "v": .., "m": 3 | "inf"}, ...]}.
CoxeterSpec parse_spec(std::string_view document);
CoxeterSpec spec_from_json(const nlohmann::json& doc);

/// Vertices in document order; finite edges sorted by (u, v). Infinite pairs
/// are omitted.
nlohmann::json spec_to_json(const CoxeterSpec& spec);
std::string serialize_spec(const CoxeterSpec& spec);

/// The Coxeter system generated by the given subset of vertices, keeping all
/// labels among them. Throws Error(UnknownVertex).
CoxeterSpec induced_subspec(const CoxeterSpec& spec, const std::vector<VertexId>& subset);
CoxeterSpec induced_subspec(const CoxeterSpec& spec, const IndexSet& subset);

/// Splits "a,b,c" into vertex names (empty items are dropped).
std::vector<VertexId> split_vertex_list(std::string_view list);

} // namespace coxl2
