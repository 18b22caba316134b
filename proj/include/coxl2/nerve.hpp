#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "coxl2/core_model.hpp"
#include "coxl2/exec.hpp"

namespace coxl2 {

struct Simplex {
    IndexSet vertices;
    mpz_class order; // |W_T| of the spherical subset

    friend bool operator==(const Simplex&, const Simplex&) = default;
};

inline constexpr std::size_t kDefaultSimplexCap = 1'000'000;

/// The nerve L of a Coxeter system: the simplicial complex on S whose
/// simplices are the nonempty spherical subsets. Edge labels live in the
/// spec. Simplices are stored by dimension in lexicographic order.
class Nerve {
public:
    const CoxeterSpec& spec() const noexcept { return spec_; }
    /// -1 for the empty nerve.
    int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t vertex_count() const noexcept { return spec_.size(); }
    /// Simplices of dimension d (empty for d out of range).
    const std::vector<Simplex>& simplices(int d) const;
    std::size_t simplex_count() const noexcept;
    std::size_t count(int d) const { return simplices(d).size(); }

    bool contains(const IndexSet& t) const;
    /// Order of W_T for a simplex t; nullopt if t is not a simplex.
    std::optional<mpz_class> order(const IndexSet& t) const;

    /// Vertices joined to v by an edge of L (finite label).
    IndexSet neighbors(std::size_t v) const;
    bool is_connected() const;

    friend bool operator==(const Nerve&, const Nerve&) = default;

private:
    friend Nerve build_nerve(const CoxeterSpec&, std::size_t, Exec);
    CoxeterSpec spec_;
    std::vector<std::vector<Simplex>> by_dim_;
};

/// Enumerates the spherical subsets by clique extension over the
/// finite-label graph. Throws Error(CapExceeded) past `cap` simplices.
Nerve build_nerve(const CoxeterSpec& spec, std::size_t cap = kDefaultSimplexCap, Exec exec = Exec::Parallel);

/// A subcomplex given by vertex names and its simplices (names, canonical
/// order). Used for links, whose simplices are not determined by the vertex
/// set alone.
struct Subcomplex {
    std::vector<VertexId> vertices;
    std::vector<std::vector<VertexId>> simplices;
    bool full = false;               // full in the nerve it was taken from
    bool fullness_asserted = false;  // full was required by a hypothesis check
};

/// True iff every simplex of `ambient` spanned by sub.vertices is in sub.
bool is_full_subcomplex(const Nerve& ambient, const Subcomplex& sub);
Subcomplex as_subcomplex(const Nerve& nerve);

struct SubcomplexWitness {
    CoxeterSpec ambient;
    std::vector<VertexId> vertex_set;
    bool full = false;
    bool right_angled_complement = false;
};

/// The nerve of the induced sub-system on A, plus a witness with fullness
/// (checked against the ambient simplices) and right-angled complement.
std::pair<Nerve, SubcomplexWitness> full_subcomplex(const Nerve& nerve, const std::vector<VertexId>& A);

/// Every finite label other than 2 has both endpoints in A. Infinite pairs
/// are not edges of L and never disqualify.
bool has_right_angled_complement(const CoxeterSpec& spec, const std::vector<VertexId>& A);
bool has_right_angled_complement(const Nerve& nerve, const std::vector<VertexId>& A);

/// Infinite-label pairs with at least one endpoint outside A, as "u-v".
std::vector<std::string> infinite_pairs_leaving(const CoxeterSpec& spec, const std::vector<VertexId>& A);

/// Link of v: { T : T + v is a simplex, v not in T }. If `rac_target` is
/// given, has a right-angled complement in `nerve`, and does not contain v,
/// the link must be full; a non-full link throws Error(HypothesisViolated).
Subcomplex link(const Nerve& nerve, const VertexId& v,
                const std::optional<std::vector<VertexId>>& rac_target = std::nullopt);

/// Right-angled join: all cross pairs labeled 2. Colliding names in the
/// second factor get "'" appended until fresh.
Nerve join2(const Nerve& a, const Nerve& b);
/// Right-angled cone over n with a fresh apex named "P" (primed on collision).
Nerve cone2(const Nerve& n);
/// Name of the apex cone2 would add.
VertexId fresh_name(const CoxeterSpec& spec, const VertexId& base);

enum class SphereType { Circle, TwoSphere, Neither };
const char* sphere_type_name(SphereType t) noexcept;
SphereType recognize_sphere(const Nerve& nerve);

/// Finest right-angled join decomposition: connected components of the graph
/// of pairs with label != 2 (infinite pairs included). Absent when there is
/// only one component or fewer than two vertices.
std::optional<std::vector<std::vector<VertexId>>> detect_join2(const Nerve& nerve);

nlohmann::json nerve_to_json(const Nerve& nerve);

} // namespace coxl2
