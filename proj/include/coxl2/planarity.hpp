#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxl2/embedding.hpp"
#include "coxl2/l2_calculus.hpp"
#include "coxl2/nerve.hpp"

namespace coxl2 {

struct ConeResult {
    Nerve sphere;                         // recognized as TwoSphere
    SubcomplexWitness witness;            // A inside the sphere
    std::vector<VertexId> cone_vertices;  // one per coned face, in face order
    std::vector<IndexSet> faces;          // faces of A's embedding (A's indices)
    std::vector<std::string> notes;
};

/// Completes a planar metric flag complex A to a 2-sphere nerve: one new
/// vertex inside each face that is not already a 2-simplex of A, joined to
/// the face boundary by edges labeled 2. Requires A connected, dim A <= 2,
/// every face boundary a simple cycle and every 2-simplex of A a face.
/// Throws Error(NonSimpleFaceBoundary), Error(NotSpherical),
/// Error(DimensionTooHigh), Error(HypothesisViolated).
ConeResult cone_construction(const Nerve& A, const RotationSystem& rot);

enum class Verdict { NotPlanar, Inconclusive };
enum class InconclusiveReason { DimensionTooHigh, FiniteGroup, ObstructionSilent };

const char* verdict_name(Verdict v) noexcept;
const char* reason_name(InconclusiveReason r) noexcept;

struct Citation {
    std::string statement; // stable id, e.g. "chi-orb", "planar-vanishing"
    std::string applied_to;
    std::string values;
};

/// Machine-checkable record of the deduction b_2 > 0 for a metric flag
/// complex, which contradicts the vanishing of b_2 for planar ones.
struct Certificate {
    Verdict verdict = Verdict::Inconclusive;
    CoxeterSpec subject;
    Rational beta2_lower_bound = 0;
    std::vector<Citation> chain;
    std::optional<InconclusiveReason> reason;
    std::vector<std::string> notes;
    std::vector<Certificate> components; // disconnected subjects only

    nlohmann::json to_json() const;
};

/// Never answers "planar": the obstruction only detects non-planarity.
Certificate certify_nonplanar(const CoxeterSpec& spec);

/// Re-derives every value cited by a certificate from its subject.
bool recheck_certificate(const Certificate& cert);

struct TraceStep {
    VertexId removed;
    std::vector<VertexId> before;       // B
    std::vector<VertexId> after;        // B' = B - v
    Subcomplex link;                    // B_v, the link of v in B
    bool link_full_in_ambient = false;  // B_v full in L
    bool link_in_circle = false;        // L_v is a circle and B_v is full in it
    bool right_angled_complement = false; // B' keeps a right-angled complement
    std::string justification;
};

/// Vertex-removal induction from the 2-sphere nerve L down to A: at each step
/// B = B' u C_2 B_v and Mayer-Vietoris carries b_i = 0 (i > 1) from B to B'.
struct ProofTrace {
    CoxeterSpec ambient;
    std::vector<VertexId> target;
    std::vector<TraceStep> steps;
    std::string base_case;
    std::string conclusion;
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
};

/// Removal order is lexicographic. Throws Error(HypothesisViolated) if L is
/// not a 2-sphere nerve, A lacks a right-angled complement, or a link fails
/// to be full.
ProofTrace trace_vanishing(const Nerve& L, const std::vector<VertexId>& A);

} // namespace coxl2
