#include "coxl2/planarity.hpp"

#include <algorithm>
#include <set>

#include "coxl2/error.hpp"
#include "coxl2/spherical.hpp"

namespace coxl2 {

namespace {

std::string braces(const std::vector<VertexId>& names)
{
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? "," : "") + names[i];
    return out + "}";
}

std::string f_vector(const Nerve& n)
{
    std::string out = "(";
    for (int d = 0; d <= n.dimension(); ++d)
        out += (d ? ", " : "") + std::to_string(n.count(d));
    return out + ")";
}

void note_infinite_pairs(const CoxeterSpec& spec, const std::vector<VertexId>& A, std::vector<std::string>& notes)
{
    auto pairs = infinite_pairs_leaving(spec, A);
    if (pairs.empty())
        return;
    std::string joined;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        joined += (i ? ", " : "") + pairs[i];
    notes.push_back("infinite-label pairs with an endpoint outside the subcomplex are not edges of the nerve and "
                    "were accepted by the right-angled complement check: " +
                    joined);
}

} // namespace

ConeResult cone_construction(const Nerve& A, const RotationSystem& rot)
{
    const auto& spec = A.spec();
    if (!A.is_connected())
        throw Error(ErrorCode::HypothesisViolated, "coning needs a connected complex");
    if (A.dimension() > 2)
        throw Error(ErrorCode::DimensionTooHigh, "complex has dimension " + std::to_string(A.dimension()));

    const SimpleGraph g = one_skeleton(spec);
    FaceSet fs = faces_from_rotation(g, rot);

    for (const auto& f : fs.faces) {
        IndexSet sorted = f;
        std::sort(sorted.begin(), sorted.end());
        if (f.size() < 3 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorCode::NonSimpleFaceBoundary,
                        "face boundary " + braces(spec.names(f)) + " is not a simple cycle");
    }

    // Each 2-simplex of A fills exactly one face; every other face is coned.
    std::set<IndexSet> unfilled;
    for (const auto& t : A.simplices(2))
        unfilled.insert(t.vertices);
    std::vector<bool> cone_face(fs.faces.size(), true);
    for (std::size_t i = 0; i < fs.faces.size(); ++i) {
        if (fs.faces[i].size() != 3)
            continue;
        IndexSet key = fs.faces[i];
        std::sort(key.begin(), key.end());
        if (unfilled.erase(key))
            cone_face[i] = false;
    }
    if (!unfilled.empty())
        throw Error(ErrorCode::HypothesisViolated,
                    "2-simplex " + braces(spec.names(*unfilled.begin())) + " is not a face of the embedding");

    ConeResult out;
    std::vector<VertexId> vertices = spec.vertices();
    std::vector<Edge> edges = spec.finite_edges();
    std::set<VertexId> taken(vertices.begin(), vertices.end());
    std::size_t k = 0;
    for (std::size_t i = 0; i < fs.faces.size(); ++i) {
        if (!cone_face[i])
            continue;
        VertexId name = "c" + std::to_string(++k);
        while (taken.count(name))
            name += "'";
        taken.insert(name);
        vertices.push_back(name);
        out.cone_vertices.push_back(name);
        for (auto v : fs.faces[i])
            edges.push_back({name, spec.name(v), Label::finite(2)});
    }

    Nerve sphere = build_nerve(CoxeterSpec(std::move(vertices), edges));
    if (recognize_sphere(sphere) != SphereType::TwoSphere)
        throw Error(ErrorCode::NotSpherical, "coned complex is not a triangulated 2-sphere; a cone point spans an extra simplex (face with a chord, or a 2-simplex bounding two faces)");

    auto [sub, witness] = full_subcomplex(sphere, spec.sorted_names());
    out.witness = std::move(witness);
    out.faces = std::move(fs.faces);
    note_infinite_pairs(sphere.spec(), spec.sorted_names(), out.notes);
    out.sphere = std::move(sphere);
    return out;
}

const char* verdict_name(Verdict v) noexcept
{
    return v == Verdict::NotPlanar ? "NotPlanar" : "Inconclusive";
}

const char* reason_name(InconclusiveReason r) noexcept
{
    switch (r) {
    case InconclusiveReason::DimensionTooHigh: return "DimensionTooHigh";
    case InconclusiveReason::FiniteGroup: return "FiniteGroup";
    case InconclusiveReason::ObstructionSilent: return "ObstructionSilent";
    }
    return "?";
}

namespace {

Certificate certify_connected(const CoxeterSpec& spec, const Nerve& nerve)
{
    Certificate cert;
    cert.subject = spec;
    const std::string subject = braces(spec.sorted_names());
    cert.chain.push_back({"nerve", subject,
                          "dimension " + std::to_string(nerve.dimension()) + ", f-vector " + f_vector(nerve)});

    if (nerve.dimension() > 2) {
        cert.reason = InconclusiveReason::DimensionTooHigh;
        return cert;
    }
    const auto whole = classify(spec, spec.all());
    if (whole.spherical) {
        cert.reason = InconclusiveReason::FiniteGroup;
        cert.chain.push_back({"finite-group", "W", "W is finite of type " + whole.type_name() + ", order " +
                                                         whole.order.get_str()});
        return cert;
    }

    const Beta2Bound bound = betti_lower_bound_dim2(nerve);
    cert.chain.push_back({"chi-orb", "K = |S|", "chi_orb = " + to_string(bound.chi)});
    cert.chain.push_back({"beta0-infinite", "W", "W infinite, so b_0 = 0"});
    cert.chain.push_back({"atiyah-bound", "dim L <= 2",
                          "chi_orb = -b_1 + b_2 - b_3 <= b_2, so b_2 >= " + to_string(bound.chi)});
    if (bound.join_beta2) {
        std::string factors;
        for (std::size_t f = 0; f < bound.join_factors.size(); ++f)
            factors += (f ? " *2 " : "") + braces(bound.join_factors[f]) + bound.factor_betti[f].to_string();
        cert.chain.push_back({"join-kunneth", factors, "b_2 = " + to_string(*bound.join_beta2)});
    }
    cert.beta2_lower_bound = bound.value;
    if (bound.value > 0) {
        cert.verdict = Verdict::NotPlanar;
        cert.chain.push_back({"planar-vanishing", "planar metric flag complexes of dimension <= 2",
                              "b_2 = 0 if planar, but b_2 >= " + to_string(bound.value) + " > 0 (" +
                                  bound.provenance + "); not planar"});
    } else {
        cert.reason = InconclusiveReason::ObstructionSilent;
    }
    return cert;
}

} // namespace

Certificate certify_nonplanar(const CoxeterSpec& spec)
{
    const Nerve nerve = build_nerve(spec);
    const SimpleGraph g = one_skeleton(spec);
    const auto comps = g.components();
    if (comps.size() <= 1)
        return certify_connected(spec, nerve);

    Certificate cert;
    cert.subject = spec;
    cert.notes.push_back("subject is disconnected; each component is certified separately and a non-planar "
                         "component makes the whole complex non-planar");
    for (const auto& c : comps) {
        CoxeterSpec sub = induced_subspec(spec, c);
        Nerve n = build_nerve(sub);
        Certificate part = certify_connected(sub, n);
        if (part.verdict == Verdict::NotPlanar &&
            (cert.verdict != Verdict::NotPlanar || part.beta2_lower_bound > cert.beta2_lower_bound)) {
            cert.verdict = Verdict::NotPlanar;
            cert.beta2_lower_bound = part.beta2_lower_bound;
            cert.chain = part.chain;
            cert.chain.insert(cert.chain.begin(),
                              {"component", braces(sub.sorted_names()), "connected component of the subject"});
        }
        cert.components.push_back(std::move(part));
    }
    if (cert.verdict != Verdict::NotPlanar)
        cert.reason = InconclusiveReason::ObstructionSilent;
    return cert;
}

bool recheck_certificate(const Certificate& cert)
{
    if (cert.verdict == Verdict::NotPlanar && cert.beta2_lower_bound <= 0)
        return false;
    return certify_nonplanar(cert.subject).to_json() == cert.to_json();
}

nlohmann::json Certificate::to_json() const
{
    nlohmann::json chain_doc = nlohmann::json::array();
    for (const auto& c : chain)
        chain_doc.push_back({{"statement", c.statement}, {"applied_to", c.applied_to}, {"values", c.values}});
    nlohmann::json doc = {
        {"verdict", verdict_name(verdict)},
        {"subject", spec_to_json(subject)},
        {"beta2_lower_bound", to_string(beta2_lower_bound)},
        {"chain", std::move(chain_doc)},
    };
    if (reason)
        doc["reason"] = reason_name(*reason);
    if (!notes.empty())
        doc["notes"] = notes;
    if (!components.empty()) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& c : components)
            parts.push_back(c.to_json());
        doc["components"] = std::move(parts);
    }
    return doc;
}

namespace {

bool is_circle(const Subcomplex& s)
{
    if (s.vertices.size() < 3)
        return false;
    std::vector<std::vector<std::size_t>> adj(s.vertices.size());
    auto idx = [&](const VertexId& v) {
        return static_cast<std::size_t>(std::lower_bound(s.vertices.begin(), s.vertices.end(), v) - s.vertices.begin());
    };
    for (const auto& t : s.simplices) {
        if (t.size() > 2)
            return false;
        if (t.size() == 2) {
            adj[idx(t[0])].push_back(idx(t[1]));
            adj[idx(t[1])].push_back(idx(t[0]));
        }
    }
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

// Every simplex of `outer` spanned by inner.vertices lies in inner.
bool full_in(const Subcomplex& outer, const Subcomplex& inner)
{
    std::set<VertexId> vs(inner.vertices.begin(), inner.vertices.end());
    std::set<std::vector<VertexId>> have(inner.simplices.begin(), inner.simplices.end());
    for (const auto& t : outer.simplices) {
        if (std::all_of(t.begin(), t.end(), [&](const auto& v) { return vs.count(v) > 0; }) && !have.count(t))
            return false;
    }
    return true;
}

} // namespace

ProofTrace trace_vanishing(const Nerve& L, const std::vector<VertexId>& A)
{
    const auto& spec = L.spec();
    if (recognize_sphere(L) != SphereType::TwoSphere)
        throw Error(ErrorCode::HypothesisViolated, "ambient nerve is not a triangulated 2-sphere");
    const std::vector<VertexId> target = spec.names(spec.subset(A));
    if (!has_right_angled_complement(spec, target))
        throw Error(ErrorCode::HypothesisViolated, braces(target) + " has no right-angled complement");

    ProofTrace trace;
    trace.ambient = spec;
    trace.target = target;
    trace.base_case = "B = L is a metric flag triangulation of the 2-sphere, so h_i(L) = 0 for all i";
    note_infinite_pairs(spec, target, trace.notes);

    std::vector<VertexId> B = spec.sorted_names();
    std::vector<VertexId> removal;
    std::set_difference(B.begin(), B.end(), target.begin(), target.end(), std::back_inserter(removal));

    for (const auto& v : removal) {
        TraceStep step;
        step.removed = v;
        step.before = B;
        step.after.reserve(B.size() - 1);
        for (const auto& u : B)
            if (u != v)
                step.after.push_back(u);

        const Nerve Bn = full_subcomplex(L, B).first;
        step.link = link(Bn, v, target);
        step.link_full_in_ambient = is_full_subcomplex(L, step.link);
        if (!step.link_full_in_ambient)
            throw Error(ErrorCode::HypothesisViolated, "link of " + v + " in B is not full in L");
        const Subcomplex Lv = link(L, v);
        step.link_in_circle = is_circle(Lv) && full_in(Lv, step.link);
        if (!step.link_in_circle)
            throw Error(ErrorCode::HypothesisViolated, "link of " + v + " in B is not a full subcomplex of the circle L_" + v);
        step.right_angled_complement = has_right_angled_complement(spec, step.after);
        if (!step.right_angled_complement)
            throw Error(ErrorCode::HypothesisViolated, braces(step.after) + " lost its right-angled complement");

        step.justification =
            "B = B' u C_2 B_v with B_v = " + braces(step.link.vertices) +
            " full in L; B_v is a full subcomplex of the circle L_" + v +
            ", so h_i(B_v) = 0 for i > 1; the cone rule gives h_i(C_2 B_v) = 0 for i > 1; "
            "Mayer-Vietoris h_i(B_v) -> h_i(B') + h_i(C_2 B_v) -> h_i(B) with h_i(B) = 0 gives h_i(B') = 0 for i > 1";
        trace.steps.push_back(std::move(step));
        B = trace.steps.back().after;
    }
    trace.conclusion = "b_i(" + braces(target) + ") = 0 for i > 1";
    return trace;
}

nlohmann::json ProofTrace::to_json() const
{
    nlohmann::json steps_doc = nlohmann::json::array();
    for (const auto& s : steps) {
        steps_doc.push_back({
            {"removed", s.removed},
            {"B", s.before},
            {"B_prime", s.after},
            {"link", {{"vertices", s.link.vertices}, {"simplices", s.link.simplices}}},
            {"link_full_in_ambient", s.link_full_in_ambient},
            {"link_full_in_circle", s.link_in_circle},
            {"right_angled_complement", s.right_angled_complement},
            {"justification", s.justification},
        });
    }
    nlohmann::json doc = {
        {"ambient", spec_to_json(ambient)},
        {"target", target},
        {"base_case", base_case},
        {"steps", std::move(steps_doc)},
        {"conclusion", conclusion},
    };
    if (!notes.empty())
        doc["notes"] = notes;
    return doc;
}

} // namespace coxl2
