#include "coxl2/core_model.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "coxl2/error.hpp"

namespace coxl2 {

Label Label::finite(std::uint32_t m)
{
    if (m < 2)
        throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(m) + " < 2");
    Label l;
    l.m_ = m;
    return l;
}

std::string Label::to_string() const
{
    return is_infinite() ? std::string("inf") : std::to_string(m_);
}

CoxeterSpec::CoxeterSpec(std::vector<VertexId> vertices, const std::vector<Edge>& edges)
    : vertices_(std::move(vertices)), sorted_(vertices_)
{
    std::sort(sorted_.begin(), sorted_.end());
    auto dup = std::adjacent_find(sorted_.begin(), sorted_.end());
    if (dup != sorted_.end())
        throw Error(ErrorCode::DuplicateVertex, "vertex '" + *dup + "' listed twice");

    const std::size_t n = sorted_.size();
    labels_.assign(n * n, Label::infinity());
    std::vector<char> seen(n * n, 0);
    for (const auto& e : edges) {
        auto i = index_of(e.u);
        auto j = index_of(e.v);
        if (!i)
            throw Error(ErrorCode::UnknownVertex, "edge endpoint '" + e.u + "'");
        if (!j)
            throw Error(ErrorCode::UnknownVertex, "edge endpoint '" + e.v + "'");
        if (*i == *j)
            throw Error(ErrorCode::MalformedDocument, "edge joins '" + e.u + "' to itself");
        const std::size_t a = *i * n + *j;
        const std::size_t b = *j * n + *i;
        if (seen[a] && labels_[a] != e.m)
            throw Error(ErrorCode::ConflictingEdge,
                        "pair {" + e.u + ", " + e.v + "} has labels " + labels_[a].to_string() +
                            " and " + e.m.to_string());
        seen[a] = seen[b] = 1;
        labels_[a] = labels_[b] = e.m;
    }
}

std::optional<std::size_t> CoxeterSpec::index_of(std::string_view name) const
{
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), name);
    if (it == sorted_.end() || *it != name)
        return std::nullopt;
    return static_cast<std::size_t>(it - sorted_.begin());
}

Label CoxeterSpec::label(std::string_view u, std::string_view v) const
{
    auto i = index_of(u);
    auto j = index_of(v);
    if (!i || !j)
        throw Error(ErrorCode::UnknownVertex, "pair {" + std::string(u) + ", " + std::string(v) + "}");
    return label(*i, *j);
}

IndexSet CoxeterSpec::all() const
{
    IndexSet s(size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = i;
    return s;
}

IndexSet CoxeterSpec::subset(const std::vector<VertexId>& names) const
{
    IndexSet s;
    s.reserve(names.size());
    for (const auto& v : names) {
        auto i = index_of(v);
        if (!i)
            throw Error(ErrorCode::UnknownVertex, "'" + v + "' is not a vertex");
        s.push_back(*i);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<VertexId> CoxeterSpec::names(const IndexSet& set) const
{
    std::vector<VertexId> out;
    out.reserve(set.size());
    for (auto i : set)
        out.push_back(sorted_[i]);
    return out;
}

std::vector<Edge> CoxeterSpec::finite_edges() const
{
    std::vector<Edge> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (label(i, j).is_finite())
                out.push_back({sorted_[i], sorted_[j], label(i, j)});
    return out;
}

namespace {

Label label_from_json(const nlohmann::json& m)
{
    if (m.is_string()) {
        if (m.get<std::string>() == "inf")
            return Label::infinity();
        throw Error(ErrorCode::InvalidLabel, "label \"" + m.get<std::string>() + "\" is not an integer or \"inf\"");
    }
    if (m.is_number_integer()) {
        auto v = m.get<std::int64_t>();
        if (v < 2)
            throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(v) + " < 2");
        if (v > UINT32_MAX)
            throw Error(ErrorCode::InvalidLabel, "label " + std::to_string(v) + " too large");
        return Label::finite(static_cast<std::uint32_t>(v));
    }
    throw Error(ErrorCode::InvalidLabel, "label " + m.dump() + " is not an integer or \"inf\"");
}

} // namespace

CoxeterSpec spec_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw Error(ErrorCode::MalformedDocument, "spec document must be an object");
    std::vector<VertexId> vertices;
    if (doc.contains("vertices")) {
        const auto& vs = doc.at("vertices");
        if (!vs.is_array())
            throw Error(ErrorCode::MalformedDocument, "'vertices' must be a list");
        for (const auto& v : vs) {
            if (!v.is_string())
                throw Error(ErrorCode::MalformedDocument, "vertex " + v.dump() + " is not a string");
            vertices.push_back(v.get<std::string>());
        }
    }
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        const auto& es = doc.at("edges");
        if (!es.is_array())
            throw Error(ErrorCode::MalformedDocument, "'edges' must be a list");
        for (const auto& e : es) {
            if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("m"))
                throw Error(ErrorCode::MalformedDocument, "edge " + e.dump() + " needs fields u, v, m");
            if (!e.at("u").is_string() || !e.at("v").is_string())
                throw Error(ErrorCode::MalformedDocument, "edge endpoints must be strings in " + e.dump());
            edges.push_back({e.at("u").get<std::string>(), e.at("v").get<std::string>(), label_from_json(e.at("m"))});
        }
    }
    return CoxeterSpec(std::move(vertices), edges);
}

CoxeterSpec parse_spec(std::string_view document)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    return spec_from_json(doc);
}

nlohmann::json spec_to_json(const CoxeterSpec& spec)
{
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : spec.finite_edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"m", e.m.value()}});
    return {{"vertices", spec.vertices()}, {"edges", std::move(edges)}};
}

std::string serialize_spec(const CoxeterSpec& spec)
{
    return spec_to_json(spec).dump(2);
}

CoxeterSpec induced_subspec(const CoxeterSpec& spec, const IndexSet& subset)
{
    std::vector<char> keep(spec.size(), 0);
    for (auto i : subset) {
        if (i >= spec.size())
            throw Error(ErrorCode::UnknownVertex, "index " + std::to_string(i) + " out of range");
        keep[i] = 1;
    }
    std::vector<VertexId> vertices;
    for (const auto& v : spec.vertices())
        if (keep[*spec.index_of(v)])
            vertices.push_back(v);
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            auto l = spec.label(subset[a], subset[b]);
            if (l.is_finite())
                edges.push_back({spec.name(subset[a]), spec.name(subset[b]), l});
        }
    return CoxeterSpec(std::move(vertices), edges);
}

CoxeterSpec induced_subspec(const CoxeterSpec& spec, const std::vector<VertexId>& subset)
{
    return induced_subspec(spec, spec.subset(subset));
}

std::vector<VertexId> split_vertex_list(std::string_view list)
{
    std::vector<VertexId> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto end = list.find(',', start);
        if (end == std::string_view::npos)
            end = list.size();
        auto item = list.substr(start, end - start);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (!item.empty())
            out.emplace_back(item);
        start = end + 1;
    }
    return out;
}

} // namespace coxl2
