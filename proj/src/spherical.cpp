#include "coxl2/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "coxl2/error.hpp"

namespace coxl2 {

namespace {

bool diagram_edge(Label l) { return l.is_infinite() || l.value() >= 3; }

mpz_class factorial(std::uint32_t n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

mpz_class pow2(std::uint32_t n)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
    return p;
}

FiniteTypeComponent make(FiniteFamily family, std::uint32_t rank, const IndexSet& vertices, std::uint32_t m = 0)
{
    return {family, rank, m, finite_type_order(family, rank, m), vertices};
}

// Matches one connected diagram component. Finite irreducible diagrams are
// trees: paths A_n, B_n, F4, H3, H4, I2(m) and the branched D_n, E6..E8.
std::optional<FiniteTypeComponent> match_component(const CoxeterSpec& spec, const IndexSet& c)
{
    const std::size_t n = c.size();
    if (n == 1)
        return make(FiniteFamily::A, 1, c);

    std::vector<std::vector<std::size_t>> adj(n);
    std::size_t edges = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            Label l = spec.label(c[a], c[b]);
            if (!diagram_edge(l))
                continue;
            if (l.is_infinite())
                return std::nullopt;
            adj[a].push_back(b);
            adj[b].push_back(a);
            ++edges;
        }
    auto lab = [&](std::size_t a, std::size_t b) { return spec.label(c[a], c[b]).value(); };

    if (n == 2) {
        std::uint32_t m = lab(0, 1);
        if (m == 3)
            return make(FiniteFamily::A, 2, c);
        if (m == 4)
            return make(FiniteFamily::B, 2, c);
        return make(FiniteFamily::I, 2, c, m);
    }

    if (edges != n - 1)
        return std::nullopt; // contains a cycle

    std::size_t branch = n;
    for (std::size_t a = 0; a < n; ++a) {
        if (adj[a].size() > 3)
            return std::nullopt;
        if (adj[a].size() == 3) {
            if (branch != n)
                return std::nullopt;
            branch = a;
        }
    }

    if (branch != n) {
        std::vector<std::uint32_t> arms;
        for (std::size_t start : adj[branch]) {
            std::uint32_t len = 0;
            std::size_t prev = branch, cur = start;
            while (true) {
                if (lab(prev, cur) != 3)
                    return std::nullopt;
                ++len;
                std::size_t next = n;
                for (auto w : adj[cur])
                    if (w != prev)
                        next = w;
                if (next == n)
                    break;
                prev = cur;
                cur = next;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        const auto rank = static_cast<std::uint32_t>(n);
        if (arms[0] == 1 && arms[1] == 1)
            return make(FiniteFamily::D, rank, c);
        if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4)
            return make(FiniteFamily::E, rank, c);
        return std::nullopt;
    }

    // A path: walk it from one end and read off the label sequence.
    std::size_t end = 0;
    while (adj[end].size() != 1)
        ++end;
    std::vector<std::uint32_t> labels;
    std::size_t prev = n, cur = end;
    while (true) {
        std::size_t next = n;
        for (auto w : adj[cur])
            if (w != prev)
                next = w;
        if (next == n)
            break;
        labels.push_back(lab(cur, next));
        prev = cur;
        cur = next;
    }

    std::vector<std::size_t> odd;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != 3)
            odd.push_back(i);
    const auto rank = static_cast<std::uint32_t>(n);
    if (odd.empty())
        return make(FiniteFamily::A, rank, c);
    if (odd.size() > 1)
        return std::nullopt;
    const std::size_t pos = odd[0];
    const std::uint32_t m = labels[pos];
    const bool at_end = pos == 0 || pos + 1 == labels.size();
    if (m == 4 && at_end)
        return make(FiniteFamily::B, rank, c);
    if (m == 4 && n == 4)
        return make(FiniteFamily::F, 4, c);
    if (m == 5 && at_end && (n == 3 || n == 4))
        return make(FiniteFamily::H, rank, c);
    return std::nullopt;
}

} // namespace

mpz_class finite_type_order(FiniteFamily family, std::uint32_t rank, std::uint32_t dihedral_m)
{
    switch (family) {
    case FiniteFamily::A:
        return factorial(rank + 1);
    case FiniteFamily::B:
        return pow2(rank) * factorial(rank);
    case FiniteFamily::D:
        return pow2(rank - 1) * factorial(rank);
    case FiniteFamily::E:
        return rank == 6 ? mpz_class(51840) : rank == 7 ? mpz_class(2903040) : mpz_class(696729600);
    case FiniteFamily::F:
        return 1152;
    case FiniteFamily::H:
        return rank == 3 ? 120 : 14400;
    case FiniteFamily::I:
        return 2 * mpz_class(dihedral_m);
    }
    return 0;
}

std::string FiniteTypeComponent::name() const
{
    switch (family) {
    case FiniteFamily::A: return "A" + std::to_string(rank);
    case FiniteFamily::B: return "B" + std::to_string(rank);
    case FiniteFamily::D: return "D" + std::to_string(rank);
    case FiniteFamily::E: return "E" + std::to_string(rank);
    case FiniteFamily::F: return "F" + std::to_string(rank);
    case FiniteFamily::H: return "H" + std::to_string(rank);
    case FiniteFamily::I: return "I2(" + std::to_string(dihedral_m) + ")";
    }
    return "?";
}

std::string SphericalVerdict::type_name() const
{
    std::string out;
    for (const auto& c : components) {
        if (!out.empty())
            out += " x ";
        out += c.name();
    }
    return out;
}

std::vector<IndexSet> diagram_components(const CoxeterSpec& spec, const IndexSet& T)
{
    std::vector<IndexSet> out;
    std::vector<char> done(T.size(), 0);
    for (std::size_t s = 0; s < T.size(); ++s) {
        if (done[s])
            continue;
        IndexSet comp;
        std::vector<std::size_t> stack{s};
        done[s] = 1;
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            comp.push_back(T[a]);
            for (std::size_t b = 0; b < T.size(); ++b)
                if (!done[b] && diagram_edge(spec.label(T[a], T[b]))) {
                    done[b] = 1;
                    stack.push_back(b);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    // T is sorted and components are seeded in order, so they are already
    // sorted by least vertex.
    return out;
}

SphericalVerdict classify(const CoxeterSpec& spec, const IndexSet& T)
{
    SphericalVerdict v;
    v.spherical = true;
    for (const auto& comp : diagram_components(spec, T)) {
        auto m = match_component(spec, comp);
        if (!m)
            return SphericalVerdict{};
        v.order *= m->order;
        v.components.push_back(std::move(*m));
    }
    return v;
}

SphericalVerdict classify(const CoxeterSpec& spec, const std::vector<VertexId>& T)
{
    return classify(spec, spec.subset(T));
}

namespace {

double determinant(std::vector<double> a, std::size_t n)
{
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col]))
                piv = r;
        if (a[piv * n + col] == 0.0)
            return 0.0;
        if (piv != col) {
            for (std::size_t k = 0; k < n; ++k)
                std::swap(a[piv * n + k], a[col * n + k]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            for (std::size_t k = col; k < n; ++k)
                a[r * n + k] -= f * a[col * n + k];
        }
    }
    return det;
}

} // namespace

bool cosine_matrix_test(const CoxeterSpec& spec, const IndexSet& T, std::size_t bound)
{
    const std::size_t n = T.size();
    if (n > bound)
        throw Error(ErrorCode::TooLarge, "cosine test limited to " + std::to_string(bound) + " vertices");
    std::vector<double> c(n * n, 1.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b)
                continue;
            Label l = spec.label(T[a], T[b]);
            c[a * n + b] = l.is_infinite() ? -1.0 : -std::cos(std::numbers::pi / l.value());
        }
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<double> lead(k * k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                lead[a * k + b] = c[a * n + b];
        const double minor = determinant(std::move(lead), k);
        if (minor > kCosineMinorTolerance)
            continue;
        if (minor < -kCosineMinorTolerance)
            return false;
        throw Error(ErrorCode::IndeterminateNumeric,
                    "leading minor " + std::to_string(k) + " is within tolerance of zero");
    }
    return true;
}

bool cosine_matrix_verdict(const CoxeterSpec& spec, const IndexSet& T, std::size_t bound)
{
    try {
        return cosine_matrix_test(spec, T, bound);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::IndeterminateNumeric)
            throw;
    }
    for (std::size_t a = 0; a < T.size(); ++a)
        for (std::size_t b = a + 1; b < T.size(); ++b)
            if (spec.label(T[a], T[b]).is_infinite())
                return false;
    return classify(spec, T).spherical;
}

} // namespace coxl2
