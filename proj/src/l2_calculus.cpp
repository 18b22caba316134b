#include "coxl2/l2_calculus.hpp"

#include <algorithm>
#include <atomic>

#include "coxl2/error.hpp"
#include "coxl2/spherical.hpp"

namespace coxl2 {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw Error(ErrorCode::MalformedDocument, "'" + text + "' is not a rational");
    q.canonicalize();
    return q;
}

Rational chi_orb(const Nerve& nerve, Exec exec)
{
    Rational total = 1; // the empty spherical subset
    for (int d = 0; d <= nerve.dimension(); ++d) {
        const auto& level = nerve.simplices(d);
        const auto count = static_cast<std::ptrdiff_t>(level.size());
        Rational inv_sum = 0;
        if (exec == Exec::Parallel) {
#pragma omp parallel
            {
                Rational local = 0;
#pragma omp for schedule(static) nowait
                for (std::ptrdiff_t i = 0; i < count; ++i)
                    local += Rational(1, level[static_cast<std::size_t>(i)].order);
#pragma omp critical(coxl2_chi_orb)
                inv_sum += local;
            }
        } else {
            for (const auto& s : level)
                inv_sum += Rational(1, s.order);
        }
        // |T| = d + 1
        if (d % 2 == 0)
            total -= inv_sum;
        else
            total += inv_sum;
    }
    total.canonicalize();
    return total;
}

namespace {

struct ChainPoset {
    std::vector<IndexSet> elements; // elements[0] is the empty set
    std::vector<mpz_class> orders;
    std::vector<std::vector<std::size_t>> uppers; // strict supersets
};

ChainPoset chain_poset(const Nerve& nerve)
{
    ChainPoset p;
    p.elements.push_back({});
    p.orders.push_back(1);
    for (int d = 0; d <= nerve.dimension(); ++d)
        for (const auto& s : nerve.simplices(d)) {
            p.elements.push_back(s.vertices);
            p.orders.push_back(s.order);
        }
    p.uppers.resize(p.elements.size());
    for (std::size_t i = 0; i < p.elements.size(); ++i)
        for (std::size_t j = 0; j < p.elements.size(); ++j) {
            const auto& a = p.elements[i];
            const auto& b = p.elements[j];
            if (b.size() > a.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()))
                p.uppers[i].push_back(j);
        }
    return p;
}

// Signed count of the chains starting at `start`: each chain of length k
// contributes (-1)^k. Every chain is visited.
void count_chains(const ChainPoset& p, std::size_t start, int parity, long long& signed_count,
                  std::atomic<std::uint64_t>& visited, std::uint64_t cap)
{
    signed_count += parity == 0 ? 1 : -1;
    if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > cap)
        throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " chains");
    for (auto next : p.uppers[start])
        count_chains(p, next, parity ^ 1, signed_count, visited, cap);
}

} // namespace

Rational chi_orb_chain_sum(const Nerve& nerve, std::uint64_t cap, Exec exec)
{
    const ChainPoset p = chain_poset(nerve);
    const auto count = static_cast<std::ptrdiff_t>(p.elements.size());
    std::vector<long long> signed_counts(p.elements.size(), 0);
    std::atomic<std::uint64_t> visited{0};

    if (exec == Exec::Parallel) {
        std::atomic<bool> overflow{false};
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            if (overflow.load())
                continue;
            try {
                count_chains(p, static_cast<std::size_t>(i), 0, signed_counts[static_cast<std::size_t>(i)], visited, cap);
            } catch (const Error&) {
                overflow.store(true);
            }
        }
        if (overflow.load())
            throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " chains");
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i)
            count_chains(p, static_cast<std::size_t>(i), 0, signed_counts[static_cast<std::size_t>(i)], visited, cap);
    }

    Rational total = 0;
    for (std::size_t i = 0; i < p.elements.size(); ++i) {
        Rational term{mpz_class(std::to_string(signed_counts[i])), p.orders[i]};
        term.canonicalize();
        total += term;
    }
    return total;
}

bool BettiVector::fully_known() const
{
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.value.has_value(); });
}

std::string BettiVector::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i)
            out += ", ";
        out += entries[i].value ? coxl2::to_string(*entries[i].value) : std::string("?");
    }
    return out + ")";
}

bool BettiVector::equals(const std::vector<Rational>& values) const
{
    const std::size_t n = std::max(values.size(), entries.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Rational want = i < values.size() ? values[i] : Rational(0);
        if (i >= entries.size()) {
            if (want != 0)
                return false;
            continue;
        }
        if (!entries[i].value || *entries[i].value != want)
            return false;
    }
    return true;
}

std::vector<Rational> BettiVector::values() const
{
    std::vector<Rational> out;
    for (const auto& e : entries)
        out.push_back(e.value ? *e.value : Rational(0));
    return out;
}

nlohmann::json BettiVector::to_json() const
{
    nlohmann::json values = nlohmann::json::array();
    nlohmann::json provenance = nlohmann::json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        values.push_back(e.value ? coxl2::to_string(*e.value) : std::string("unknown"));
        if (e.value)
            provenance.push_back({{"dim", i}, {"rule", e.rule}, {"witness", e.witness}});
    }
    return {{"entries", std::move(values)}, {"provenance", std::move(provenance)}};
}

namespace {

bool same_labels(const CoxeterSpec& a, const CoxeterSpec& b)
{
    if (a.sorted_names() != b.sorted_names())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a.label(i, j) != b.label(i, j))
                return false;
    return true;
}

std::string describe(const std::vector<VertexId>& names)
{
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? "," : "") + names[i];
    return out + "}";
}

void validate_embedding(const Nerve& nerve, const RotationSystem& rot)
{
    const SimpleGraph g = one_skeleton(nerve.spec());
    if (nerve.dimension() > 2)
        throw Error(ErrorCode::InvalidWitness, "a complex of dimension > 2 does not embed in the 2-sphere");
    if (!is_sphere_rotation(g, rot))
        throw Error(ErrorCode::InvalidWitness, "rotation system is not a sphere embedding of the 1-skeleton");
    const auto faces = trace_faces(g, rot).faces;
    for (const auto& t : nerve.simplices(2)) {
        bool bounded = std::any_of(faces.begin(), faces.end(), [&](IndexSet f) {
            std::sort(f.begin(), f.end());
            return f == t.vertices;
        });
        if (!bounded)
            throw Error(ErrorCode::InvalidWitness,
                        "2-simplex " + describe(nerve.spec().names(t.vertices)) + " is not a face of the embedding");
    }
}

void validate_factors(const Nerve& nerve, const std::vector<std::vector<VertexId>>& factors)
{
    const auto& spec = nerve.spec();
    if (factors.size() < 2)
        throw Error(ErrorCode::InvalidWitness, "a join needs at least two factors");
    std::vector<int> owner(spec.size(), -1);
    for (std::size_t f = 0; f < factors.size(); ++f) {
        if (factors[f].empty())
            throw Error(ErrorCode::InvalidWitness, "empty join factor");
        for (auto i : spec.subset(factors[f])) {
            if (owner[i] != -1)
                throw Error(ErrorCode::InvalidWitness, "vertex " + spec.name(i) + " in two join factors");
            owner[i] = static_cast<int>(f);
        }
    }
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (owner[i] == -1)
            throw Error(ErrorCode::InvalidWitness, "vertex " + spec.name(i) + " in no join factor");
        for (std::size_t j = i + 1; j < spec.size(); ++j) {
            Label l = spec.label(i, j);
            if (owner[i] != owner[j] && (l.is_infinite() || l.value() != 2))
                throw Error(ErrorCode::InvalidWitness,
                            "cross pair " + spec.name(i) + "-" + spec.name(j) + " is labeled " + l.to_string());
        }
    }
}

struct JoinProduct {
    std::vector<BettiVector> factors;
    std::optional<std::vector<Rational>> product; // when every factor is known
};

JoinProduct join_product(const Nerve& nerve, const std::vector<std::vector<VertexId>>& factors)
{
    JoinProduct jp;
    std::vector<Rational> acc{Rational(1)};
    bool known = true;
    for (const auto& f : factors) {
        const Nerve sub = full_subcomplex(nerve, f).first;
        BettiVector b = betti(sub);
        if (b.fully_known()) {
            const auto v = b.values();
            std::vector<Rational> next(acc.size() + v.size() - 1, Rational(0));
            for (std::size_t i = 0; i < acc.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j)
                    next[i + j] += acc[i] * v[j];
            acc = std::move(next);
        } else {
            known = false;
        }
        jp.factors.push_back(std::move(b));
    }
    if (known)
        jp.product = std::move(acc);
    return jp;
}

class RuleEngine {
public:
    explicit RuleEngine(const Nerve& nerve) : nerve_(nerve), chi_(chi_orb(nerve))
    {
        out_.entries.resize(static_cast<std::size_t>(nerve.dimension() + 2));
    }

    void assign(std::size_t i, const Rational& v, const std::string& rule, const std::string& witness)
    {
        if (i >= out_.entries.size())
            out_.entries.resize(i + 1);
        auto& e = out_.entries[i];
        if (v < 0)
            throw Error(ErrorCode::ContradictoryRules,
                        rule + " gives b_" + std::to_string(i) + " = " + to_string(v) + " < 0");
        if (e.value) {
            if (*e.value != v)
                throw Error(ErrorCode::ContradictoryRules,
                            rule + " gives b_" + std::to_string(i) + " = " + to_string(v) + " but " + e.rule +
                                " gave " + to_string(*e.value));
            return;
        }
        e.value = v;
        e.rule = rule;
        e.witness = witness;
    }

    // Fills entry i from chi_orb = sum (-1)^j b_j if every other entry is
    // known.
    bool solve(std::size_t i, const std::string& rule, const std::string& witness)
    {
        Rational rest = 0;
        for (std::size_t j = 0; j < out_.entries.size(); ++j) {
            if (j == i)
                continue;
            if (!out_.entries[j].value)
                return false;
            rest += (j % 2 == 0 ? 1 : -1) * *out_.entries[j].value;
        }
        Rational v = chi_ - rest;
        if (i % 2 == 1)
            v = -v;
        v.canonicalize();
        assign(i, v, rule, witness + "; solved from chi_orb = " + to_string(chi_));
        return true;
    }

    // b_i = 0 for every i >= 2 (at least b_2), then b_1 from Atiyah.
    void vanish_above_one(const std::string& rule, const std::string& witness)
    {
        const std::size_t top = std::max<std::size_t>(2, out_.entries.size() - 1);
        for (std::size_t i = 2; i <= top; ++i)
            assign(i, 0, rule, witness);
        if (out_.entries.size() > 1)
            solve(1, rule, witness);
    }

    BettiVector run(const RuleContext& ctx)
    {
        const auto& spec = nerve_.spec();
        const SphericalVerdict whole = classify(spec, spec.all());

        if (whole.spherical) {
            const std::string w = "W finite of order " + whole.order.get_str() + "; Sigma is a compact cone";
            assign(0, Rational(1, whole.order), rule::kFinite, w);
            for (std::size_t i = 1; i < out_.entries.size(); ++i)
                assign(i, 0, rule::kFinite, w);
        } else {
            assign(0, 0, rule::kBeta0, "W infinite, so Sigma has infinitely many vertices and harmonic 0-cycles vanish");
        }

        const SphereType st = recognize_sphere(nerve_);
        if (st == SphereType::Circle) {
            const std::string w = "nerve is a circle; top Betti number vanishes by Poincare duality";
            assign(2, 0, rule::kLowSphere, w);
            solve(1, rule::kLowSphere, w);
        } else if (spec.size() == 2 && spec.label(0, 1).is_infinite()) {
            assign(1, 0, rule::kLowSphere, "nerve is S^0; top Betti number vanishes by Poincare duality");
        }

        if (st == SphereType::TwoSphere) {
            const std::string w = "nerve is a metric flag triangulation of the 2-sphere; l2-homology vanishes";
            for (std::size_t i = 0; i <= 3; ++i)
                assign(i, 0, rule::kTwoSphere, w);
        }

        if (ctx.ambient) {
            const Nerve& amb = *ctx.ambient;
            const auto names = spec.sorted_names();
            for (const auto& v : names)
                if (!amb.spec().index_of(v))
                    throw Error(ErrorCode::InvalidWitness, "vertex " + v + " is not in the ambient nerve");
            if (!same_labels(induced_subspec(amb.spec(), names), spec))
                throw Error(ErrorCode::InvalidWitness, "target is not the induced sub-system of the ambient");
            const SphereType amb_type = recognize_sphere(amb);
            if (amb_type == SphereType::Circle) {
                vanish_above_one(rule::kSubCircle,
                                 "full subcomplex " + describe(names) + " of a circle nerve: b_i = 0 for i > 1");
            } else if (amb_type == SphereType::TwoSphere && has_right_angled_complement(amb.spec(), names)) {
                vanish_above_one(rule::kSubTwoSphere,
                                 "full subcomplex " + describe(names) +
                                     " with right-angled complement in a 2-sphere nerve: b_i = 0 for i > 1");
            }
        }

        if (ctx.embedding) {
            validate_embedding(nerve_, *ctx.embedding);
            vanish_above_one(rule::kPlanar, "planar metric flag complex of dimension <= 2: b_2 = 0");
        }

        std::optional<std::vector<std::vector<VertexId>>> factors = ctx.join_factors;
        if (factors)
            validate_factors(nerve_, *factors);
        else
            factors = detect_join2(nerve_);
        if (factors) {
            JoinProduct jp = join_product(nerve_, *factors);
            if (jp.product) {
                std::string w = "right-angled join";
                for (std::size_t f = 0; f < factors->size(); ++f)
                    w += (f ? " *2 " : " ") + describe((*factors)[f]) + jp.factors[f].to_string();
                for (std::size_t k = 0; k < jp.product->size(); ++k)
                    assign(k, (*jp.product)[k], rule::kJoin, w);
            }
        }

        std::size_t unknown = 0, last = 0;
        for (std::size_t i = 0; i < out_.entries.size(); ++i)
            if (!out_.entries[i].value) {
                ++unknown;
                last = i;
            }
        if (unknown == 1)
            solve(last, rule::kAtiyah, "only unknown entry");

        if (out_.fully_known() && !atiyah_check(nerve_, out_))
            throw Error(ErrorCode::ContradictoryRules,
                        "Betti numbers " + out_.to_string() + " violate chi_orb = " + to_string(chi_));
        return std::move(out_);
    }

private:
    const Nerve& nerve_;
    Rational chi_;
    BettiVector out_;
};

} // namespace

BettiVector betti(const Nerve& nerve, const RuleContext& ctx)
{
    return RuleEngine(nerve).run(ctx);
}

bool atiyah_check(const Nerve& nerve, const BettiVector& b)
{
    Rational sum = 0;
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
        if (!b.entries[i].value)
            throw Error(ErrorCode::UnknownEntries, "b_" + std::to_string(i) + " is unknown");
        sum += (i % 2 == 0 ? 1 : -1) * *b.entries[i].value;
    }
    return sum == chi_orb(nerve);
}

Beta2Bound betti_lower_bound_dim2(const Nerve& nerve)
{
    if (nerve.dimension() > 2)
        throw Error(ErrorCode::DimensionTooHigh, "nerve has dimension " + std::to_string(nerve.dimension()));
    const auto& spec = nerve.spec();
    if (classify(spec, spec.all()).spherical)
        throw Error(ErrorCode::FiniteGroup, "W is finite");

    Beta2Bound bound;
    bound.chi = chi_orb(nerve);
    bound.value = 0;
    bound.provenance = "trivial";
    if (bound.chi > 0) {
        bound.value = bound.chi;
        bound.provenance = "chi-orb";
    }
    if (auto factors = detect_join2(nerve)) {
        JoinProduct jp = join_product(nerve, *factors);
        bound.join_factors = *factors;
        bound.factor_betti = std::move(jp.factors);
        if (jp.product) {
            bound.join_beta2 = jp.product->size() > 2 ? (*jp.product)[2] : Rational(0);
            if (*bound.join_beta2 > 0 && *bound.join_beta2 >= bound.value) {
                bound.value = *bound.join_beta2;
                bound.provenance = "R-join";
            }
        }
    }
    return bound;
}

} // namespace coxl2
