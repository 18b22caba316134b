// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "coxl2/error.hpp"
#include "coxl2/l2_calculus.hpp"
#include "coxl2/planarity.hpp"
#include "coxl2/spherical.hpp"
#include "coxl2/word_oracle.hpp"
#include "test_support.hpp"

using namespace coxl2;
using namespace coxl2::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (ok)
                detail << what;
            ok = false;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(const char* id, const char* title, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto t0 = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    std::cout << id << ' ' << (out.ok ? "PASS" : "FAIL") << "  " << title << "  [" << t << " s]";
    const auto d = out.detail.str();
    if (!d.empty())
        std::cout << "  " << d;
    std::cout << std::endl;
    failures += out.ok ? 0 : 1;
}

Rational q(long p, long d = 1)
{
    Rational r(p, d);
    r.canonicalize();
    return r;
}

bool is_face_of(const FaceSet& fs, const IndexSet& t)
{
    for (auto f : fs.faces) {
        std::sort(f.begin(), f.end());
        if (f == t)
            return true;
    }
    return false;
}

// Diagram on s0.. with the given bonds; every other pair labeled 2.
CoxeterSpec diagram(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>>& bonds)
{
    auto vs = names("s", n);
    std::vector<std::vector<std::uint32_t>> m(n, std::vector<std::uint32_t>(n, 2));
    for (auto [a, b, l] : bonds)
        m[a][b] = m[b][a] = l;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.push_back({vs[i], vs[j], lab(m[i][j])});
    return CoxeterSpec(vs, edges);
}

} // namespace

int main()
{
    criterion("AC1", "chi_orb(K5@3) = 1/6, under 1 s", [](Outcome& o) {
        const auto t0 = Clock::now();
        const Rational chi = chi_orb(build_nerve(k5()));
        const double t = seconds_since(t0);
        o.require(chi == q(1, 6), "chi_orb = " + to_string(chi));
        o.require(t < 1.0, "took " + std::to_string(t) + " s");
    });

    criterion("AC2", "certificates: K5@3 bound 1/6, K3,3@2 b2 = 1/4 by join, under 1 s each", [](Outcome& o) {
        auto t0 = Clock::now();
        const auto k = certify_nonplanar(k5());
        const double tk = seconds_since(t0);
        o.require(k.verdict == Verdict::NotPlanar, "K5 verdict " + std::string(verdict_name(k.verdict)));
        o.require(k.beta2_lower_bound == q(1, 6), "K5 bound " + to_string(k.beta2_lower_bound));
        o.require(!k.chain.empty() && k.chain.back().statement == "planar-vanishing", "K5 chain does not end in the planar vanishing statement");
        o.require(recheck_certificate(k), "K5 certificate does not recheck");
        o.require(tk < 1.0, "K5 took " + std::to_string(tk) + " s");

        t0 = Clock::now();
        const auto b = certify_nonplanar(k33());
        const double tb = seconds_since(t0);
        o.require(b.verdict == Verdict::NotPlanar, "K3,3 verdict " + std::string(verdict_name(b.verdict)));
        o.require(b.beta2_lower_bound == q(1, 4), "K3,3 bound " + to_string(b.beta2_lower_bound));
        bool join = false;
        for (const auto& c : b.chain)
            join = join || (c.statement == "join-kunneth" && c.values == "b_2 = 1/4");
        o.require(join, "K3,3 chain lacks the join value b_2 = 1/4");
        const auto bv = betti(build_nerve(k33()));
        o.require(bv.entries.size() > 2 && bv.entries[2].value == q(1, 4) && bv.entries[2].rule == rule::kJoin,
                  "betti(K3,3) b2 not 1/4 by R-join");
        o.require(recheck_certificate(b), "K3,3 certificate does not recheck");
        o.require(tb < 1.0, "K3,3 took " + std::to_string(tb) + " s");
    });

    criterion("AC3", "betti(P3) = (0, 1/2, 0), betti(point) = (1/2)", [](Outcome& o) {
        const auto p3 = betti(build_nerve(points(3)));
        o.require(p3.equals({0, q(1, 2), 0}) && p3.fully_known(), "P3 gives " + p3.to_string());
        const auto p = betti(build_nerve(points(1)));
        o.require(p.equals({q(1, 2)}) && p.fully_known(), "point gives " + p.to_string());
    });

    criterion("AC4", "two-sphere nerves: chi_orb = 0, betti = 0 (octahedron, icosahedron, 20+ variants), under 5 s",
              [](Outcome& o) {
        const auto t0 = Clock::now();
        std::vector<CoxeterSpec> subjects{octahedron(), icosahedron()};
        std::mt19937_64 rng(4);
        std::set<std::vector<std::uint32_t>> seen;
        while (seen.size() < 24) {
            std::vector<std::uint32_t> labels(12);
            for (auto& l : labels)
                l = std::vector<std::uint32_t>{2, 2, 2, 3, 4, 5}[rng() % 6];
            auto spec = octahedron(labels);
            // every face spherical: all 8 triangles are 2-simplices
            const bool faces_spherical = build_nerve(spec).count(2) == 8;
            if (!faces_spherical || labels == std::vector<std::uint32_t>(12, 2) || !seen.insert(labels).second)
                continue;
            subjects.push_back(spec);
        }
        for (const auto& s : subjects) {
            const auto n = build_nerve(s);
            o.require(recognize_sphere(n) == SphereType::TwoSphere, "not recognized as a 2-sphere: " + serialize_spec(s));
            const Rational chi = chi_orb(n);
            o.require(chi == 0, "chi_orb = " + to_string(chi));
            const auto b = betti(n);
            o.require(b.fully_known() && b.equals({0, 0, 0, 0}), "betti " + b.to_string());
            o.require(b.fully_known() && atiyah_check(n, b), "Atiyah identity fails");
        }
        const double t = seconds_since(t0);
        o.require(subjects.size() >= 22, "only " + std::to_string(subjects.size()) + " subjects");
        o.require(t < 5.0, "took " + std::to_string(t) + " s");
        o.detail << (o.ok ? std::to_string(subjects.size()) + " nerves" : "");
    });

    criterion("AC5", "chi_orb = chain sum on 200 random specs, |S| <= 6, labels {2,3,4,5,inf}", [](Outcome& o) {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> size(0, 6);
        int mismatches = 0;
        for (int i = 0; i < 200; ++i) {
            auto spec = random_spec(rng, size(rng), {2, 3, 4, 5, 0});
            auto n = build_nerve(spec);
            if (chi_orb(n) != chi_orb_chain_sum(n))
                ++mismatches;
        }
        o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    });

    criterion("AC6", "classify = enumerate_order on every finite type of rank <= 4 and H4, under 60 s", [](Outcome& o) {
        const auto t0 = Clock::now();
        struct Case {
            const char* name;
            CoxeterSpec spec;
        };
        std::vector<Case> cases{
            {"A1", points(1)},
            {"A2", path({3})},
            {"A3", path({3, 3})},
            {"A4", path({3, 3, 3})},
            {"B2", path({4})},
            {"B3", path({3, 4})},
            {"B4", path({3, 3, 4})},
            {"D4", diagram(4, {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}})},
            {"H3", path({5, 3})},
            {"F4", path({3, 4, 3})},
            {"H4", path({5, 3, 3})},
        };
        for (std::uint32_t m = 3; m <= 8; ++m)
            cases.push_back({nullptr, path({m})});
        int checked = 0;
        for (const auto& c : cases) {
            const auto v = classify(c.spec, c.spec.all());
            const std::string name = v.type_name();
            if (c.name)
                o.require(name == c.name, "classified as " + name + ", expected " + c.name);
            const auto r = enumerate_order(c.spec, c.spec.all());
            o.require(v.spherical && !r.exceeds_cap && mpz_class(std::to_string(r.order)) == v.order,
                      name + ": table " + v.order.get_str() + ", enumeration " +
                          (r.exceeds_cap ? "exceeds cap" : std::to_string(r.order)));
            o.require(verify_classification(c.spec, c.spec.all()), name + " fails verify_classification");
            ++checked;
        }
        const double t = seconds_since(t0);
        o.require(t < 60.0, "took " + std::to_string(t) + " s");
        o.detail << (o.ok ? std::to_string(checked) + " types" : "");
    });

    criterion("AC7", "1000 random planar specs: never NotPlanar, 1-skeleton planar by brute force", [](Outcome& o) {
        std::mt19937_64 rng(7);
        int accepted = 0, attempts = 0;
        while (accepted < 1000 && attempts < 200000) {
            ++attempts;
            std::uniform_int_distribution<std::size_t> size(2, 8);
            std::uniform_real_distribution<double> extra(0.0, 1.0);
            auto sample = random_planar_graph(rng, size(rng), extra(rng));
            auto [spec, rot] = label_planar(sample, rng, {2, 3, 4, 5, 6});
            auto n = build_nerve(spec);
            if (n.dimension() > 2 || classify(spec, spec.all()).spherical)
                continue;
            // the complex itself, not only its 1-skeleton, must sit in the sphere
            const auto g = one_skeleton(spec);
            const auto fs = trace_faces(g, rot);
            bool faces_ok = true;
            for (const auto& t : n.simplices(2))
                faces_ok = faces_ok && is_face_of(fs, t.vertices);
            if (!faces_ok)
                continue;
            ++accepted;
            o.require(g.is_connected() && is_sphere_rotation(g, rot), "generator produced a non-planar drawing");
            o.require(brute_force_planar(g), "brute force rejects " + serialize_spec(spec));
            const auto c = certify_nonplanar(spec);
            o.require(c.verdict == Verdict::Inconclusive, "NotPlanar on planar input " + serialize_spec(spec));
        }
        o.require(accepted == 1000, "only " + std::to_string(accepted) + " inputs generated");
        o.detail << (o.ok ? std::to_string(accepted) + " inputs" : "");
    });

    criterion("AC8", "cone construction and vanishing trace on hexagon@2 and K4@3", [](Outcome& o) {
        const auto hex = hexagon();
        const auto k4 = complete_graph(4, 3);
        const std::vector<std::pair<CoxeterSpec, RotationSystem>> inputs{{hex, cycle_rotation(hex)},
                                                                          {k4, k4_rotation(k4)}};
        for (const auto& [spec, rot] : inputs) {
            const auto c = cone_construction(build_nerve(spec), rot);
            o.require(recognize_sphere(c.sphere) == SphereType::TwoSphere, "cone is not a 2-sphere");
            o.require(c.witness.full, "A not full");
            o.require(c.witness.right_angled_complement, "complement not right-angled");
            o.require(chi_orb(c.sphere) == 0, "chi_orb of the cone is " + to_string(chi_orb(c.sphere)));
            const auto tr = trace_vanishing(c.sphere, spec.vertices());
            o.require(tr.steps.size() == c.cone_vertices.size(), "trace length differs from cone vertex count");
            for (const auto& s : tr.steps)
                o.require(s.link_full_in_ambient && s.link_in_circle && s.right_angled_complement,
                          "step removing " + s.removed + " fails its fullness assertion");
        }
    });

    criterion("AC9", "join and cone identities on 100 random pairs; K3,3 b2 under two groupings", [](Outcome& o) {
        std::mt19937_64 rng(9);
        std::uniform_int_distribution<std::size_t> size(0, 4);
        for (int i = 0; i < 100; ++i) {
            const auto a = build_nerve(random_spec(rng, size(rng), {2, 3, 4, 5, 0}));
            const auto b = build_nerve(random_spec(rng, size(rng), {2, 3, 4, 5, 0}));
            o.require(chi_orb(join2(a, b)) == chi_orb(a) * chi_orb(b), "join identity fails");
            o.require(chi_orb(cone2(a)) == chi_orb(a) / 2, "cone identity fails");
        }
        const auto n = build_nerve(k33());
        const auto detected = betti(n);
        RuleContext swapped;
        swapped.join_factors = std::vector<std::vector<VertexId>>{{"b1", "b2", "b3"}, {"a1", "a2", "a3"}};
        const auto explicit_b = betti(n, swapped);
        o.require(detected.fully_known() && explicit_b.fully_known() && explicit_b.equals(detected.values()),
                  detected.to_string() + " vs " + explicit_b.to_string());
        o.require(detected.equals({0, 0, q(1, 4)}), "K3,3 gives " + detected.to_string());
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
