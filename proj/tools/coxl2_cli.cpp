#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coxl2/error.hpp"
#include "coxl2/exec.hpp"
#include "coxl2/l2_calculus.hpp"
#include "coxl2/planarity.hpp"
#include "coxl2/spherical.hpp"
#include "coxl2/word_oracle.hpp"

using namespace coxl2;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct Options {
    std::string format = "text";
    int threads = 0;
    std::string spec_path;
    std::string ambient_path;
    std::string embedding_path;
    std::string subset;
    std::string out_path;
    bool chain_oracle = false;
    std::uint64_t cap = kMaxEnumerationCap;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CoxeterSpec load_spec(const std::string& path) { return parse_spec(read_file(path)); }

std::string braces(const std::vector<VertexId>& names)
{
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? "," : "") + names[i];
    return out + "}";
}

std::vector<VertexId> subset_or_all(const Options& o, const CoxeterSpec& spec)
{
    return o.subset.empty() ? spec.sorted_names() : split_vertex_list(o.subset);
}

class Command {
public:
    explicit Command(const Options& o) : o_(o) {}

    bool structured() const { return o_.format == "structured"; }

    int validate()
    {
        const auto spec = load_spec(o_.spec_path);
        if (structured()) {
            out_ << serialize_spec(spec) << '\n';
        } else {
            out_ << "valid: " << spec.size() << " vertices, " << spec.finite_edges().size()
                 << " finite labels\n";
        }
        return 0;
    }

    int nerve()
    {
        const auto n = build_nerve(load_spec(o_.spec_path));
        if (structured()) {
            out_ << nerve_to_json(n).dump(2) << '\n';
            return 0;
        }
        out_ << "dimension " << n.dimension() << "\nf-vector (";
        for (int d = 0; d <= n.dimension(); ++d)
            out_ << (d ? ", " : "") << n.count(d);
        out_ << ")\n";
        for (int d = 0; d <= n.dimension(); ++d)
            for (const auto& s : n.simplices(d))
                out_ << braces(n.spec().names(s.vertices)) << " order " << s.order.get_str() << '\n';
        return 0;
    }

    int classify_cmd()
    {
        const auto spec = load_spec(o_.spec_path);
        const auto T = spec.subset(subset_or_all(o_, spec));
        const auto v = classify(spec, T);
        if (structured()) {
            json j{{"subset", spec.names(T)}, {"spherical", v.spherical}};
            if (v.spherical) {
                j["type"] = v.type_name();
                j["order"] = v.order.get_str();
                json comps = json::array();
                for (const auto& c : v.components)
                    comps.push_back({{"type", c.name()}, {"vertices", spec.names(c.vertices)}, {"order", c.order.get_str()}});
                j["components"] = comps;
            }
            out_ << j.dump(2) << '\n';
        } else if (v.spherical) {
            out_ << "spherical: yes\ntype: " << (v.components.empty() ? "trivial" : v.type_name())
                 << "\norder: " << v.order.get_str() << '\n';
        } else {
            out_ << "spherical: no\n";
        }
        return 0;
    }

    int chi()
    {
        const auto n = build_nerve(load_spec(o_.spec_path));
        const Rational value = chi_orb(n);
        std::optional<Rational> chain;
        if (o_.chain_oracle) {
            chain = chi_orb_chain_sum(n);
            if (*chain != value)
                throw std::runtime_error("chain sum " + to_string(*chain) + " disagrees with collapsed sum " +
                                         to_string(value));
        }
        if (structured()) {
            json j{{"chi_orb", to_string(value)}};
            if (chain)
                j["chain_sum"] = to_string(*chain);
            out_ << j.dump(2) << '\n';
        } else {
            out_ << to_string(value) << '\n';
            if (chain)
                out_ << "chain sum: " << to_string(*chain) << " (agrees)\n";
        }
        return 0;
    }

    int betti_cmd()
    {
        const auto spec = load_spec(o_.spec_path);
        RuleContext ctx;
        CoxeterSpec target = spec;
        if (!o_.subset.empty()) {
            target = induced_subspec(spec, split_vertex_list(o_.subset));
            ctx.ambient = build_nerve(spec);
        }
        if (!o_.ambient_path.empty())
            ctx.ambient = build_nerve(load_spec(o_.ambient_path));
        if (!o_.embedding_path.empty())
            ctx.embedding = parse_rotation(read_file(o_.embedding_path), target);
        const auto n = build_nerve(target);
        const auto b = betti(n, ctx);
        if (structured()) {
            auto j = b.to_json();
            j["chi_orb"] = to_string(chi_orb(n));
            out_ << j.dump(2) << '\n';
            return 0;
        }
        out_ << b.to_string() << '\n';
        for (std::size_t i = 0; i < b.entries.size(); ++i) {
            const auto& e = b.entries[i];
            out_ << "b_" << i << " = " << (e.value ? to_string(*e.value) : "?");
            if (!e.rule.empty())
                out_ << "  [" << e.rule << "] " << e.witness;
            out_ << '\n';
        }
        return 0;
    }

    int certify()
    {
        const auto cert = certify_nonplanar(load_spec(o_.spec_path));
        if (structured()) {
            out_ << cert.to_json().dump(2) << '\n';
        } else {
            write_certificate(cert, "");
        }
        return cert.verdict == Verdict::NotPlanar ? 0 : kExitInconclusive;
    }

    int cone()
    {
        const auto spec = load_spec(o_.spec_path);
        const auto rot = parse_rotation(read_file(o_.embedding_path), spec);
        const auto c = cone_construction(build_nerve(spec), rot);
        if (structured()) {
            json faces = json::array();
            for (const auto& f : c.faces)
                faces.push_back(spec.names(f));
            json j{{"spec", spec_to_json(c.sphere.spec())},
                   {"cone_vertices", c.cone_vertices},
                   {"faces", faces},
                   {"sphere", sphere_type_name(recognize_sphere(c.sphere))},
                   {"full", c.witness.full},
                   {"right_angled_complement", c.witness.right_angled_complement},
                   {"chi_orb", to_string(chi_orb(c.sphere))},
                   {"notes", c.notes}};
            out_ << j.dump(2) << '\n';
            return 0;
        }
        const auto& n = c.sphere;
        out_ << "faces: " << c.faces.size() << ", coned: " << c.cone_vertices.size() << '\n'
             << "cone vertices: " << braces(c.cone_vertices) << '\n'
             << "result: " << sphere_type_name(recognize_sphere(n)) << ", f-vector (" << n.count(0) << ", "
             << n.count(1) << ", " << n.count(2) << "), chi_orb " << to_string(chi_orb(n)) << '\n'
             << "subcomplex full: " << (c.witness.full ? "yes" : "no")
             << ", right-angled complement: " << (c.witness.right_angled_complement ? "yes" : "no") << '\n';
        for (const auto& note : c.notes)
            out_ << "note: " << note << '\n';
        out_ << serialize_spec(n.spec()) << '\n';
        return 0;
    }

    int trace()
    {
        const auto L = build_nerve(load_spec(o_.spec_path));
        const auto t = trace_vanishing(L, split_vertex_list(o_.subset));
        if (structured()) {
            out_ << t.to_json().dump(2) << '\n';
            return 0;
        }
        out_ << "ambient: " << braces(t.ambient.sorted_names()) << "\ntarget: " << braces(t.target) << '\n';
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            const auto& s = t.steps[i];
            out_ << "step " << i + 1 << ": remove " << s.removed << " from " << braces(s.before) << '\n'
                 << "  link " << braces(s.link.vertices) << " full in L: " << (s.link_full_in_ambient ? "yes" : "no")
                 << ", full in a circle link: " << (s.link_in_circle ? "yes" : "no") << '\n'
                 << "  " << s.justification << '\n';
        }
        out_ << "base case: " << t.base_case << '\n' << "conclusion: " << t.conclusion << '\n';
        for (const auto& note : t.notes)
            out_ << "note: " << note << '\n';
        return 0;
    }

    int enumerate()
    {
        const auto spec = load_spec(o_.spec_path);
        const auto T = spec.subset(subset_or_all(o_, spec));
        const auto r = enumerate_order(spec, T, o_.cap);
        if (structured()) {
            json j{{"subset", spec.names(T)}, {"cap", o_.cap}, {"exceeds_cap", r.exceeds_cap}};
            if (!r.exceeds_cap)
                j["order"] = std::to_string(r.order);
            out_ << j.dump(2) << '\n';
        } else if (r.exceeds_cap) {
            out_ << "exceeds cap " << o_.cap << '\n';
        } else {
            out_ << "order " << r.order << '\n';
        }
        return 0;
    }

    int planar_oracle()
    {
        const auto spec = load_spec(o_.spec_path);
        const auto rot = find_planar_rotation(one_skeleton(spec));
        if (structured()) {
            json j{{"planar", rot.has_value()}};
            if (rot)
                j["rotation"] = rotation_to_json(*rot, spec);
            out_ << j.dump(2) << '\n';
        } else {
            out_ << (rot ? "planar" : "not planar") << '\n';
            if (rot)
                out_ << rotation_to_json(*rot, spec).dump() << '\n';
        }
        return 0;
    }

    void flush()
    {
        if (o_.out_path.empty()) {
            std::cout << out_.str();
            return;
        }
        std::ofstream f(o_.out_path, std::ios::binary);
        if (!(f << out_.str()))
            throw std::runtime_error("cannot write " + o_.out_path);
    }

private:
    void write_certificate(const Certificate& c, const std::string& indent)
    {
        out_ << indent << "verdict: " << verdict_name(c.verdict);
        if (c.reason)
            out_ << " (" << reason_name(*c.reason) << ')';
        out_ << '\n'
             << indent << "subject: " << braces(c.subject.sorted_names()) << '\n'
             << indent << "b2 lower bound: " << to_string(c.beta2_lower_bound) << '\n';
        for (std::size_t i = 0; i < c.chain.size(); ++i)
            out_ << indent << "  " << i + 1 << ". " << c.chain[i].statement << " [" << c.chain[i].applied_to
                 << "] " << c.chain[i].values << '\n';
        for (const auto& note : c.notes)
            out_ << indent << "note: " << note << '\n';
        for (const auto& part : c.components) {
            out_ << indent << "component:\n";
            write_certificate(part, indent + "  ");
        }
    }

    const Options& o_;
    std::ostringstream out_;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"l2-Betti numbers and orbihedral Euler characteristics of Coxeter nerves"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    app.add_option("--threads", o.threads, "Threads for parallel kernels (0 = runtime default)");

    auto* validate = app.add_subcommand("validate", "Parse and check a spec document");
    auto* nerve = app.add_subcommand("nerve", "Simplices of the nerve with group orders");
    auto* classify_sc = app.add_subcommand("classify", "Finite type of W_T");
    auto* chi = app.add_subcommand("chi", "Orbihedral Euler characteristic");
    auto* betti_sc = app.add_subcommand("betti", "l2-Betti numbers with provenance");
    auto* certify = app.add_subcommand("certify", "Non-planarity certificate");
    auto* cone = app.add_subcommand("cone", "Complete a planar complex to a 2-sphere nerve");
    auto* trace = app.add_subcommand("trace", "Vertex-removal trace from a 2-sphere nerve to a subcomplex");
    auto* enumerate = app.add_subcommand("enumerate", "Order of W_T by matrix enumeration");
    auto* planar = app.add_subcommand("planar-oracle", "Brute-force planarity of the 1-skeleton");

    for (auto* sc : {validate, nerve, classify_sc, chi, betti_sc, certify, cone, trace, enumerate, planar}) {
        sc->add_option("spec", o.spec_path, "Spec document")->required()->check(CLI::ExistingFile);
        sc->fallthrough();
    }
    classify_sc->add_option("--subset", o.subset, "Comma-separated vertex names (default: all)");
    chi->add_flag("--chain-oracle", o.chain_oracle, "Also evaluate the chain sum and compare");
    betti_sc->add_option("--ambient", o.ambient_path, "Ambient spec the target is a full subcomplex of")
        ->check(CLI::ExistingFile);
    betti_sc->add_option("--subset", o.subset, "Target vertices inside <spec>");
    betti_sc->add_option("--embedding", o.embedding_path, "Rotation system of the target")->check(CLI::ExistingFile);
    certify->add_option("--out", o.out_path, "Write the certificate here instead of standard output");
    cone->add_option("--embedding", o.embedding_path, "Rotation system")->required()->check(CLI::ExistingFile);
    trace->add_option("--subset", o.subset, "Target vertices")->required();
    enumerate->add_option("--subset", o.subset, "Comma-separated vertex names (default: all)");
    enumerate->add_option("--cap", o.cap, "Element cap")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    set_thread_count(o.threads);
    Command cmd(o);
    try {
        int status = 0;
        if (*validate)
            status = cmd.validate();
        else if (*nerve)
            status = cmd.nerve();
        else if (*classify_sc)
            status = cmd.classify_cmd();
        else if (*chi)
            status = cmd.chi();
        else if (*betti_sc)
            status = cmd.betti_cmd();
        else if (*certify)
            status = cmd.certify();
        else if (*cone)
            status = cmd.cone();
        else if (*trace)
            status = cmd.trace();
        else if (*enumerate)
            status = cmd.enumerate();
        else
            status = cmd.planar_oracle();
        cmd.flush();
        return status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
