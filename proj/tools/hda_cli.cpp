#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "hda/fixtures.hpp"
#include "hda/homology.hpp"
#include "hda/io.hpp"
#include "hda/pgraph.hpp"
#include "hda/props.hpp"
#include "hda/reduce.hpp"
#include "hda/trace.hpp"

using namespace hda;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFails = 1;      // property fails / not applicable
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::size_t env_override(const char* name, std::size_t fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    return static_cast<std::size_t>(std::stoull(v));
}

struct Budgets {
    std::size_t paths = env_override("HDA_BUDGET_PATHS", kDefaultPathBudget);
    std::size_t states = env_override("HDA_BUDGET_STATES", 1000000);
    std::size_t oracle = env_override("HDA_BUDGET_ORACLE", 20);
};

// "builtin:NAME" or a file path
Hda load_model(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        std::string name = spec.substr(8);
        if (is_builtin_hda(name)) return builtin_hda(name);
        Hda a;
        a.p = builtin_pcs(name);
        for (CubeId e : a.p.cubes_of_degree(1))
            a.label[e] = {"e" + std::to_string(e)};
        // coherent labels across squares
        for (const auto& c : a.p.cubes())
            if (c.dim == 2)
                for (int i = 1; i <= 2; ++i)
                    a.label[a.p.face(c.id, 1, i)] = a.label[a.p.face(c.id, 0, i)];
        return a;
    }
    return read_hda(read_file(spec));
}

void print_validation(const ValidationReport& r) {
    if (r.ok) {
        std::cout << "ok\n";
        return;
    }
    for (const auto& v : r.violations) {
        std::cout << "violation " << v.identity << " cube " << v.cube;
        for (int idx : v.indices) std::cout << " " << idx;
        if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
        std::cout << "\n";
    }
}

int cmd_validate(const std::string& in) {
    // bare precubical files are validated structurally, labeled models fully
    if (in.rfind("builtin:", 0) != 0) {
        std::string text = read_file(in);
        if (!model_has_hda_records(text)) {
            ValidationReport r = validate_precubical(read_pcs(text));
            print_validation(r);
            return r.ok ? kExitOk : kExitFails;
        }
    }
    Hda a = load_model(in);
    ValidationReport r = validate_hda(a);
    print_validation(r);
    return r.ok ? kExitOk : kExitFails;
}

int cmd_info(const std::string& in) {
    Hda a = load_model(in);
    auto counts = a.p.counts_per_degree();
    std::cout << "cells";
    for (auto c : counts) std::cout << " " << c;
    std::cout << "\ninit";
    for (CubeId v : a.init) std::cout << " " << v;
    std::cout << "\nfinal";
    for (CubeId v : a.final) std::cout << " " << v;
    std::cout << "\nalphabet";
    for (const auto& s : a.letter_alphabet()) std::cout << " " << quote(s);
    Accessibility acc = accessibility(a);
    std::cout << "\naccessible " << (acc.accessible ? "yes" : "no")
              << "\ncoaccessible " << (acc.coaccessible ? "yes" : "no") << "\n";
    Reachability r = reachability(a.p);
    std::cout << "cyclic " << (r.acyclic ? "no" : "yes") << "\n";
    return kExitOk;
}

int cmd_compose(const std::vector<std::string>& files,
                const std::vector<std::string>& inits,
                const std::vector<std::string>& shared, const std::string& out,
                const Budgets& budgets) {
    std::vector<ProgramGraph> pgs;
    for (const auto& f : files) pgs.push_back(parse_program_graph(read_file(f)));
    for (const auto& name : shared) {
        bool found = false;
        for (const auto& pg : pgs)
            for (const auto& v : pg.vars)
                if (v.name == name) found = true;
        if (!found)
            throw argument_error("--shared names unknown variable " + name);
    }
    ComposeOptions opts;
    opts.state_budget = budgets.states;
    for (const auto& spec : inits) {
        std::map<std::string, long long> val;
        std::string token;
        std::istringstream ss(spec);
        while (std::getline(ss, token, ',')) {
            auto eq = token.find('=');
            if (eq == std::string::npos)
                throw argument_error("--init expects name=value[,name=value]");
            val[token.substr(0, eq)] = std::stoll(token.substr(eq + 1));
        }
        opts.initial_valuations.push_back(std::move(val));
    }
    Hda m = compose(pgs, opts);
    write_file(out, write_hda(m));
    auto counts = m.p.counts_per_degree();
    std::cout << "composed";
    for (auto c : counts) std::cout << " " << c;
    std::cout << "\n";
    return kExitOk;
}

int cmd_reduce(const std::string& in, const std::string& out,
               const std::string& report_path, bool enable_manual,
               const Budgets& budgets) {
    Hda a = load_model(in);
    ReduceOptions opts;
    opts.enable_manual = enable_manual;
    opts.path_budget = budgets.paths;
    opts.oracle_bound = budgets.oracle;
    auto [b, report] = reduce(a, opts);
    if (!out.empty()) write_file(out, write_hda(b));
    if (!report_path.empty()) write_file(report_path, report.serialize());
    std::cout << "steps " << report.steps.size() << "\nafter";
    for (auto c : b.p.counts_per_degree()) std::cout << " " << c;
    std::cout << "\n";
    return kExitOk;
}

int cmd_certify(const std::string& orig, const std::string& reduced,
                const std::string& report_path, const Budgets& budgets) {
    Hda a = load_model(orig);
    Hda b = load_model(reduced);
    ReductionReport report = ReductionReport::parse(read_file(report_path));
    ReduceOptions opts;
    opts.path_budget = budgets.paths;
    opts.oracle_bound = budgets.oracle;
    try {
        CertificationReport cr = certify(a, b, report, opts);
        std::cout << cr.to_string();
        return (cr.verdict == Verdict::certified ||
                cr.verdict == Verdict::certified_bounded)
                   ? kExitOk
                   : kExitFails;
    } catch (const integrity_error& e) {
        std::cout << "integrity error: " << e.what() << "\n";
        return kExitFails;
    }
}

int cmd_homology(const std::string& in, const std::string& coeff) {
    Hda a = load_model(in);
    RingSpec ring = RingSpec::z();
    if (coeff == "q") ring = RingSpec::q();
    else if (coeff == "z") ring = RingSpec::z();
    else if (coeff.size() > 1 && coeff[0] == 'p')
        ring = RingSpec::fp(std::stoll(coeff.substr(1)));
    else if (coeff != "z")
        throw argument_error("--coeff expects z, q, or p<prime>");
    HomologyProfile h = homology(a.p, ring);
    // trailing zero degrees trimmed for readability
    std::size_t last = h.betti.size();
    while (last > 1 && h.betti[last - 1] == 0) --last;
    std::cout << "betti ";
    for (std::size_t i = 0; i < last; ++i)
        std::cout << (i ? "," : "") << h.betti[i];
    std::cout << "\n";
    for (std::size_t n = 0; n < h.torsion.size(); ++n) {
        if (h.torsion[n].empty()) continue;
        std::cout << "torsion " << n;
        for (const auto& t : h.torsion[n]) std::cout << " " << t;
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_hgraph(const std::string& in, const std::string& mode,
               const Budgets& budgets) {
    Hda a = load_model(in);
    HomologyContext ctx(a.p);
    HomologyGraphOptions opts;
    opts.oracle_bound = budgets.oracle;
    GraphMode gm = mode == "bruteforce" ? GraphMode::bruteforce : GraphMode::search;
    HomologyGraph g = homology_graph(ctx, gm, opts);
    std::size_t unknowns = 0, nos = 0;
    for (std::size_t x = 0; x < g.nodes.size(); ++x)
        for (std::size_t y = 0; y < g.nodes.size(); ++y) {
            EdgeStatus st = g.status(x, y);
            if (st == EdgeStatus::yes_cert || st == EdgeStatus::yes_oracle)
                std::cout << "point " << g.nodes[x].degree << ":" << g.nodes[x].index
                          << " -> " << g.nodes[y].degree << ":" << g.nodes[y].index
                          << " [" << (st == EdgeStatus::yes_cert ? "cert" : "oracle")
                          << "]\n";
            else if (st == EdgeStatus::no_oracle) ++nos;
            else ++unknowns;
        }
    std::cout << "unknown " << unknowns << "\nno " << nos << "\n";
    return kExitOk;
}

int cmd_trace(const std::string& in, long long max_len, const Budgets& budgets) {
    Hda a = load_model(in);
    TraceCategory tc = trace_category(
        a, max_len < 0 ? kAutoLen : static_cast<std::size_t>(max_len),
        budgets.paths);
    std::cout << "objects";
    for (CubeId v : tc.objects) std::cout << " " << v;
    std::cout << "\n";
    for (CubeId v : tc.objects)
        for (CubeId w : tc.objects) {
            std::cout << "hom " << v << " -> " << w << " : " << tc.hom_count(v, w)
                      << (tc.complete.at({v, w}) ? " complete" : " bounded")
                      << "\n";
        }
    return kExitOk;
}

int cmd_check(const std::string& model, const std::string& property) {
    Hda a = load_model(model);
    std::vector<std::string> alphabet;
    for (const auto& s : a.letter_alphabet()) alphabet.push_back(s);
    PropertyAutomaton l = read_property(read_file(property), alphabet);
    PropertyCheck pc = has_property(a, l);
    if (pc.holds) {
        std::cout << "holds\n";
        return kExitOk;
    }
    std::cout << "fails: " << word_to_string(*pc.counterexample) << "\n";
    return kExitFails;
}

int cmd_fixture(const std::string& name, const std::string& out) {
    std::string text;
    if (is_builtin_hda(name)) text = write_hda(builtin_hda(name));
    else text = write_pcs(builtin_pcs(name));
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher-dimensional automata: modeling, safe reduction, and "
                 "dihomotopy-invariant property checking"};
    app.require_subcommand(1);

    Budgets budgets;
    unsigned long long seed = 0;
    app.add_option("--seed", seed, "randomized-generator seed (results unaffected)");
    app.add_option("--budget-paths", budgets.paths, "dihomotopy closure budget");
    app.add_option("--budget-states", budgets.states, "composition state budget");
    app.add_option("--oracle-bound", budgets.oracle, "bruteforce oracle cell bound");

    std::string in, out, report_path, orig, reduced, model, property, coeff = "z";
    std::string mode = "search", name;
    std::vector<std::string> files, inits, shared;
    bool enable_manual = false, force_none = false;
    long long max_len = -1;

    auto* validate = app.add_subcommand("validate", "check structural invariants");
    validate->add_option("--in", in)->required();

    auto* info = app.add_subcommand("info", "print model summary");
    info->add_option("--in", in)->required();

    auto* compose_cmd = app.add_subcommand("compose", "parallel composition");
    compose_cmd->add_option("files", files, "program graph files")->required();
    compose_cmd->add_option("--init", inits, "initial valuation override(s)");
    compose_cmd->add_option("--shared", shared, "shared variable names")
        ->delimiter(',');
    compose_cmd->add_option("--out", out)->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "theorem-gated reduction");
    reduce_cmd->add_option("--in", in)->required();
    reduce_cmd->add_option("--out", out);
    reduce_cmd->add_option("--report", report_path);
    reduce_cmd->add_flag("--enable-manual", enable_manual);
    reduce_cmd->add_flag("--force-none", force_none,
                         "never force a failing step (default)");

    auto* certify_cmd = app.add_subcommand("certify", "check a reduction report");
    certify_cmd->add_option("--orig", orig)->required();
    certify_cmd->add_option("--reduced", reduced)->required();
    certify_cmd->add_option("--report", report_path)->required();

    auto* homology_cmd = app.add_subcommand("homology", "betti numbers and torsion");
    homology_cmd->add_option("--in", in)->required();
    homology_cmd->add_option("--coeff", coeff, "z | q | p<prime>");

    auto* hgraph_cmd = app.add_subcommand("hgraph", "homology graph edges");
    hgraph_cmd->add_option("--in", in)->required();
    hgraph_cmd->add_option("--mode", mode, "search | bruteforce");

    auto* trace_cmd = app.add_subcommand("trace", "trace category hom counts");
    trace_cmd->add_option("--in", in)->required();
    trace_cmd->add_option("--max-len", max_len, "length bound (default auto)");

    auto* check_cmd = app.add_subcommand("check", "model-check a property");
    check_cmd->add_option("--model", model)->required();
    check_cmd->add_option("--property", property)->required();

    auto* fixture_cmd = app.add_subcommand("fixture", "emit a built-in fixture");
    fixture_cmd->add_option("--name", name)->required();
    fixture_cmd->add_option("--out", out);

    try {
        app.parse(argc, argv);
        (void)force_none;
        if (validate->parsed()) return cmd_validate(in);
        if (info->parsed()) return cmd_info(in);
        if (compose_cmd->parsed())
            return cmd_compose(files, inits, shared, out, budgets);
        if (reduce_cmd->parsed())
            return cmd_reduce(in, out, report_path, enable_manual, budgets);
        if (certify_cmd->parsed())
            return cmd_certify(orig, reduced, report_path, budgets);
        if (homology_cmd->parsed()) return cmd_homology(in, coeff);
        if (hgraph_cmd->parsed()) return cmd_hgraph(in, mode, budgets);
        if (trace_cmd->parsed()) return cmd_trace(in, max_len, budgets);
        if (check_cmd->parsed()) return cmd_check(model, property);
        if (fixture_cmd->parsed()) return cmd_fixture(name, out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const resource_error& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const precondition_error& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return kExitFails;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const argument_error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
