#include "hda/fixtures.hpp"

#include <algorithm>
#include <map>

namespace hda {

namespace {

// Square builder on named vertices: fronts start at the initial corner,
// backs end at the final corner; index 1 first, index 2 second.
struct HdaBuilder {
    PrecubicalSetBuilder b;
    std::map<std::string, CubeId> vertex;
    std::map<std::pair<std::string, std::string>, std::vector<CubeId>> edges;
    std::vector<std::tuple<CubeId, int, int, CubeId>> faces;
    Hda hda;

    CubeId v(const std::string& name) {
        auto it = vertex.find(name);
        if (it != vertex.end()) return it->second;
        CubeId id = b.add_cube(0);
        vertex[name] = id;
        return id;
    }
    CubeId edge(const std::string& from, const std::string& to, const Word& w) {
        CubeId e = b.add_cube(1);
        faces.emplace_back(e, 0, 1, v(from));
        faces.emplace_back(e, 1, 1, v(to));
        edges[{from, to}].push_back(e);
        hda.label[e] = w;
        return e;
    }
    CubeId find_edge(const std::string& from, const std::string& to) {
        auto it = edges.find({from, to});
        if (it == edges.end() || it->second.size() != 1)
            throw argument_error("fixture: ambiguous edge " + from + "->" + to);
        return it->second.front();
    }
    CubeId square(const std::string& sw, const std::string& mid1,
                  const std::string& mid2, const std::string& ne) {
        // d^0_1: sw->mid1, d^0_2: sw->mid2, d^1_1: mid2->ne, d^1_2: mid1->ne
        CubeId s = b.add_cube(2);
        faces.emplace_back(s, 0, 1, find_edge(sw, mid1));
        faces.emplace_back(s, 0, 2, find_edge(sw, mid2));
        faces.emplace_back(s, 1, 1, find_edge(mid2, ne));
        faces.emplace_back(s, 1, 2, find_edge(mid1, ne));
        return s;
    }
    Hda finish(const std::vector<std::string>& inits,
               const std::vector<std::string>& finals) {
        for (const auto& [e, k, i, t] : faces) b.set_face(e, k, i, t);
        hda.p = std::move(b).build();
        for (const auto& n : inits) hda.init.insert(vertex.at(n));
        for (const auto& n : finals) hda.final.insert(vertex.at(n));
        return std::move(hda);
    }
};

PrecubicalSet make_circle() {
    PrecubicalSetBuilder b;
    CubeId v = b.add_cube(0);
    CubeId e = b.add_cube(1);
    b.set_face(e, 0, 1, v);
    b.set_face(e, 1, 1, v);
    return std::move(b).build();
}

PrecubicalSet make_torus() {
    PrecubicalSetBuilder b;
    CubeId v = b.add_cube(0);
    CubeId a = b.add_cube(1);
    CubeId bb = b.add_cube(1);
    CubeId z = b.add_cube(2);
    b.set_face(a, 0, 1, v);
    b.set_face(a, 1, 1, v);
    b.set_face(bb, 0, 1, v);
    b.set_face(bb, 1, 1, v);
    b.set_face(z, 0, 1, a);
    b.set_face(z, 1, 1, a);
    b.set_face(z, 0, 2, bb);
    b.set_face(z, 1, 2, bb);
    return std::move(b).build();
}

PrecubicalSet make_pinched() {
    PrecubicalSetBuilder b;
    CubeId v0 = b.add_cube(0), v1 = b.add_cube(0), v2 = b.add_cube(0);
    CubeId e = b.add_cube(1), f = b.add_cube(1);
    CubeId s = b.add_cube(2);
    b.set_face(e, 0, 1, v0);
    b.set_face(e, 1, 1, v1);
    b.set_face(f, 0, 1, v1);
    b.set_face(f, 1, 1, v2);
    b.set_face(s, 0, 1, e);
    b.set_face(s, 0, 2, e);
    b.set_face(s, 1, 1, f);
    b.set_face(s, 1, 2, f);
    return std::move(b).build();
}

PrecubicalSet make_fig4() {
    HdaBuilder hb;
    // top row: q0 p1 q1 / middle: p0 p2 p4 / bottom: p3 p5
    hb.edge("q0", "p1", {"h"});
    hb.edge("q0", "p0", {"v"});
    hb.edge("p1", "p2", {"v"});
    hb.edge("p1", "q1", {"h"});
    hb.edge("q1", "p4", {"v"});
    hb.edge("p0", "p2", {"h"});
    hb.edge("p0", "p3", {"v"});
    hb.edge("p2", "p4", {"h"});
    hb.edge("p2", "p5", {"v"});
    hb.edge("p3", "p5", {"h"});
    hb.square("q0", "p0", "p1", "p2");  // y
    hb.square("p1", "p2", "q1", "p4");  // x: d^1_2 x = p2->p4
    hb.square("p0", "p3", "p2", "p5");  // z
    return hb.finish({}, {}).p;
}

Hda make_square_ab() {
    HdaBuilder hb;
    hb.edge("v00", "v10", {"a"});
    hb.edge("v00", "v01", {"b"});
    hb.edge("v01", "v11", {"a"});
    hb.edge("v10", "v11", {"b"});
    hb.square("v00", "v10", "v01", "v11");
    return hb.finish({"v00"}, {"v11"});
}

Hda make_fig3a() {
    HdaBuilder hb;
    Word X0 = {"x:=_0 1", "x:=_0 0"}, X1 = {"x:=_1 1", "x:=_1 0"};
    Word Y0 = {"y:=_0 1", "y:=_0 0"}, Y1 = {"y:=_1 1", "y:=_1 0"};
    // grid rows top to bottom: (q11 q13 p12) / (q6 q8 p7) / (q0 q2 p1)
    hb.edge("q11", "q13", X0);
    hb.edge("q13", "p12", Y0);
    hb.edge("q6", "q8", X0);
    hb.edge("q8", "p7", Y0);
    hb.edge("q0", "q2", X0);
    hb.edge("q2", "p1", Y0);
    hb.edge("q11", "q6", X1);
    hb.edge("q13", "q8", X1);
    hb.edge("p12", "p7", X1);
    hb.edge("q6", "q0", Y1);
    hb.edge("q8", "q2", Y1);
    hb.edge("p7", "p1", Y1);
    hb.square("q13", "q8", "p12", "p7");  // upper right
    hb.square("q6", "q0", "q8", "q2");    // lower left
    return hb.finish({"q11"}, {"p1"});
}

Hda make_fig3b() {
    HdaBuilder hb;
    hb.edge("q0", "q8", {"x:=_0 1", "x:=_0 0", "x:=_1 1", "x:=_1 0"});
    hb.edge("q0", "q8", {"x:=_1 1", "x:=_1 0", "x:=_0 1", "x:=_0 0"});
    hb.edge("q8", "p12", {"y:=_0 1", "y:=_0 0", "y:=_1 1", "y:=_1 0"});
    hb.edge("q8", "p12", {"y:=_1 1", "y:=_1 0", "y:=_0 1", "y:=_0 0"});
    return hb.finish({"q0"}, {"p12"});
}

Hda make_fig7() {
    HdaBuilder hb;
    Word B0 = {"b_0:=_0 1"}, B1 = {"b_1:=_1 1"};
    Word T0 = {"t:=_0 1"}, T1 = {"t:=_1 0"};
    hb.edge("q1", "q2", B1);
    hb.edge("q2", "q3", T1);
    hb.edge("q1", "q6", B0);
    hb.edge("q2", "q7", B0);
    hb.edge("q3", "q8", B0);
    hb.edge("q6", "q7", B1);
    hb.edge("q7", "q8", T1);
    hb.edge("q7", "q9", T0);
    hb.edge("q10", "q8", T1);
    hb.edge("q11", "q3", T1);
    hb.edge("q10", "q9", T0);
    hb.edge("q11", "q10", B0);
    hb.edge("q6", "q14", T0);
    hb.edge("q14", "q9", B1);
    hb.edge("q15", "q10", B1);
    hb.edge("q16", "q11", B1);
    hb.edge("q15", "q14", T0);
    hb.edge("q16", "q15", B0);
    hb.edge("q3", "q1", {"crit_1", "b_1:=_1 0"});
    hb.edge("q9", "q3", {"t:=_1 0", "crit_0", "b_0:=_0 0"});
    hb.edge("q8", "q14", {"t:=_0 1", "crit_1", "b_1:=_1 0"});
    hb.edge("q14", "q16", {"crit_0", "b_0:=_0 0"});
    hb.square("q1", "q6", "q2", "q7");     // A
    hb.square("q2", "q7", "q3", "q8");     // B (free back face q7->q8)
    hb.square("q6", "q14", "q7", "q9");    // C
    hb.square("q11", "q10", "q3", "q8");   // D
    hb.square("q15", "q14", "q10", "q9");  // E
    hb.square("q16", "q15", "q11", "q10"); // F
    return hb.finish({"q1", "q16"}, {"q1", "q16"});
}

Hda make_fig8() {
    HdaBuilder hb;
    hb.edge("q1", "q3", {"b_1:=_1 1", "t:=_1 0"});
    hb.edge("q1", "q14", {"b_0:=_0 1", "t:=_0 1"});
    hb.edge("q16", "q3", {"b_1:=_1 1", "t:=_1 0"});
    hb.edge("q16", "q14", {"b_0:=_0 1", "t:=_0 1"});
    hb.edge("q3", "q1", {"crit_1", "b_1:=_1 0"});
    hb.edge("q14", "q16", {"crit_0", "b_0:=_0 0"});
    hb.edge("q3", "q14", {"b_0:=_0 1", "t:=_0 1", "crit_1", "b_1:=_1 0"});
    hb.edge("q14", "q3", {"b_1:=_1 1", "t:=_1 0", "crit_0", "b_0:=_0 0"});
    return hb.finish({"q1", "q16"}, {"q1", "q16"});
}

}  // namespace

namespace {

std::string replace_all(std::string s, const std::string& from,
                        const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

}  // namespace

std::string fig1_program_source(int process_id) {
    std::string src =
        "var x : 0..1 = 0\n"
        "var y : 0..1 = 0\n"
        "loc l0\nloc l1\nloc l2\nloc l3\nloc l4\n"
        "init l0\nfinal l4\n"
        "edge l0 -> l1 [x = 0] \"x:=_I 1\" { x := 1 }\n"
        "edge l1 -> l2 [] \"x:=_I 0\" { x := 0 }\n"
        "edge l2 -> l3 [y = 0] \"y:=_I 1\" { y := 1 }\n"
        "edge l3 -> l4 [] \"y:=_I 0\" { y := 0 }\n";
    return replace_all(src, "I", std::to_string(process_id));
}

std::string fig5_program_source(int process_id) {
    if (process_id != 0 && process_id != 1)
        throw argument_error("fig5 process id must be 0 or 1");
    std::string i = std::to_string(process_id);
    std::string j = std::to_string(1 - process_id);
    std::string src =
        "var b0 : 0..1 = 0\n"
        "var b1 : 0..1 = 0\n"
        "var t : 0..1 = 0\n"
        "loc l0\nloc l1\nloc l2\nloc l3\n"
        "init l0\nfinal l0\n"
        "edge l0 -> l1 [] \"b_I:=_I 1\" { bI := 1 }\n"
        "edge l1 -> l2 [] \"t:=_I J\" { t := J }\n"
        "edge l2 -> l3 [bJ = 0 | t = I] \"crit_I\" { }\n"
        "edge l3 -> l0 [] \"b_I:=_I 0\" { bI := 0 }\n";
    src = replace_all(src, "I", i);
    src = replace_all(src, "J", j);
    return src;
}

Hda grid_hda(int m, int n) {
    std::vector<std::pair<CubeId, CubeId>> names;
    PrecubicalSet pm = interval(0, m), pn = interval(0, n);
    PrecubicalSet t = tensor(pm, pn, &names);
    Hda a;
    a.p = t;
    for (const auto& c : t.cubes()) {
        if (c.dim != 1) continue;
        auto [pid, qid] = names[static_cast<std::size_t>(c.id)];
        a.label[c.id] = pm.degree(pid) == 1 ? Word{"a"} : Word{"b"};
    }
    // corners: vertex pairs (0, 0) and (m, n); interval vertex ids are 0..m
    for (const auto& c : t.cubes()) {
        if (c.dim != 0) continue;
        auto [pid, qid] = names[static_cast<std::size_t>(c.id)];
        if (pid == 0 && qid == 0) a.init.insert(c.id);
        if (pid == m && qid == n) a.final.insert(c.id);
    }
    return a;
}

bool is_builtin_pcs(const std::string& name) {
    if (name == "circle" || name == "torus" || name == "cube2" ||
        name == "cube3" || name == "pinched" || name == "fig4")
        return true;
    return name.rfind("grid", 0) == 0;
}

bool is_builtin_hda(const std::string& name) {
    return name == "square_ab" || name == "fig2" || name == "fig3a" ||
           name == "fig3b" || name == "fig6" || name == "fig7" || name == "fig8";
}

std::vector<std::string> builtin_names() {
    return {"circle", "torus", "cube2", "cube3", "pinched", "fig4",
            "grid2x2", "square_ab", "fig2", "fig3a", "fig3b", "fig6",
            "fig7", "fig8"};
}

PrecubicalSet builtin_pcs(const std::string& name) {
    if (name == "circle") return make_circle();
    if (name == "torus") return make_torus();
    if (name == "cube2") return tensor(interval(0, 1), interval(0, 1));
    if (name == "cube3")
        return tensor(tensor(interval(0, 1), interval(0, 1)), interval(0, 1));
    if (name == "pinched") return make_pinched();
    if (name == "fig4") return make_fig4();
    if (name.rfind("grid", 0) == 0) {
        auto x = name.find('x');
        if (x != std::string::npos) {
            int m = std::stoi(name.substr(4, x - 4));
            int n = std::stoi(name.substr(x + 1));
            return tensor(interval(0, m), interval(0, n));
        }
    }
    throw argument_error("unknown builtin precubical set '" + name + "'");
}

Hda builtin_hda(const std::string& name) {
    if (name == "square_ab") return make_square_ab();
    if (name == "fig3a") return make_fig3a();
    if (name == "fig3b") return make_fig3b();
    if (name == "fig7") return make_fig7();
    if (name == "fig8") return make_fig8();
    if (name == "fig2") {
        ProgramGraph pg0 = parse_program_graph(fig1_program_source(0));
        ProgramGraph pg1 = parse_program_graph(fig1_program_source(1));
        return compose({pg0, pg1});
    }
    if (name == "fig6") {
        ProgramGraph p0 = parse_program_graph(fig5_program_source(0));
        ProgramGraph p1 = parse_program_graph(fig5_program_source(1));
        ComposeOptions opts;
        opts.initial_valuations = {{{"t", 0}}, {{"t", 1}}};
        return compose({p0, p1}, opts);
    }
    throw argument_error("unknown builtin HDA '" + name + "'");
}

}  // namespace hda
