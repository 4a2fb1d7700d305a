#include "hda/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace hda {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

struct Tokenizer {
    const std::string& line;
    std::size_t pos = 0;
    int lineno;

    explicit Tokenizer(const std::string& l, int n) : line(l), lineno(n) {}

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }

    bool done() {
        skip_ws();
        return pos >= line.size();
    }

    std::string next() {
        skip_ws();
        if (pos >= line.size())
            throw parse_error("line " + std::to_string(lineno) +
                              ": unexpected end of line");
        if (line[pos] == '"') {
            ++pos;
            std::string out;
            while (pos < line.size() && line[pos] != '"') {
                if (line[pos] == '\\' && pos + 1 < line.size()) ++pos;
                out += line[pos++];
            }
            if (pos >= line.size())
                throw parse_error("line " + std::to_string(lineno) +
                                  ": unterminated string");
            ++pos;
            return out;
        }
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        return line.substr(start, pos - start);
    }

    long long next_int() {
        std::string t = next();
        try {
            std::size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw parse_error("line " + std::to_string(lineno) +
                              ": expected integer, got '" + t + "'");
        }
    }
};

struct ParsedModel {
    PrecubicalSet p;
    std::set<CubeId> init, final;
    std::map<CubeId, Word> label;
    bool has_hda_records = false;
};

ParsedModel parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    PrecubicalSetBuilder b;
    struct FaceRec {
        CubeId x;
        int k, i;
        CubeId y;
        int lineno;
    };
    std::vector<FaceRec> faces;
    ParsedModel m;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        Tokenizer tz(line, lineno);
        if (tz.done()) continue;
        std::string kw = tz.next();
        if (!header_seen) {
            if (kw != "pcs" || tz.next() != "v1")
                throw parse_error("expected header 'pcs v1'");
            header_seen = true;
            continue;
        }
        if (kw == "cube") {
            CubeId id = tz.next_int();
            if (tz.next() != "dim")
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected 'dim'");
            int n = static_cast<int>(tz.next_int());
            b.add_cube_with_id(id, n);
        } else if (kw == "face") {
            CubeId x = tz.next_int();
            int k = static_cast<int>(tz.next_int());
            int i = static_cast<int>(tz.next_int());
            CubeId y = tz.next_int();
            faces.push_back({x, k, i, y, lineno});
        } else if (kw == "init") {
            m.init.insert(tz.next_int());
            m.has_hda_records = true;
        } else if (kw == "final") {
            m.final.insert(tz.next_int());
            m.has_hda_records = true;
        } else if (kw == "label") {
            CubeId e = tz.next_int();
            Word w = word_from_string(tz.next());
            if (m.label.count(e) && m.label[e] != w)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": conflicting label for edge " +
                                  std::to_string(e));
            m.label[e] = std::move(w);
            m.has_hda_records = true;
        } else {
            throw parse_error("line " + std::to_string(lineno) +
                              ": unknown record '" + kw + "'");
        }
        if (!tz.done())
            throw parse_error("line " + std::to_string(lineno) +
                              ": trailing tokens");
    }
    if (!header_seen) throw parse_error("empty input: missing 'pcs v1' header");
    for (const auto& f : faces) {
        try {
            b.set_face(f.x, f.k, f.i, f.y);
        } catch (const argument_error& e) {
            throw parse_error("line " + std::to_string(f.lineno) + ": " + e.what());
        }
    }
    try {
        m.p = std::move(b).build();
    } catch (const argument_error& e) {
        throw parse_error(std::string("incomplete model: ") + e.what());
    }
    return m;
}

}  // namespace

std::string write_pcs(const PrecubicalSet& p) {
    std::ostringstream out;
    out << "pcs v1\n";
    for (const auto& c : p.cubes())
        out << "cube " << c.id << " dim " << c.dim << "\n";
    for (const auto& c : p.cubes())
        for (int i = 1; i <= c.dim; ++i)
            for (int k = 0; k <= 1; ++k)
                out << "face " << c.id << " " << k << " " << i << " "
                    << c.faces[2 * (static_cast<std::size_t>(i) - 1) +
                               static_cast<std::size_t>(k)]
                    << "\n";
    return out.str();
}

std::string write_hda(const Hda& a) {
    std::ostringstream out;
    out << write_pcs(a.p);
    for (CubeId v : a.init) out << "init " << v << "\n";
    for (CubeId v : a.final) out << "final " << v << "\n";
    for (const auto& [e, w] : a.label)
        out << "label " << e << " " << quote(word_to_string(w)) << "\n";
    return out.str();
}

PrecubicalSet read_pcs(const std::string& text) { return parse_model(text).p; }

bool model_has_hda_records(const std::string& text) {
    return parse_model(text).has_hda_records;
}

Hda read_hda(const std::string& text) {
    ParsedModel m = parse_model(text);
    Hda a;
    a.p = std::move(m.p);
    a.init = std::move(m.init);
    a.final = std::move(m.final);
    a.label = std::move(m.label);
    return a;
}

std::string write_path(const Path& w) {
    std::ostringstream out;
    out << "path " << w.start << " :";
    for (CubeId e : w.edges) out << " " << e;
    return out.str();
}

Path read_path(const std::string& line) {
    Tokenizer tz(line, 1);
    if (tz.next() != "path") throw parse_error("expected 'path' record");
    Path w;
    w.start = tz.next_int();
    if (tz.next() != ":") throw parse_error("expected ':' in path record");
    while (!tz.done()) w.edges.push_back(tz.next_int());
    return w;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write file: " + path);
    out << content;
}

}  // namespace hda
