#include <fstream>
#include <sstream>

#include "confsel/errors.hpp"
#include "confsel/graph.hpp"

namespace confsel {

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

VertexId name_at(std::size_t line, std::string_view token) {
    if (!VertexId::is_valid_name(token))
        throw ParseError(line, "invalid vertex name '" + std::string(token) +
                                   "' (names must match [A-Za-z_][A-Za-z0-9_]*)");
    return VertexId(std::string(token));
}

}  // namespace

Admg parse_graph(std::string_view text) {
    Admg::Builder builder;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto hash = raw.find('#');
        std::string_view line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        try {
            bool bidirected = false;
            auto arrow = line.find("<->");
            std::size_t arrow_len = 3;
            if (arrow != std::string_view::npos) {
                bidirected = true;
            } else {
                arrow = line.find("->");
                arrow_len = 2;
            }
            if (arrow != std::string_view::npos) {
                VertexId a = name_at(line_no, trim(line.substr(0, arrow)));
                VertexId b = name_at(line_no, trim(line.substr(arrow + arrow_len)));
                if (bidirected)
                    builder.add_bidirected(a, b);
                else
                    builder.add_directed(a, b);
                continue;
            }
            auto space = line.find_first_of(" \t");
            if (space == std::string_view::npos)
                throw ParseError(line_no, "expected 'vertex NAME', 'latent NAME', 'A -> B' or 'A <-> B'");
            std::string_view keyword = line.substr(0, space);
            std::string_view rest = trim(line.substr(space));
            if (keyword != "vertex" && keyword != "latent")
                throw ParseError(line_no, "unknown keyword '" + std::string(keyword) + "'");
            builder.add_vertex(name_at(line_no, rest), keyword == "vertex");
        } catch (const GraphError& e) {
            throw ParseError(line_no, e.what());
        } catch (const PreconditionError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return builder.build();
}

Admg read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_graph(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.detail(), path);
    }
}

std::string serialize_graph(const Admg& g) {
    std::string out;
    for (const auto& v : g.vertices())
        out += (g.is_observed(v) ? "vertex " : "latent ") + v.name() + "\n";
    for (const auto& e : g.directed_edges()) out += e.tail.name() + " -> " + e.head.name() + "\n";
    for (const auto& p : g.bidirected_edges())
        out += p.first().name() + " <-> " + p.second().name() + "\n";
    return out;
}

}  // namespace confsel
