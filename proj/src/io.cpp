#include "modcluster/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace modcluster {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_no,
                       const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool to_lower_equals(std::string_view s, std::string_view lower) {
    if (s.size() != lower.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != lower[i]) return false;
    return true;
}

/// Accumulates edges against densely remapped vertex ids.
struct EdgeAccumulator {
    const ReadOptions& options;
    std::unordered_map<std::string, VertexId> index;
    std::vector<std::string> labels;
    struct Pending {
        VertexId u, v;
        double w;
    };
    std::vector<Pending> pending;

    explicit EdgeAccumulator(const ReadOptions& opts) : options(opts) {}

    VertexId intern(const std::string& label) {
        auto [it, inserted] = index.emplace(label, static_cast<VertexId>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    }

    void add(VertexId u, VertexId v, double w) {
        if (u == v && (options.drop_self_edges || options.unweighted)) return;
        pending.push_back({u, v, options.unweighted ? 1.0 : w});
    }

    InputGraph finish() {
        GraphBuilder builder(labels.size());
        for (const Pending& p : pending) builder.add_edge(p.u, p.v, p.w);
        return {std::move(builder).build(), std::move(labels)};
    }
};

double parse_weight(std::string_view token, const std::filesystem::path& path,
                    std::size_t line_no) {
    double w = 0.0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, w);
    if (ec != std::errc{} || ptr != end) fail(path, line_no, "invalid edge weight");
    if (w < 0.0) fail(path, line_no, "negative edge weight");
    return w;
}

InputGraph read_edge_list(const std::filesystem::path& path, const ReadOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    EdgeAccumulator acc(options);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ss{line};
        std::string u, v, w, extra;
        if (!(ss >> u)) continue;  // blank
        if (!(ss >> v)) fail(path, line_no, "expected two vertex ids");
        for (const std::string& id : {u, v})
            if (id.find_first_not_of("0123456789") != std::string::npos)
                fail(path, line_no, "vertex ids must be nonnegative integers");
        double weight = 1.0;
        if (ss >> w) weight = parse_weight(w, path, line_no);
        if (ss >> extra) fail(path, line_no, "trailing tokens");
        const VertexId uid = acc.intern(u);  // intern left to right: ids are
        const VertexId vid = acc.intern(v);  // assigned by first appearance
        acc.add(uid, vid, weight);
    }
    return acc.finish();
}

InputGraph read_pajek(const std::filesystem::path& path, const ReadOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    EdgeAccumulator acc(options);
    std::string line;
    std::size_t line_no = 0;
    std::size_t vertex_total = 0;
    enum class Section { None, Vertices, Edges } section = Section::None;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '%') continue;

        if (sv.front() == '*') {
            std::istringstream ss{std::string(sv)};
            std::string keyword;
            ss >> keyword;
            if (to_lower_equals(keyword, "*vertices")) {
                std::size_t n = 0;
                if (!(ss >> n)) fail(path, line_no, "*Vertices requires a count");
                vertex_total = n;
                for (std::size_t i = 0; i < n; ++i) acc.intern(std::to_string(i + 1));
                section = Section::Vertices;
            } else if (to_lower_equals(keyword, "*edges") || to_lower_equals(keyword, "*arcs")) {
                if (vertex_total == 0) fail(path, line_no, "edge section before *Vertices");
                section = Section::Edges;
            } else {
                fail(path, line_no, "unsupported pajek section: " + keyword);
            }
            continue;
        }

        if (section == Section::Vertices) {
            // "id \"name\" ..." — keep the name as the label when present.
            std::istringstream ss{std::string(sv)};
            std::size_t id = 0;
            if (!(ss >> id) || id == 0 || id > vertex_total)
                fail(path, line_no, "vertex id out of range");
            std::string rest;
            std::getline(ss, rest);
            std::string_view name = trim(rest);
            if (name.size() >= 2 && name.front() == '"') {
                const auto close = name.find('"', 1);
                if (close != std::string_view::npos)
                    acc.labels[id - 1] = std::string(name.substr(1, close - 1));
            } else if (!name.empty()) {
                std::istringstream ns{std::string(name)};
                std::string bare;
                ns >> bare;
                acc.labels[id - 1] = bare;
            }
        } else if (section == Section::Edges) {
            std::istringstream ss{std::string(sv)};
            std::size_t u = 0, v = 0;
            if (!(ss >> u >> v)) fail(path, line_no, "expected two vertex ids");
            if (u == 0 || v == 0 || u > vertex_total || v > vertex_total)
                fail(path, line_no, "vertex id out of range");
            std::string w;
            double weight = 1.0;
            if (ss >> w) weight = parse_weight(w, path, line_no);
            acc.add(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), weight);
        } else {
            fail(path, line_no, "data before any pajek section");
        }
    }
    if (vertex_total == 0) fail(path, line_no, "missing *Vertices section");
    return acc.finish();
}

}  // namespace

GraphFormat parse_format(std::string_view name) {
    if (name == "edgelist") return GraphFormat::EdgeList;
    if (name == "pajek") return GraphFormat::Pajek;
    throw std::invalid_argument("unknown graph format: " + std::string(name));
}

std::string_view to_string(GraphFormat format) {
    return format == GraphFormat::EdgeList ? "edgelist" : "pajek";
}

GraphFormat guess_format(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    return ext == ".net" || ext == ".paj" ? GraphFormat::Pajek : GraphFormat::EdgeList;
}

InputGraph read_graph(const std::filesystem::path& path, GraphFormat format,
                      const ReadOptions& options) {
    return format == GraphFormat::Pajek ? read_pajek(path, options)
                                        : read_edge_list(path, options);
}

void write_clustering(const Clustering& clustering, const std::vector<std::string>& labels,
                      const std::filesystem::path& path) {
    if (labels.size() != clustering.vertex_count())
        throw std::invalid_argument("label count does not match clustering");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const auto dense = clustering.dense_assignment();
    for (VertexId v = 0; v < dense.size(); ++v) {
        const std::string& label = labels[v];
        if (label.find_first_of(" \t") != std::string::npos)
            out << '"' << label << '"';
        else
            out << label;
        out << ' ' << dense[v] << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::unordered_map<std::string, ClusterId> read_clustering(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::unordered_map<std::string, ClusterId> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        std::string label;
        if (sv.front() == '"') {
            const auto close = sv.find('"', 1);
            if (close == std::string_view::npos) fail(path, line_no, "unterminated quote");
            label = std::string(sv.substr(1, close - 1));
            sv.remove_prefix(close + 1);
        } else {
            const auto space = sv.find_first_of(" \t");
            if (space == std::string_view::npos) fail(path, line_no, "expected label and cluster");
            label = std::string(sv.substr(0, space));
            sv.remove_prefix(space);
        }
        sv = trim(sv);
        ClusterId c = 0;
        auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), c);
        if (ec != std::errc{} || ptr != sv.data() + sv.size())
            fail(path, line_no, "invalid cluster id");
        out[label] = c;
    }
    return out;
}

}  // namespace modcluster
