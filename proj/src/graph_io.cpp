#include "sngraph/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "sngraph/error.hpp"

namespace sngraph {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot write " + path.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw FormatError("short write to " + path.string());
}

json edges_to_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (const auto& [a, b] : edges) out.push_back({a, b});
    return out;
}

std::vector<Edge> edges_from_json(const json& j, std::size_t node_count) {
    std::vector<Edge> out;
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 2) throw FormatError("edge must be a pair of indices");
        const auto a = e[0].get<std::uint32_t>();
        const auto b = e[1].get<std::uint32_t>();
        if (!(a < b) || b >= node_count) throw FormatError("edge indices out of order or range");
        out.emplace_back(a, b);
    }
    if (!std::is_sorted(out.begin(), out.end()) || std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw FormatError("edges must be unique and sorted");
    }
    return out;
}

json matrix_to_json(const FeatureMatrix& fm) {
    json rows = json::array();
    for (std::size_t r = 0; r < fm.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < fm.cols; ++c) row.push_back(fm.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

FeatureMatrix matrix_from_json(const json& rows, FeatureKind kind, std::size_t node_count) {
    FeatureMatrix fm;
    fm.kind = kind;
    fm.cols = kind == FeatureKind::PR ? kPrWidth : kAdrWidth;
    if (!rows.is_array() || rows.size() != node_count) throw FormatError("feature row count does not match nodes");
    fm.rows = rows.size();
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != fm.cols) throw FormatError("feature row has the wrong width");
        for (const json& v : row) fm.values.push_back(v.get<float>());
    }
    return fm;
}

void check_features(const GraphFile& file) {
    const std::size_t n = file.graph.nodes.size();
    if (file.pr && (file.pr->rows != n || file.pr->cols != kPrWidth || file.pr->values.size() != n * kPrWidth)) {
        throw FormatError("PR feature matrix does not match the graph");
    }
    if (file.adr && (file.adr->rows != n || file.adr->cols != kAdrWidth || file.adr->values.size() != n * kAdrWidth)) {
        throw FormatError("ADR feature matrix does not match the graph");
    }
}

}  // namespace

std::string to_json_string(const GraphFile& file) {
    check_features(file);
    const SnGraph& g = file.graph;
    json doc;
    doc["meta"] = {
        {"version", kGraphJsonVersion},
        {"source", g.meta.source},
        {"resolution", g.meta.resolution},
        {"sampler", std::string(to_string(g.meta.sampler))},
        {"requested_n", g.meta.requested_n},
        {"achieved_n", g.meta.achieved_n},
        {"params", {{"p", g.params.p}, {"t_d", g.params.t_d}, {"t_p", g.params.t_p}, {"q", g.params.q}}},
    };
    json nodes = json::array();
    for (const SphereNode& n : g.nodes) {
        nodes.push_back({{"c", {n.center.x, n.center.y, n.center.z}},
                         {"r", n.radius},
                         {"v", {n.voxel[0], n.voxel[1], n.voxel[2]}}});
    }
    doc["nodes"] = std::move(nodes);
    doc["edges"] = edges_to_json(g.edges);
    doc["rule4_edges"] = edges_to_json(g.rule4_edges);
    json features = json::object();
    if (file.pr) features["pr"] = matrix_to_json(*file.pr);
    if (file.adr) features["adr"] = matrix_to_json(*file.adr);
    doc["features"] = std::move(features);
    return doc.dump() + "\n";
}

GraphFile from_json_string(const std::string& text) {
    GraphFile file;
    try {
        const json doc = json::parse(text);
        const json& meta = doc.at("meta");
        if (meta.at("version").get<int>() != kGraphJsonVersion) {
            throw FormatError("unsupported graph file version " + meta.at("version").dump());
        }
        SnGraph& g = file.graph;
        g.meta.source = meta.value("source", std::string());
        g.meta.resolution = meta.value("resolution", 0);
        g.meta.sampler = parse_sampler_method(meta.value("sampler", std::string("nodesphere")));
        g.meta.requested_n = meta.value("requested_n", 0);
        g.meta.achieved_n = meta.value("achieved_n", 0);
        if (meta.contains("params")) {
            const json& p = meta.at("params");
            g.params.p = p.at("p").get<int>();
            g.params.t_d = p.at("t_d").get<double>();
            g.params.t_p = p.at("t_p").get<double>();
            g.params.q = p.at("q").get<int>();
        }
        for (const json& n : doc.at("nodes")) {
            SphereNode node;
            const json& c = n.at("c");
            if (!c.is_array() || c.size() != 3) throw FormatError("node center must have 3 coordinates");
            node.center = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
            node.radius = n.at("r").get<double>();
            if (n.contains("v")) {
                const json& v = n.at("v");
                node.voxel = {v.at(0).get<int>(), v.at(1).get<int>(), v.at(2).get<int>()};
            }
            g.nodes.push_back(node);
        }
        g.edges = edges_from_json(doc.at("edges"), g.nodes.size());
        g.rule4_edges = edges_from_json(doc.at("rule4_edges"), g.nodes.size());
        for (const Edge& e : g.rule4_edges) {
            if (!std::binary_search(g.edges.begin(), g.edges.end(), e)) {
                throw FormatError("rule4 edge missing from edge list");
            }
        }
        if (doc.contains("features")) {
            const json& f = doc.at("features");
            if (f.contains("pr")) file.pr = matrix_from_json(f.at("pr"), FeatureKind::PR, g.nodes.size());
            if (f.contains("adr")) file.adr = matrix_from_json(f.at("adr"), FeatureKind::ADR, g.nodes.size());
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed graph JSON: ") + e.what());
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(std::string("malformed graph JSON: ") + e.what());
    }
    return file;
}

void write_graph_json(const GraphFile& file, const std::filesystem::path& path) {
    write_file(path, to_json_string(file));
}

GraphFile read_graph_json(const std::filesystem::path& path) { return from_json_string(read_file(path)); }

namespace {

constexpr char kBinaryMagic[4] = {'S', 'N', 'G', '1'};
constexpr std::uint8_t kFlagPr = 1;
constexpr std::uint8_t kFlagAdr = 2;

class ByteWriter {
public:
    void raw(const char* p, std::size_t n) { out_.append(p, n); }
    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int b = 0; b < 4; ++b) out_.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
    }
    void f32(float v) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        u32(bits);
    }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class ByteReader {
public:
    explicit ByteReader(const std::string& in) : in_(in) {}

    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw FormatError("truncated SNG1 payload");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(in_[pos_++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in_[pos_ + b])) << (8 * b);
        pos_ += 4;
        return v;
    }
    float f32() {
        const std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::size_t remaining() const { return in_.size() - pos_; }

private:
    const std::string& in_;
    std::size_t pos_ = 0;
};

std::vector<Edge> read_edges(ByteReader& r, std::uint32_t count, std::size_t node_count) {
    r.need(static_cast<std::size_t>(count) * 8);
    std::vector<Edge> edges;
    edges.reserve(count);
    for (std::uint32_t e = 0; e < count; ++e) {
        const std::uint32_t a = r.u32();
        const std::uint32_t b = r.u32();
        if (!(a < b) || b >= node_count) throw FormatError("SNG1 edge indices out of order or range");
        edges.emplace_back(a, b);
    }
    return edges;
}

FeatureMatrix read_matrix(ByteReader& r, FeatureKind kind, std::size_t rows) {
    FeatureMatrix fm;
    fm.kind = kind;
    fm.rows = rows;
    fm.cols = kind == FeatureKind::PR ? kPrWidth : kAdrWidth;
    r.need(rows * fm.cols * 4);
    fm.values.resize(rows * fm.cols);
    for (float& v : fm.values) v = r.f32();
    return fm;
}

}  // namespace

std::string to_binary_string(const GraphFile& file) {
    check_features(file);
    const SnGraph& g = file.graph;
    ByteWriter w;
    w.raw(kBinaryMagic, 4);
    w.u32(static_cast<std::uint32_t>(g.nodes.size()));
    w.u32(static_cast<std::uint32_t>(g.edges.size()));
    w.u32(static_cast<std::uint32_t>(g.rule4_edges.size()));
    w.u8(static_cast<std::uint8_t>((file.pr ? kFlagPr : 0) | (file.adr ? kFlagAdr : 0)));
    for (const SphereNode& n : g.nodes) {
        w.f32(static_cast<float>(n.center.x));
        w.f32(static_cast<float>(n.center.y));
        w.f32(static_cast<float>(n.center.z));
        w.f32(static_cast<float>(n.radius));
    }
    for (const auto& [a, b] : g.edges) {
        w.u32(a);
        w.u32(b);
    }
    for (const auto& [a, b] : g.rule4_edges) {
        w.u32(a);
        w.u32(b);
    }
    if (file.pr) for (const float v : file.pr->values) w.f32(v);
    if (file.adr) for (const float v : file.adr->values) w.f32(v);
    return w.take();
}

GraphFile from_binary_string(const std::string& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kBinaryMagic, 4) != 0) throw FormatError("bad SNG1 magic");
    ByteReader r(bytes);
    for (int i = 0; i < 4; ++i) r.u8();
    const std::uint32_t n = r.u32();
    const std::uint32_t e = r.u32();
    const std::uint32_t e4 = r.u32();
    const std::uint8_t flags = r.u8();
    if (flags & ~(kFlagPr | kFlagAdr)) throw FormatError("unknown SNG1 feature flags");

    GraphFile file;
    SnGraph& g = file.graph;
    r.need(static_cast<std::size_t>(n) * 16);
    g.nodes.resize(n);
    for (SphereNode& node : g.nodes) {
        node.center.x = r.f32();
        node.center.y = r.f32();
        node.center.z = r.f32();
        node.radius = r.f32();
    }
    g.edges = read_edges(r, e, n);
    g.rule4_edges = read_edges(r, e4, n);
    if (flags & kFlagPr) file.pr = read_matrix(r, FeatureKind::PR, n);
    if (flags & kFlagAdr) file.adr = read_matrix(r, FeatureKind::ADR, n);
    if (r.remaining() != 0) throw FormatError("trailing bytes after SNG1 payload");
    g.meta.achieved_n = static_cast<int>(n);
    return file;
}

void write_graph_binary(const GraphFile& file, const std::filesystem::path& path) {
    write_file(path, to_binary_string(file));
}

GraphFile read_graph_binary(const std::filesystem::path& path) { return from_binary_string(read_file(path)); }

namespace {

void append_float(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<float>(v));
    out.append(buf, res.ptr);
}

}  // namespace

std::string to_ply_string(const SnGraph& graph) {
    std::string out;
    out += "ply\nformat ascii 1.0\ncomment sphere node graph\n";
    out += "element vertex " + std::to_string(graph.nodes.size()) + "\n";
    out += "property float x\nproperty float y\nproperty float z\nproperty float radius\n";
    out += "element edge " + std::to_string(graph.edges.size()) + "\n";
    out += "property int vertex1\nproperty int vertex2\n";
    out += "end_header\n";
    for (const SphereNode& n : graph.nodes) {
        append_float(out, n.center.x);
        out += ' ';
        append_float(out, n.center.y);
        out += ' ';
        append_float(out, n.center.z);
        out += ' ';
        append_float(out, n.radius);
        out += '\n';
    }
    for (const auto& [a, b] : graph.edges) out += std::to_string(a) + ' ' + std::to_string(b) + '\n';
    return out;
}

void export_ply(const SnGraph& graph, const std::filesystem::path& path) { write_file(path, to_ply_string(graph)); }

GraphFile read_graph(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".json") return read_graph_json(path);
    if (ext == ".sng" || ext == ".bin") return read_graph_binary(path);
    throw FormatError("cannot tell graph format from extension of " + path.string());
}

}  // namespace sngraph
