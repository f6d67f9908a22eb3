#include "cli/serialize.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <map>

namespace cdok::cli {

namespace {

enum Section : std::uint32_t {
    params_section = 1,
    points_section = 2,
    table_section = 3,
    hierarchy_section = 4,
    blocks_section = 5,
    text_section = 6,
};

class Writer {
public:
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void bytes(std::string_view s) {
        u64(s.size());
        out_.append(s);
    }
    std::string& str() { return out_; }

private:
    void put(std::uint64_t v, int width) {
        for (int i = 0; i < width; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
    double f64() { return std::bit_cast<double>(get(8)); }
    std::string_view bytes() {
        const std::uint64_t n = u64();
        need(n);
        auto s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    /// Element count that must fit in the remaining bytes at `width` each.
    std::size_t count(std::size_t width) {
        const std::uint64_t n = u64();
        if (width != 0 && n > (data_.size() - pos_) / width) throw CorruptFile("section length exceeds file");
        return static_cast<std::size_t>(n);
    }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(std::uint64_t n) const {
        if (n > data_.size() - pos_) throw CorruptFile("truncated section");
    }
    std::uint64_t get(int width) {
        need(static_cast<std::uint64_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += width;
        return v;
    }
    std::string_view data_;
    std::size_t pos_ = 0;
};

std::string assemble(OracleKind kind, const std::vector<std::pair<Section, std::string>>& sections) {
    Writer w;
    w.str().append("CDOK");
    w.u32(kFormatVersion);
    w.u32(static_cast<std::uint32_t>(kind));
    w.u32(static_cast<std::uint32_t>(sections.size()));
    std::uint64_t offset = 16 + sections.size() * 20;
    for (const auto& [id, body] : sections) {
        w.u32(id);
        w.u64(offset);
        w.u64(body.size());
        offset += body.size();
    }
    for (const auto& s : sections) w.str().append(s.second);
    w.u64(fnv1a(w.str()));
    return std::move(w.str());
}

struct Parsed {
    OracleKind kind;
    std::map<std::uint32_t, std::string_view> sections;

    Reader section(Section id) const {
        auto it = sections.find(id);
        if (it == sections.end()) throw CorruptFile("missing section " + std::to_string(id));
        return Reader(it->second);
    }
};

Parsed split(std::string_view file) {
    if (file.size() < 24 || file.substr(0, 4) != "CDOK") throw CorruptFile("not an oracle file (bad magic)");
    const std::string_view body = file.substr(0, file.size() - 8);
    Reader tail(file.substr(file.size() - 8));
    if (tail.u64() != fnv1a(body)) throw CorruptFile("checksum mismatch");
    Reader r(body.substr(4));
    const std::uint32_t version = r.u32();
    if (version != kFormatVersion) {
        throw CorruptFile("unsupported format version " + std::to_string(version));
    }
    const std::uint32_t kind = r.u32();
    if (kind < 1 || kind > 3) throw CorruptFile("unknown oracle kind " + std::to_string(kind));
    Parsed p{static_cast<OracleKind>(kind), {}};
    const std::uint32_t n = r.u32();
    if (n > body.size() / 20) throw CorruptFile("bad section table");
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t id = r.u32();
        const std::uint64_t off = r.u64();
        const std::uint64_t size = r.u64();
        if (off > body.size() || size > body.size() - off) throw CorruptFile("section outside file");
        p.sections[id] = body.substr(off, size);
    }
    return p;
}

void put_options(Writer& w, double epsilon, double omega, OracleMode mode) {
    w.f64(epsilon);
    w.f64(omega);
    w.u32(mode == OracleMode::exact ? 0 : 1);
}

OracleMode get_mode(Reader& r) {
    const std::uint32_t m = r.u32();
    if (m > 1) throw CorruptFile("bad oracle mode");
    return m == 0 ? OracleMode::exact : OracleMode::approximate;
}

void put_hierarchy(Writer& w, const ColorHierarchy& h) {
    w.u64(h.num_points());
    for (std::size_t i = 0; i < h.num_points(); ++i) {
        w.i64(h.positions[i]);
        w.u32(h.leaf_color[i]);
    }
    w.u64(h.parent.size());
    for (Color p : h.parent) w.u32(p);
}

ColorHierarchy get_hierarchy(Reader& r) {
    const std::size_t n = r.count(12);
    std::vector<Position> pos(n);
    std::vector<Color> leaf(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = r.i64();
        leaf[i] = r.u32();
    }
    std::vector<Color> parent(r.count(4));
    for (auto& p : parent) p = r.u32();
    for (Color c : leaf) {
        if (c == 0 || c >= parent.size()) throw CorruptFile("bad leaf color");
    }
    for (Color c : parent) {
        if (c >= parent.size()) throw CorruptFile("bad parent color");
    }
    try {
        return ColorHierarchy::from_tree(pos, leaf, parent);
    } catch (const Error& e) {
        throw CorruptFile(std::string("stored hierarchy is invalid: ") + e.what());
    }
}

void put_blocks(Writer& w, const HierarchyOracle& o) {
    w.i64(o.tau());
    const InnerOracleStats& s = o.inner_stats();
    w.u64(s.points);
    w.i64(s.tau);
    w.i64(s.w);
    w.u64(s.heavy);
    w.i64(s.ell0);
    w.i64(s.ell_max);
    const auto& cells = o.block_matrix().cells();
    w.u64(cells.size());
    for (const auto& c : cells) {
        w.i64(c.value);
        w.i64(c.payload.a);
        w.i64(c.payload.b);
    }
}

HierarchyOracle get_hierarchy_oracle(const Parsed& p, ColorHierarchy h) {
    Reader opts = p.section(params_section);
    HierarchyOptions resolved;
    resolved.epsilon = opts.f64();
    resolved.omega = opts.f64();
    resolved.mode = get_mode(opts);

    Reader r = p.section(blocks_section);
    const std::int64_t tau = r.i64();
    InnerOracleStats s;
    s.points = r.u64();
    s.tau = r.i64();
    s.w = r.i64();
    s.heavy = r.u64();
    s.ell0 = static_cast<int>(r.i64());
    s.ell_max = static_cast<int>(r.i64());
    std::vector<BlockDistanceCell> cells(r.count(24));
    for (auto& c : cells) {
        c.value = r.i64();
        c.payload.a = r.i64();
        c.payload.b = r.i64();
    }
    resolved.tau = tau;
    try {
        return HierarchyOracle::from_parts(std::move(h), resolved, tau, std::move(cells), s);
    } catch (const Error& e) {
        throw CorruptFile(std::string("stored block matrix is invalid: ") + e.what());
    }
}

CdoOracle load_points(const Parsed& p) {
    Reader opts = p.section(params_section);
    const double epsilon = opts.f64();
    const double omega = opts.f64();
    const OracleMode mode = get_mode(opts);
    EStarParams params;
    params.epsilon = epsilon;
    params.internal_epsilon = opts.f64();
    params.tau = opts.i64();
    params.w = opts.i64();
    params.ell0 = static_cast<int>(opts.i64());
    params.ell_max = static_cast<int>(opts.i64());

    Reader pr = p.section(points_section);
    std::vector<RawPoint> raw(pr.count(16));
    for (auto& pt : raw) {
        pt.position = pr.i64();
        pt.color = pr.i64();
    }
    if (raw.empty()) throw CorruptFile("stored point set is empty");
    ColoredPointSet s = normalize(raw);

    Reader tr = p.section(table_section);
    std::vector<Color> heavy(tr.count(4));
    for (auto& c : heavy) {
        c = tr.u32();
        if (!s.has_color(c)) throw CorruptFile("bad heavy color");
    }
    EStarMatrix table(std::move(heavy));
    auto& entries = table.mutable_entries();
    if (tr.count(25) != entries.size()) throw CorruptFile("heavy table has the wrong size");
    for (auto& e : entries) {
        e.value = tr.i64();
        e.low_point = tr.i64();
        e.high_point = tr.i64();
        e.exact = tr.u32() != 0;
    }
    return CdoOracle::from_parts(std::move(s), mode, omega, params, std::move(table));
}

}

const char* to_string(OracleKind kind) {
    switch (kind) {
    case OracleKind::points: return "points";
    case OracleKind::hierarchy: return "hierarchy";
    case OracleKind::text: return "text";
    }
    return "?";
}

OracleKind parse_kind(std::string_view text) {
    if (text == "points") return OracleKind::points;
    if (text == "hierarchy") return OracleKind::hierarchy;
    if (text == "text") return OracleKind::text;
    throw InvalidParameter("unknown input kind '" + std::string(text) + "'");
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string serialize(const CdoOracle& o) {
    Writer params;
    const EStarParams& p = o.params();
    put_options(params, p.epsilon, o.omega(), o.mode());
    params.f64(p.internal_epsilon);
    params.i64(p.tau);
    params.i64(p.w);
    params.i64(p.ell0);
    params.i64(p.ell_max);

    Writer points;
    const auto raw = o.point_set().to_raw();
    points.u64(raw.size());
    for (const auto& pt : raw) {
        points.i64(pt.position);
        points.i64(pt.color);
    }

    Writer table;
    const EStarMatrix& t = o.heavy_table();
    table.u64(t.size());
    for (Color c : t.heavy_colors()) table.u32(c);
    table.u64(t.entries().size());
    for (const auto& e : t.entries()) {
        table.i64(e.value);
        table.i64(e.low_point);
        table.i64(e.high_point);
        table.u32(e.exact ? 1 : 0);
    }
    return assemble(OracleKind::points,
                    {{params_section, params.str()}, {points_section, points.str()}, {table_section, table.str()}});
}

std::string serialize(const HierarchyBundle& b) {
    Writer params;
    put_options(params, b.oracle.epsilon(), b.oracle.omega(), b.oracle.mode());
    Writer tree;
    put_hierarchy(tree, b.oracle.hierarchy());
    tree.u64(b.alias.size());
    for (Color c : b.alias) tree.u32(c);
    Writer blocks;
    put_blocks(blocks, b.oracle);
    return assemble(OracleKind::hierarchy, {{params_section, params.str()},
                                            {hierarchy_section, tree.str()},
                                            {blocks_section, blocks.str()}});
}

std::string serialize(const TextIndex& index) {
    const HierarchyOracle& o = index.oracle();
    Writer params;
    put_options(params, o.epsilon(), o.omega(), o.mode());
    Writer text;
    text.bytes(index.text());
    Writer blocks;
    put_blocks(blocks, o);
    return assemble(OracleKind::text,
                    {{params_section, params.str()}, {text_section, text.str()}, {blocks_section, blocks.str()}});
}

LoadedOracle deserialize(std::string_view bytes) {
    const Parsed p = split(bytes);
    switch (p.kind) {
    case OracleKind::points:
        return load_points(p);
    case OracleKind::hierarchy: {
        Reader r = p.section(hierarchy_section);
        ColorHierarchy h = get_hierarchy(r);
        std::vector<Color> alias(r.count(4));
        for (auto& c : alias) {
            c = r.u32();
            if (c > h.num_colors()) throw CorruptFile("bad color alias");
        }
        return HierarchyBundle{get_hierarchy_oracle(p, std::move(h)), std::move(alias)};
    }
    case OracleKind::text: {
        Reader r = p.section(text_section);
        std::string text(r.bytes());
        TextHierarchy tree;
        try {
            tree = build_text_hierarchy(text);
        } catch (const Error& e) {
            throw CorruptFile(std::string("stored text is invalid: ") + e.what());
        }
        ColorHierarchy h = tree.hierarchy;
        HierarchyOracle o = get_hierarchy_oracle(p, std::move(h));
        return TextIndex::from_parts(std::move(text), std::move(tree), std::move(o));
    }
    }
    throw CorruptFile("unknown oracle kind");
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InvalidInput("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}
