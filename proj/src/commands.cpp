#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "cli/io.hpp"

#ifdef CDOK_WITH_VERIFY
#include "cdok/oracle.hpp"
#endif

namespace cdok::cli {

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point since) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
}

std::int64_t resolve_tau(const BuildConfig& c, std::size_t n) {
    const std::int64_t tau = c.tau.value_or(default_tau(n, c.tau_exponent));
    if (tau < 1 || static_cast<std::size_t>(tau) > n) {
        throw InvalidParameter("tau must lie in [1, n] = [1, " + std::to_string(n) + "], got " + std::to_string(tau));
    }
    return tau;
}

ordered_json stats_line(OracleKind kind, std::size_t n, std::size_t colors, std::size_t heavy, std::int64_t tau,
                        std::int64_t w, int ell0, int ell_max, const BuildConfig& c, std::int64_t ns) {
    ordered_json j;
    j["kind"] = to_string(kind);
    j["n"] = n;
    j["colors"] = colors;
    j["heavy"] = heavy;
    j["tau"] = tau;
    j["w"] = w;
    j["ell0"] = ell0;
    j["ell_max"] = ell_max;
    j["epsilon"] = c.epsilon;
    j["mode"] = to_string(c.mode);
    j["build_ms"] = static_cast<double>(ns) / 1e6;
    return j;
}

HierarchyOptions hierarchy_options(const BuildConfig& c, std::int64_t tau) {
    HierarchyOptions o;
    o.epsilon = c.epsilon;
    o.tau = tau;
    o.omega = c.omega;
    o.mode = c.mode;
    return o;
}

ordered_json answer_json(const DistanceAnswer& a) {
    ordered_json j;
    j["distance"] = a.distance == kInfinity ? ordered_json(nullptr) : ordered_json(a.distance);
    j["witness_a"] = a.witness_a ? ordered_json(*a.witness_a) : ordered_json(nullptr);
    j["witness_b"] = a.witness_b ? ordered_json(*a.witness_b) : ordered_json(nullptr);
    j["exact"] = a.exact;
    return j;
}

ordered_json error_json(const std::string& kind, const std::string& message) {
    ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    return j;
}

ordered_json unknown_color(std::int64_t c) {
    ordered_json j;
    j["error"] = "unknown_color";
    j["color"] = c;
    return j;
}

// Two integers and nothing else.
std::optional<std::pair<std::int64_t, std::int64_t>> color_pair(std::string_view line) {
    std::istringstream ss{std::string(line)};
    std::int64_t a = 0, b = 0;
    std::string rest;
    if (!(ss >> a >> b) || (ss >> rest)) return std::nullopt;
    return std::make_pair(a, b);
}

std::int64_t percentile(std::vector<std::int64_t> v, double q) {
    if (v.empty()) return 0;
    const auto k = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1) + 0.5);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

std::int64_t median(std::vector<std::int64_t> v) { return percentile(std::move(v), 0.5); }

}

BuildResult build_points(std::vector<RawPoint> raw, const BuildConfig& c) {
    const auto start = Clock::now();
    ColoredPointSet s = normalize(raw);
    CdoOptions o;
    o.epsilon = c.epsilon;
    o.tau = resolve_tau(c, s.size());
    o.w = c.w;
    o.omega = c.omega;
    o.mode = c.mode;
    CdoOracle oracle = CdoOracle::build(std::move(s), o);
    const std::int64_t ns = elapsed_ns(start);
    const EStarParams& p = oracle.params();
    auto stats = stats_line(OracleKind::points, oracle.point_set().size(), oracle.point_set().num_colors(),
                            oracle.heavy_count(), oracle.tau(), oracle.block_width(), p.ell0, p.ell_max, c, ns);
    return {std::move(oracle), std::move(stats)};
}

BuildResult build_hierarchy(const LoadedHierarchy& h, const BuildConfig& c) {
    const auto start = Clock::now();
    const std::int64_t tau = resolve_tau(c, h.hierarchy.num_points());
    HierarchyBundle b{HierarchyOracle::build(h.hierarchy, hierarchy_options(c, tau)), h.alias};
    const std::int64_t ns = elapsed_ns(start);
    const InnerOracleStats& in = b.oracle.inner_stats();
    auto stats = stats_line(OracleKind::hierarchy, h.hierarchy.num_points(), h.hierarchy.num_colors(), in.heavy,
                            tau, in.w, in.ell0, in.ell_max, c, ns);
    stats["blocks"] = b.oracle.num_blocks();
    return {std::move(b), std::move(stats)};
}

BuildResult build_text(std::string text, const BuildConfig& c) {
    const auto start = Clock::now();
    if (text.empty()) throw InvalidInput("text is empty");
    const std::int64_t tau = resolve_tau(c, text.size());
    TextIndex index = TextIndex::build(std::move(text), hierarchy_options(c, tau));
    const std::int64_t ns = elapsed_ns(start);
    const HierarchyOracle& o = index.oracle();
    const InnerOracleStats& in = o.inner_stats();
    auto stats = stats_line(OracleKind::text, o.hierarchy().num_points(), o.hierarchy().num_colors(), in.heavy, tau,
                            in.w, in.ell0, in.ell_max, c, ns);
    stats["blocks"] = o.num_blocks();
    return {std::move(index), std::move(stats)};
}

BuildResult build_from_file(const std::string& path, const BuildConfig& c) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    switch (c.kind) {
    case OracleKind::points:
        return build_points(read_points(in), c);
    case OracleKind::hierarchy:
        return build_hierarchy(resolve_hierarchy(read_hierarchy_file(in)), c);
    case OracleKind::text:
        return build_text(read_all(in), c);
    }
    throw InvalidParameter("unknown kind");
}

ordered_json answer_line(const LoadedOracle& loaded, std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    try {
        if (const auto* o = std::get_if<CdoOracle>(&loaded)) {
            const auto pair = color_pair(line);
            if (!pair) return error_json("parse", "expected two color ids");
            const auto a = o->point_set().dense_color(pair->first);
            if (!a) return unknown_color(pair->first);
            const auto b = o->point_set().dense_color(pair->second);
            if (!b) return unknown_color(pair->second);
            return answer_json(o->query(*a, *b));
        }
        if (const auto* h = std::get_if<HierarchyBundle>(&loaded)) {
            const auto pair = color_pair(line);
            if (!pair) return error_json("parse", "expected two color ids");
            auto alias = [&](std::int64_t c) -> Color {
                if (c < 1 || static_cast<std::size_t>(c) >= h->alias.size()) return 0;
                return h->alias[static_cast<std::size_t>(c)];
            };
            const Color a = alias(pair->first);
            if (a == 0) return unknown_color(pair->first);
            const Color b = alias(pair->second);
            if (b == 0) return unknown_color(pair->second);
            return answer_json(h->oracle.query(a, b));
        }
        const auto& t = std::get<TextIndex>(loaded);
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) return error_json("parse", "expected pat1<TAB>pat2");
        return answer_json(t.query(line.substr(0, tab), line.substr(tab + 1)));
    } catch (const NotFound& e) {
        ordered_json j;
        j["error"] = "not_found";
        j["which"] = e.which();
        return j;
    } catch (const UnknownColor& e) {
        return unknown_color(e.color());
    } catch (const Error& e) {
        return error_json("invalid", e.what());
    }
}

std::vector<BenchRow> run_bench(const BenchConfig& c) {
    const std::vector<RawPoint> raw = gen::points(c.points);
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::mt19937_64 rng(c.query_seed);
    std::uniform_int_distribution<std::size_t> pick(0, raw.size() - 1);
    for (std::size_t q = 0; q < c.queries; ++q) {
        pairs.emplace_back(raw[pick(rng)].color, raw[pick(rng)].color);
    }

    std::vector<BenchRow> rows;
    for (OracleMode mode : c.modes) {
        for (double b : c.tau_exponents) {
            BenchRow row;
            row.mode = mode;
            std::vector<std::int64_t> builds, p50, p99;
            for (int rep = 0; rep < c.repetitions; ++rep) {
                CdoOptions o;
                o.epsilon = c.epsilon;
                o.tau_exponent = b;
                o.mode = mode;
                auto start = Clock::now();
                const CdoOracle oracle = CdoOracle::build(normalize(raw), o);
                builds.push_back(elapsed_ns(start));
                row.n = oracle.point_set().size();
                row.tau = oracle.tau();
                row.w = oracle.block_width();

                std::vector<Color> dense;
                for (const auto& [x, y] : pairs) {
                    dense.push_back(*oracle.point_set().dense_color(x));
                    dense.push_back(*oracle.point_set().dense_color(y));
                }
                std::vector<std::int64_t> times;
                times.reserve(pairs.size());
                Distance sink = 0;
                for (std::size_t q = 0; q < pairs.size(); ++q) {
                    start = Clock::now();
                    sink ^= oracle.query(dense[2 * q], dense[2 * q + 1]).distance;
                    times.push_back(elapsed_ns(start));
                }
                volatile Distance keep = sink;
                static_cast<void>(keep);
                p50.push_back(percentile(times, 0.5));
                p99.push_back(percentile(times, 0.99));
            }
            row.build_ns = median(builds);
            row.query_ns_p50 = median(p50);
            row.query_ns_p99 = median(p99);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string bench_csv_header() { return "n,tau,W,build_ns,query_ns_p50,query_ns_p99,mode"; }

std::string bench_csv_row(const BenchRow& r) {
    std::ostringstream os;
    os << r.n << ',' << r.tau << ',' << r.w << ',' << r.build_ns << ',' << r.query_ns_p50 << ','
       << r.query_ns_p99 << ',' << to_string(r.mode);
    return os.str();
}

void apply_thread_cap() {
    const char* cap = std::getenv("CDOK_THREADS");
    if (!cap) return;
    const int n = std::atoi(cap);
    if (n > 0) omp_set_num_threads(n);
}

namespace {

int cmd_build(const std::string& input, const std::string& output, const BuildConfig& c, std::ostream& out) {
    BuildResult r = build_from_file(input, c);
    const std::string bytes = std::visit([](const auto& o) { return serialize(o); }, r.oracle);
    write_file(output, bytes);
    out << r.stats.dump() << '\n';
    return 0;
}

int cmd_query(const std::string& path, std::istream& in, std::ostream& out) {
    const LoadedOracle oracle = deserialize(read_file(path));
    constexpr std::size_t batch = 256;
    std::vector<std::string> lines;
    std::vector<std::string> answers;
    std::string line;
    bool more = true;
    while (more) {
        lines.clear();
        while (lines.size() < batch && (more = static_cast<bool>(std::getline(in, line)))) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            lines.push_back(line);
        }
        answers.assign(lines.size(), {});
        const auto count = static_cast<std::int64_t>(lines.size());
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < count; ++i) {
            answers[i] = answer_line(oracle, lines[i]).dump();
        }
        for (const auto& a : answers) out << a << '\n';
        out.flush();
    }
    return 0;
}

#ifdef CDOK_WITH_VERIFY

struct Outcome {
    std::size_t queries = 0;
    double max_ratio = 1.0;
    std::optional<ordered_json> violation;

    void check(const std::string& query, Distance exact, Distance reported, double eps) {
        ++queries;
        bool ok = true;
        if (exact == kInfinity || exact == 0) {
            ok = reported == exact;
        } else {
            ok = reported >= exact && static_cast<double>(reported) <= (1.0 + eps) * static_cast<double>(exact);
            if (reported != kInfinity) {
                max_ratio = std::max(max_ratio, static_cast<double>(reported) / static_cast<double>(exact));
            }
        }
        if (!ok && !violation) {
            ordered_json v;
            v["query"] = query;
            v["exact"] = exact == kInfinity ? ordered_json(nullptr) : ordered_json(exact);
            v["reported"] = reported == kInfinity ? ordered_json(nullptr) : ordered_json(reported);
            violation = v;
        }
    }
};

// Ordered color pairs to check: all of them when few enough, otherwise a
// seeded sample per seed.
std::vector<std::pair<Color, Color>> verify_pairs(Color k, std::size_t limit, const std::vector<std::uint64_t>& seeds) {
    std::vector<std::pair<Color, Color>> out;
    if (static_cast<std::size_t>(k) * k <= limit) {
        for (Color a = 1; a <= k; ++a) {
            for (Color b = 1; b <= k; ++b) out.emplace_back(a, b);
        }
        return out;
    }
    for (std::uint64_t seed : seeds) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Color> pick(1, k);
        for (std::size_t i = 0; i < limit / seeds.size(); ++i) out.emplace_back(pick(rng), pick(rng));
    }
    return out;
}

Outcome verify_one(const std::string& input, BuildConfig c, std::size_t limit, const std::vector<std::uint64_t>& seeds) {
    Outcome r;
    const double eps = c.mode == OracleMode::exact ? 0.0 : c.epsilon;
    BuildResult built = build_from_file(input, c);
    if (const auto* o = std::get_if<CdoOracle>(&built.oracle)) {
        const ColoredPointSet& s = o->point_set();
        for (const auto& [a, b] : verify_pairs(s.num_colors(), limit, seeds)) {
            const Distance exact = oracle::exact_color_distance(s, a, b).distance;
            r.check(std::to_string(s.original_color(a)) + " " + std::to_string(s.original_color(b)), exact,
                    o->query(a, b).distance, eps);
        }
    } else if (const auto* h = std::get_if<HierarchyBundle>(&built.oracle)) {
        const auto sets = oracle::hierarchy_point_sets(h->oracle.hierarchy());
        for (const auto& [a, b] : verify_pairs(h->oracle.hierarchy().num_colors(), limit, seeds)) {
            const Distance exact = oracle::exact_set_distance(sets[a], sets[b]).distance;
            r.check(std::to_string(a) + " " + std::to_string(b), exact, h->oracle.query(a, b).distance, eps);
        }
    } else {
        const auto& t = std::get<TextIndex>(built.oracle);
        const std::string& text = t.text();
        for (std::uint64_t seed : seeds) {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::size_t> start(0, text.size() - 1);
            std::uniform_int_distribution<std::size_t> len(1, 8);
            for (std::size_t i = 0; i < std::min<std::size_t>(limit / seeds.size(), 1000); ++i) {
                const std::size_t s1 = start(rng), s2 = start(rng);
                const std::string p1 = text.substr(s1, len(rng));
                const std::string p2 = text.substr(s2, len(rng));
                r.check(p1 + "\t" + p2, oracle::naive_snippet_distance(text, p1, p2), t.query(p1, p2).distance, eps);
            }
        }
    }
    return r;
}

int cmd_verify(const std::string& input, BuildConfig c, const std::vector<double>& epsilons, std::size_t limit,
               std::vector<std::uint64_t> seeds, std::ostream& out) {
    if (seeds.empty()) seeds.push_back(1);
    bool all = true;
    for (double eps : epsilons) {
        c.epsilon = eps;
        const Outcome r = verify_one(input, c, limit, seeds);
        ordered_json j;
        j["epsilon"] = eps;
        j["mode"] = to_string(c.mode);
        j["queries"] = r.queries;
        j["max_ratio"] = r.max_ratio;
        j["pass"] = !r.violation.has_value();
        if (r.violation) j["first_violation"] = *r.violation;
        out << j.dump() << '\n';
        all = all && !r.violation;
    }
    return all ? 0 : 1;
}

#endif

int cmd_reduce(const std::string& input, const std::string& mode, std::uint64_t seed, int alpha, std::ostream& out) {
    std::ifstream in(input);
    if (!in) throw InvalidInput("cannot read " + input);
    const MinPlusInstance inst = read_matrices(in);
    IntMatrix d;
    if (mode == "mcdo") {
        d = reduce_to_mcdo(inst);
    } else if (mode == "cdo") {
        const RandomizedProduct r = reduce_to_cdo_randomized(inst, alpha, seed);
        d = r.d;
        out << "# repetitions=" << r.repetitions << " unresolved=" << r.unresolved << '\n';
    } else {
        throw InvalidParameter("reduce mode must be mcdo or cdo");
    }
    const IntMatrix direct = minplus_direct(inst);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (j) out << ',';
            const auto v = d.at(i, j);
            if (v == kInfinity) {
                out << "inf";
            } else {
                out << v;
            }
            if (v != direct.at(i, j)) ++mismatches;
        }
        out << '\n';
    }
    if (mismatches == 0) {
        out << "MATCH\n";
        return 0;
    }
    out << "MISMATCH(" << mismatches << ")\n";
    return 1;
}

}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    apply_thread_cap();
    CLI::App app{"Colored distance oracles"};
    app.require_subcommand(1);
    std::function<int()> action;

    BuildConfig cfg;
    std::string kind = "points", mode = "approximate", input, output;

    auto add_build_options = [&](CLI::App* sub) {
        sub->add_option("--kind", kind, "points, hierarchy or text")->capture_default_str();
        sub->add_option("--input,-i", input, "Input file")->required();
        sub->add_option("--epsilon,-e", cfg.epsilon, "Approximation parameter in (0, 1]")->capture_default_str();
        sub->add_option("--tau", cfg.tau, "Heavy threshold or block size; default ceil(n^tau-exponent)");
        sub->add_option("--tau-exponent", cfg.tau_exponent)->capture_default_str();
        sub->add_option("--w", cfg.w, "Block width of the heavy table (points only)");
        sub->add_option("--omega", cfg.omega, "Matrix multiplication exponent used to pick w")->capture_default_str();
        sub->add_option("--mode", mode, "approximate or exact")->capture_default_str();
    };
    auto resolve = [&] {
        cfg.kind = parse_kind(kind);
        cfg.mode = parse_mode(mode);
    };

    auto* build = app.add_subcommand("build", "Build an oracle and write it to a file");
    add_build_options(build);
    build->add_option("--out,-o", output, "Oracle file to write")->required();
    build->callback([&] { action = [&] { resolve(); return cmd_build(input, output, cfg, out); }; });

    std::string oracle_path;
    auto* query = app.add_subcommand("query", "Answer queries from stdin, one JSON line each");
    query->add_option("--oracle", oracle_path, "Oracle file")->required();
    query->callback([&] { action = [&] { return cmd_query(oracle_path, in, out); }; });

    std::vector<double> epsilons{1.0, 0.5, 0.1};
    std::vector<std::uint64_t> seeds{1};
    std::size_t limit = 200000;
    auto* verify = app.add_subcommand("verify", "Compare an oracle against brute force");
    add_build_options(verify);
    verify->add_option("--epsilons", epsilons)->delimiter(',')->capture_default_str();
    verify->add_option("--seeds", seeds)->delimiter(',')->capture_default_str();
    verify->add_option("--max-queries", limit, "Sample instead of checking all pairs above this count")
        ->capture_default_str();
    verify->callback([&] {
        action = [&] {
            resolve();
#ifdef CDOK_WITH_VERIFY
            return cmd_verify(input, cfg, epsilons, limit, seeds, out);
#else
            err << "error: verify was not compiled in (CDOK_WITH_VERIFY=OFF)\n";
            return 1;
#endif
        };
    });

    BenchConfig bench_cfg;
    std::string gen_spec = "adversarial:n=100000,colors=1000,universe=1000000,seed=1";
    std::vector<std::string> modes{"approximate", "exact"};
    auto* bench = app.add_subcommand("bench", "Time builds and queries over a tau sweep, CSV output");
    bench->add_option("--gen", gen_spec, "shape:n=..,colors=..,universe=..,seed=..")->capture_default_str();
    bench->add_option("--tau-exponents", bench_cfg.tau_exponents)->delimiter(',')->capture_default_str();
    bench->add_option("--epsilon", bench_cfg.epsilon)->capture_default_str();
    bench->add_option("--reps", bench_cfg.repetitions)->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--modes", modes)->delimiter(',')->capture_default_str();
    bench->add_option("--queries", bench_cfg.queries)->check(CLI::PositiveNumber)->capture_default_str();
    bench->callback([&] {
        action = [&] {
            bench_cfg.points = gen::parse_point_spec(gen_spec);
            bench_cfg.modes.clear();
            for (const auto& m : modes) bench_cfg.modes.push_back(parse_mode(m));
            out << bench_csv_header() << '\n';
            for (const auto& row : run_bench(bench_cfg)) out << bench_csv_row(row) << '\n';
            return 0;
        };
    });

    std::string reduce_mode = "mcdo";
    std::uint64_t seed = 1;
    int alpha = 0;
    auto* reduce = app.add_subcommand("reduce", "Min-plus product through distance queries");
    reduce->add_option("--input,-i", input, "Matrix file")->required();
    reduce->add_option("--mode", reduce_mode, "mcdo or cdo")->capture_default_str();
    reduce->add_option("--seed", seed)->capture_default_str();
    reduce->add_option("--alpha", alpha, "Repetitions of the cdo mode; 0 picks ceil(4 ln(rows cols))")
        ->capture_default_str();
    reduce->callback([&] { action = [&] { return cmd_reduce(input, reduce_mode, seed, alpha, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    try {
        return action();
    } catch (const CorruptFile& e) {
        err << "error: corrupt oracle file: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}
