#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oaforge/algebra.hpp"
#include "oaforge/array_file.hpp"
#include "oaforge/canon.hpp"
#include "oaforge/catalog.hpp"
#include "oaforge/constructions.hpp"
#include "oaforge/errors.hpp"
#include "oaforge/fourier.hpp"
#include "oaforge/pipeline.hpp"
#include "oaforge/xcover.hpp"

using namespace oaforge;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

// Collected output of one command: a machine report and the human text.
struct Output {
    json result = json::object();
    std::ostringstream text;
    int code = kOk;
};

struct Options {
    bool json = false;
    int threads = 1;
};

json matrix_json(const QuotientMatrix& m) { return m.s; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

VertexSet load(const std::string& path) { return read_array_file(fs::path(path)).rows; }

std::string hist_key(const Dyadic& d) { return d.to_string(); }

std::vector<VertexSet> load_cells(const std::string& list) {
    std::vector<VertexSet> cells;
    for (const auto& item : split(list, ',')) {
        if (item == "complement") {
            if (cells.empty()) throw InvalidArgument("`complement` needs a preceding cell");
            VertexSet rest = VertexSet::full(cells.front().dim());
            for (const auto& c : cells)
                for (Word w : c.members()) rest.erase(w);
            cells.push_back(rest);
        } else {
            cells.push_back(load(item));
        }
    }
    if (cells.empty()) throw InvalidArgument("no cells given");
    return cells;
}

void report_not_equitable(Output& out, const NotEquitable& e, int n) {
    out.code = kVerificationFailed;
    out.result["equitable"] = false;
    out.result["witness"] = format_word(e.witness(), n);
    out.result["witness_cell"] = e.witness_cell();
    out.result["observed_row"] = e.observed_row();
    out.text << "not equitable: witness " << format_word(e.witness(), n) << " in cell " << e.witness_cell() << "\n";
}

void describe_matrix(Output& out, const QuotientMatrix& m) {
    out.result["equitable"] = true;
    out.result["matrix"] = matrix_json(m);
    out.text << "matrix=" << m.to_string() << "\n";
    if (m.k() >= 2) {
        const StrengthFromMatrix s = quotient_to_strength(m, 2);
        out.result["strength_from_matrix"] = s.t;
        out.result["theta"] = s.theta;
        out.result["integral"] = s.integral;
        out.text << "t_from_matrix=" << s.t << " theta=" << s.theta << (s.integral ? "" : " (floor)") << "\n";
    }
}

// Memoized canonization keyed by the input words, stored under OA_FORGE_CACHE.
CanonResult cached_canonize(const VertexSet& s, GroupKind kind) {
    const auto words = s.words();
    const char* dir = std::getenv("OA_FORGE_CACHE");
    if (!dir || !*dir) return canonize(s.dim(), words, kind);
    std::uint64_t h = 1469598103934665603ull;
    for (Word w : words) {
        h ^= w;
        h *= 1099511628211ull;
    }
    std::ostringstream name;
    name << to_string(kind) << "-" << s.dim() << "-" << std::hex << h << ".json";
    const fs::path path = fs::path(dir) / name.str();
    if (fs::exists(path)) {
        std::ifstream in(path);
        json j = json::parse(in, nullptr, false);
        if (!j.is_discarded() && j.value("words", std::vector<Word>{}) == words) {
            CanonResult cr;
            cr.key = CanonicalKey::from_hex(j.at("key").get<std::string>());
            cr.aut_order = parse_group_order(j.at("aut_order").get<std::string>());
            cr.image = j.at("image").get<std::vector<Word>>();
            return cr;
        }
    }
    CanonResult cr = canonize(s.dim(), words, kind);
    fs::create_directories(dir);
    std::ofstream(path) << json{{"words", words}, {"key", cr.key.hex()}, {"aut_order", to_string(cr.aut_order)}, {"image", cr.image}}.dump();
    return cr;
}

void cmd_verify(Output& out, const std::string& file, bool equitable, const std::string& cells, int claimed_t) {
    if (equitable) {
        const auto cs = load_cells(cells);
        try {
            describe_matrix(out, verify_equitable(cs));
        } catch (const NotEquitable& e) {
            report_not_equitable(out, e, cs.front().dim());
        }
        return;
    }
    if (file.empty()) throw InvalidArgument("verify needs an array file or --equitable --cells");
    const ArrayFile af = read_array_file(fs::path(file));
    const int t = claimed_t >= 0 ? claimed_t : af.params.t;
    const bool ok_oracle = strength_oracle(af.rows, t);
    const bool ok_spectrum = !af.rows.empty() && oa_strength(af.rows) >= t;
    out.result["N"] = af.rows.size();
    out.result["n"] = af.rows.dim();
    out.result["t"] = t;
    out.result["simple"] = af.rows.is_simple();
    out.result["strength_ok"] = ok_oracle && ok_spectrum;
    if (af.key_hex) {
        const bool key_ok = cached_canonize(af.rows, GroupKind::FullAut).key.hex() == *af.key_hex;
        out.result["key_ok"] = key_ok;
        if (!key_ok) out.code = kVerificationFailed;
    }
    if (!(ok_oracle && ok_spectrum)) out.code = kVerificationFailed;
    out.text << (out.code == kOk ? "ok" : "FAILED") << ": OA(" << af.rows.size() << "," << af.rows.dim() << ",2," << t << ")\n";
}

void cmd_strength(Output& out, const std::string& file) {
    const VertexSet s = load(file);
    const int t = oa_strength(s);
    out.result["t"] = t;
    out.result["N"] = s.size();
    out.result["n"] = s.dim();
    out.text << "t=" << t << "\n";
}

void cmd_equitable(Output& out, const std::string& cells) {
    const auto cs = load_cells(cells);
    try {
        describe_matrix(out, verify_equitable(cs));
    } catch (const NotEquitable& e) {
        report_not_equitable(out, e, cs.front().dim());
    }
}

void cmd_bounds(Output& out, std::uint64_t N, int n, int q, int t) {
    const OAParams p{N, n, q, t};
    const BoundsReport r = check_bounds(p);
    out.result["bierbrauer_friedman"] = to_string(r.bierbrauer_friedman);
    out.result["levenshtein"] = to_string(r.levenshtein);
    out.result["fdf_khalyavin"] = to_string(r.fdf_khalyavin);
    out.result["fdf_equality"] = r.fdf_equality;
    out.result["fdf_requires_simple"] = r.fdf_requires_simple;
    out.text << "bf=" << to_string(r.bierbrauer_friedman) << " lev=" << to_string(r.levenshtein)
             << " fdf_khalyavin=" << to_string(r.fdf_khalyavin) << (r.fdf_equality ? " (equality)" : "")
             << (r.fdf_requires_simple ? " (simple arrays only)" : "") << "\n";
}

void emit_array(Output& out, const VertexSet& s, const std::string& path) {
    const int t = s.empty() ? 0 : oa_strength(s);
    const std::string text = array_file_text(s, t);
    out.result["N"] = s.size();
    out.result["n"] = s.dim();
    out.result["t"] = t;
    if (!path.empty()) {
        std::ofstream(path) << text;
        out.result["written"] = path;
        out.text << "wrote " << path << ": OA(" << s.size() << "," << s.dim() << ",2," << t << ")\n";
    } else {
        out.text << text;
    }
}

void cmd_three_partition(Output& out, const std::string& file, bool split_too) {
    const EquitablePartition p = three_partition(load(file));
    out.result["matrix"] = matrix_json(p.matrix);
    out.text << "matrix=" << p.matrix.to_string() << "\n";
    if (split_too) {
        const EquitablePartition q = completely_regular_split(p);
        out.result["split_matrix"] = matrix_json(q.matrix);
        out.text << "split_matrix=" << q.matrix.to_string() << "\n";
    }
}

void cmd_kernel(Output& out, const std::string& file) {
    const VertexSet k = kernel(load(file));
    std::vector<int> weights;
    std::vector<std::string> words;
    for (Word w : k.members()) {
        weights.push_back(weight(w));
        words.push_back(format_word(w, k.dim()));
    }
    out.result["size"] = k.size();
    out.result["weights"] = weights;
    out.result["words"] = words;
    out.text << "size=" << k.size() << " weights=";
    for (std::size_t i = 0; i < weights.size(); ++i) out.text << (i ? "," : "") << weights[i];
    out.text << "\n";
}

void cmd_aut(Output& out, const std::string& file, const std::string& group) {
    const VertexSet s = load(file);
    const AutGroupReport r = automorphism_group(s, SymmetryGroup{parse_group_kind(group), s.dim()});
    json gens = json::array();
    for (const auto& g : r.generators) {
        std::vector<int> img;
        for (int i = 0; i < g.perm.size(); ++i) img.push_back(g.perm[i] + 1);
        gens.push_back({{"perm", img}, {"shift", format_word(g.shift, s.dim())}});
    }
    out.result["order"] = to_string(r.order);
    out.result["set_orbit_sizes"] = r.set_orbit_sizes;
    out.result["complement_orbit_sizes"] = r.complement_orbit_sizes;
    out.result["generators"] = gens;
    out.text << "order=" << to_string(r.order) << "\nset orbits:";
    for (auto x : r.set_orbit_sizes) out.text << " " << x;
    out.text << "\ncomplement orbits:";
    for (auto x : r.complement_orbit_sizes) out.text << " " << x;
    out.text << "\n";
}

void cmd_key(Output& out, const std::string& file, const std::string& group) {
    const VertexSet s = load(file);
    const CanonResult cr = cached_canonize(s, parse_group_kind(group));
    out.result["key"] = cr.key.hex();
    out.result["group"] = group;
    out.text << cr.key.hex() << "\n";
}

void cmd_fourier(Output& out, const std::string& file) {
    const FourierReport r = fourier_report(load(file));
    json hist = json::object();
    for (const auto& h : r.histogram) hist[hist_key(h.value)] = h.count;
    out.result["nonzero"] = r.nonzero;
    out.result["phi_zero"] = r.at_zero.to_string();
    out.result["histogram"] = hist;
    out.result["strength"] = r.strength;
    out.result["single_weight"] = r.single_weight;
    out.text << "nonzero=" << r.nonzero << "\nphi(0)=" << r.at_zero.to_string() << "\n";
    for (const auto& h : r.histogram) out.text << h.value.to_string() << ": " << h.count << "\n";
    auto flag = [&](const char* name, const std::optional<bool>& v) {
        if (!v) return;
        out.result[name] = *v;
        out.text << name << "=" << (*v ? "yes" : "no") << "\n";
        if (!*v) out.code = kVerificationFailed;
    };
    flag("pi_invariant", r.pi_invariant);
    flag("sixteenths_structure", r.sixteenths_structure);
    flag("thirty_seconds_structure", r.thirty_seconds_structure);
    flag("table_matches", r.table_matches);
}

void cmd_construct(Output& out, const std::string& what, int m, int r, const std::string& edges, bool allow_large,
                   const std::string& path) {
    if (what == "fdf6") return emit_array(out, fdf_c6().words, path);
    if (what == "fdf13") {
        VertexSet c = fdf_c13();
        if (!edges.empty()) {
            std::vector<int> ids;
            for (const auto& e : split(edges, ',')) ids.push_back(std::stoi(e));
            c = switching(c, ids);
        }
        return emit_array(out, c, path);
    }
    if (what == "hamming") return emit_array(out, hamming_code(r), path);
    if (what == "shorten-phelps") return emit_array(out, shorten_phelps(m), path);
    if (what == "phelps") {
        const int n = (1 << m) - 1;
        if (n <= kMaxDenseDim) return emit_array(out, phelps_code(m), path);
        if (!allow_large) throw ResourceGate("phelps --m " + std::to_string(m) + " needs --allow-large");
        if (path.empty()) throw InvalidArgument("streaming output needs --output");
        const std::uint64_t expected = (std::uint64_t{1} << n) / static_cast<std::uint64_t>(n + 1);
        const int t = (1 << (m - 1)) - 1;
        std::ofstream f(path);
        std::uint64_t count = 0;
        f << "OA " << expected << " " << n << " 2 " << t << "\n";
        for_each_phelps_word(m, [&](Word w) {
            f << format_word(w, n) << '\n';
            ++count;
        });
        if (count != expected) throw VerificationFailure("streamed word count differs from 2^n/(n+1)");
        out.result["N"] = count;
        out.result["n"] = n;
        out.result["t"] = t;
        out.result["written"] = path;
        out.text << "streamed " << count << " words of length " << n << " to " << path << "\n";
        return;
    }
    throw InvalidArgument("unknown construction `" + what + "`");
}

void cmd_xcover(Output& out, const std::string& file, bool count_only) {
    std::ifstream in(file);
    if (!in) throw InvalidArgument("cannot open " + file);
    const NamedCoverInstance ni = parse_cover_text(in);
    if (count_only) {
        const auto c = count_all(ni.instance);
        out.result["count"] = c;
        out.text << "solutions=" << c << "\n";
        return;
    }
    json sols = json::array();
    const auto c = solve_all(ni.instance, [&](const CoverSolution& s) {
        std::vector<std::string> names;
        for (int b : s) names.push_back(ni.block_names[b]);
        sols.push_back(names);
        for (std::size_t i = 0; i < names.size(); ++i) out.text << (i ? " " : "") << names[i];
        out.text << "\n";
    });
    out.result["count"] = c;
    out.result["solutions"] = sols;
    out.text << "solutions=" << c << "\n";
}

std::vector<std::pair<int, int>> parse_schedule(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    for (const auto& item : split(text, ';')) {
        const auto parts = split(item, ',');
        if (parts.size() != 2) throw InvalidArgument("schedule entries look like R0,R1");
        out.emplace_back(std::stoi(parts[0]), std::stoi(parts[1]));
    }
    return out;
}

void cmd_pipeline(Output& out, int n, int c, const std::string& level_to, const std::string& schedule_text,
                  const std::string& resume, int threads, bool quiet) {
    std::vector<std::pair<int, int>> schedule;
    if (!schedule_text.empty()) {
        schedule = parse_schedule(schedule_text);
    } else {
        const auto target = parse_schedule(level_to);
        if (target.size() != 1) throw InvalidArgument("--level-to takes one R0,R1 pair");
        const auto full = default_schedule(std::max(target[0].first, target[0].second));
        for (const auto& s : full) {
            schedule.push_back(s);
            if (s == target[0]) break;
        }
        if (!(target[0] == std::pair{2, 2}) && (schedule.empty() || schedule.back() != target[0]))
            throw InvalidArgument("--level-to is not on the default schedule; pass --schedule");
    }
    std::unique_ptr<Catalog> catalog;
    if (!resume.empty()) catalog = std::make_unique<Catalog>(resume);

    std::vector<ClassRecord> cur = seed_classes(n, c);
    if (catalog) {
        std::vector<CatalogEntry> entries;
        for (const auto& s : cur)
            entries.push_back({s.key, "2_2", n, s.representative.plus, 1, s.aut_order, {}, s.type});
        catalog->commit_batch("2_2", CanonicalKey{}, entries);
        catalog->write_index("2_2");
    }
    std::vector<std::string> types;
    for (const auto& s : cur) types.push_back(s.type);
    std::vector<std::string> columns;
    std::vector<std::map<std::string, std::uint64_t>> counts;
    json levels = json::array();
    bool failed = false;
    for (auto [a, b] : schedule) {
        const auto start = std::chrono::steady_clock::now();
        LevelOptions opts;
        opts.threads = threads;
        opts.catalog = catalog.get();
        if (!quiet)
            opts.progress = [&](std::size_t done, std::size_t total) {
                if (done == total || done % 1000 == 0) std::cerr << "\r(" << a << "," << b << ") " << done << "/" << total << std::flush;
            };
        LevelResult lr = classify_level(cur, a, b, opts);
        if (!quiet) std::cerr << "\n";
        if (catalog) catalog->write_index(level_name(a, b));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::map<std::string, std::uint64_t> per;
        for (const auto& cl : lr.classes) ++per[cl.type];
        columns.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
        counts.push_back(per);
        levels.push_back({{"level", level_name(a, b)},
                          {"classes", lr.classes.size()},
                          {"raw_solutions", lr.raw_solutions},
                          {"validated", lr.validated},
                          {"validation_failures", lr.validation_failures},
                          {"per_type", per},
                          {"seconds", secs}});
        if (lr.validation_failures) failed = true;
        cur = std::move(lr.classes);
    }
    out.result["n"] = n;
    out.result["c"] = c;
    out.result["seeds"] = types.size();
    out.result["levels"] = levels;
    out.text << "type";
    for (const auto& col : columns) out.text << "\t" << col;
    out.text << "\n";
    for (const auto& t : types) {
        out.text << t;
        for (const auto& per : counts) {
            auto it = per.find(t);
            out.text << "\t" << (it == per.end() ? 0 : it->second);
        }
        out.text << "\n";
    }
    out.text << "any";
    for (const auto& per : counts) {
        std::uint64_t sum = 0;
        for (const auto& [k, v] : per) sum += v;
        out.text << "\t" << sum;
    }
    out.text << "\n";
    if (failed) {
        out.code = kVerificationFailed;
        out.text << "double-count validation FAILED\n";
    }
}

void cmd_classify(Output& out, std::uint64_t N, int n, int q, int t, int threads, const std::string& dir) {
    const auto classes = classify_oa(OAParams{N, n, q, t}, threads);
    json list = json::array();
    int idx = 0;
    for (const auto& c : classes) {
        json item{{"key", c.key.hex()}, {"aut_order", to_string(c.aut_order)}};
        if (!dir.empty()) {
            fs::create_directories(dir);
            const fs::path p = fs::path(dir) / ("class" + std::to_string(++idx) + ".oa");
            std::ofstream(p) << array_file_text(c.array, t, c.key.hex());
            item["file"] = p.string();
        }
        list.push_back(item);
        out.text << "class key=" << c.key.hex().substr(0, 24) << "... aut=" << to_string(c.aut_order) << "\n";
    }
    out.result["classes"] = classes.size();
    out.result["list"] = list;
    out.text << "classes=" << classes.size() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oaforge: binary orthogonal arrays and equitable partitions of the hypercube"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json, "Print a machine-readable report");
    app.add_option("--threads", opt.threads, "Worker threads for the pipeline")->check(CLI::PositiveNumber);

    std::string file, cells, group = "full", what, edges, output, level_to = "2,3", schedule, resume, dir;
    bool equitable = false, split_too = false, count_only = false, allow_large = false, quiet = false;
    int claimed_t = -1, coord = 0, symbol = 0, m = 4, r = 3, n = 13, c = 3, t = 0, q = 2;
    std::uint64_t N = 0;

    auto* verify = app.add_subcommand("verify", "Check an array file's declared strength, or a partition with --equitable");
    verify->add_option("file", file, "Array file");
    verify->add_flag("--equitable", equitable, "Verify the partition given by --cells");
    verify->add_option("--cells", cells, "Comma-separated cell files; `complement` means the remaining vertices");
    verify->add_option("--strength", claimed_t, "Strength to check instead of the header's");

    auto* strength = app.add_subcommand("strength", "Print the strength of an array");
    strength->add_option("file", file)->required();

    auto* eq = app.add_subcommand("equitable", "Quotient matrix of a partition");
    eq->add_option("--cells", cells)->required();

    auto* bounds = app.add_subcommand("bounds", "Evaluate the classical bounds");
    bounds->add_option("--N", N)->required();
    bounds->add_option("--n", n)->required();
    bounds->add_option("--q", q);
    bounds->add_option("--t", t)->required();

    auto* shorten_cmd = app.add_subcommand("shorten", "Shorten an array at one coordinate");
    shorten_cmd->add_option("file", file)->required();
    shorten_cmd->add_option("--coord", coord)->required();
    shorten_cmd->add_option("--symbol", symbol);
    shorten_cmd->add_option("-o,--output", output);

    auto* lengthen_cmd = app.add_subcommand("lengthen", "Lengthen an array of even strength");
    lengthen_cmd->add_option("file", file)->required();
    lengthen_cmd->add_option("-o,--output", output);

    auto* three = app.add_subcommand("three-partition", "Three-cell partition of an array on the Levenshtein bound");
    three->add_option("file", file)->required();
    three->add_flag("--split", split_too, "Also verify the completely regular split");

    auto* kernel_cmd = app.add_subcommand("kernel", "Translations fixing the array");
    kernel_cmd->add_option("file", file)->required();

    auto add_group_cmd = [&](CLI::App* parent, const char* name, const char* help) {
        auto* s = parent->add_subcommand(name, help);
        s->add_option("file", file)->required();
        s->add_option("--group", group, "full, perm, or fixfirst");
        return s;
    };
    auto* aut = add_group_cmd(&app, "aut", "Automorphism group report");
    auto* key = add_group_cmd(&app, "key", "Canonical key as hex");
    auto* canon = app.add_subcommand("canon", "Canonical forms");
    canon->require_subcommand(1);
    auto* canon_aut = add_group_cmd(canon, "aut", "Automorphism group report");
    auto* canon_key = add_group_cmd(canon, "key", "Canonical key as hex");

    auto* fourier = app.add_subcommand("fourier", "Exact Fourier spectrum summary");
    fourier->add_option("file", file)->required();

    auto* construct = app.add_subcommand("construct", "Build a known array");
    construct->add_option("what", what, "fdf6, fdf13, hamming, phelps, shorten-phelps")->required();
    construct->add_option("--m", m);
    construct->add_option("--r", r);
    construct->add_option("--switch", edges, "Comma-separated edge ids 0..11 to switch (fdf13)");
    construct->add_flag("--allow-large", allow_large);
    construct->add_option("-o,--output", output);

    auto* xcover = app.add_subcommand("xcover", "Exact cover with multiplicities");
    xcover->require_subcommand(1);
    auto* solve = xcover->add_subcommand("solve", "Solve a text instance");
    solve->add_option("file", file)->required();
    solve->add_flag("--count", count_only);

    auto* pipeline = app.add_subcommand("pipeline", "Local-partition classification");
    pipeline->require_subcommand(1);
    auto* run = pipeline->add_subcommand("run", "Run levels from the seeds");
    run->add_option("--n", n);
    run->add_option("--c", c);
    run->add_option("--level-to", level_to, "Last level as R0,R1");
    run->add_option("--schedule", schedule, "Explicit levels, e.g. \"2,3;3,3\"");
    run->add_option("--resume", resume, "Catalog directory");
    run->add_flag("--quiet", quiet);

    auto* classify = app.add_subcommand("classify", "Classify arrays on the Bierbrauer-Friedman bound");
    classify->add_option("--N", N)->required();
    classify->add_option("--n", n)->required();
    classify->add_option("--q", q);
    classify->add_option("--t", t)->required();
    classify->add_option("--write", dir, "Write one array file per class into this directory");

    Output out;
    std::string command = "?";
    try {
        app.parse(argc, argv);
        for (auto* s : app.get_subcommands()) {
            command = s->get_name();
            for (auto* sub : s->get_subcommands()) command += " " + sub->get_name();
        }
        if (verify->parsed()) cmd_verify(out, file, equitable, cells, claimed_t);
        else if (strength->parsed()) cmd_strength(out, file);
        else if (eq->parsed()) cmd_equitable(out, cells);
        else if (bounds->parsed()) cmd_bounds(out, N, n, q, t);
        else if (shorten_cmd->parsed()) emit_array(out, shorten(load(file), coord, symbol), output);
        else if (lengthen_cmd->parsed()) emit_array(out, lengthen(load(file)), output);
        else if (three->parsed()) cmd_three_partition(out, file, split_too);
        else if (kernel_cmd->parsed()) cmd_kernel(out, file);
        else if (aut->parsed() || canon_aut->parsed()) cmd_aut(out, file, group);
        else if (key->parsed() || canon_key->parsed()) cmd_key(out, file, group);
        else if (fourier->parsed()) cmd_fourier(out, file);
        else if (construct->parsed()) cmd_construct(out, what, m, r, edges, allow_large, output);
        else if (solve->parsed()) cmd_xcover(out, file, count_only);
        else if (run->parsed()) cmd_pipeline(out, n, c, level_to, schedule, resume, opt.threads, quiet || opt.json);
        else if (classify->parsed()) cmd_classify(out, N, n, q, t, opt.threads, dir);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        if (!opt.json) {
            app.exit(e);
            return kUsage;
        }
        out.code = kUsage;
        out.result = json::object();
        out.result["error"] = {{"message", e.what()}};
    } catch (const ParseError& e) {
        out.code = kUsage;
        out.result = json::object();
        out.result["error"] = {{"message", e.what()}, {"line", e.line()}};
        out.text.str("");
        out.text << "error: " << e.what() << "\n";
    } catch (const InvalidArgument& e) {
        out.code = kUsage;
        out.result = json::object();
        out.result["error"] = {{"message", e.what()}};
        out.text.str("");
        out.text << "error: " << e.what() << "\n";
    } catch (const ResourceGate& e) {
        out.code = kUsage;
        out.result = json::object();
        out.result["error"] = {{"message", e.what()}};
        out.text.str("");
        out.text << "error: " << e.what() << "\n";
    } catch (const NotEquitable& e) {
        out.code = kVerificationFailed;
        out.result["error"] = {{"message", e.what()}};
        out.text << "verification failed: " << e.what() << "\n";
    } catch (const Error& e) {
        out.code = kVerificationFailed;
        out.result["error"] = {{"message", e.what()}};
        out.text << "verification failed: " << e.what() << "\n";
    }
    if (opt.json) {
        static const char* status[] = {"ok", "verification_failure", "usage_error"};
        const json report{{"command", command}, {"status", status[out.code]}, {"exit_code", out.code}, {"result", out.result}};
        std::cout << report.dump(2) << "\n";
    } else {
        (out.code == kOk ? std::cout : std::cerr) << out.text.str();
    }
    return out.code;
}
