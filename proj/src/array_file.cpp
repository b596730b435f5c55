#include "oaforge/array_file.hpp"

#include <fstream>
#include <sstream>

#include "oaforge/errors.hpp"

namespace oaforge {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError(line, "line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ArrayFile read_array_file(std::istream& in) {
    ArrayFile af;
    bool have_header = false;
    std::uint64_t rows_read = 0;
    int lineno = 0;
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body.rfind("key=", 0) == 0) af.key_hex = body.substr(4);
            continue;
        }
        if (!have_header) {
            std::istringstream hs(line);
            std::string tag, extra;
            long long N = -1, n = -1, q = -1, t = -1;
            if (!(hs >> tag >> N >> n >> q >> t) || tag != "OA" || (hs >> extra))
                fail(lineno, "expected header `OA N n q t`");
            if (n < 1 || n > kMaxDenseDim) fail(lineno, "length n must be in 1..25");
            if (q != 2) fail(lineno, "only binary arrays are supported");
            if (N < 0 || t < 0 || t > n) fail(lineno, "bad run count or strength");
            af.params = OAParams{static_cast<std::uint64_t>(N), static_cast<int>(n), 2, static_cast<int>(t)};
            af.rows = VertexSet(static_cast<int>(n));
            have_header = true;
            continue;
        }
        if (rows_read == af.params.N) fail(lineno, "more rows than the header declares");
        if (static_cast<int>(line.size()) != af.params.n)
            fail(lineno, "row has " + std::to_string(line.size()) + " symbols, expected " + std::to_string(af.params.n));
        Word w = 0;
        for (int i = 0; i < af.params.n; ++i) {
            if (line[i] != '0' && line[i] != '1') fail(lineno, "symbol out of range");
            if (line[i] == '1') w |= unit(i + 1);
        }
        af.rows.insert(w);
        ++rows_read;
    }
    if (!have_header) fail(lineno + 1, "missing header");
    if (rows_read != af.params.N)
        fail(lineno + 1, "header declares " + std::to_string(af.params.N) + " rows, found " + std::to_string(rows_read));
    return af;
}

ArrayFile read_array_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return read_array_file(in);
}

void write_array_file(std::ostream& out, const VertexSet& rows, int t, const std::optional<std::string>& key_hex) {
    out << "OA " << rows.size() << ' ' << rows.dim() << " 2 " << t << '\n';
    for (Word w : rows.words()) out << format_word(w, rows.dim()) << '\n';
    if (key_hex) out << "# key=" << *key_hex << '\n';
}

std::string array_file_text(const VertexSet& rows, int t, const std::optional<std::string>& key_hex) {
    std::ostringstream os;
    write_array_file(os, rows, t, key_hex);
    return os.str();
}

}  // namespace oaforge
