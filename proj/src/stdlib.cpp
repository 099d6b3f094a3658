#include "qrpl/stdlib.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrpl/check.hpp"
#include "qrpl/parser.hpp"

namespace qrpl {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RunError(ErrKind::BadInput, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<StdlibEntry> load_stdlib(const std::string& dir) {
    nlohmann::json manifest;
    {
        std::ifstream in(dir + "/manifest.json");
        if (!in) throw RunError(ErrKind::BadInput, "cannot open " + dir + "/manifest.json");
        try {
            manifest = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw RunError(ErrKind::BadInput, std::string{"manifest.json: "} + e.what());
        }
    }
    if (!manifest.is_array())
        throw RunError(ErrKind::BadInput, "manifest.json must be a list of entries");
    std::vector<StdlibEntry> entries;
    for (const nlohmann::json& e : manifest) {
        StdlibEntry entry;
        entry.name = e.value("name", std::string{});
        entry.file = e.value("file", std::string{});
        entry.entry = e.value("entry", std::string{});
        entry.oracle = e.value("oracle", std::string{});
        entry.fidelity = e.value("fidelity", std::string{});
        entry.note = e.value("note", std::string{});
        if (entry.name.empty() || entry.file.empty())
            throw RunError(ErrKind::BadInput, "manifest entry missing name or file");
        if (entry.fidelity != "verbatim" && entry.fidelity != "corrected")
            throw RunError(ErrKind::BadInput,
                           entry.name + ": fidelity must be verbatim or corrected");
        std::string src = read_text_file(dir + "/" + entry.file);
        Program p;
        try {
            p = parse(src);
        } catch (const SyntaxError& err) {
            throw RunError(ErrKind::BadInput,
                           entry.file + " does not parse: " + err.what());
        }
        std::vector<Diagnostic> diags = static_check(p);
        if (!diags.empty())
            throw RunError(ErrKind::BadInput,
                           entry.file + ": " + format_diagnostics(diags, entry.file));
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace qrpl
