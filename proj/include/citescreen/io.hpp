#ifndef CITESCREEN_IO_HPP
#define CITESCREEN_IO_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "citescreen/corpus.hpp"
#include "citescreen/error.hpp"
#include "citescreen/record.hpp"

namespace citescreen {

enum class CorpusFormat { JSONL, CSV };

namespace io {

/// Splits one CSV line (RFC 4180 quoting, no embedded newlines).
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no = 0) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            was_quoted = false;
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) throw InputError("unterminated quoted field", line_no);
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline bool is_blank(std::string_view line) { return detail::trim(line).empty(); }

inline int parse_int(std::string_view s, std::size_t line_no, const std::string& field) {
    s = detail::trim(s);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw InputError("expected an integer, got '" + std::string(s) + "'", line_no, field);
    }
    return value;
}

inline int check_month(int month, std::size_t line_no, const std::string& field) {
    if (month < 1 || month > 12) throw InputError("month must be in 1..12", line_no, field);
    return month;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    return in;
}

/// Parses one JSONL publication object.
inline PublicationRecord parse_json_record(std::string_view line, std::size_t line_no, const AliasMap& aliases) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw InputError("record is not a JSON object", line_no);

    auto require = [&](const char* field) -> const nlohmann::json& {
        auto it = j.find(field);
        if (it == j.end()) throw InputError("missing", line_no, field);
        return *it;
    };
    auto string_field = [&](const char* field) {
        const auto& v = require(field);
        if (!v.is_string()) throw InputError("expected a string", line_no, field);
        return v.get<std::string>();
    };
    auto string_list = [&](const char* field) {
        const auto& v = require(field);
        if (!v.is_array()) throw InputError("expected an array of strings", line_no, field);
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) throw InputError("expected an array of strings", line_no, field);
            out.push_back(e.get<std::string>());
        }
        return out;
    };
    auto int_field = [&](const nlohmann::json& v, const char* field) {
        if (!v.is_number_integer()) throw InputError("expected an integer", line_no, field);
        const auto x = v.get<long long>();
        if (x < -100000 || x > 100000) throw InputError("integer out of range", line_no, field);
        return static_cast<int>(x);
    };

    PublicationRecord rec;
    rec.pub_id = string_field("pub_id");
    if (rec.pub_id.empty()) throw InputError("must be non-empty", line_no, "pub_id");
    rec.title = string_field("title");
    const auto names = string_list("authors");
    if (names.empty()) throw InputError("must list at least one author", line_no, "authors");
    for (const auto& n : names) {
        try {
            rec.authors.push_back(normalize_author(n, aliases));
        } catch (const InputError& e) {
            throw InputError(e.what(), line_no, "authors");
        }
    }
    rec.journal_id = string_field("journal_id");
    rec.issue_id = string_field("issue_id");
    const auto issue = string_field("issue_type");
    const auto type = parse_issue_type(issue);
    if (!type) throw InputError("unknown issue_type '" + issue + "'", line_no, "issue_type");
    rec.issue_type = *type;
    rec.pub_date.year = int_field(require("year"), "year");
    if (auto it = j.find("month"); it != j.end() && !it->is_null()) {
        rec.pub_date.month = check_month(int_field(*it, "month"), line_no, "month");
    }
    rec.references = string_list("references");
    return rec;
}

inline const std::vector<std::string> kCsvColumns = {"pub_id", "title",      "authors", "journal_id", "issue_id",
                                                     "issue_type", "year", "month",   "references"};

/// Parses one CSV publication row; authors and references are ';'-separated.
inline PublicationRecord parse_csv_record(const std::vector<std::string>& f, std::size_t line_no, const AliasMap& aliases) {
    if (f.size() != kCsvColumns.size()) {
        throw InputError("expected " + std::to_string(kCsvColumns.size()) + " columns, got " + std::to_string(f.size()),
                         line_no);
    }
    auto list = [](const std::string& s) {
        std::vector<std::string> out;
        for (auto part : detail::split_any(s, ";")) {
            auto t = detail::trim(part);
            if (!t.empty()) out.emplace_back(t);
        }
        return out;
    };
    PublicationRecord rec;
    rec.pub_id = f[0];
    if (rec.pub_id.empty()) throw InputError("must be non-empty", line_no, "pub_id");
    rec.title = f[1];
    const auto names = list(f[2]);
    if (names.empty()) throw InputError("must list at least one author", line_no, "authors");
    for (const auto& n : names) {
        try {
            rec.authors.push_back(normalize_author(n, aliases));
        } catch (const InputError& e) {
            throw InputError(e.what(), line_no, "authors");
        }
    }
    rec.journal_id = f[3];
    rec.issue_id = f[4];
    const auto type = parse_issue_type(f[5]);
    if (!type) throw InputError("unknown issue_type '" + f[5] + "'", line_no, "issue_type");
    rec.issue_type = *type;
    rec.pub_date.year = parse_int(f[6], line_no, "year");
    if (!detail::trim(f[7]).empty()) rec.pub_date.month = check_month(parse_int(f[7], line_no, "month"), line_no, "month");
    rec.references = list(f[8]);
    return rec;
}

} // namespace io

/// Reads a corpus stream record by record. Duplicate pub_ids are reported
/// with the line of the second occurrence.
inline Corpus read_corpus(std::istream& in, CorpusFormat format, AliasMap aliases = {},
                          std::vector<EditorTenure> tenures = {}) {
    std::vector<PublicationRecord> records;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = io::strip_cr(line);
        if (io::is_blank(view)) continue;
        PublicationRecord rec;
        if (format == CorpusFormat::JSONL) {
            rec = io::parse_json_record(view, line_no, aliases);
        } else {
            auto fields = io::split_csv_line(view, line_no);
            if (!header_seen) {
                header_seen = true;
                if (fields == io::kCsvColumns) continue;
            }
            rec = io::parse_csv_record(fields, line_no, aliases);
        }
        if (!ids.insert(rec.pub_id).second) throw InputError("duplicate pub_id '" + rec.pub_id + "'", line_no, "pub_id");
        records.push_back(std::move(rec));
    }
    return Corpus::build(std::move(records), std::move(aliases), std::move(tenures));
}

inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, AliasMap aliases = {},
                          std::vector<EditorTenure> tenures = {}) {
    auto in = io::open_input(path);
    return read_corpus(in, format, std::move(aliases), std::move(tenures));
}

/// Picks the format from the file extension (".csv" -> CSV, else JSONL).
inline CorpusFormat format_for(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? CorpusFormat::CSV : CorpusFormat::JSONL;
}

/// `raw_name,canonical_key` rows. Targets are normalized so every alias maps to a canonical key.
inline AliasMap read_aliases(std::istream& in) {
    AliasMap out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = io::strip_cr(line);
        if (io::is_blank(view)) continue;
        auto f = io::split_csv_line(view, line_no);
        if (line_no == 1 && f.size() == 2 && f[0] == "raw_name" && f[1] == "canonical_key") continue;
        if (f.size() != 2) throw InputError("expected 2 columns (raw_name,canonical_key)", line_no);
        if (detail::trim(f[0]).empty()) throw InputError("must be non-empty", line_no, "raw_name");
        try {
            out[f[0]] = normalize_author(f[1]);
        } catch (const InputError& e) {
            throw InputError(e.what(), line_no, "canonical_key");
        }
    }
    return out;
}

inline AliasMap load_aliases(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    return read_aliases(in);
}

/// `author_key,journal_id,role,start_year,start_month,end_year?,end_month?` rows.
inline std::vector<EditorTenure> read_tenures(std::istream& in, const AliasMap& aliases = {}) {
    std::vector<EditorTenure> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = io::strip_cr(line);
        if (io::is_blank(view)) continue;
        auto f = io::split_csv_line(view, line_no);
        if (line_no == 1 && !f.empty() && f[0] == "author_key") continue;
        if (f.size() < 5 || f.size() > 7) throw InputError("expected 5 to 7 columns", line_no);
        EditorTenure t;
        try {
            t.author = normalize_author(f[0], aliases);
        } catch (const InputError& e) {
            throw InputError(e.what(), line_no, "author_key");
        }
        t.journal_id = f[1];
        if (t.journal_id.empty()) throw InputError("must be non-empty", line_no, "journal_id");
        t.role = f[2];
        t.start.year = io::parse_int(f[3], line_no, "start_year");
        t.start.month = detail::trim(f[4]).empty() ? 1 : io::check_month(io::parse_int(f[4], line_no, "start_month"), line_no, "start_month");
        const bool has_end_year = f.size() > 5 && !detail::trim(f[5]).empty();
        const bool has_end_month = f.size() > 6 && !detail::trim(f[6]).empty();
        if (has_end_month && !has_end_year) throw InputError("end_month without end_year", line_no, "end_month");
        if (has_end_year) {
            YearMonth end{io::parse_int(f[5], line_no, "end_year"), 12};
            if (has_end_month) end.month = io::check_month(io::parse_int(f[6], line_no, "end_month"), line_no, "end_month");
            t.end = end;
        }
        out.push_back(std::move(t));
    }
    return out;
}

inline std::vector<EditorTenure> load_tenures(const std::filesystem::path& path, const AliasMap& aliases = {}) {
    auto in = io::open_input(path);
    return read_tenures(in, aliases);
}

inline nlohmann::ordered_json record_to_json(const PublicationRecord& rec) {
    nlohmann::ordered_json j;
    j["pub_id"] = rec.pub_id;
    j["title"] = rec.title;
    auto& authors = j["authors"] = nlohmann::ordered_json::array();
    for (const auto& a : rec.authors) authors.push_back(a.key());
    j["journal_id"] = rec.journal_id;
    j["issue_id"] = rec.issue_id;
    j["issue_type"] = std::string(to_string(rec.issue_type));
    j["year"] = rec.pub_date.year;
    j["month"] = rec.pub_date.month;
    j["references"] = rec.references;
    return j;
}

/// One JSON object per line, in corpus order.
inline void write_jsonl(std::ostream& out, const Corpus& corpus) {
    for (const auto& rec : corpus.records()) out << record_to_json(rec).dump() << '\n';
}

inline void write_aliases(std::ostream& out, const AliasMap& aliases) {
    out << "raw_name,canonical_key\n";
    for (const auto& [raw, id] : aliases) out << io::csv_escape(raw) << ',' << io::csv_escape(id.key()) << '\n';
}

inline void write_tenures(std::ostream& out, const std::vector<EditorTenure>& tenures) {
    out << "author_key,journal_id,role,start_year,start_month,end_year,end_month\n";
    for (const auto& t : tenures) {
        out << io::csv_escape(t.author.key()) << ',' << io::csv_escape(t.journal_id) << ',' << io::csv_escape(t.role) << ','
            << t.start.year << ',' << t.start.month << ',';
        if (t.end) out << t.end->year << ',' << t.end->month;
        else out << ',';
        out << '\n';
    }
}

} // namespace citescreen

#endif // CITESCREEN_IO_HPP
