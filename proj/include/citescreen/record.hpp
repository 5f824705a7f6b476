#ifndef CITESCREEN_RECORD_HPP
#define CITESCREEN_RECORD_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citescreen/author.hpp"

namespace citescreen {

using PubId = std::string;

enum class IssueType { Regular, Special };

inline std::string_view to_string(IssueType t) { return t == IssueType::Special ? "special" : "regular"; }

inline std::optional<IssueType> parse_issue_type(std::string_view token) {
    if (token == "regular") return IssueType::Regular;
    if (token == "special") return IssueType::Special;
    return std::nullopt;
}

/// Month-resolution date. Days are not modeled.
struct YearMonth {
    int year = 0;
    int month = 1;

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
    friend bool operator==(const YearMonth&, const YearMonth&) = default;
};

inline std::string to_string(const YearMonth& d) {
    std::string m = std::to_string(d.month);
    if (m.size() < 2) m.insert(0, "0");
    return std::to_string(d.year) + "-" + m;
}

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

struct PublicationRecord {
    PubId pub_id;
    std::string title;
    std::vector<AuthorId> authors;
    std::string journal_id;
    std::string issue_id;
    IssueType issue_type = IssueType::Regular;
    YearMonth pub_date;
    std::vector<PubId> references;

    bool has_author(const AuthorId& a) const {
        for (const auto& x : authors) {
            if (x == a) return true;
        }
        return false;
    }

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// Editorial appointment. `end` is absent while the appointment is ongoing.
struct EditorTenure {
    AuthorId author;
    std::string journal_id;
    std::string role;
    YearMonth start;
    std::optional<YearMonth> end;

    bool covers(const YearMonth& d) const { return d >= start && (!end || d <= *end); }

    friend bool operator==(const EditorTenure&, const EditorTenure&) = default;
};

} // namespace citescreen

#endif // CITESCREEN_RECORD_HPP
