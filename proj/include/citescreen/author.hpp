#ifndef CITESCREEN_AUTHOR_HPP
#define CITESCREEN_AUTHOR_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "citescreen/error.hpp"

namespace citescreen {

/// Canonical author key: lowercased, diacritics folded, "surname, i.n.".
/// A single-token name without initials is just the surname.
class AuthorId {
public:
    AuthorId() = default;

    /// Wraps a key that is already canonical. Use normalize_author() for raw names.
    static AuthorId from_key(std::string key) {
        AuthorId id;
        id.key_ = std::move(key);
        return id;
    }

    const std::string& key() const noexcept { return key_; }
    bool empty() const noexcept { return key_.empty(); }

    friend auto operator<=>(const AuthorId&, const AuthorId&) = default;
    friend bool operator==(const AuthorId&, const AuthorId&) = default;

private:
    std::string key_;
};

/// Raw name -> canonical key.
using AliasMap = std::map<std::string, AuthorId, std::less<>>;

namespace detail {

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

/// Decodes one UTF-8 code point starting at s[i]. Invalid bytes decode as
/// themselves with length 1 so that folding never loses input.
inline char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto byte = [&](std::size_t k) { return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F); };
    if (b0 < 0x80) {
        len = 1;
        return b0;
    }
    if ((b0 & 0xE0) == 0xC0 && b0 >= 0xC2 && cont(1)) {
        len = 2;
        return (static_cast<char32_t>(b0 & 0x1F) << 6) | byte(1);
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        len = 3;
        return (static_cast<char32_t>(b0 & 0x0F) << 12) | (byte(1) << 6) | byte(2);
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        len = 4;
        return (static_cast<char32_t>(b0 & 0x07) << 18) | (byte(1) << 12) | (byte(2) << 6) | byte(3);
    }
    len = 1;
    return 0xFFFFFFFF;
}

/// ASCII replacement for Latin-1 Supplement and Latin Extended-A letters.
/// Returns nullptr when the code point has no folding.
inline const char* fold_latin(char32_t cp) {
    static constexpr const char* latin1[64] = {
        "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
        "d", "n", "o", "o", "o", "o", "o", nullptr, "o", "u", "u", "u", "u", "y", "th", "ss",
        "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
        "d", "n", "o", "o", "o", "o", "o", nullptr, "o", "u", "u", "u", "u", "y", "th", "y"};
    struct Range {
        char32_t first;
        char32_t last;
        const char* ascii;
    };
    static constexpr Range extended_a[] = {
        {0x0100, 0x0105, "a"}, {0x0106, 0x010D, "c"}, {0x010E, 0x0111, "d"}, {0x0112, 0x011B, "e"},
        {0x011C, 0x0123, "g"}, {0x0124, 0x0127, "h"}, {0x0128, 0x0131, "i"}, {0x0132, 0x0133, "ij"},
        {0x0134, 0x0135, "j"}, {0x0136, 0x0138, "k"}, {0x0139, 0x0142, "l"}, {0x0143, 0x014B, "n"},
        {0x014C, 0x0151, "o"}, {0x0152, 0x0153, "oe"}, {0x0154, 0x0159, "r"}, {0x015A, 0x0161, "s"},
        {0x0162, 0x0167, "t"}, {0x0168, 0x0173, "u"}, {0x0174, 0x0175, "w"}, {0x0176, 0x0178, "y"},
        {0x0179, 0x017E, "z"}, {0x017F, 0x017F, "s"}};
    if (cp >= 0xC0 && cp <= 0xFF) return latin1[cp - 0xC0];
    for (const auto& r : extended_a) {
        if (cp >= r.first && cp <= r.last) return r.ascii;
    }
    return nullptr;
}

/// Lowercases ASCII, folds Latin diacritics to ASCII and drops combining marks.
inline std::string fold_name(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        std::size_t len = 1;
        const char32_t cp = decode_utf8(s, i, len);
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            out.push_back(c);
        } else if (cp >= 0x0300 && cp <= 0x036F) {
            // combining diacritical mark
        } else if (const char* ascii = fold_latin(cp)) {
            out += ascii;
        } else {
            out.append(s.substr(i, len));
        }
        i += len;
    }
    return out;
}

inline std::vector<std::string_view> split_any(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
            if (i > start) out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::string join_words(const std::vector<std::string_view>& words, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (!out.empty()) out.push_back(' ');
        out.append(words[i]);
    }
    return out;
}

inline constexpr std::string_view kWhitespace = " \t\n\r\f\v";

} // namespace detail

/// Maps a raw author name onto its canonical key.
///
/// The alias table is consulted first (exact match on the raw or trimmed
/// name). Otherwise the name is folded and split into a surname and given
/// names: "Surname, Given Names" when a comma is present, else the last
/// whitespace-separated word is the surname. Given names collapse to their
/// initials. The result is a fixed point: normalizing a key returns it.
inline AuthorId normalize_author(std::string_view raw_name, const AliasMap& aliases = {}) {
    const std::string_view trimmed = detail::trim(raw_name);
    if (trimmed.empty()) throw InputError("author name is empty or whitespace");

    if (auto it = aliases.find(raw_name); it != aliases.end()) return it->second;
    if (auto it = aliases.find(trimmed); it != aliases.end()) return it->second;

    const std::string folded = detail::fold_name(trimmed);
    std::string surname;
    std::string given;
    if (const auto comma = folded.find(','); comma != std::string::npos) {
        const auto words = detail::split_any(std::string_view(folded).substr(0, comma), detail::kWhitespace);
        surname = detail::join_words(words, 0, words.size());
        given = folded.substr(comma + 1);
    } else {
        const auto words = detail::split_any(folded, detail::kWhitespace);
        if (words.empty()) throw InputError("author name has no surname: '" + std::string(trimmed) + "'");
        surname = std::string(words.back());
        given = detail::join_words(words, 0, words.size() - 1);
    }
    if (surname.empty()) throw InputError("author name has no surname: '" + std::string(trimmed) + "'");

    std::string initials;
    for (auto token : detail::split_any(given, " \t\n\r\f\v.,-")) {
        std::size_t len = 1;
        detail::decode_utf8(token, 0, len);
        initials.append(token.substr(0, len));
        initials.push_back('.');
    }
    if (!initials.empty()) return AuthorId::from_key(surname + ", " + initials);
    // A bare multi-word surname keeps its comma so the key re-parses the same way.
    if (surname.find(' ') != std::string::npos) return AuthorId::from_key(surname + ",");
    return AuthorId::from_key(surname);
}

} // namespace citescreen

template <>
struct std::hash<citescreen::AuthorId> {
    std::size_t operator()(const citescreen::AuthorId& id) const noexcept { return std::hash<std::string>{}(id.key()); }
};

#endif // CITESCREEN_AUTHOR_HPP
