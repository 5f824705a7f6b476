#ifndef CITESCREEN_METRICS_HPP
#define CITESCREEN_METRICS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citescreen/corpus.hpp"
#include "citescreen/error.hpp"
#include "citescreen/pipeline.hpp"

namespace citescreen {

/// Inclusive calendar-year range.
struct YearRange {
    int first = kMinYear;
    int last = kMaxYear;

    bool contains(int y) const noexcept { return y >= first && y <= last; }
    bool empty() const noexcept { return last < first; }
};

/// Largest h such that at least h of the counts are >= h. O(n), no sort.
inline std::size_t h_index(std::span<const std::uint64_t> citation_counts) {
    const std::size_t n = citation_counts.size();
    std::vector<std::size_t> at_least(n + 2, 0);
    for (auto c : citation_counts) ++at_least[std::min<std::uint64_t>(c, n)];
    std::size_t running = 0;
    for (std::size_t h = n; h > 0; --h) {
        running += at_least[h];
        if (running >= h) return h;
    }
    return 0;
}

inline std::size_t h_index(std::initializer_list<std::uint64_t> counts) {
    return h_index(std::span<const std::uint64_t>(counts.begin(), counts.size()));
}

/// All citations, or all but those coming from one journal.
struct HIndexVariant {
    std::optional<std::string> excluded_journal;

    static HIndexVariant all() { return {}; }
    static HIndexVariant excluding(std::string journal_id) { return {std::move(journal_id)}; }

    bool counts(std::string_view citing_journal) const { return !excluded_journal || *excluded_journal != citing_journal; }

    friend bool operator==(const HIndexVariant&, const HIndexVariant&) = default;
};

struct HIndexSeries {
    AuthorId focal;
    HIndexVariant variant;
    std::map<int, std::size_t> values; ///< year -> h with citations dated up to that year
};

/// h-index per calendar year, counting citations whose citing year is <= the year.
inline HIndexSeries h_index_series(const Corpus& corpus, const AuthorId& focal, YearRange years,
                                   const HIndexVariant& variant = HIndexVariant::all()) {
    if (years.empty()) throw ConfigError("empty year range");
    const auto items = corpus.publications_of(focal);
    const std::size_t span_years = static_cast<std::size_t>(years.last - years.first + 1);

    // per item: citations first dated in each year of the window; earlier ones fold into year 0
    std::vector<std::vector<std::uint64_t>> per_year(items.size(), std::vector<std::uint64_t>(span_years, 0));
    for (std::size_t k = 0; k < items.size(); ++k) {
        for (auto c : corpus.citers_of(items[k])) {
            const auto& citing = corpus.record(c);
            if (!variant.counts(citing.journal_id) || citing.pub_date.year > years.last) continue;
            const int y = std::max(citing.pub_date.year, years.first);
            ++per_year[k][static_cast<std::size_t>(y - years.first)];
        }
    }
    HIndexSeries out{focal, variant, {}};
    std::vector<std::uint64_t> cumulative(items.size(), 0);
    for (std::size_t y = 0; y < span_years; ++y) {
        for (std::size_t k = 0; k < items.size(); ++k) cumulative[k] += per_year[k][y];
        out.values[years.first + static_cast<int>(y)] = h_index(cumulative);
    }
    return out;
}

/// Years where the journal's citations raise the h-index (All > Excluding).
inline std::vector<int> journal_induced_years(const HIndexSeries& all, const HIndexSeries& excluding) {
    std::vector<int> out;
    for (const auto& [year, h] : all.values) {
        if (auto it = excluding.values.find(year); it != excluding.values.end() && h > it->second) out.push_back(year);
    }
    return out;
}

struct YearCounts {
    std::uint64_t in_journal = 0;
    std::uint64_t out_journal = 0;

    friend bool operator==(const YearCounts&, const YearCounts&) = default;
};

struct CitationSeries {
    AuthorId focal;
    std::string journal_id;
    std::map<int, YearCounts> per_year;

    std::uint64_t total() const {
        std::uint64_t n = 0;
        for (const auto& [y, c] : per_year) n += c.in_journal + c.out_journal;
        return n;
    }
    std::uint64_t total_in_journal() const {
        std::uint64_t n = 0;
        for (const auto& [y, c] : per_year) n += c.in_journal;
        return n;
    }
};

/// Collection A events per citing year, split by whether the citing paper is in `journal_id`.
inline CitationSeries citation_series(const Corpus& corpus, const AuthorId& focal, std::string_view journal_id,
                                      YearRange years) {
    if (years.empty()) throw ConfigError("empty year range");
    CitationSeries out{focal, std::string(journal_id), {}};
    for (int y = years.first; y <= years.last; ++y) out.per_year[y] = {};
    for (auto item : corpus.publications_of(focal)) {
        for (auto c : corpus.citers_of(item)) {
            const auto& citing = corpus.record(c);
            if (!years.contains(citing.pub_date.year)) continue;
            auto& slot = out.per_year[citing.pub_date.year];
            if (citing.journal_id == journal_id) ++slot.in_journal;
            else ++slot.out_journal;
        }
    }
    return out;
}

struct JournalCitationCounts {
    std::uint64_t internal = 0; ///< citing item also in the journal
    std::uint64_t total = 0;
};

/// Citations received by the journal's items, counted over citing items dated in `window`.
inline JournalCitationCounts journal_citation_counts(const Corpus& corpus, std::string_view journal_id,
                                                     YearRange window = {}) {
    JournalCitationCounts out;
    const auto records = corpus.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].journal_id != journal_id) continue;
        for (auto c : corpus.citers_of(static_cast<Corpus::Index>(i))) {
            const auto& citing = corpus.record(c);
            if (!window.contains(citing.pub_date.year)) continue;
            ++out.total;
            if (citing.journal_id == journal_id) ++out.internal;
        }
    }
    return out;
}

/// Journal self-citation rate; nullopt when the journal received no citations in the window.
inline std::optional<double> journal_self_citation_rate(const Corpus& corpus, std::string_view journal_id,
                                                        YearRange window = {}) {
    const auto counts = journal_citation_counts(corpus, journal_id, window);
    if (counts.total == 0) return std::nullopt;
    return static_cast<double>(counts.internal) / static_cast<double>(counts.total);
}

/// |Collection B| over in-journal Collection A events; nullopt when there are none.
inline std::optional<double> post_appointment_share(const CollectionChain& chain) {
    if (chain.coll_a_in_journal == 0) return std::nullopt;
    return static_cast<double>(chain.coll_b.size()) / static_cast<double>(chain.coll_a_in_journal);
}

/// In-journal share of Collection A; nullopt when Collection A is empty.
inline std::optional<double> in_journal_share(const CollectionChain& chain) {
    if (chain.coll_a.empty()) return std::nullopt;
    return static_cast<double>(chain.coll_a_in_journal) / static_cast<double>(chain.coll_a.size());
}

/// Smallest and largest publication year in the corpus; nullopt when empty.
inline std::optional<YearRange> corpus_years(const Corpus& corpus) {
    if (corpus.empty()) return std::nullopt;
    YearRange r{corpus.records().front().pub_date.year, corpus.records().front().pub_date.year};
    for (const auto& rec : corpus.records()) {
        r.first = std::min(r.first, rec.pub_date.year);
        r.last = std::max(r.last, rec.pub_date.year);
    }
    return r;
}

} // namespace citescreen

#endif // CITESCREEN_METRICS_HPP
