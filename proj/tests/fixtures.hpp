// Hand-built corpora and independent oracles shared by the test suites.
#ifndef CITESCREEN_TESTS_FIXTURES_HPP
#define CITESCREEN_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "citescreen/citescreen.hpp"

namespace fixtures {

using namespace citescreen;

inline AuthorId key(const std::string& k) { return AuthorId::from_key(k); }

class CorpusBuilder {
public:
    PublicationRecord& add(const std::string& id, std::vector<std::string> authors, const std::string& journal, int year,
                           int month = 1, std::vector<std::string> refs = {}, IssueType type = IssueType::Regular) {
        PublicationRecord r;
        r.pub_id = id;
        r.title = "Title of " + id;
        for (const auto& a : authors) r.authors.push_back(key(a));
        r.journal_id = journal;
        r.issue_type = type;
        r.issue_id = journal + "-" + std::to_string(year) + (type == IssueType::Special ? "-S" : "-1");
        r.pub_date = {year, month};
        r.references = std::move(refs);
        records_.push_back(std::move(r));
        return records_.back();
    }

    void tenure(const std::string& author, const std::string& journal, YearMonth start,
                std::optional<YearMonth> end = std::nullopt) {
        tenures_.push_back({key(author), journal, "editor", start, end});
    }

    Corpus build() const { return Corpus::build(records_, {}, tenures_); }

private:
    std::vector<PublicationRecord> records_;
    std::vector<EditorTenure> tenures_;
};

/// Brute-force h-index: scan every threshold and keep the largest satisfied one.
inline std::size_t h_index_oracle(const std::vector<std::uint64_t>& counts) {
    std::size_t best = 0;
    for (std::size_t h = 0; h <= counts.size(); ++h) {
        std::size_t at_least = 0;
        for (auto c : counts) at_least += c >= h ? 1 : 0;
        if (at_least >= h) best = h;
    }
    return best;
}

/// Direct evaluation of sum (O - E)^2 / E in long double.
inline long double pearson_oracle(const std::vector<std::vector<long double>>& observed) {
    const std::size_t r = observed.size();
    const std::size_t c = observed.front().size();
    std::vector<long double> rows(r, 0), cols(c, 0);
    long double n = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            rows[i] += observed[i][j];
            cols[j] += observed[i][j];
            n += observed[i][j];
        }
    }
    long double stat = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const long double e = rows[i] * cols[j] / n;
            stat += (observed[i][j] - e) * (observed[i][j] - e) / e;
        }
    }
    return stat;
}

/// Recounts citations per focal item from raw records, without the corpus indices.
inline std::vector<std::uint64_t> citation_counts_oracle(const Corpus& corpus, const AuthorId& focal, int up_to_year,
                                                         const std::string& excluded_journal = {}) {
    std::vector<std::uint64_t> out;
    for (const auto& item : corpus.records()) {
        if (!item.has_author(focal)) continue;
        std::uint64_t n = 0;
        for (const auto& citing : corpus.records()) {
            if (citing.pub_date.year > up_to_year) continue;
            if (!excluded_journal.empty() && citing.journal_id == excluded_journal) continue;
            if (std::find(citing.references.begin(), citing.references.end(), item.pub_id) != citing.references.end()) ++n;
        }
        out.push_back(n);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Table-1-shaped corpus: focal "author1" at journal "J1", appointed 2013-01.
//
//   items 46 (10 in J1), AML 34, Collection A 310 (130 in J1),
//   B 123, C 69, D 67, E 65.
//
// Collection E's 65 papers list 1..6 focal items: 40x1, 14x2, 6x3, 2x4, 2x5,
// 1x6. Regular issues hold 28x1, 1x2, 1x3; special issues hold the rest,
// giving the issue-type table [[28,1,1],[12,13,10]].
// ---------------------------------------------------------------------------
struct Table1Fixture {
    Corpus corpus;
    AuthorId focal = key("author1");
    std::string journal = "J1";
    EditorTenure tenure;
    std::string overdose_paper;
};

inline Table1Fixture table1_fixture() {
    CorpusBuilder b;
    std::vector<std::string> cited;
    // In-journal items: three cited (2010), seven uncited (2014-2015). Two of
    // the uncited ones (a3, a4) are the focal author's self-citing papers and
    // are added further down once their reference lists are known.
    for (int i = 0; i < 10; ++i) {
        const std::string id = "a" + std::to_string(i);
        if (i < 3) {
            b.add(id, {"author1"}, "J1", 2010, 3);
            cited.push_back(id);
        } else if (i > 4) {
            b.add(id, {"author1"}, "J1", 2014 + (i % 2), 6);
        }
    }
    // Out-of-journal items: 31 cited, 5 uncited. a10 is co-authored with "partner".
    for (int i = 10; i < 46; ++i) {
        const std::string id = "a" + std::to_string(i);
        std::vector<std::string> authors = {"author1"};
        if (i == 10) authors.push_back("partner");
        b.add(id, authors, "J9", 2000 + (i % 13), 5);
        if (i <= 40) cited.push_back(id);
    }

    std::size_t cursor = 0;
    auto take = [&](std::size_t m) {
        std::vector<std::string> refs;
        for (std::size_t k = 0; k < m; ++k) refs.push_back(cited[(cursor + k) % cited.size()]);
        cursor = (cursor + m) % cited.size();
        return refs;
    };

    int serial = 0;
    auto next_id = [&](const char* prefix) { return std::string(prefix) + std::to_string(serial++); };
    auto post_date = [&](int k) { return std::pair<int, int>{2013 + (k / 12) % 3, 1 + k % 12}; };

    // Collection E papers.
    struct Group {
        std::size_t refs;
        std::size_t count;
        IssueType type;
    };
    const std::vector<Group> groups = {
        {1, 28, IssueType::Regular}, {2, 1, IssueType::Regular},  {3, 1, IssueType::Regular},
        {1, 12, IssueType::Special}, {2, 13, IssueType::Special}, {3, 5, IssueType::Special},
        {4, 2, IssueType::Special},  {5, 2, IssueType::Special},  {6, 1, IssueType::Special},
    };
    Table1Fixture fx;
    int k = 0;
    for (const auto& g : groups) {
        for (std::size_t n = 0; n < g.count; ++n, ++k) {
            const auto id = next_id("e");
            const auto [y, m] = post_date(k);
            b.add(id, {"citer" + std::to_string(k)}, "J1", y, m, take(g.refs), g.type);
            if (g.refs == 6) fx.overdose_paper = id;
        }
    }
    // Self-citations: 4 + 3 events, from two of the focal author's own J1 papers.
    b.add("a3", {"author1", "helper"}, "J1", 2014, 2, take(4), IssueType::Special);
    b.add("a4", {"helper", "author1"}, "J1", 2015, 4, take(3));
    // Semi-self-citations by the co-author of a10: 3 + 3 events.
    b.add(next_id("m"), {"partner"}, "J1", 2014, 7, {"a10", "a0", "a1"});
    b.add(next_id("m"), {"partner", "outsider"}, "J1", 2015, 8, {"a10", "a2", "a11"}, IssueType::Special);
    // In-journal citations before the appointment.
    for (std::size_t n = 0; n < 7; ++n) {
        b.add(next_id("q"), {"early" + std::to_string(n)}, "J1", 2012, 1 + static_cast<int>(n % 12), take(1));
    }
    // Citations from elsewhere: one per paper, so Collection A reaches 310.
    for (std::size_t n = 0; n < 180; ++n) {
        b.add(next_id("o"), {"other" + std::to_string(n)}, "J2", 2005 + static_cast<int>(n % 11), 1 + static_cast<int>(n % 12),
              take(1));
    }
    b.tenure("author1", "J1", {2013, 1});
    fx.corpus = b.build();
    fx.tenure = fx.corpus.tenures().front();
    return fx;
}

// ---------------------------------------------------------------------------
// h-index divergence corpus: focal "author1"; out-of-journal citations give
// the yearly h-index 1 2 4 4 6 6 7 7 8 8 over 2006-2015, and citations from
// J1 in 2015 lift the final year to 10.
//
// J1's 2015 citing papers: 16 regular papers listing one of items 9-10,
// 2 special papers listing items 1-8, 2 special papers listing items 9-10.
// ---------------------------------------------------------------------------
inline const std::vector<std::size_t> kExcludingRow = {1, 2, 4, 4, 6, 6, 7, 7, 8, 8};
inline const std::vector<std::size_t> kAllRow = {1, 2, 4, 4, 6, 6, 7, 7, 8, 10};

struct DivergenceFixture {
    Corpus corpus;
    AuthorId focal = key("author1");
    std::string journal = "J1";
    EditorTenure tenure;
};

inline DivergenceFixture divergence_fixture() {
    CorpusBuilder b;
    for (int i = 1; i <= 12; ++i) b.add("w" + std::to_string(i), {"author1"}, "J9", 2005, 1);
    // Each year item i <= h(y) is brought up to h(y) citations.
    std::vector<std::size_t> counts(13, 0);
    int serial = 0;
    for (std::size_t yi = 0; yi < kExcludingRow.size(); ++yi) {
        const int year = 2006 + static_cast<int>(yi);
        const auto h = kExcludingRow[yi];
        for (std::size_t i = 1; i <= h; ++i) {
            while (counts[i] < h) {
                b.add("x" + std::to_string(serial), {"reader" + std::to_string(serial)}, "J2", year, 6,
                      {"w" + std::to_string(i)});
                ++serial;
                ++counts[i];
            }
        }
    }
    int k = 0;
    for (int rep = 0; rep < 8; ++rep) {
        for (int i : {9, 10}) {
            b.add("j" + std::to_string(k), {"jr" + std::to_string(k)}, "J1", 2015, 1 + k % 12, {"w" + std::to_string(i)});
            ++k;
        }
    }
    for (int rep = 0; rep < 2; ++rep) {
        std::vector<std::string> refs;
        for (int i = 1; i <= 8; ++i) refs.push_back("w" + std::to_string(i));
        b.add("j" + std::to_string(k), {"jr" + std::to_string(k)}, "J1", 2015, 3, refs, IssueType::Special);
        ++k;
    }
    for (int rep = 0; rep < 2; ++rep) {
        b.add("j" + std::to_string(k), {"jr" + std::to_string(k)}, "J1", 2015, 5, {"w9", "w10"}, IssueType::Special);
        ++k;
    }
    b.tenure("author1", "J1", {2013, 1});
    DivergenceFixture fx;
    fx.corpus = b.build();
    fx.tenure = fx.corpus.tenures().front();
    return fx;
}

// ---------------------------------------------------------------------------
// Control-author corpus: 47 items, 39 cited, 345 citations of which 7 come
// from J1 (4 before and 3 after a 2013 appointment).
// ---------------------------------------------------------------------------
struct ControlFixture {
    Corpus corpus;
    AuthorId focal = key("author5");
    std::string journal = "J1";
    EditorTenure tenure;
};

inline ControlFixture control_fixture() {
    CorpusBuilder b;
    std::vector<std::string> cited;
    for (int i = 0; i < 47; ++i) {
        const std::string id = "c" + std::to_string(i);
        b.add(id, {"author5"}, i < 3 ? "J1" : "J7", 1995 + i % 15, 2);
        if (i < 39) cited.push_back(id);
    }
    for (int n = 0; n < 338; ++n) {
        b.add("o" + std::to_string(n), {"ext" + std::to_string(n)}, "J3", 2000 + n % 16, 1 + n % 12,
              {cited[static_cast<std::size_t>(n) % cited.size()]});
    }
    for (int n = 0; n < 7; ++n) {
        b.add("i" + std::to_string(n), {"int" + std::to_string(n)}, "J1", n < 4 ? 2009 + n : 2013 + (n - 4), 6,
              {cited[static_cast<std::size_t>(n)]});
    }
    b.tenure("author5", "J1", {2013, 1});
    ControlFixture fx;
    fx.corpus = b.build();
    fx.tenure = fx.corpus.tenures().front();
    return fx;
}

/// Small random synthetic configuration for property tests.
inline SynthConfig random_synth_config(std::mt19937_64& rng) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    SynthConfig c;
    c.seed = rng();
    c.n_authors = static_cast<std::uint32_t>(uniform(3, 40));
    c.n_journals = static_cast<std::uint32_t>(uniform(1, 4));
    c.n_years = static_cast<std::uint32_t>(uniform(2, 8));
    c.first_year = 2000;
    c.papers_per_year = static_cast<std::uint32_t>(uniform(0, 25));
    c.mean_refs = uniform(0, 8);
    c.max_authors_per_paper = static_cast<std::uint32_t>(uniform(1, static_cast<int>(std::min<std::uint32_t>(c.n_authors, 4))));
    c.special_issue_fraction = uniform(0, 10) / 10.0;
    c.preferential = uniform(0, 1) == 1;
    CoercionConfig k;
    k.journal_id = "J1";
    k.tenure_start = {2000 + uniform(1, static_cast<int>(c.n_years)), uniform(1, 12)};
    k.insertion_probability = uniform(0, 10) / 10.0;
    k.items_per_insertion = 1;
    k.special_issue_boost = 1.0 + uniform(0, 3);
    k.editor_papers_per_year = static_cast<std::uint32_t>(uniform(1, 3));
    k.editor_organic_citations = uniform(0, 1) == 1;
    c.coercion = k;
    return c;
}

} // namespace fixtures

#endif // CITESCREEN_TESTS_FIXTURES_HPP
