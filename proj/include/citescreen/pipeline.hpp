#ifndef CITESCREEN_PIPELINE_HPP
#define CITESCREEN_PIPELINE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "citescreen/corpus.hpp"
#include "citescreen/error.hpp"
#include "citescreen/record.hpp"

namespace citescreen {

enum class CitationClass { Independent, Self, SemiSelf };

inline std::string_view to_string(CitationClass c) {
    switch (c) {
    case CitationClass::Self: return "self";
    case CitationClass::SemiSelf: return "semi_self";
    case CitationClass::Independent: return "independent";
    }
    return "independent";
}

/// Who counts as a "semi-self" citer.
enum class SemiSelfScope {
    CitedWorks,  ///< co-authors of the specific focal works the citing paper references
    AnyCoauthor, ///< anyone who ever co-authored with the focal author
};

struct PipelineOptions {
    SemiSelfScope semi_self_scope = SemiSelfScope::CitedWorks;
};

struct CitationEvent {
    PubId citing;
    PubId cited;
    YearMonth citing_date;
    std::string citing_journal;
    IssueType citing_issue_type = IssueType::Regular;
    CitationClass classification = CitationClass::Independent;

    friend bool operator==(const CitationEvent&, const CitationEvent&) = default;
};

/// Result of the seven screening steps for one (author, journal) pair.
struct CollectionChain {
    AuthorId focal;
    std::string journal_id;
    YearMonth tenure_start;
    std::optional<YearMonth> tenure_end;

    std::size_t items_found = 0;            ///< step 1
    std::size_t items_in_journal = 0;       ///< step 1, within the journal
    std::set<PubId> aml;                    ///< step 2
    std::vector<CitationEvent> coll_a;      ///< step 3
    std::size_t coll_a_in_journal = 0;      ///< step 3, citing paper in the journal
    std::vector<CitationEvent> coll_b;      ///< step 4
    std::set<PubId> coll_c;                 ///< step 5
    std::set<PubId> coll_d;                 ///< step 6
    std::set<PubId> coll_e;                 ///< step 7
    std::map<PubId, CitationClass> classes; ///< classification of every paper in coll_c

    friend bool operator==(const CollectionChain&, const CollectionChain&) = default;
};

/// Step 1: every publication listing `focal` as an author, sorted by pub_id.
inline std::set<PubId> author_items(const Corpus& corpus, const AuthorId& focal) {
    std::set<PubId> out;
    for (auto i : corpus.publications_of(focal)) out.insert(corpus.record(i).pub_id);
    return out;
}

inline std::size_t count_in_journal(const Corpus& corpus, const std::set<PubId>& items, std::string_view journal_id) {
    std::size_t n = 0;
    for (const auto& id : items) {
        if (const auto* r = corpus.find(id); r && r->journal_id == journal_id) ++n;
    }
    return n;
}

inline std::size_t count_in_journal(const std::vector<CitationEvent>& events, std::string_view journal_id) {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(),
                                                  [&](const CitationEvent& e) { return e.citing_journal == journal_id; }));
}

/// Step 2: the author's items cited at least once in the corpus.
inline std::set<PubId> author_main_list(const Corpus& corpus, const AuthorId& focal) {
    std::set<PubId> out;
    for (auto i : corpus.publications_of(focal)) {
        if (!corpus.citers_of(i).empty()) out.insert(corpus.record(i).pub_id);
    }
    return out;
}

/// Step 3: one event per distinct (citing, cited) pair with a focal work as
/// the cited side. Sorted by (citing, cited). Classification is left at
/// Independent; run_pipeline assigns it.
inline std::vector<CitationEvent> collection_a(const Corpus& corpus, const AuthorId& focal) {
    std::vector<CitationEvent> out;
    for (auto item : corpus.publications_of(focal)) {
        const auto& cited = corpus.record(item);
        for (auto c : corpus.citers_of(item)) {
            const auto& citing = corpus.record(c);
            out.push_back({citing.pub_id, cited.pub_id, citing.pub_date, citing.journal_id, citing.issue_type,
                           CitationClass::Independent});
        }
    }
    std::sort(out.begin(), out.end(), [](const CitationEvent& a, const CitationEvent& b) {
        return a.citing != b.citing ? a.citing < b.citing : a.cited < b.cited;
    });
    return out;
}

/// Step 4: events from `journal_id` dated inside the tenure (start month inclusive).
inline std::vector<CitationEvent> collection_b(const std::vector<CitationEvent>& coll_a, std::string_view journal_id,
                                               const EditorTenure& tenure) {
    if (tenure.journal_id != journal_id) {
        throw ConfigError("tenure is for journal '" + tenure.journal_id + "', not '" + std::string(journal_id) + "'");
    }
    std::vector<CitationEvent> out;
    for (const auto& e : coll_a) {
        if (e.citing_journal == journal_id && tenure.covers(e.citing_date)) out.push_back(e);
    }
    return out;
}

/// Step 5: distinct citing documents.
inline std::set<PubId> collection_c(const std::vector<CitationEvent>& coll_b) {
    std::set<PubId> out;
    for (const auto& e : coll_b) out.insert(e.citing);
    return out;
}

/// Focal works referenced by `citing`.
inline std::set<PubId> focal_references(const Corpus& corpus, const AuthorId& focal, std::string_view citing) {
    std::set<PubId> out;
    const auto i = corpus.index_of(citing);
    if (!i) throw LookupError("citing publication '" + std::string(citing) + "' is not in the corpus");
    for (auto t : corpus.references_of(*i)) {
        const auto& rec = corpus.record(t);
        if (rec.has_author(focal)) out.insert(rec.pub_id);
    }
    return out;
}

/// Self if the focal author wrote `citing`; SemiSelf if a co-author of the
/// focal author (on a work in `cited_set`, by default) wrote it; else Independent.
inline CitationClass classify_citation(const Corpus& corpus, const AuthorId& focal, std::string_view citing,
                                       const std::set<PubId>& cited_set, const PipelineOptions& options = {}) {
    const auto* rec = corpus.find(citing);
    if (!rec) throw LookupError("citing publication '" + std::string(citing) + "' is not in the corpus");
    if (rec->has_author(focal)) return CitationClass::Self;

    std::unordered_set<AuthorId> coauthors;
    if (options.semi_self_scope == SemiSelfScope::AnyCoauthor) {
        for (const auto& [a, pub] : corpus.coauthors(focal)) coauthors.insert(a);
    } else {
        for (const auto& h : cited_set) {
            const auto* work = corpus.find(h);
            if (!work || !work->has_author(focal)) continue;
            for (const auto& a : work->authors) {
                if (a != focal) coauthors.insert(a);
            }
        }
    }
    for (const auto& a : rec->authors) {
        if (coauthors.count(a)) return CitationClass::SemiSelf;
    }
    return CitationClass::Independent;
}

/// Step 6: drops citing papers classified Self.
inline std::set<PubId> collection_d(const std::set<PubId>& coll_c, const Corpus& corpus, const AuthorId& focal,
                                    const PipelineOptions& options = {}) {
    std::set<PubId> out;
    for (const auto& c : coll_c) {
        if (classify_citation(corpus, focal, c, focal_references(corpus, focal, c), options) != CitationClass::Self) {
            out.insert(c);
        }
    }
    return out;
}

/// Step 7: drops citing papers classified SemiSelf.
inline std::set<PubId> collection_e(const std::set<PubId>& coll_d, const Corpus& corpus, const AuthorId& focal,
                                    const PipelineOptions& options = {}) {
    std::set<PubId> out;
    for (const auto& c : coll_d) {
        if (classify_citation(corpus, focal, c, focal_references(corpus, focal, c), options) ==
            CitationClass::Independent) {
            out.insert(c);
        }
    }
    return out;
}

/// Runs steps 1 to 7 with an explicit tenure.
inline CollectionChain run_pipeline(const Corpus& corpus, const AuthorId& focal, std::string_view journal_id,
                                    const EditorTenure& tenure, const PipelineOptions& options = {}) {
    if (tenure.author != focal) {
        throw ConfigError("tenure belongs to '" + tenure.author.key() + "', not '" + focal.key() + "'");
    }
    CollectionChain chain;
    chain.focal = focal;
    chain.journal_id = std::string(journal_id);
    chain.tenure_start = tenure.start;
    chain.tenure_end = tenure.end;

    const auto items = author_items(corpus, focal);
    chain.items_found = items.size();
    chain.items_in_journal = count_in_journal(corpus, items, journal_id);
    chain.aml = author_main_list(corpus, focal);
    chain.coll_a = collection_a(corpus, focal);

    std::map<PubId, CitationClass> classes;
    for (auto& e : chain.coll_a) {
        auto it = classes.find(e.citing);
        if (it == classes.end()) {
            const auto cls = classify_citation(corpus, focal, e.citing, focal_references(corpus, focal, e.citing), options);
            it = classes.emplace(e.citing, cls).first;
        }
        e.classification = it->second;
    }
    chain.coll_a_in_journal = count_in_journal(chain.coll_a, journal_id);
    chain.coll_b = collection_b(chain.coll_a, journal_id, tenure);
    chain.coll_c = collection_c(chain.coll_b);
    for (const auto& c : chain.coll_c) {
        const auto cls = classes.at(c);
        chain.classes.emplace(c, cls);
        if (cls != CitationClass::Self) chain.coll_d.insert(c);
        if (cls == CitationClass::Independent) chain.coll_e.insert(c);
    }
    return chain;
}

/// Runs the chain using the focal author's earliest tenure at `journal_id`.
inline CollectionChain run_pipeline(const Corpus& corpus, const AuthorId& focal, std::string_view journal_id,
                                    const PipelineOptions& options = {}) {
    const auto tenure = corpus.tenure_for(focal, journal_id);
    if (!tenure) {
        throw ConfigError("no editorial tenure for '" + focal.key() + "' at journal '" + std::string(journal_id) + "'");
    }
    return run_pipeline(corpus, focal, journal_id, *tenure, options);
}

} // namespace citescreen

#endif // CITESCREEN_PIPELINE_HPP
