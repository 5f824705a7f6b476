#ifndef CITESCREEN_CORPUS_HPP
#define CITESCREEN_CORPUS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citescreen/error.hpp"
#include "citescreen/record.hpp"

namespace citescreen {

/// A reference whose target is not a publication of the corpus.
struct DanglingRef {
    PubId citing;
    PubId target;

    friend auto operator<=>(const DanglingRef&, const DanglingRef&) = default;
};

/// Immutable, indexed set of publications plus the companion alias and
/// tenure tables. Publications are kept in load order; internal indices
/// (`std::uint32_t`) address that order.
class Corpus {
public:
    using Index = std::uint32_t;

    Corpus() = default;

    /// Builds the indices. Throws InputError on a duplicate pub_id.
    static Corpus build(std::vector<PublicationRecord> records, AliasMap aliases = {},
                        std::vector<EditorTenure> tenures = {}) {
        Corpus c;
        c.records_ = std::move(records);
        c.aliases_ = std::move(aliases);
        c.tenures_ = std::move(tenures);
        c.index_.reserve(c.records_.size());
        for (std::size_t i = 0; i < c.records_.size(); ++i) {
            if (!c.index_.emplace(c.records_[i].pub_id, static_cast<Index>(i)).second) {
                throw InputError("duplicate pub_id '" + c.records_[i].pub_id + "'", 0, "pub_id");
            }
        }
        c.refs_.resize(c.records_.size());
        c.citers_.resize(c.records_.size());
        for (std::size_t i = 0; i < c.records_.size(); ++i) {
            const auto& rec = c.records_[i];
            auto& out = c.refs_[i];
            for (const auto& target : rec.references) {
                if (auto it = c.index_.find(target); it != c.index_.end()) {
                    out.push_back(it->second);
                } else {
                    c.dangling_.insert({rec.pub_id, target});
                }
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            for (Index t : out) c.citers_[t].push_back(static_cast<Index>(i));
            for (const auto& a : rec.authors) {
                auto& list = c.by_author_[a];
                if (list.empty() || list.back() != i) list.push_back(static_cast<Index>(i));
            }
            c.journals_.insert(rec.journal_id);
        }
        return c;
    }

    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    std::span<const PublicationRecord> records() const noexcept { return records_; }
    const PublicationRecord& record(Index i) const { return records_.at(i); }

    std::optional<Index> index_of(std::string_view pub_id) const {
        if (auto it = index_.find(std::string(pub_id)); it != index_.end()) return it->second;
        return std::nullopt;
    }

    const PublicationRecord* find(std::string_view pub_id) const {
        auto i = index_of(pub_id);
        return i ? &records_[*i] : nullptr;
    }

    const PublicationRecord& at(std::string_view pub_id) const {
        if (const auto* r = find(pub_id)) return *r;
        throw LookupError("unknown publication '" + std::string(pub_id) + "'");
    }

    /// Distinct resolved reference targets of a publication, ascending.
    std::span<const Index> references_of(Index i) const { return refs_.at(i); }

    /// Publications that reference `i`, ascending (the transpose of references_of).
    std::span<const Index> citers_of(Index i) const { return citers_.at(i); }

    /// Reverse citation index keyed by pub_id.
    std::vector<PubId> citing(std::string_view pub_id) const {
        std::vector<PubId> out;
        if (auto i = index_of(pub_id)) {
            for (Index c : citers_[*i]) out.push_back(records_[c].pub_id);
        }
        return out;
    }

    /// Publications (co-)authored by `author`, in load order.
    std::span<const Index> publications_of(const AuthorId& author) const {
        if (auto it = by_author_.find(author); it != by_author_.end()) return it->second;
        return {};
    }

    /// Co-authorship relation of `author`: every (co-author, shared pub_id).
    std::set<std::pair<AuthorId, PubId>> coauthors(const AuthorId& author) const {
        std::set<std::pair<AuthorId, PubId>> out;
        for (Index i : publications_of(author)) {
            for (const auto& a : records_[i].authors) {
                if (a != author) out.emplace(a, records_[i].pub_id);
            }
        }
        return out;
    }

    const std::set<DanglingRef>& dangling() const noexcept { return dangling_; }
    const AliasMap& aliases() const noexcept { return aliases_; }
    const std::vector<EditorTenure>& tenures() const noexcept { return tenures_; }
    const std::set<std::string>& journals() const noexcept { return journals_; }
    bool has_journal(std::string_view journal_id) const { return journals_.count(std::string(journal_id)) > 0; }

    /// Earliest-starting tenure of `author` at `journal_id`, if any.
    std::optional<EditorTenure> tenure_for(const AuthorId& author, std::string_view journal_id) const {
        std::optional<EditorTenure> best;
        for (const auto& t : tenures_) {
            if (t.author == author && t.journal_id == journal_id && (!best || t.start < best->start)) best = t;
        }
        return best;
    }

    /// Field-for-field equality of the loaded content; indices are derived.
    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.records_ == b.records_ && a.aliases_ == b.aliases_ && a.tenures_ == b.tenures_;
    }

private:
    std::vector<PublicationRecord> records_;
    AliasMap aliases_;
    std::vector<EditorTenure> tenures_;
    std::unordered_map<std::string, Index> index_;
    std::vector<std::vector<Index>> refs_;
    std::vector<std::vector<Index>> citers_;
    std::unordered_map<AuthorId, std::vector<Index>> by_author_;
    std::set<DanglingRef> dangling_;
    std::set<std::string> journals_;
};

enum class ViolationKind { DuplicateAuthor, EmptyAuthors, DateRange, SelfReference, DuplicateReference, DanglingReference, TenureOrder };

inline std::string_view to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::DuplicateAuthor: return "duplicate_author";
    case ViolationKind::EmptyAuthors: return "empty_authors";
    case ViolationKind::DateRange: return "date_range";
    case ViolationKind::SelfReference: return "self_reference";
    case ViolationKind::DuplicateReference: return "duplicate_reference";
    case ViolationKind::DanglingReference: return "dangling_reference";
    case ViolationKind::TenureOrder: return "tenure_order";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::string subject; ///< pub_id, or author key for tenure violations
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::size_t count(ViolationKind k) const {
        return static_cast<std::size_t>(
            std::count_if(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
    }
};

/// Lists every invariant violation of a loaded corpus. Never throws on bad data.
inline ValidationReport validate_corpus(const Corpus& corpus) {
    ValidationReport report;
    auto add = [&](ViolationKind k, const std::string& subject, std::string detail) {
        report.violations.push_back({k, subject, std::move(detail)});
    };
    for (const auto& rec : corpus.records()) {
        if (rec.authors.empty()) add(ViolationKind::EmptyAuthors, rec.pub_id, "record has no authors");
        std::unordered_set<AuthorId> seen;
        for (const auto& a : rec.authors) {
            if (!seen.insert(a).second) add(ViolationKind::DuplicateAuthor, rec.pub_id, a.key());
        }
        if (rec.pub_date.year < kMinYear || rec.pub_date.year > kMaxYear) {
            add(ViolationKind::DateRange, rec.pub_id, "year " + std::to_string(rec.pub_date.year) + " outside [1900, 2100]");
        }
        std::unordered_set<std::string> refs;
        for (const auto& r : rec.references) {
            if (r == rec.pub_id) add(ViolationKind::SelfReference, rec.pub_id, r);
            if (!refs.insert(r).second) add(ViolationKind::DuplicateReference, rec.pub_id, r);
        }
    }
    for (const auto& d : corpus.dangling()) add(ViolationKind::DanglingReference, d.citing, d.target);
    for (const auto& t : corpus.tenures()) {
        if (t.end && *t.end < t.start) {
            add(ViolationKind::TenureOrder, t.author.key(),
                t.journal_id + ": end " + to_string(*t.end) + " precedes start " + to_string(t.start));
        }
    }
    return report;
}

} // namespace citescreen

#endif // CITESCREEN_CORPUS_HPP
