#ifndef CITESCREEN_SCREEN_HPP
#define CITESCREEN_SCREEN_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "citescreen/corpus.hpp"
#include "citescreen/error.hpp"
#include "citescreen/metrics.hpp"
#include "citescreen/pipeline.hpp"
#include "citescreen/stats.hpp"

namespace citescreen {

/// Screening thresholds. Defaults follow the reference case: an overdose is
/// six items in one reference list, 95% of in-journal citations after the
/// appointment, a 33% journal self-citation rate is a warning and more than
/// 50% is the suspension level, significance at 0.05.
struct ScreeningConfig {
    std::uint64_t overdose_threshold = 6;
    double post_appointment_share_flag = 0.95;
    double in_journal_share_flag = 0.33;
    std::size_t h_divergence_flag = 2;
    double journal_rate_warn = 0.33;
    double journal_rate_suspend = 0.50;
    double alpha = 0.05;
    std::size_t chi_square_min_papers = 20;
    ReferenceBins bins;

    void validate() const {
        auto fraction = [](double v, const char* name) {
            if (!(v > 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must be in (0, 1]");
        };
        if (overdose_threshold < 1) throw ConfigError("overdose_threshold must be >= 1");
        fraction(post_appointment_share_flag, "post_appointment_share_flag");
        fraction(in_journal_share_flag, "in_journal_share_flag");
        fraction(journal_rate_warn, "journal_rate_warn");
        fraction(journal_rate_suspend, "journal_rate_suspend");
        fraction(alpha, "alpha");
        if (journal_rate_warn > journal_rate_suspend) throw ConfigError("journal_rate_warn must not exceed journal_rate_suspend");
        if (h_divergence_flag < 1) throw ConfigError("h_divergence_flag must be >= 1");
        bins.check();
    }
};

enum class Verdict { Neutral = 0, Elevated = 1, Flagged = 2 };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Neutral: return "neutral";
    case Verdict::Elevated: return "elevated";
    case Verdict::Flagged: return "flagged";
    }
    return "neutral";
}

/// Process exit code for a verdict: 0 neutral, 2 elevated, 3 flagged.
inline int exit_code(Verdict v) {
    switch (v) {
    case Verdict::Neutral: return 0;
    case Verdict::Elevated: return 2;
    case Verdict::Flagged: return 3;
    }
    return 0;
}

struct Finding {
    Finding() = default;
    explicit Finding(std::string flag_name) : name(std::move(flag_name)) {}

    std::string name;
    bool triggered = false;
    bool skipped = false;
    std::vector<std::pair<std::string, double>> evidence;
    std::vector<PubId> pub_ids;
    std::string note;

    std::optional<double> value(std::string_view key) const {
        for (const auto& [k, v] : evidence) {
            if (k == key) return v;
        }
        return std::nullopt;
    }
};

struct ScreeningReport {
    std::string subject_kind; ///< "editor" or "journal"
    std::optional<AuthorId> author;
    std::string journal_id;
    ScreeningConfig config;
    std::vector<Finding> findings;
    Verdict verdict = Verdict::Neutral;

    const Finding* finding(std::string_view name) const {
        for (const auto& f : findings) {
            if (f.name == name) return &f;
        }
        return nullptr;
    }
};

namespace finding_names {
inline constexpr const char* kPostAppointmentShare = "post_appointment_share";
inline constexpr const char* kInJournalShare = "in_journal_share";
inline constexpr const char* kHIndexDivergence = "h_index_divergence";
inline constexpr const char* kIssueTypeAssociation = "issue_type_association";
inline constexpr const char* kCitationOverdose = "citation_overdose";
inline constexpr const char* kJournalRateWarn = "journal_self_citation_rate_warn";
inline constexpr const char* kJournalRateSuspend = "journal_self_citation_rate_suspend";
} // namespace finding_names

/// Flagged when two or more findings trigger, or an overdose coincides with
/// a significant issue-type association; Elevated on a single finding.
inline Verdict derive_verdict(const std::vector<Finding>& findings) {
    std::size_t triggered = 0;
    bool overdose = false;
    bool association = false;
    for (const auto& f : findings) {
        if (!f.triggered) continue;
        ++triggered;
        if (f.name == finding_names::kCitationOverdose) overdose = true;
        if (f.name == finding_names::kIssueTypeAssociation) association = true;
    }
    if (triggered >= 2 || (overdose && association)) return Verdict::Flagged;
    if (triggered == 1) return Verdict::Elevated;
    return Verdict::Neutral;
}

/// Number of focal works in each Collection E paper's reference list.
inline std::map<PubId, std::size_t> focal_reference_counts(const CollectionChain& chain, const Corpus& corpus,
                                                           const AuthorId& focal) {
    std::map<PubId, std::size_t> out;
    for (const auto& c : chain.coll_e) out[c] = focal_references(corpus, focal, c).size();
    return out;
}

/// Cases per reference-list size (how many citing papers list exactly n focal works).
inline std::map<std::size_t, std::size_t> reference_count_distribution(const CollectionChain& chain, const Corpus& corpus,
                                                                       const AuthorId& focal) {
    std::map<std::size_t, std::size_t> out;
    for (const auto& [pub, n] : focal_reference_counts(chain, corpus, focal)) ++out[n];
    return out;
}

/// Collection E papers listing at least `threshold` focal works.
inline std::vector<PubId> detect_overdose(const CollectionChain& chain, const Corpus& corpus, const AuthorId& focal,
                                          std::uint64_t threshold) {
    std::vector<PubId> out;
    for (const auto& [pub, n] : focal_reference_counts(chain, corpus, focal)) {
        if (n >= threshold) out.push_back(pub);
    }
    return out;
}

namespace detail {

inline Finding post_appointment_finding(const CollectionChain& chain, const ScreeningConfig& config) {
    Finding f{finding_names::kPostAppointmentShare};
    f.evidence = {{"collection_b", static_cast<double>(chain.coll_b.size())},
                  {"collection_a_in_journal", static_cast<double>(chain.coll_a_in_journal)},
                  {"threshold", config.post_appointment_share_flag}};
    if (const auto share = post_appointment_share(chain)) {
        f.evidence.insert(f.evidence.begin(), {"share", *share});
        f.triggered = *share >= config.post_appointment_share_flag;
    } else {
        f.note = "no in-journal citations";
    }
    return f;
}

inline Finding in_journal_finding(const CollectionChain& chain, const ScreeningConfig& config) {
    Finding f{finding_names::kInJournalShare};
    f.evidence = {{"collection_a_in_journal", static_cast<double>(chain.coll_a_in_journal)},
                  {"collection_a", static_cast<double>(chain.coll_a.size())},
                  {"threshold", config.in_journal_share_flag}};
    if (const auto share = in_journal_share(chain)) {
        f.evidence.insert(f.evidence.begin(), {"share", *share});
        f.triggered = *share >= config.in_journal_share_flag;
    } else {
        f.note = "no citations";
    }
    return f;
}

inline Finding divergence_finding(const Corpus& corpus, const AuthorId& focal, std::string_view journal_id,
                                  const ScreeningConfig& config) {
    Finding f{finding_names::kHIndexDivergence};
    const auto years = corpus_years(corpus);
    if (!years) {
        f.evidence = {{"divergence", 0.0}, {"threshold", static_cast<double>(config.h_divergence_flag)}};
        f.note = "empty corpus";
        return f;
    }
    const auto all = h_index_series(corpus, focal, *years, HIndexVariant::all());
    const auto excl = h_index_series(corpus, focal, *years, HIndexVariant::excluding(std::string(journal_id)));
    const auto h_all = all.values.rbegin()->second;
    const auto h_excl = excl.values.rbegin()->second;
    const auto divergence = h_all - h_excl;
    f.evidence = {{"divergence", static_cast<double>(divergence)},
                  {"h_all", static_cast<double>(h_all)},
                  {"h_excluding_journal", static_cast<double>(h_excl)},
                  {"year", static_cast<double>(years->last)},
                  {"threshold", static_cast<double>(config.h_divergence_flag)}};
    f.triggered = divergence >= config.h_divergence_flag;
    return f;
}

inline Finding association_finding(const CollectionChain& chain, const Corpus& corpus, const AuthorId& focal,
                                   const ScreeningConfig& config) {
    Finding f{finding_names::kIssueTypeAssociation};
    f.evidence = {{"collection_e", static_cast<double>(chain.coll_e.size())},
                  {"min_papers", static_cast<double>(config.chi_square_min_papers)},
                  {"alpha", config.alpha}};
    if (chain.coll_e.size() < config.chi_square_min_papers) {
        f.skipped = true;
        f.note = "too few Collection E papers for a chi-square test";
        return f;
    }
    const auto table = build_contingency(chain, corpus, focal, config.bins);
    try {
        const auto result = chi_square(table, config.alpha);
        f.evidence.insert(f.evidence.begin(), {{"statistic", result.statistic},
                                               {"df", static_cast<double>(result.df)},
                                               {"p_value", result.p_value}});
        f.triggered = result.significant;
        if (!result.warnings.empty()) f.note = "some expected counts are below 5";
    } catch (const DegenerateTableError& e) {
        f.skipped = true;
        f.note = e.what();
    }
    return f;
}

} // namespace detail

/// Screens one editor at one journal. Findings: post-appointment share of
/// in-journal citations, in-journal share of all citations, final-year
/// h-index divergence, issue-type association and citation overdose.
/// With an empty Collection B nothing triggers.
inline ScreeningReport screen_editor(const Corpus& corpus, const AuthorId& focal, std::string_view journal_id,
                                     const EditorTenure& tenure, const ScreeningConfig& config = {}) {
    config.validate();
    const auto chain = run_pipeline(corpus, focal, journal_id, tenure);

    ScreeningReport report;
    report.subject_kind = "editor";
    report.author = focal;
    report.journal_id = std::string(journal_id);
    report.config = config;

    report.findings.push_back(detail::post_appointment_finding(chain, config));
    report.findings.push_back(detail::in_journal_finding(chain, config));
    report.findings.push_back(detail::divergence_finding(corpus, focal, journal_id, config));
    report.findings.push_back(detail::association_finding(chain, corpus, focal, config));

    Finding overdose{finding_names::kCitationOverdose};
    overdose.pub_ids = detect_overdose(chain, corpus, focal, config.overdose_threshold);
    overdose.evidence = {{"count", static_cast<double>(overdose.pub_ids.size())},
                         {"threshold", static_cast<double>(config.overdose_threshold)}};
    overdose.triggered = !overdose.pub_ids.empty();
    report.findings.push_back(std::move(overdose));

    if (chain.coll_b.empty()) {
        for (auto& f : report.findings) {
            if (f.triggered) f.note = "not triggered: no in-journal citations after the appointment";
            f.triggered = false;
        }
    }
    report.verdict = derive_verdict(report.findings);
    return report;
}

inline ScreeningReport screen_editor(const Corpus& corpus, const AuthorId& focal, std::string_view journal_id,
                                     const ScreeningConfig& config = {}) {
    const auto tenure = corpus.tenure_for(focal, journal_id);
    if (!tenure) {
        throw ConfigError("no editorial tenure for '" + focal.key() + "' at journal '" + std::string(journal_id) + "'");
    }
    return screen_editor(corpus, focal, journal_id, *tenure, config);
}

/// Screens a journal by its self-citation rate over `window`.
inline ScreeningReport screen_journal(const Corpus& corpus, std::string_view journal_id, YearRange window = {},
                                      const ScreeningConfig& config = {}) {
    config.validate();
    if (!corpus.has_journal(journal_id)) throw LookupError("unknown journal '" + std::string(journal_id) + "'");

    ScreeningReport report;
    report.subject_kind = "journal";
    report.journal_id = std::string(journal_id);
    report.config = config;

    const auto counts = journal_citation_counts(corpus, journal_id, window);
    Finding warn{finding_names::kJournalRateWarn};
    Finding suspend{finding_names::kJournalRateSuspend};
    const std::vector<std::pair<std::string, double>> base = {{"internal", static_cast<double>(counts.internal)},
                                                              {"total", static_cast<double>(counts.total)}};
    warn.evidence = base;
    suspend.evidence = base;
    warn.evidence.emplace_back("threshold", config.journal_rate_warn);
    suspend.evidence.emplace_back("threshold", config.journal_rate_suspend);
    if (counts.total == 0) {
        warn.note = suspend.note = "no data: the journal received no citations in the window";
    } else {
        const double rate = static_cast<double>(counts.internal) / static_cast<double>(counts.total);
        warn.evidence.insert(warn.evidence.begin(), {"rate", rate});
        suspend.evidence.insert(suspend.evidence.begin(), {"rate", rate});
        warn.triggered = rate >= config.journal_rate_warn;
        suspend.triggered = rate > config.journal_rate_suspend;
    }
    report.findings.push_back(std::move(warn));
    report.findings.push_back(std::move(suspend));
    report.verdict = derive_verdict(report.findings);
    return report;
}

} // namespace citescreen

#endif // CITESCREEN_SCREEN_HPP
