#ifndef CITESCREEN_SYNTH_HPP
#define CITESCREEN_SYNTH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "citescreen/corpus.hpp"
#include "citescreen/error.hpp"
#include "citescreen/pipeline.hpp"

namespace citescreen {

/// Random source of the generator. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; the derived draws below are
/// defined here rather than taken from <random> distributions, whose
/// algorithms are implementation-defined.
class SynthRng {
public:
    explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n) by rejection of the low 2^64 mod n values.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t x = next();
        while (x < threshold) x = next();
        return x % n;
    }

    bool bernoulli(double p) { return unit() < p; }

    /// Knuth's multiplication method.
    std::uint64_t poisson(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = unit();
        while (prod > limit) {
            ++k;
            prod *= unit();
        }
        return k;
    }

private:
    std::mt19937_64 engine_;
};

struct CoercionConfig {
    AuthorId editor = AuthorId::from_key("editor");
    std::string journal_id = "J1";
    YearMonth tenure_start{2005, 1};
    double insertion_probability = 1.0;
    std::uint32_t items_per_insertion = 1;
    double special_issue_boost = 1.0;
    std::uint32_t editor_papers_per_year = 2;
    bool editor_organic_citations = true; ///< whether ordinary references may pick the editor's works
};

struct SynthConfig {
    std::uint64_t seed = 1;
    std::uint32_t n_authors = 200;
    std::uint32_t n_journals = 5;
    std::uint32_t n_years = 10;
    int first_year = 2000;
    std::uint32_t papers_per_year = 100;
    double mean_refs = 8.0;
    std::uint32_t max_authors_per_paper = 3;
    double special_issue_fraction = 0.2;
    bool preferential = false;
    std::uint64_t overdose_threshold = 6;
    std::optional<CoercionConfig> coercion;

    void validate() const {
        if (n_authors == 0 || n_journals == 0 || n_years == 0) throw ConfigError("n_authors, n_journals and n_years must be >= 1");
        if (max_authors_per_paper == 0 || max_authors_per_paper > n_authors) {
            throw ConfigError("max_authors_per_paper must be in [1, n_authors]");
        }
        if (!(mean_refs >= 0.0 && mean_refs <= 500.0)) throw ConfigError("mean_refs must be in [0, 500]");
        if (!(special_issue_fraction >= 0.0 && special_issue_fraction <= 1.0)) {
            throw ConfigError("special_issue_fraction must be in [0, 1]");
        }
        if (first_year < kMinYear || first_year + static_cast<int>(n_years) - 1 > kMaxYear) {
            throw ConfigError("generated years must stay within [1900, 2100]");
        }
        if (coercion) {
            const auto& c = *coercion;
            if (c.editor.empty()) throw ConfigError("coercion editor must be set");
            if (c.editor.key().rfind("author", 0) == 0) throw ConfigError("coercion editor must not collide with the author pool");
            if (!(c.insertion_probability >= 0.0 && c.insertion_probability <= 1.0)) {
                throw ConfigError("insertion_probability must be in [0, 1]");
            }
            if (c.items_per_insertion < 1) throw ConfigError("items_per_insertion must be >= 1");
            if (!(c.special_issue_boost >= 1.0)) throw ConfigError("special_issue_boost must be >= 1");
            if (c.tenure_start.month < 1 || c.tenure_start.month > 12) throw ConfigError("tenure_start month must be in 1..12");
        }
    }
};

struct GroundTruth {
    std::vector<std::pair<PubId, PubId>> injected;  ///< (citing, cited)
    std::map<int, std::size_t> injected_per_year;   ///< events by citing year
    std::vector<PubId> expected_overdose;           ///< injected citing papers listing >= threshold editor works

    std::set<PubId> injected_citing() const {
        std::set<PubId> out;
        for (const auto& [citing, cited] : injected) out.insert(citing);
        return out;
    }
};

struct SynthOutput {
    Corpus corpus;
    GroundTruth truth;
};

namespace detail {

inline std::string padded_id(char prefix, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%07zu", prefix, n);
    return buf;
}

} // namespace detail

/// Generates a corpus year by year. Each year has papers_per_year ordinary
/// papers (plus the editor's solo papers when coercion is configured) spread
/// evenly over the months. Every paper draws 1..max_authors distinct pool
/// authors, a uniform journal, a special-issue flag, and a Poisson number of
/// distinct references among papers dated strictly earlier, uniform or
/// weighted by 1 + prior citations. In the coercion journal from the tenure
/// start on, a paper not written by the editor receives, with probability
/// p (times the boost in special issues, capped at 1), k distinct references
/// to the editor's earlier works before its ordinary references are drawn.
inline SynthOutput generate(const SynthConfig& config) {
    config.validate();
    SynthRng rng(config.seed);
    const auto& coercion = config.coercion;
    const std::uint32_t editor_per_year = coercion ? coercion->editor_papers_per_year : 0;

    std::vector<PublicationRecord> records;
    records.reserve(static_cast<std::size_t>(config.n_years) * (config.papers_per_year + editor_per_year));
    std::vector<std::uint32_t> editor_works;
    std::vector<std::uint32_t> cited_targets; // one entry per citation, for preferential draws
    GroundTruth truth;

    for (std::uint32_t yi = 0; yi < config.n_years; ++yi) {
        const int year = config.first_year + static_cast<int>(yi);
        const std::uint64_t total = config.papers_per_year + editor_per_year;
        std::size_t month_start = records.size();
        int current_month = 0;
        for (std::uint64_t slot = 0; slot < total; ++slot) {
            const int month = 1 + static_cast<int>(slot * 12 / total);
            if (month != current_month) {
                current_month = month;
                month_start = records.size();
            }
            const bool editor_slot = editor_per_year > 0 && (slot + 1) * editor_per_year / total > slot * editor_per_year / total;

            PublicationRecord rec;
            rec.pub_id = detail::padded_id('p', records.size());
            rec.title = "Synthetic paper " + rec.pub_id;
            rec.pub_date = {year, month};
            if (editor_slot) {
                rec.authors.push_back(coercion->editor);
            } else {
                const auto n_auth = 1 + rng.below(config.max_authors_per_paper);
                std::unordered_set<std::uint64_t> picked;
                while (rec.authors.size() < n_auth) {
                    const auto a = rng.below(config.n_authors);
                    if (picked.insert(a).second) rec.authors.push_back(AuthorId::from_key("author" + std::to_string(a)));
                }
            }
            rec.journal_id = "J" + std::to_string(1 + rng.below(config.n_journals));
            rec.issue_type = rng.bernoulli(config.special_issue_fraction) ? IssueType::Special : IssueType::Regular;
            rec.issue_id = rec.journal_id + "-" + std::to_string(year) + "-" +
                           (rec.issue_type == IssueType::Special ? std::string("S") : std::to_string(1 + (month - 1) / 3));

            const std::size_t prior = month_start;
            std::unordered_set<std::uint32_t> chosen;
            std::vector<std::uint32_t> refs;

            if (coercion && !editor_slot && rec.journal_id == coercion->journal_id && rec.pub_date >= coercion->tenure_start) {
                double p = coercion->insertion_probability;
                if (rec.issue_type == IssueType::Special) p = std::min(1.0, p * coercion->special_issue_boost);
                if (rng.bernoulli(p)) {
                    std::vector<std::uint32_t> eligible;
                    for (auto w : editor_works) {
                        if (w < prior) eligible.push_back(w);
                    }
                    if (eligible.size() < coercion->items_per_insertion) {
                        throw GenerationError("editor has " + std::to_string(eligible.size()) + " prior works before " +
                                              to_string(rec.pub_date) + ", fewer than items_per_insertion = " +
                                              std::to_string(coercion->items_per_insertion));
                    }
                    for (std::uint32_t k = 0; k < coercion->items_per_insertion; ++k) {
                        const auto j = k + rng.below(eligible.size() - k);
                        std::swap(eligible[k], eligible[j]);
                        chosen.insert(eligible[k]);
                        refs.push_back(eligible[k]);
                        truth.injected.emplace_back(rec.pub_id, records[eligible[k]].pub_id);
                        ++truth.injected_per_year[year];
                    }
                }
            }

            const bool skip_editor = coercion && !coercion->editor_organic_citations;
            std::unordered_set<std::uint32_t> editor_set;
            if (skip_editor) editor_set.insert(editor_works.begin(), editor_works.end());
            const std::size_t available = prior - (skip_editor ? static_cast<std::size_t>(std::count_if(
                                                                      editor_works.begin(), editor_works.end(),
                                                                      [&](std::uint32_t w) { return w < prior; }))
                                                                : 0);
            const auto want = std::min<std::uint64_t>(rng.poisson(config.mean_refs), available);
            std::size_t attempts = 0;
            std::size_t organic = 0;
            while (organic < want && attempts < 20 * want + 100) {
                ++attempts;
                std::uint32_t target;
                if (config.preferential && !cited_targets.empty() &&
                    rng.below(prior + cited_targets.size()) >= prior) {
                    target = cited_targets[rng.below(cited_targets.size())];
                    if (target >= prior) continue;
                } else {
                    target = static_cast<std::uint32_t>(rng.below(prior));
                }
                if (skip_editor && editor_set.count(target)) continue;
                if (!chosen.insert(target).second) continue;
                refs.push_back(target);
                ++organic;
            }
            for (auto t : refs) {
                rec.references.push_back(records[t].pub_id);
                cited_targets.push_back(t);
            }
            if (editor_slot) editor_works.push_back(static_cast<std::uint32_t>(records.size()));
            records.push_back(std::move(rec));
        }
    }

    if (coercion) {
        std::unordered_set<std::string> editor_ids;
        for (auto w : editor_works) editor_ids.insert(records[w].pub_id);
        for (const auto& citing : truth.injected_citing()) {
            const auto idx = std::stoul(citing.substr(1));
            std::size_t n = 0;
            for (const auto& r : records[idx].references) n += editor_ids.count(r);
            if (n >= config.overdose_threshold) truth.expected_overdose.push_back(citing);
        }
    }

    std::vector<EditorTenure> tenures;
    if (coercion) tenures.push_back({coercion->editor, coercion->journal_id, "editor", coercion->tenure_start, std::nullopt});
    return {Corpus::build(std::move(records), {}, std::move(tenures)), std::move(truth)};
}

struct RecoveryReport {
    std::size_t injected_papers = 0;
    std::size_t collection_e = 0;
    std::size_t recovered = 0; ///< |E ∩ injected citing papers|
    std::optional<double> precision;
    std::optional<double> recall;
    std::vector<PubId> missed;   ///< injected but not in E
    std::vector<PubId> organic;  ///< in E but not injected
};

/// Compares Collection E against the generator's injected citing papers.
inline RecoveryReport verify_recovery(const GroundTruth& truth, const CollectionChain& chain) {
    RecoveryReport out;
    const auto injected = truth.injected_citing();
    out.injected_papers = injected.size();
    out.collection_e = chain.coll_e.size();
    for (const auto& p : chain.coll_e) {
        if (injected.count(p)) ++out.recovered;
        else out.organic.push_back(p);
    }
    for (const auto& p : injected) {
        if (!chain.coll_e.count(p)) out.missed.push_back(p);
    }
    if (out.collection_e > 0) out.precision = static_cast<double>(out.recovered) / static_cast<double>(out.collection_e);
    if (out.injected_papers > 0) out.recall = static_cast<double>(out.recovered) / static_cast<double>(out.injected_papers);
    return out;
}

/// Overload matching the (corpus, truth, pipeline output) call shape; the
/// corpus must be the one the chain was computed on.
inline RecoveryReport verify_recovery(const Corpus& corpus, const GroundTruth& truth, const CollectionChain& chain) {
    for (const auto& [citing, cited] : truth.injected) {
        if (!corpus.find(citing) || !corpus.find(cited)) {
            throw ConsistencyError("injected event (" + citing + ", " + cited + ") is not in the corpus");
        }
    }
    return verify_recovery(truth, chain);
}

inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
    SynthConfig c;
    try {
        c.seed = j.value("seed", c.seed);
        c.n_authors = j.value("n_authors", c.n_authors);
        c.n_journals = j.value("n_journals", c.n_journals);
        c.n_years = j.value("n_years", c.n_years);
        c.first_year = j.value("first_year", c.first_year);
        c.papers_per_year = j.value("papers_per_year", c.papers_per_year);
        c.mean_refs = j.value("mean_refs", c.mean_refs);
        c.max_authors_per_paper = j.value("max_authors_per_paper", c.max_authors_per_paper);
        c.special_issue_fraction = j.value("special_issue_fraction", c.special_issue_fraction);
        c.preferential = j.value("preferential", c.preferential);
        c.overdose_threshold = j.value("overdose_threshold", c.overdose_threshold);
        if (auto it = j.find("coercion"); it != j.end() && !it->is_null()) {
            CoercionConfig k;
            k.editor = normalize_author(it->value("editor", k.editor.key()));
            k.journal_id = it->value("journal_id", k.journal_id);
            k.tenure_start.year = it->value("tenure_start_year", k.tenure_start.year);
            k.tenure_start.month = it->value("tenure_start_month", k.tenure_start.month);
            k.insertion_probability = it->value("insertion_probability", k.insertion_probability);
            k.items_per_insertion = it->value("items_per_insertion", k.items_per_insertion);
            k.special_issue_boost = it->value("special_issue_boost", k.special_issue_boost);
            k.editor_papers_per_year = it->value("editor_papers_per_year", k.editor_papers_per_year);
            k.editor_organic_citations = it->value("editor_organic_citations", k.editor_organic_citations);
            c.coercion = k;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid synth config: ") + e.what());
    }
    return c;
}

inline nlohmann::ordered_json truth_to_json(const GroundTruth& truth) {
    nlohmann::ordered_json j;
    auto& events = j["injected"] = nlohmann::ordered_json::array();
    for (const auto& [citing, cited] : truth.injected) events.push_back({{"citing", citing}, {"cited", cited}});
    auto& years = j["injected_per_year"] = nlohmann::ordered_json::object();
    for (const auto& [y, n] : truth.injected_per_year) years[std::to_string(y)] = n;
    j["expected_overdose"] = truth.expected_overdose;
    return j;
}

inline GroundTruth truth_from_json(const nlohmann::json& j) {
    GroundTruth t;
    try {
        for (const auto& e : j.at("injected")) t.injected.emplace_back(e.at("citing").get<std::string>(), e.at("cited").get<std::string>());
        for (const auto& [y, n] : j.at("injected_per_year").items()) t.injected_per_year[std::stoi(y)] = n.get<std::size_t>();
        t.expected_overdose = j.at("expected_overdose").get<std::vector<std::string>>();
    } catch (const std::exception& e) {
        throw InputError(std::string("invalid truth file: ") + e.what());
    }
    return t;
}

} // namespace citescreen

#endif // CITESCREEN_SYNTH_HPP
