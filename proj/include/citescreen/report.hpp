#ifndef CITESCREEN_REPORT_HPP
#define CITESCREEN_REPORT_HPP

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "citescreen/corpus.hpp"
#include "citescreen/io.hpp"
#include "citescreen/metrics.hpp"
#include "citescreen/pipeline.hpp"
#include "citescreen/screen.hpp"
#include "citescreen/stats.hpp"
#include "citescreen/synth.hpp"

namespace citescreen {

using ojson = nlohmann::ordered_json;

namespace detail {

inline ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

inline std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace detail

inline ojson to_json(const ValidationReport& report, const Corpus& corpus) {
    ojson j;
    j["publications"] = corpus.size();
    j["journals"] = corpus.journals().size();
    j["dangling_references"] = corpus.dangling().size();
    j["aliases"] = corpus.aliases().size();
    j["tenures"] = corpus.tenures().size();
    j["valid"] = report.ok();
    auto& list = j["violations"] = ojson::array();
    for (const auto& v : report.violations) {
        list.push_back({{"kind", std::string(to_string(v.kind))}, {"subject", v.subject}, {"detail", v.detail}});
    }
    return j;
}

inline ojson to_json(const CollectionChain& chain) {
    ojson j;
    j["focal"] = chain.focal.key();
    j["journal_id"] = chain.journal_id;
    j["tenure_start"] = to_string(chain.tenure_start);
    j["tenure_end"] = chain.tenure_end ? ojson(to_string(*chain.tenure_end)) : ojson(nullptr);
    j["counts"] = {{"items_found", chain.items_found},
                   {"items_in_journal", chain.items_in_journal},
                   {"aml", chain.aml.size()},
                   {"collection_a", chain.coll_a.size()},
                   {"collection_a_in_journal", chain.coll_a_in_journal},
                   {"collection_b", chain.coll_b.size()},
                   {"collection_c", chain.coll_c.size()},
                   {"collection_d", chain.coll_d.size()},
                   {"collection_e", chain.coll_e.size()}};
    j["post_appointment_share"] = detail::optional_number(post_appointment_share(chain));
    j["aml"] = chain.aml;
    j["collection_c"] = chain.coll_c;
    j["collection_d"] = chain.coll_d;
    j["collection_e"] = chain.coll_e;
    auto& cls = j["classifications"] = ojson::object();
    for (const auto& [pub, c] : chain.classes) cls[pub] = std::string(to_string(c));
    return j;
}

/// Step-by-author table: one row per step, one column per chain.
inline void write_chain_table(std::ostream& out, const std::vector<CollectionChain>& chains) {
    const std::string journal = chains.empty() ? std::string("journal") : chains.front().journal_id;
    out << "step";
    for (const auto& c : chains) out << ',' << io::csv_escape(c.focal.key());
    out << '\n';
    auto row = [&](const std::string& label, auto value) {
        out << io::csv_escape(label);
        for (const auto& c : chains) out << ',' << value(c);
        out << '\n';
    };
    row("Step 1 items found", [](const CollectionChain& c) { return c.items_found; });
    row("from which within " + journal, [](const CollectionChain& c) { return c.items_in_journal; });
    row("Step 2 author's main list (AML)", [](const CollectionChain& c) { return c.aml.size(); });
    row("Step 3 total received citations (Collection A)", [](const CollectionChain& c) { return c.coll_a.size(); });
    row("from which within " + journal, [](const CollectionChain& c) { return c.coll_a_in_journal; });
    row("Step 4 Collection A from " + journal + " after editorial appointment (Collection B)",
        [](const CollectionChain& c) { return c.coll_b.size(); });
    row("Step 5 Collection B without duplicates (Collection C)", [](const CollectionChain& c) { return c.coll_c.size(); });
    row("Step 6 Collection C without self-citations (Collection D)", [](const CollectionChain& c) { return c.coll_d.size(); });
    row("Step 7 Collection D without semi-self-citations (Collection E)",
        [](const CollectionChain& c) { return c.coll_e.size(); });
}

/// `year,all,excluding`
inline void write_hindex_csv(std::ostream& out, const HIndexSeries& all, const HIndexSeries& excluding) {
    out << "year,all,excluding\n";
    for (const auto& [year, h] : all.values) out << year << ',' << h << ',' << excluding.values.at(year) << '\n';
}

/// `year,in_journal,out_journal`
inline void write_series_csv(std::ostream& out, const CitationSeries& series) {
    out << "year,in_journal,out_journal\n";
    for (const auto& [year, c] : series.per_year) out << year << ',' << c.in_journal << ',' << c.out_journal << '\n';
}

inline ojson to_json(const HIndexSeries& all, const HIndexSeries& excluding) {
    ojson j;
    j["focal"] = all.focal.key();
    j["excluded_journal"] = excluding.variant.excluded_journal ? ojson(*excluding.variant.excluded_journal) : ojson(nullptr);
    auto& rows = j["series"] = ojson::array();
    for (const auto& [year, h] : all.values) rows.push_back({{"year", year}, {"all", h}, {"excluding", excluding.values.at(year)}});
    j["journal_induced_years"] = journal_induced_years(all, excluding);
    return j;
}

inline ojson to_json(const CitationSeries& series) {
    ojson j;
    j["focal"] = series.focal.key();
    j["journal_id"] = series.journal_id;
    auto& rows = j["series"] = ojson::array();
    for (const auto& [year, c] : series.per_year) {
        rows.push_back({{"year", year}, {"in_journal", c.in_journal}, {"out_journal", c.out_journal}});
    }
    j["total"] = series.total();
    j["in_journal_share"] =
        series.total() ? ojson(static_cast<double>(series.total_in_journal()) / static_cast<double>(series.total())) : ojson(nullptr);
    return j;
}

inline ojson to_json(const ChiSquareResult& r) {
    ojson j;
    j["statistic"] = r.statistic;
    j["df"] = r.df;
    j["p_value"] = r.p_value;
    j["significant"] = r.significant;
    j["warnings"] = r.warnings;
    return j;
}

inline ojson to_json(const ContingencyTable& t) {
    ojson j;
    j["rows"] = t.row_labels();
    j["columns"] = t.col_labels();
    auto& cells = j["observed"] = ojson::array();
    for (std::size_t r = 0; r < t.rows(); ++r) {
        auto row = ojson::array();
        for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(t.at(r, c));
        cells.push_back(std::move(row));
    }
    return j;
}

inline ojson to_json(const ScreeningConfig& c) {
    return {{"overdose_threshold", c.overdose_threshold},
            {"post_appointment_share_flag", c.post_appointment_share_flag},
            {"in_journal_share_flag", c.in_journal_share_flag},
            {"h_divergence_flag", c.h_divergence_flag},
            {"journal_rate_warn", c.journal_rate_warn},
            {"journal_rate_suspend", c.journal_rate_suspend},
            {"alpha", c.alpha},
            {"chi_square_min_papers", c.chi_square_min_papers},
            {"reference_bins", c.bins.lower_edges}};
}

inline ojson to_json(const ScreeningReport& r) {
    ojson j;
    j["subject"] = {{"kind", r.subject_kind},
                    {"author", r.author ? ojson(r.author->key()) : ojson(nullptr)},
                    {"journal_id", r.journal_id}};
    j["config"] = to_json(r.config);
    auto& findings = j["findings"] = ojson::array();
    for (const auto& f : r.findings) {
        ojson evidence = ojson::object();
        for (const auto& [k, v] : f.evidence) evidence[k] = v;
        findings.push_back({{"name", f.name},
                            {"triggered", f.triggered},
                            {"skipped", f.skipped},
                            {"evidence", evidence},
                            {"pub_ids", f.pub_ids},
                            {"note", f.note}});
    }
    j["verdict"] = std::string(to_string(r.verdict));
    return j;
}

inline std::string to_text(const ScreeningReport& r) {
    std::ostringstream out;
    out << "Citation screening report\n";
    if (r.author) out << "  subject: editor " << r.author->key() << " at journal " << r.journal_id << '\n';
    else out << "  subject: journal " << r.journal_id << '\n';
    for (const auto& f : r.findings) {
        out << "  [" << (f.triggered ? 'x' : f.skipped ? '-' : ' ') << "] " << f.name;
        std::string sep = ": ";
        for (const auto& [k, v] : f.evidence) {
            out << sep << k << '=' << (v == static_cast<double>(static_cast<long long>(v)) ? std::to_string(static_cast<long long>(v))
                                                                                          : detail::fixed(v, 6));
            sep = ", ";
        }
        out << '\n';
        if (!f.pub_ids.empty()) {
            out << "      papers:";
            for (const auto& p : f.pub_ids) out << ' ' << p;
            out << '\n';
        }
        if (!f.note.empty()) out << "      note: " << f.note << '\n';
    }
    out << "  verdict: " << to_string(r.verdict);
    switch (r.verdict) {
    case Verdict::Neutral: out << " (no pattern of potentially coercive citation)"; break;
    case Verdict::Elevated: out << " (one signal of potentially coercive citation; review advised)"; break;
    case Verdict::Flagged: out << " (converging signals of potentially coercive citation; human review required)"; break;
    }
    out << '\n';
    return out.str();
}

inline ojson to_json(const RecoveryReport& r) {
    ojson j;
    j["injected_papers"] = r.injected_papers;
    j["collection_e"] = r.collection_e;
    j["recovered"] = r.recovered;
    j["precision"] = detail::optional_number(r.precision);
    j["recall"] = detail::optional_number(r.recall);
    j["missed"] = r.missed;
    j["organic"] = r.organic;
    return j;
}

} // namespace citescreen

#endif // CITESCREEN_REPORT_HPP
