#ifndef CITESCREEN_CLI_HPP
#define CITESCREEN_CLI_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citescreen/citescreen.hpp"

namespace citescreen::cli {

namespace fs = std::filesystem;

enum class OutputFormat { Json, Csv, Text };

struct GlobalOptions {
    std::string corpus;
    std::string aliases;
    std::string tenures;
    std::string out_dir;
    OutputFormat format = OutputFormat::Json;
    int verbosity = 0;
    bool force = false;
};

/// Exit codes: 0 success or neutral, 1 usage or data error, 2 elevated, 3 flagged.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;

namespace detail {

class Context {
public:
    Context(const GlobalOptions& opts, std::ostream& out, std::ostream& err) : opts_(opts), out_(out), err_(err) {}

    const GlobalOptions& opts() const { return opts_; }
    std::ostream& out() { return out_; }

    void log(int level, const std::string& msg) {
        if (opts_.verbosity >= level) err_ << "citescreen: " << msg << '\n';
    }

    const Corpus& corpus() {
        if (corpus_) return *corpus_;
        if (opts_.corpus.empty()) throw ConfigError("--corpus is required for this subcommand");
        AliasMap aliases;
        if (!opts_.aliases.empty()) aliases = load_aliases(opts_.aliases);
        std::vector<EditorTenure> tenures;
        if (!opts_.tenures.empty()) tenures = load_tenures(opts_.tenures, aliases);
        corpus_ = load_corpus(opts_.corpus, format_for(opts_.corpus), std::move(aliases), std::move(tenures));
        log(1, "loaded " + std::to_string(corpus_->size()) + " publications, " +
                   std::to_string(corpus_->dangling().size()) + " dangling references");
        return *corpus_;
    }

    AuthorId author(const std::string& raw) { return normalize_author(raw, corpus().aliases()); }

    YearRange years(std::optional<int> from, std::optional<int> to) {
        const auto span = corpus_years(corpus());
        YearRange r{from.value_or(span ? span->first : kMinYear), to.value_or(span ? span->last : kMinYear)};
        if (r.empty()) throw ConfigError("empty year range");
        return r;
    }

    /// Writes `content` to <out_dir>/<name> when an output directory is set.
    /// Refuses to replace an existing file unless --force was given.
    bool write_file(const std::string& name, const std::string& content) {
        if (opts_.out_dir.empty()) return false;
        const fs::path dir(opts_.out_dir);
        fs::create_directories(dir);
        const fs::path path = dir / name;
        if (fs::exists(path) && !opts_.force) {
            throw ConfigError("refusing to overwrite '" + path.string() + "' (use --force)");
        }
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write '" + path.string() + "'");
        f << content;
        log(1, "wrote " + path.string());
        return true;
    }

private:
    const GlobalOptions& opts_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<Corpus> corpus_;
};

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

inline std::vector<std::uint64_t> parse_cells(const std::string& s) {
    std::vector<std::uint64_t> out;
    for (auto part : citescreen::detail::split_any(s, ",")) {
        const auto t = citescreen::detail::trim(part);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
            throw InputError("--cells expects non-negative integers, got '" + std::string(t) + "'");
        }
        out.push_back(v);
    }
    return out;
}

inline PipelineOptions pipeline_options(const std::string& scope) {
    PipelineOptions o;
    o.semi_self_scope = scope == "any" ? SemiSelfScope::AnyCoauthor : SemiSelfScope::CitedWorks;
    return o;
}

} // namespace detail

/// Parses argv and runs one subcommand. Data goes to `out`, diagnostics to `err`.
inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"citescreen: screens editors and journals for patterns of potentially coercive citation"};
    app.name("citescreen");
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.set_config("--config", "", "INI/TOML file with default option values")->envname("CITESCREEN_CONFIG");
    app.add_option("--corpus", g.corpus, "Corpus file (.jsonl or .csv)");
    app.add_option("--aliases", g.aliases, "aliases.csv (raw_name,canonical_key)");
    app.add_option("--tenures", g.tenures, "tenures.csv");
    app.add_option("--out", g.out_dir, "Output directory for report files");
    const std::map<std::string, OutputFormat> formats{
        {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}, {"text", OutputFormat::Text}};
    app.add_option("--format", g.format, "Output format: json, csv or text")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_flag("-v,--verbose", g.verbosity, "Increase diagnostic output");
    app.add_flag("--force", g.force, "Overwrite existing output files");

    // ingest
    bool strict = false;
    auto* ingest = app.add_subcommand("ingest", "Load, validate and summarize a corpus");
    ingest->add_flag("--strict", strict, "Exit 1 when the corpus has invariant violations");

    // pipeline
    std::vector<std::string> authors;
    std::string journal;
    std::string scope = "cited";
    auto* pipeline = app.add_subcommand("pipeline", "Build the author main list and Collections A to E");
    pipeline->add_option("--author", authors, "Focal author (repeatable)")->required();
    pipeline->add_option("--journal", journal, "Journal of the editorial appointment")->required();
    pipeline->add_option("--semi-self-scope", scope, "cited (co-authors of the cited works) or any")
        ->check(CLI::IsMember({"cited", "any"}));

    // hindex / series
    std::string author;
    std::optional<int> from;
    std::optional<int> to;
    auto* hindex = app.add_subcommand("hindex", "h-index per year, with and without one journal's citations");
    hindex->add_option("--author", author, "Focal author")->required();
    hindex->add_option("--journal", journal, "Journal whose citations are excluded")->required();
    hindex->add_option("--from", from, "First year (default: earliest corpus year)");
    hindex->add_option("--to", to, "Last year (default: latest corpus year)");

    auto* series = app.add_subcommand("series", "Citations per year, in-journal versus elsewhere");
    series->add_option("--author", author, "Focal author")->required();
    series->add_option("--journal", journal, "Journal to split on")->required();
    series->add_option("--from", from, "First year");
    series->add_option("--to", to, "Last year");

    // chisq
    std::string cells;
    std::size_t rows = 2;
    double alpha = 0.05;
    std::string bins;
    auto* chisq = app.add_subcommand("chisq", "Pearson chi-square test of independence");
    auto* cells_opt = chisq->add_option("--cells", cells, "Row-major observed counts, comma separated");
    chisq->add_option("--rows", rows, "Number of rows of --cells")->check(CLI::PositiveNumber);
    chisq->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    auto* chisq_author = chisq->add_option("--author", author, "Build the table from the pipeline for this author");
    chisq->add_option("--journal", journal, "Journal of the appointment (with --author)");
    chisq->add_option("--bins", bins, "Override reference-count bin lower edges, e.g. 1,2,3");
    cells_opt->excludes(chisq_author);

    // screen
    ScreeningConfig sc;
    auto* screen = app.add_subcommand("screen", "Screen an editor at a journal");
    screen->add_option("--author", author, "Editor")->required();
    screen->add_option("--journal", journal, "Journal")->required();
    screen->add_option("--overdose-threshold", sc.overdose_threshold, "Focal items in one reference list");
    screen->add_option("--post-appointment-share", sc.post_appointment_share_flag, "Flag level for the post-appointment share");
    screen->add_option("--in-journal-share", sc.in_journal_share_flag, "Flag level for the in-journal share");
    screen->add_option("--h-divergence", sc.h_divergence_flag, "Flag level for the final-year h-index divergence");
    screen->add_option("--alpha", sc.alpha, "Significance level");
    screen->add_option("--chi-square-min-papers", sc.chi_square_min_papers, "Minimum Collection E size for the test");

    auto* screen_j = app.add_subcommand("screen-journal", "Screen a journal by its self-citation rate");
    screen_j->add_option("--journal", journal, "Journal")->required();
    screen_j->add_option("--from", from, "First citing year of the window");
    screen_j->add_option("--to", to, "Last citing year of the window");
    screen_j->add_option("--warn", sc.journal_rate_warn, "Warning rate");
    screen_j->add_option("--suspend", sc.journal_rate_suspend, "Suspension rate");

    // synth
    std::uint64_t seed = 1;
    std::string synth_config;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
    auto* seed_opt = synth->add_option("--seed", seed, "Random seed");
    synth->add_option("--config", synth_config, "JSON generator configuration")->check(CLI::ExistingFile);

    if (argc <= 1) {
        err << app.help();
        return kExitError;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitError;
    }

    detail::Context ctx(g, out, err);
    const auto fmt = g.format;
    try {
        if (*ingest) {
            const auto& corpus = ctx.corpus();
            const auto report = validate_corpus(corpus);
            const auto j = to_json(report, corpus);
            if (fmt == OutputFormat::Text) {
                out << "publications: " << corpus.size() << "\njournals: " << corpus.journals().size()
                    << "\ndangling references: " << corpus.dangling().size() << "\nviolations: " << report.violations.size()
                    << '\n';
                for (const auto& v : report.violations) out << "  " << to_string(v.kind) << ' ' << v.subject << ": " << v.detail << '\n';
            } else {
                out << detail::dump(j);
            }
            ctx.write_file("ingest.json", detail::dump(j));
            return strict && !report.ok() ? kExitError : kExitOk;
        }
        if (*pipeline) {
            const auto& corpus = ctx.corpus();
            std::vector<CollectionChain> chains;
            for (const auto& a : authors) chains.push_back(run_pipeline(corpus, ctx.author(a), journal, detail::pipeline_options(scope)));
            ojson j;
            j["journal_id"] = journal;
            auto& list = j["chains"] = ojson::array();
            for (const auto& c : chains) list.push_back(to_json(c));
            std::ostringstream table;
            write_chain_table(table, chains);
            if (fmt == OutputFormat::Json) out << detail::dump(j);
            else out << table.str();
            ctx.write_file("chain.json", detail::dump(j));
            ctx.write_file("table1.csv", table.str());
            return kExitOk;
        }
        if (*hindex) {
            const auto& corpus = ctx.corpus();
            const auto focal = ctx.author(author);
            const auto years = ctx.years(from, to);
            const auto all = h_index_series(corpus, focal, years, HIndexVariant::all());
            const auto excl = h_index_series(corpus, focal, years, HIndexVariant::excluding(journal));
            std::ostringstream csv;
            write_hindex_csv(csv, all, excl);
            std::ostringstream plot;
            write_series_csv(plot, citation_series(corpus, focal, journal, years));
            if (fmt == OutputFormat::Json) out << detail::dump(to_json(all, excl));
            else out << csv.str();
            ctx.write_file("hindex.csv", csv.str());
            ctx.write_file("citations.csv", plot.str());
            return kExitOk;
        }
        if (*series) {
            const auto& corpus = ctx.corpus();
            const auto s = citation_series(corpus, ctx.author(author), journal, ctx.years(from, to));
            std::ostringstream csv;
            write_series_csv(csv, s);
            if (fmt == OutputFormat::Json) out << detail::dump(to_json(s));
            else out << csv.str();
            ctx.write_file("citations.csv", csv.str());
            return kExitOk;
        }
        if (*chisq) {
            ContingencyTable table;
            if (!cells.empty()) {
                auto values = detail::parse_cells(cells);
                if (values.size() % rows != 0) {
                    throw InputError(std::to_string(values.size()) + " cells cannot form " + std::to_string(rows) + " rows");
                }
                const auto cols = values.size() / rows;
                table = ContingencyTable(rows, cols, std::move(values));
            } else if (!author.empty()) {
                if (journal.empty()) throw ConfigError("--journal is required with --author");
                const auto& corpus = ctx.corpus();
                const auto focal = ctx.author(author);
                ReferenceBins rb;
                if (!bins.empty()) rb.lower_edges = detail::parse_cells(bins);
                table = build_contingency(run_pipeline(corpus, focal, journal), corpus, focal, rb);
            } else {
                throw ConfigError("chisq needs --cells or --author/--journal");
            }
            const auto result = chi_square(table, alpha);
            for (const auto& w : result.warnings) ctx.log(0, "warning: " + w);
            const auto j = to_json(result);
            if (fmt == OutputFormat::Text) {
                out << "statistic " << result.statistic << "\ndf " << result.df << "\np_value " << result.p_value
                    << "\nsignificant " << (result.significant ? "yes" : "no") << '\n';
            } else {
                out << detail::dump(j);
            }
            ctx.write_file("chisq.json", detail::dump(j));
            return kExitOk;
        }
        if (*screen) {
            const auto& corpus = ctx.corpus();
            const auto report = screen_editor(corpus, ctx.author(author), journal, sc);
            const auto j = to_json(report);
            if (fmt == OutputFormat::Text) out << to_text(report);
            else out << detail::dump(j);
            ctx.write_file("screen.json", detail::dump(j));
            ctx.write_file("screen.txt", to_text(report));
            return exit_code(report.verdict);
        }
        if (*screen_j) {
            const auto& corpus = ctx.corpus();
            const YearRange window{from.value_or(kMinYear), to.value_or(kMaxYear)};
            if (window.empty()) throw ConfigError("empty year range");
            const auto report = screen_journal(corpus, journal, window, sc);
            const auto j = to_json(report);
            if (fmt == OutputFormat::Text) out << to_text(report);
            else out << detail::dump(j);
            ctx.write_file("screen-journal.json", detail::dump(j));
            ctx.write_file("screen-journal.txt", to_text(report));
            return exit_code(report.verdict);
        }
        if (*synth) {
            SynthConfig cfg;
            if (!synth_config.empty()) {
                std::ifstream f(synth_config);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(f);
                } catch (const nlohmann::json::parse_error& e) {
                    throw ConfigError(std::string("invalid synth config: ") + e.what());
                }
                cfg = synth_config_from_json(j);
            }
            if (seed_opt->count() > 0) cfg.seed = seed;
            if (g.out_dir.empty()) throw ConfigError("synth needs --out <directory>");
            const auto result = generate(cfg);
            std::ostringstream corpus_text;
            write_jsonl(corpus_text, result.corpus);
            std::ostringstream tenures_text;
            write_tenures(tenures_text, result.corpus.tenures());
            ctx.write_file("corpus.jsonl", corpus_text.str());
            ctx.write_file("truth.json", detail::dump(truth_to_json(result.truth)));
            ctx.write_file("tenures.csv", tenures_text.str());
            ojson summary{{"seed", cfg.seed},
                          {"publications", result.corpus.size()},
                          {"injected_events", result.truth.injected.size()},
                          {"injected_papers", result.truth.injected_citing().size()}};
            out << detail::dump(summary);
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "citescreen: error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "citescreen: error: " << e.what() << '\n';
        return kExitError;
    }
    err << app.help();
    return kExitError;
}

} // namespace citescreen::cli

#endif // CITESCREEN_CLI_HPP
