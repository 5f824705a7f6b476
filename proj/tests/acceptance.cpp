// Acceptance checks: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "citescreen/citescreen.hpp"
#include "fixtures.hpp"

using namespace citescreen;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome chi_square_table4() {
    const auto r = chi_square(ContingencyTable(2, 3, {28, 1, 1, 12, 13, 10}));
    const bool pass = std::fabs(r.statistic - 23.8056) <= 5e-4 && r.df == 2 && r.p_value < 0.01 &&
                      std::fabs(r.p_value - 6.77e-6) <= 1e-8;
    return {pass, fmt("statistic %.6f, df %.0f, p %.4g", r.statistic, r.df, r.p_value)};
}

Outcome pvalue_table5() {
    const double p = chi_square_pvalue(3.7072, 2);
    const double stat = chi_square(ContingencyTable(2, 3, {35, 13, 11, 28, 6, 4})).statistic;
    const bool pass = std::fabs(p - 0.157) <= 5e-4 && std::fabs(stat - 2.179) <= 1e-2;
    return {pass, fmt("p(3.7072, 2) = %.5f; Table 5 cells give %.4f (text states 3.7072)", p, stat)};
}

Outcome h_index_oracle() {
    std::mt19937_64 rng(3);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto n = std::uniform_int_distribution<std::size_t>(0, 500)(rng);
        const auto cap = std::uniform_int_distribution<std::uint64_t>(0, 10000)(rng);
        std::vector<std::uint64_t> counts(n);
        for (auto& c : counts) c = std::uniform_int_distribution<std::uint64_t>(0, cap)(rng);
        mismatches += h_index(counts) != fixtures::h_index_oracle(counts);
    }
    return {mismatches == 0, fmt("10000 vectors, %.0f mismatches", static_cast<double>(mismatches))};
}

Outcome chain_properties() {
    std::mt19937_64 rng(4);
    std::size_t failures = 0;
    const int corpora = 1000;
    for (int trial = 0; trial < corpora; ++trial) {
        const auto config = fixtures::random_synth_config(rng);
        const auto out = generate(config);
        const auto& focal = config.coercion->editor;
        const auto ch = run_pipeline(out.corpus, focal, "J1");
        bool ok = ch.coll_a.size() >= ch.coll_b.size() && ch.coll_b.size() >= ch.coll_c.size() &&
                  ch.coll_c.size() >= ch.coll_d.size() && ch.coll_d.size() >= ch.coll_e.size();
        std::size_t self = 0, semi = 0, indep = 0;
        for (const auto& c : ch.coll_c) {
            const auto cls = classify_citation(out.corpus, focal, c, focal_references(out.corpus, focal, c));
            self += cls == CitationClass::Self;
            semi += cls == CitationClass::SemiSelf;
            indep += cls == CitationClass::Independent;
            ok = ok && (ch.coll_d.count(c) == 1) == (cls != CitationClass::Self) &&
                 (ch.coll_e.count(c) == 1) == (cls == CitationClass::Independent);
        }
        ok = ok && self + semi + indep == ch.coll_c.size() && ch.coll_d.size() == semi + indep && ch.coll_e.size() == indep;
        auto doubled = ch.coll_b;
        doubled.insert(doubled.end(), ch.coll_b.begin(), ch.coll_b.end());
        ok = ok && collection_c(doubled) == ch.coll_c && collection_c(ch.coll_b) == ch.coll_c;
        failures += !ok;
    }
    return {failures == 0, fmt("%.0f corpora, %.0f failures", corpora, static_cast<double>(failures))};
}

Outcome table1_fixture() {
    const auto fx = fixtures::table1_fixture();
    const auto ch = run_pipeline(fx.corpus, fx.focal, fx.journal);
    const double share = post_appointment_share(ch).value_or(-1);
    const bool pass = ch.items_found == 46 && ch.items_in_journal == 10 && ch.aml.size() == 34 && ch.coll_a.size() == 310 &&
                      ch.coll_a_in_journal == 130 && ch.coll_b.size() == 123 && ch.coll_c.size() == 69 &&
                      ch.coll_d.size() == 67 && ch.coll_e.size() == 65 && std::fabs(share - 0.9462) <= 1e-4;
    std::ostringstream d;
    d << ch.items_found << '/' << ch.items_in_journal << ", AML " << ch.aml.size() << ", A " << ch.coll_a.size() << '/'
      << ch.coll_a_in_journal << ", B " << ch.coll_b.size() << ", C " << ch.coll_c.size() << ", D " << ch.coll_d.size()
      << ", E " << ch.coll_e.size() << fmt(", share %.4f", share);
    return {pass, d.str()};
}

Outcome injection_recovery() {
    SynthConfig c;
    c.seed = 6;
    c.papers_per_year = 60;
    CoercionConfig k;
    k.insertion_probability = 1.0;
    k.editor_organic_citations = false;
    c.coercion = k;
    const auto out = generate(c);
    const auto r = verify_recovery(out.corpus, out.truth, run_pipeline(out.corpus, k.editor, "J1"));

    // Control editor: no injection, organic citations spread over ten journals.
    auto control_verdict = [](std::uint64_t seed) {
        SynthConfig control;
        control.seed = seed;
        control.n_journals = 10;
        control.coercion = CoercionConfig{};
        control.coercion->insertion_probability = 0.0;
        const auto ctl = generate(control);
        return screen_editor(ctl.corpus, control.coercion->editor, "J1").verdict;
    };
    const auto verdict = control_verdict(2024);
    int neutral = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) neutral += control_verdict(seed) == Verdict::Neutral;

    const bool pass = r.injected_papers > 0 && r.recall == 1.0 && r.precision == 1.0 && verdict == Verdict::Neutral;
    return {pass, fmt("%.0f injected papers, recall %.3f, precision %.3f", static_cast<double>(r.injected_papers),
                      r.recall.value_or(-1), r.precision.value_or(-1)) +
                      "; control verdict " + std::string(to_string(verdict)) +
                      fmt(" (seeds 1-100: %.0f/100 neutral)", neutral)};
}

Outcome divergence_fixture() {
    const auto fx = fixtures::divergence_fixture();
    const auto all = h_index_series(fx.corpus, fx.focal, {2006, 2015});
    const auto excl = h_index_series(fx.corpus, fx.focal, {2006, 2015}, HIndexVariant::excluding("J1"));
    std::vector<std::size_t> all_row, excl_row;
    for (const auto& [y, h] : all.values) all_row.push_back(h);
    for (const auto& [y, h] : excl.values) excl_row.push_back(h);
    bool pass = all_row == fixtures::kAllRow && excl_row == fixtures::kExcludingRow;

    std::mt19937_64 rng(7);
    std::size_t violations = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto config = fixtures::random_synth_config(rng);
        const auto out = generate(config);
        const YearRange years{config.first_year, config.first_year + static_cast<int>(config.n_years) - 1};
        const auto a = h_index_series(out.corpus, config.coercion->editor, years);
        const auto e = h_index_series(out.corpus, config.coercion->editor, years, HIndexVariant::excluding("J1"));
        for (const auto& [y, h] : a.values) violations += e.values.at(y) > h;
    }
    pass = pass && violations == 0;
    return {pass, fmt("2015 all %.0f, excluding %.0f; dominance violations on 300 corpora: %.0f",
                      static_cast<double>(all_row.back()), static_cast<double>(excl_row.back()), static_cast<double>(violations))};
}

Outcome df2_closed_form() {
    double worst = 0;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.5 * i;
        worst = std::max(worst, std::fabs(chi_square_pvalue(x, 2) - std::exp(-x / 2)));
    }
    return {worst <= 1e-10, fmt("max |error| %.3g over 201 grid points", worst)};
}

Outcome determinism() {
    SynthConfig c;
    c.seed = 9;
    c.coercion = CoercionConfig{};
    c.coercion->insertion_probability = 0.4;
    auto bytes = [&] {
        const auto out = generate(c);
        std::ostringstream s;
        write_jsonl(s, out.corpus);
        s << truth_to_json(out.truth).dump();
        return s.str();
    };
    const auto first = bytes();
    const bool identical = first == bytes();

    const auto corpus = generate(c).corpus;
    std::ostringstream text;
    write_jsonl(text, corpus);
    std::istringstream in(text.str());
    const bool round_trip = read_corpus(in, CorpusFormat::JSONL, {}, corpus.tenures()) == corpus;
    return {identical && round_trip, fmt("%.0f bytes; identical %.0f, round trip %.0f", static_cast<double>(first.size()),
                                         identical, round_trip)};
}

Outcome performance() {
    SynthConfig c;
    c.seed = 10;
    c.n_authors = 5000;
    c.n_journals = 20;
    c.n_years = 10;
    c.papers_per_year = 10000;
    c.coercion = CoercionConfig{};
    c.coercion->insertion_probability = 0.3;
    const auto generated = generate(c);
    std::ostringstream text;
    write_jsonl(text, generated.corpus);
    std::ostringstream tenures;
    write_tenures(tenures, generated.corpus.tenures());

    const auto start = std::chrono::steady_clock::now();
    std::istringstream corpus_in(text.str());
    std::istringstream tenures_in(tenures.str());
    const auto corpus = read_corpus(corpus_in, CorpusFormat::JSONL, {}, read_tenures(tenures_in));
    const auto chain = run_pipeline(corpus, c.coercion->editor, "J1");
    const auto editor = screen_editor(corpus, c.coercion->editor, "J1");
    const auto journal = screen_journal(corpus, "J1");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {corpus.size() >= 100000 && seconds < 10.0 && !chain.coll_e.empty(),
            fmt("%.0f records loaded, pipelined and screened in %.2f s", static_cast<double>(corpus.size()), seconds)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"chi-square Table 4 fixture", chi_square_table4},
        {"p-value Table 5 fixture", pvalue_table5},
        {"h-index oracle equivalence", h_index_oracle},
        {"pipeline chain properties", chain_properties},
        {"Table-1-shaped fixture", table1_fixture},
        {"injection recovery and control", injection_recovery},
        {"h-index divergence fixture", divergence_fixture},
        {"df=2 closed form", df2_closed_form},
        {"determinism and round trip", determinism},
        {"performance at 100k records", performance},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu of %zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
