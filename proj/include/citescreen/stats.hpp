#ifndef CITESCREEN_STATS_HPP
#define CITESCREEN_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "citescreen/corpus.hpp"
#include "citescreen/error.hpp"
#include "citescreen/pipeline.hpp"

namespace citescreen {

/// Row-major r x c table of observed counts.
class ContingencyTable {
public:
    ContingencyTable() = default;

    ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::uint64_t> cells = {},
                     std::vector<std::string> row_labels = {}, std::vector<std::string> col_labels = {})
        : rows_(rows), cols_(cols), cells_(std::move(cells)), row_labels_(std::move(row_labels)),
          col_labels_(std::move(col_labels)) {
        if (rows == 0 || cols == 0) throw InputError("contingency table needs at least one row and one column");
        if (cells_.empty()) cells_.assign(rows * cols, 0);
        if (cells_.size() != rows * cols) {
            throw InputError(std::to_string(cells_.size()) + " cells do not fill a " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " table");
        }
        if (row_labels_.empty()) {
            for (std::size_t r = 0; r < rows; ++r) row_labels_.push_back("row " + std::to_string(r + 1));
        }
        if (col_labels_.empty()) {
            for (std::size_t c = 0; c < cols; ++c) col_labels_.push_back("column " + std::to_string(c + 1));
        }
        if (row_labels_.size() != rows || col_labels_.size() != cols) throw InputError("label count mismatch");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return cells_.at(r * cols_ + c); }
    std::uint64_t& at(std::size_t r, std::size_t c) { return cells_.at(r * cols_ + c); }
    const std::vector<std::uint64_t>& cells() const noexcept { return cells_; }
    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

    std::uint64_t row_total(std::size_t r) const {
        std::uint64_t t = 0;
        for (std::size_t c = 0; c < cols_; ++c) t += at(r, c);
        return t;
    }
    std::uint64_t col_total(std::size_t c) const {
        std::uint64_t t = 0;
        for (std::size_t r = 0; r < rows_; ++r) t += at(r, c);
        return t;
    }
    std::uint64_t grand_total() const {
        std::uint64_t t = 0;
        for (auto v : cells_) t += v;
        return t;
    }

    friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> cells_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

/// Lower edges of the reference-count bins; the last bin is open-ended.
/// The default {1, 2, 3} gives the columns "1", "2", "3 or more".
struct ReferenceBins {
    std::vector<std::uint64_t> lower_edges{1, 2, 3};

    void check() const {
        if (lower_edges.empty() || lower_edges.front() != 1) throw ConfigError("reference bins must start at 1");
        for (std::size_t i = 1; i < lower_edges.size(); ++i) {
            if (lower_edges[i] <= lower_edges[i - 1]) throw ConfigError("reference bin edges must increase");
        }
    }

    std::size_t bin_of(std::uint64_t count) const {
        std::size_t b = 0;
        while (b + 1 < lower_edges.size() && count >= lower_edges[b + 1]) ++b;
        return b;
    }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < lower_edges.size(); ++i) {
            if (i + 1 == lower_edges.size()) {
                out.push_back(std::to_string(lower_edges[i]) + " or more");
            } else if (lower_edges[i + 1] == lower_edges[i] + 1) {
                out.push_back(std::to_string(lower_edges[i]));
            } else {
                out.push_back(std::to_string(lower_edges[i]) + "-" + std::to_string(lower_edges[i + 1] - 1));
            }
        }
        return out;
    }
};

/// Issue type (rows: regular, special) x number of focal works in the
/// citing paper's reference list, over the papers of Collection E.
inline ContingencyTable build_contingency(const CollectionChain& chain, const Corpus& corpus, const AuthorId& focal,
                                          const ReferenceBins& bins = {}) {
    bins.check();
    ContingencyTable table(2, bins.lower_edges.size(), {}, {"regular", "special"}, bins.labels());
    for (const auto& citing : chain.coll_e) {
        const auto n = focal_references(corpus, focal, citing).size();
        if (n == 0) {
            throw ConsistencyError("Collection E paper '" + citing + "' references no work of '" + focal.key() + "'");
        }
        const std::size_t row = corpus.at(citing).issue_type == IssueType::Special ? 1 : 0;
        ++table.at(row, bins.bin_of(n));
    }
    return table;
}

namespace detail {

/// Regularized upper incomplete gamma Q(a, x): power series for x < a + 1,
/// Lentz continued fraction otherwise.
inline double regularized_gamma_q(double a, double x) {
    constexpr double kEps = 1e-12;
    constexpr int kMaxIter = 10000;
    constexpr double kTiny = 1e-300;
    if (x <= 0.0) return 1.0;
    const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a;
        double term = 1.0 / a;
        double sum = term;
        for (int n = 0; n < kMaxIter; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * kEps) break;
        }
        return 1.0 - sum * std::exp(log_prefix);
    }
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(log_prefix) * h;
}

} // namespace detail

/// Upper-tail probability of the chi-square distribution with `df` degrees of freedom.
inline double chi_square_pvalue(double statistic, int df) {
    if (df < 1) throw InputError("degrees of freedom must be >= 1");
    if (!(statistic >= 0.0)) throw InputError("chi-square statistic must be non-negative");
    const double q = detail::regularized_gamma_q(0.5 * df, 0.5 * statistic);
    return std::min(1.0, std::max(0.0, q));
}

struct ChiSquareResult {
    double statistic = 0.0;
    int df = 1;
    double p_value = 1.0;
    double alpha = 0.05;
    bool significant = false;
    std::vector<double> expected; ///< row-major, same shape as the table
    std::vector<std::string> warnings;
};

/// Pearson chi-square test of independence, without continuity correction.
/// Throws DegenerateTableError when any row or column sums to zero.
inline ChiSquareResult chi_square(const ContingencyTable& table, double alpha = 0.05) {
    const auto n = table.grand_total();
    if (n == 0) throw DegenerateTableError("table is empty (grand total 0)");
    for (std::size_t r = 0; r < table.rows(); ++r) {
        if (table.row_total(r) == 0) throw DegenerateTableError("row '" + table.row_labels()[r] + "' sums to zero");
    }
    for (std::size_t c = 0; c < table.cols(); ++c) {
        if (table.col_total(c) == 0) throw DegenerateTableError("column '" + table.col_labels()[c] + "' sums to zero");
    }
    if (table.rows() < 2 || table.cols() < 2) throw DegenerateTableError("table needs at least 2 rows and 2 columns");

    ChiSquareResult out;
    out.alpha = alpha;
    out.df = static_cast<int>((table.rows() - 1) * (table.cols() - 1));
    const double total = static_cast<double>(n);
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.cols(); ++c) {
            const double e = static_cast<double>(table.row_total(r)) * static_cast<double>(table.col_total(c)) / total;
            const double diff = static_cast<double>(table.at(r, c)) - e;
            out.statistic += diff * diff / e;
            out.expected.push_back(e);
            if (e < 5.0) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "expected count %.4f < 5 in cell (%s, %s)", e, table.row_labels()[r].c_str(),
                              table.col_labels()[c].c_str());
                out.warnings.emplace_back(buf);
            }
        }
    }
    out.p_value = chi_square_pvalue(out.statistic, out.df);
    out.significant = out.p_value < alpha;
    return out;
}

} // namespace citescreen

#endif // CITESCREEN_STATS_HPP
