#ifndef MLAB_LINALG_HPP
#define MLAB_LINALG_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/scalar.hpp"

namespace mlab {

/// Sparse row: (column, nonzero value) pairs sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Incremental exact row echelon form over a field domain. Pivot rows are
/// normalized to leading coefficient 1.
class RowEchelon {
public:
    explicit RowEchelon(CoefficientDomain domain) : domain_(domain) {
        if (!domain_.is_field()) domain_ = CoefficientDomain::rationals();
    }

    /// Reduces `row` against the current pivots; keeps it if it stays nonzero.
    /// Returns true when the rank grew.
    bool insert(SparseRow row) {
        row = reduce(std::move(row));
        if (row.empty()) return false;
        Rational inv = domain_.inverse(row.front().second);
        for (auto& [c, v] : row) {
            v *= inv;
            domain_.normalize(v);
        }
        std::size_t lead = row.front().first;
        pivots_.emplace(lead, std::move(row));
        return true;
    }

    SparseRow reduce(SparseRow row) const {
        SparseRow out;
        // columns below `cursor` are final in `out`
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) {
                out.push_back(std::move(row.front()));
                row.erase(row.begin());
                continue;
            }
            Rational factor = row.front().second;
            row = axpy(row, it->second, factor);
        }
        return out;
    }

    std::size_t rank() const noexcept { return pivots_.size(); }
    const std::map<std::size_t, SparseRow>& pivots() const noexcept { return pivots_; }
    const CoefficientDomain& domain() const noexcept { return domain_; }

private:
    // row - factor * pivot
    SparseRow axpy(const SparseRow& row, const SparseRow& pivot, const Rational& factor) const {
        SparseRow r;
        r.reserve(row.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                r.push_back(row[i++]);
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                Rational v = -factor * pivot[j].second;
                domain_.normalize(v);
                if (v != 0) r.emplace_back(pivot[j].first, std::move(v));
                ++j;
            } else {
                Rational v = row[i].second - factor * pivot[j].second;
                domain_.normalize(v);
                if (v != 0) r.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return r;
    }

    CoefficientDomain domain_;
    std::map<std::size_t, SparseRow> pivots_;
};

inline std::size_t matrix_rank(const std::vector<SparseRow>& rows, const CoefficientDomain& domain) {
    RowEchelon ech(domain);
    for (const auto& r : rows) ech.insert(r);
    return ech.rank();
}

/// Solves A x = b where A is given by rows (one per equation) in `columns`
/// unknowns. Free variables are set to zero. Returns nullopt if inconsistent.
inline std::optional<std::vector<Rational>> solve_linear(const std::vector<SparseRow>& rows,
                                                         const std::vector<Rational>& rhs, std::size_t columns,
                                                         const CoefficientDomain& domain) {
    if (rows.size() != rhs.size()) throw InvalidArgument("right-hand side length mismatch");
    RowEchelon ech(domain);
    const auto& dom = ech.domain();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        SparseRow row = rows[r];
        Rational b = dom.normalized(rhs[r]);
        if (b != 0) row.emplace_back(columns, b);
        ech.insert(std::move(row));
    }
    if (ech.pivots().count(columns)) return std::nullopt;
    std::vector<Rational> x(columns, 0);
    for (auto it = ech.pivots().rbegin(); it != ech.pivots().rend(); ++it) {
        const auto& row = it->second;
        Rational v = 0;
        for (std::size_t k = 1; k < row.size(); ++k) {
            if (row[k].first == columns) v += row[k].second;
            else v -= row[k].second * x[row[k].first];
        }
        dom.normalize(v);
        x[it->first] = v;
    }
    return x;
}

} // namespace mlab

#endif
