#pragma once

#include "vcpot/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vcpot {

// Sparse row over column indices, kept sorted ascending by column.
// Column 0 is the leading (grlex-largest) monomial by convention.
using SparseRow = std::vector<std::pair<int, Rat>>;

// Incremental Gauss-Jordan echelon structure over exact rationals.
// Rows are inserted one at a time, reduced against existing pivots, and
// normalized to a unit pivot; existing rows are back-substituted so the
// form stays fully reduced. Insertion order is deterministic and the
// result is independent of it up to row order.
class RationalEchelon {
public:
    // Reduce r in place against all current pivots.
    void reduce(SparseRow& r) const;

    // Insert a row; returns the pivot column if the row was independent,
    // nullopt if it reduced to zero.
    std::optional<int> insert(SparseRow r);

    bool has_pivot(int col) const { return pivot_rows_.count(col) > 0; }
    const std::map<int, SparseRow>& rows() const { return pivot_rows_; }
    size_t rank() const { return pivot_rows_.size(); }

private:
    std::map<int, SparseRow> pivot_rows_; // pivot column -> unit-pivot row
};

// r -= c * other (sparse merge).
void row_axpy(SparseRow& r, Rat c, const SparseRow& other);

} // namespace vcpot
