#include "vcpot/linear.hpp"

namespace vcpot {

void row_axpy(SparseRow& r, Rat c, const SparseRow& other) {
    SparseRow out;
    out.reserve(r.size() + other.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < other.size()) {
        if (j == other.size() || (i < r.size() && r[i].first < other[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || other[j].first < r[i].first) {
            Rat v = -c * other[j].second;
            if (v != 0) out.emplace_back(other[j].first, std::move(v));
            ++j;
        } else {
            Rat v = r[i].second - c * other[j].second;
            if (v != 0) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

void RationalEchelon::reduce(SparseRow& r) const {
    // Eliminate every pivotal column present in r. Columns only move right
    // after elimination, so a single left-to-right sweep with restart on the
    // merged result terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [col, val] : r) {
            auto it = pivot_rows_.find(col);
            if (it != pivot_rows_.end()) {
                row_axpy(r, val, it->second);
                changed = true;
                break;
            }
        }
    }
}

std::optional<int> RationalEchelon::insert(SparseRow r) {
    reduce(r);
    if (r.empty()) return std::nullopt;
    const int pivot = r.front().first;
    const Rat lead = r.front().second;
    for (auto& [c, v] : r) v /= lead;
    // Back-substitute into existing rows so the form stays fully reduced.
    for (auto& [pc, row] : pivot_rows_) {
        for (const auto& [c, v] : row) {
            if (c == pivot) {
                row_axpy(row, v, r);
                break;
            }
            if (c > pivot) break;
        }
    }
    pivot_rows_.emplace(pivot, std::move(r));
    return pivot;
}

} // namespace vcpot
