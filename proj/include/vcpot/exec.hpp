#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vcpot::exec {

enum class Mode { Serial, Parallel };

// Deterministic pairwise (tree) summation in index order.
inline double pairwise_sum(const double* v, std::size_t count) {
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += v[i];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

// Evaluate fn(item, acc) for item in [0, count) and accumulate n_out sums.
// Items are processed in fixed chunks of kChunk; each chunk accumulates
// sequentially, and chunk partials are combined by a pairwise tree in chunk
// order. The reduction tree depends only on count, so Serial and Parallel
// produce bit-identical results regardless of thread count.
template <class Fn>
void chunked_accumulate(Mode mode, std::int64_t count, int n_out, Fn&& fn, double* out) {
    constexpr std::int64_t kChunk = 4096;
    const std::int64_t n_chunks = count <= 0 ? 0 : (count + kChunk - 1) / kChunk;
    std::vector<double> partials(static_cast<std::size_t>(n_chunks) * n_out, 0.0);

    auto run_chunk = [&](std::int64_t c) {
        double* acc = partials.data() + static_cast<std::size_t>(c) * n_out;
        const std::int64_t lo = c * kChunk;
        const std::int64_t hi = std::min(count, lo + kChunk);
        for (std::int64_t i = lo; i < hi; ++i) fn(i, acc);
    };

    if (mode == Mode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    }

    // Strided pairwise reduction per output component.
    std::vector<double> lane(static_cast<std::size_t>(n_chunks));
    for (int j = 0; j < n_out; ++j) {
        for (std::int64_t c = 0; c < n_chunks; ++c)
            lane[static_cast<std::size_t>(c)] = partials[static_cast<std::size_t>(c) * n_out + j];
        out[j] = pairwise_sum(lane.data(), lane.size());
    }
}

// Parallel fill of an indexed buffer: each item writes only slot(item), so
// the result is trivially deterministic.
template <class Fn>
void parallel_fill(Mode mode, std::int64_t count, Fn&& fn) {
    if (mode == Mode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t i = 0; i < count; ++i) fn(i);
    } else {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
    }
}

} // namespace vcpot::exec
