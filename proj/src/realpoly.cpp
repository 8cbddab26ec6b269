#include "vcpot/realpoly.hpp"

namespace vcpot {

RealPoly::RealPoly(const Polynomial& p, bool with_gradient) : n_(p.dim()) {
    terms_.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) terms_.push_back({e.exps, rat_to_double(c)});
    if (with_gradient) {
        grads_.reserve(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) grads_.emplace_back(p.derivative(i), false);
    }
}

} // namespace vcpot
