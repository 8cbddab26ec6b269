#include "vcpot/versal.hpp"

namespace vcpot {

void VersalDeformation::check_lambda_size(size_t len) const {
    if (len != static_cast<size_t>(mu()))
        throw config_error("deformation: lambda has " + std::to_string(len) +
                           " entries, expected mu = " + std::to_string(mu()));
}

Polynomial VersalDeformation::instantiate_exact(const std::vector<Rat>& lambda) const {
    check_lambda_size(lambda.size());
    Polynomial F = f.poly;
    for (int i = 0; i < mu(); ++i)
        F += lambda[static_cast<size_t>(i)] * Polynomial::monomial(dim(), algebra.basis[static_cast<size_t>(i)]);
    return F;
}

RealPoly VersalDeformation::instantiate(const std::vector<double>& lambda) const {
    check_lambda_size(lambda.size());
    // Build with exact base coefficients, then attach the double lambda
    // weights; a rational detour would lose nothing but costs conversions.
    Polynomial F = f.poly;
    std::vector<Rat> lr;
    lr.reserve(lambda.size());
    for (double v : lambda) lr.emplace_back(Rat(v));
    for (int i = 0; i < mu(); ++i)
        F += lr[static_cast<size_t>(i)] * Polynomial::monomial(dim(), algebra.basis[static_cast<size_t>(i)]);
    return RealPoly(F);
}

double VersalDeformation::evaluate(const std::vector<double>& x,
                                   const std::vector<double>& lambda) const {
    check_lambda_size(lambda.size());
    if (static_cast<int>(x.size()) != dim())
        throw config_error("deformation: point dimension mismatch");
    double acc = f.poly.evaluate(x);
    for (int i = 0; i < mu(); ++i) {
        double m = 1.0;
        const auto& e = algebra.basis[static_cast<size_t>(i)];
        for (int j = 0; j < dim(); ++j)
            for (int k = 0; k < e[j]; ++k) m *= x[static_cast<size_t>(j)];
        acc += lambda[static_cast<size_t>(i)] * m;
    }
    return acc;
}

Rat VersalDeformation::evaluate_exact(const std::vector<Rat>& x,
                                      const std::vector<Rat>& lambda) const {
    return instantiate_exact(lambda).evaluate_exact(x);
}

std::string VersalDeformation::render() const {
    std::string s = f.poly.to_string();
    for (int i = 0; i < mu(); ++i) {
        const std::string mono = monomial_to_string(algebra.basis[static_cast<size_t>(i)]);
        s += " + l" + std::to_string(i + 1);
        if (mono != "1") s += "*" + mono;
    }
    return s;
}

VersalDeformation versal_deformation(const SingularityGerm& f) {
    return VersalDeformation{f, local_algebra_auto(f)};
}

Polynomial embed_singularity(const SingularityGerm& f, int N, const Rat& delta,
                             const std::vector<Rat>& eps) {
    const int n = f.dim();
    const int mu = milnor_number(f);
    if (N < mu + 2)
        throw precondition_error("embed_singularity: N must be >= mu + 2 = " +
                                 std::to_string(mu + 2));
    if (delta == 0) throw precondition_error("embed_singularity: delta must be nonzero");
    if (!eps.empty() && eps.size() != static_cast<size_t>(n))
        throw config_error("embed_singularity: eps must have n entries");

    Polynomial P = f.poly.truncate_jet(N + 1).scale_variables(delta);
    for (int j = 0; j < n; ++j) {
        ExponentVector e(n);
        e[j] = N;
        const Rat w = eps.empty() ? Rat(1) : Rat(1) + eps[static_cast<size_t>(j)];
        P += Polynomial::monomial(n, e, w);
    }
    return P;
}

} // namespace vcpot
