#include "ellq/serialize.hpp"

#include <sstream>

namespace ellq {

json complex_json(cplx z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

cplx complex_from_json(const json& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json relation_space_json(const RelationSpace& rel) {
    json gens = json::array();
    for (const auto& g : rel.generators) {
        json coeffs = json::array();
        for (Eigen::Index t = 0; t < g.coeffs.size(); ++t)
            coeffs.push_back(complex_json(g.coeffs(t)));
        gens.push_back(std::move(coeffs));
    }
    return json{{"n", rel.params.n},
                {"k", rel.params.k},
                {"k_prime", rel.params.k_prime},
                {"tau", complex_json(rel.params.tau)},
                {"eta", complex_json(rel.params.lat.eta)},
                {"generators", std::move(gens)},
                {"rank", rel.rank},
                {"svd_spectrum", rel.singular_values},
                {"svd_gap", rel.svd_gap},
                {"seed", rel.seed}};
}

std::string graded_dims_csv(const GradedDims& g, int k, std::uint64_t tau_seed) {
    std::ostringstream out;
    out << "n,k,tau_seed,d,dim,poly_dim\n";
    for (std::size_t d = 0; d < g.dims.size(); ++d)
        out << g.n << ',' << k << ',' << tau_seed << ',' << d << ',' << g.dims[d] << ','
            << polynomial_dim(g.n, int(d)) << '\n';
    return out.str();
}

} // namespace ellq
