#pragma once

#include <json.hpp>

#include "ellq/algebra.hpp"
#include "ellq/hilbert.hpp"

namespace ellq {

using json = nlohmann::json;

/// Complex values serialize as {"re": ..., "im": ...}.
json complex_json(cplx z);
cplx complex_from_json(const json& j);

// parameters, generator coefficient arrays, rank, svd spectrum, seed
json relation_space_json(const RelationSpace& rel);

// CSV rows "n,k,tau_seed,d,dim,poly_dim" for a graded-dimension table.
std::string graded_dims_csv(const GradedDims& g, int k, std::uint64_t tau_seed);

} // namespace ellq
