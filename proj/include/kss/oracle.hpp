#pragma once

#include "kss/instance.hpp"
#include "kss/tensor.hpp"

namespace kss {

struct OracleOptions {
    std::uint64_t max_cells = kDefaultMaxCells;
    std::size_t brute_force_limit = 15; // (k+1)^n enumeration cutoff
};

// Exact dynamic program: process elements one at a time, each either unused
// or extending exactly one of the k subsets.  Two generations are kept so an
// element can never land in the same subset twice within one step.  Sum axes
// are capped at the individual targets; cardinality axes appear only for
// constrained instances.
SumTensor bellman_k(const ValidatedInstance& v, const OracleOptions& opts = {});

// Exhaustive reference: enumerate all (k+1)^n assignments of elements to
// {unused, subset 1, ..., subset k}.  Output always carries k sum axes capped
// at the targets and k cardinality axes capped at the requested sizes (or n
// when unconstrained).  Refuses instances past brute_force_limit.
SumTensor brute_force(const ValidatedInstance& v, const OracleOptions& opts = {});

// Read the instance's yes/no answer out of a realizability tensor whose caps
// dominate the targets.  Handles both k-axis and 2k-axis tensors.
bool tensor_verdict(const SumTensor& tensor, const ValidatedInstance& v);

} // namespace kss
