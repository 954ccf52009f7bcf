#pragma once

// Data-parallel kernels. Each has a serial reference used by the tests and the benchmark;
// the parallel versions use OpenMP when the library is built with it and fall back to the
// serial loop otherwise. Results are identical because every output slot is written by
// exactly one iteration.

#include "nilmap/linalg.hpp"

#include <cstddef>
#include <functional>

namespace nilmap::kernels {

PolyMatrix multiply_serial(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix multiply_parallel(const PolyMatrix& a, const PolyMatrix& b);

Polynomial principal_minor_sum_serial(const PolyMatrix& m, std::size_t k);
Polynomial principal_minor_sum_parallel(const PolyMatrix& m, std::size_t k);

// Runs body(i) for i in [0, count). Iterations must be independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

bool openmp_enabled();
int max_threads();

}  // namespace nilmap::kernels
