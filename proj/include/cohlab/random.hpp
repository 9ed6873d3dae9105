#pragma once

#include "cohlab/numkernel.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cohlab {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Counter-based stream derivation: the same (master, counters...) always
// yields the same child seed, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> counters);

// d x k matrix of independent standard complex Gaussians (real and imaginary
// parts each N(0, 1/2)).
ComplexMatrix complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace cohlab
