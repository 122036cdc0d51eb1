// Copyright 2026 The onesided Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded generators for random matrices and states.

#pragma once

#include "onesided/matrix.hpp"
#include "onesided/rng.hpp"

namespace onesided::random {

/// Entries i.i.d. complex Gaussian.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RngStream &rng);
ComplexMatrix hermitian(std::size_t dim, RngStream &rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix unitary(std::size_t dim, RngStream &rng);
/// Haar-random unit vector.
ComplexVector pure_state(std::size_t dim, RngStream &rng);
/// GG^dag / Tr with G of shape dim x rank; rank 0 means full rank.
ComplexMatrix density(std::size_t dim, RngStream &rng, std::size_t rank = 0);
/// Orthogonal projector of the given rank (0 <= rank <= dim).
ComplexMatrix projector(std::size_t dim, std::size_t rank, RngStream &rng);

}  // namespace onesided::random
