// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header: simulation of complete projective measurements over
// mutually unbiased bases, the affine post-measurement state relation,
// and the qubit counterexample for non-orthogonal direction triples.

#include "basis.hpp"
#include "bloch.hpp"
#include "complex_matrix.hpp"
#include "density_matrix.hpp"
#include "design_tensor.hpp"
#include "eig.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "measurement.hpp"
#include "mixture_weights.hpp"
#include "mub.hpp"
#include "random_states.hpp"
#include "relation.hpp"
#include "rng.hpp"
#include "sampling.hpp"
