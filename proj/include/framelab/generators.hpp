#pragma once

#include <cstdint>

#include "framelab/frame.hpp"

namespace framelab {

// All generators use counting measure. Seeded generators are deterministic
// for a fixed seed on a given standard library.

/// Standard orthonormal basis of R^d.
Frame gen_onb(int dim);

/// Three unit vectors of R^2 at 0, 120 and 240 degrees.
Frame gen_mercedes();

/// Harmonic frame of n unit vectors in R^d or C^d; tight with A = B = n/d.
/// Complex: F(x_j)_k = exp(2 pi i j k / n) / sqrt(d), k = 0..d-1, n >= d.
/// Real: cosine/sine pairs at frequencies 1..floor(d/2) scaled by
/// sqrt(2/d), plus a constant 1/sqrt(d) entry when d is odd; needs n > d.
Frame gen_harmonic(int dim, int n, Field field = Field::real);

/// n vectors with i.i.d. standard Gaussian entries (complex: real and
/// imaginary parts each of variance 1/2).
Frame gen_random(int dim, int n, std::uint64_t seed, Field field = Field::real);

/// Head/tail family for the phase-retrieval breaking construction. The
/// first 2 * head_dim atoms ("head") are generic vectors of a random
/// head_dim-dimensional subspace; the remaining tail_len atoms ("tail") are
/// generic vectors of R^d scaled by tail_scale, so the tail carries little
/// energy. Atom labels read "head" or "tail".
Frame gen_deficient_plus_tail(int dim, int head_dim, int tail_len, std::uint64_t seed,
                              double tail_scale = 0.1);

/// Number of head atoms gen_deficient_plus_tail emits for head_dim.
inline int deficient_head_count(int head_dim) { return 2 * head_dim; }

}  // namespace framelab
