#pragma once

// Umbrella header: exact homological algebra toolkit (chain complexes over
// Z, Q, Z/p; mapping cones and snake-lemma sequences; bounded filtered
// complexes and their spectral sequences; the two-line Gysin machinery;
// circle-equivariant Morse and Morse-Bott assembly; an exact-sequence
// solver; deterministic example generators; JSON interchange).

#include "gysin/abelian.hpp"
#include "gysin/chainmap.hpp"
#include "gysin/complex.hpp"
#include "gysin/cone.hpp"
#include "gysin/equivariant.hpp"
#include "gysin/error.hpp"
#include "gysin/exact.hpp"
#include "gysin/filtration.hpp"
#include "gysin/gen.hpp"
#include "gysin/io.hpp"
#include "gysin/lattice.hpp"
#include "gysin/matrix.hpp"
#include "gysin/numeric.hpp"
#include "gysin/present.hpp"
#include "gysin/prng.hpp"
#include "gysin/ring.hpp"
#include "gysin/solver.hpp"
#include "gysin/spectral.hpp"
